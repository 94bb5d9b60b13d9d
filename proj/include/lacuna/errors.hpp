#pragma once

#include <stdexcept>
#include <string>

namespace lacuna {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Failures of the exact reconstruction steps. They almost always mean that the
// supplied bounds are smaller than the true polynomial needs.
struct ReconstructionFailure : Error {
  using Error::Error;
};

struct InconsistentResidues : ReconstructionFailure {
  using ReconstructionFailure::ReconstructionFailure;
};

struct NoReconstruction : ReconstructionFailure {
  using ReconstructionFailure::ReconstructionFailure;
};

struct NotSplitting : ReconstructionFailure {
  using ReconstructionFailure::ReconstructionFailure;
};

struct NoMatch : ReconstructionFailure {
  using ReconstructionFailure::ReconstructionFailure;
};

struct AmbiguousMatch : ReconstructionFailure {
  using ReconstructionFailure::ReconstructionFailure;
};

// Failures to obtain usable evaluations.
struct EvaluationFailure : Error {
  using Error::Error;
};

/// The prime divides a denominator met while evaluating; the whole prime is unusable.
struct DenominatorVanished : EvaluationFailure {
  using EvaluationFailure::EvaluationFailure;
};

struct BlackBoxFailure : EvaluationFailure {
  using EvaluationFailure::EvaluationFailure;
};

/// Raised for large integers that pass every compositeness screen but for
/// which no primality certificate could be built.
struct PrimalityUndecided : Error {
  using Error::Error;
};

}  // namespace lacuna
