#pragma once

// Polynomial representations over Q and the modular black boxes built from
// them. A black box answers f(theta) mod p for a caller-chosen prime p; every
// algorithm in the library sees the unknown polynomial only through one.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "lacuna/arith.hpp"
#include "lacuna/densepoly.hpp"

namespace lacuna {

struct Term {
  Rat coeff;
  std::uint64_t exp = 1;

  friend bool operator==(const Term&, const Term&) = default;
};

/// c_0 + sum c_i (x - alpha)^(e_i). After normalize(): exponents strictly
/// increasing and >= 1, coefficients nonzero.
struct ShiftedLacunary {
  Rat shift;
  Rat constant;
  std::vector<Term> terms;

  /// Sorts terms, merges equal exponents and drops zero coefficients.
  /// Throws std::invalid_argument for an exponent 0.
  void normalize();

  std::size_t sparsity() const { return terms.size(); }
  std::uint64_t degree() const { return terms.empty() ? 0 : terms.back().exp; }

  Rat eval(const Rat& x) const;

  friend bool operator==(const ShiftedLacunary&, const ShiftedLacunary&) = default;
};

/// Dense polynomial over Q, ascending coefficients, trailing zeros trimmed.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rat> coeffs);

  const std::vector<Rat>& coeffs() const { return coeffs_; }
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Rat operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rat(0); }

  Rat eval(const Rat& x) const;

  friend bool operator==(const RationalPoly&, const RationalPoly&) = default;

 private:
  std::vector<Rat> coeffs_;
};

/// f(x + gamma) over Q.
RationalPoly taylor_shift(const RationalPoly& f, const Rat& gamma);

/// Number of nonzero coefficients of degree >= 1.
std::size_t tau(const RationalPoly& f);

/// Expands the shifted power basis into the monomial basis.
RationalPoly expand(const ShiftedLacunary& f);

/// Reads f(x + alpha) off as a shifted-lacunary form with shift alpha.
ShiftedLacunary to_lacunary(const RationalPoly& f, const Rat& alpha);

// ---------------------------------------------------------------------------
// Black boxes
// ---------------------------------------------------------------------------

class ModularBlackBox {
 public:
  virtual ~ModularBlackBox() = default;

  /// f(theta) mod p for a word-size prime p. Throws DenominatorVanished.
  virtual std::uint64_t eval(std::uint64_t p, std::uint64_t theta) const;

  /// Same for arbitrary-size p.
  virtual Int eval_big(const Int& p, const Int& theta) const = 0;

  /// out[i] = f(first + i) mod p. The default loops over eval; boxes override
  /// it to hoist per-prime work (coefficient reduction) out of the loop.
  virtual void eval_range(std::uint64_t p, std::uint64_t first, std::span<std::uint64_t> out) const;

  /// Field operations per evaluation, roughly.
  virtual std::uint64_t cost_hint() const = 0;
};

using BlackBoxPtr = std::shared_ptr<const ModularBlackBox>;

/// Term-wise evaluation with modular exponentiation.
class LacunaryBlackBox final : public ModularBlackBox {
 public:
  explicit LacunaryBlackBox(ShiftedLacunary f);

  std::uint64_t eval(std::uint64_t p, std::uint64_t theta) const override;
  Int eval_big(const Int& p, const Int& theta) const override;
  void eval_range(std::uint64_t p, std::uint64_t first, std::span<std::uint64_t> out) const override;
  std::uint64_t cost_hint() const override;

  const ShiftedLacunary& poly() const { return f_; }

 private:
  ShiftedLacunary f_;
};

/// Horner evaluation of a dense rational polynomial.
class DenseBlackBox final : public ModularBlackBox {
 public:
  explicit DenseBlackBox(RationalPoly f);

  std::uint64_t eval(std::uint64_t p, std::uint64_t theta) const override;
  Int eval_big(const Int& p, const Int& theta) const override;
  void eval_range(std::uint64_t p, std::uint64_t first, std::span<std::uint64_t> out) const override;
  std::uint64_t cost_hint() const override;

  const RationalPoly& poly() const { return f_; }

 private:
  RationalPoly f_;
};

/// A straight-line program over Q[x]: each instruction defines a new register
/// from constants, the variable, or earlier registers. The last register is
/// the output.
struct Instruction {
  enum class Op { Const, Var, Add, Sub, Mul, Pow };
  Op op = Op::Var;
  std::size_t lhs = 0;
  std::size_t rhs = 0;
  Rat value;                 // Const
  std::uint64_t power = 0;   // Pow: register lhs raised to `power`

  static Instruction constant(Rat v) { return {Op::Const, 0, 0, std::move(v), 0}; }
  static Instruction var() { return {Op::Var, 0, 0, Rat(0), 0}; }
  static Instruction add(std::size_t a, std::size_t b) { return {Op::Add, a, b, Rat(0), 0}; }
  static Instruction sub(std::size_t a, std::size_t b) { return {Op::Sub, a, b, Rat(0), 0}; }
  static Instruction mul(std::size_t a, std::size_t b) { return {Op::Mul, a, b, Rat(0), 0}; }
  static Instruction pow(std::size_t a, std::uint64_t e) { return {Op::Pow, a, 0, Rat(0), e}; }
};

class ProgramBlackBox final : public ModularBlackBox {
 public:
  /// Throws std::invalid_argument for an empty program or a forward reference.
  explicit ProgramBlackBox(std::vector<Instruction> program);

  std::uint64_t eval(std::uint64_t p, std::uint64_t theta) const override;
  Int eval_big(const Int& p, const Int& theta) const override;
  std::uint64_t cost_hint() const override;

 private:
  std::vector<Instruction> program_;
};

/// theta -> inner(theta + alpha).
class ShiftedBlackBox final : public ModularBlackBox {
 public:
  ShiftedBlackBox(BlackBoxPtr inner, Rat alpha);

  std::uint64_t eval(std::uint64_t p, std::uint64_t theta) const override;
  Int eval_big(const Int& p, const Int& theta) const override;
  void eval_range(std::uint64_t p, std::uint64_t first, std::span<std::uint64_t> out) const override;
  std::uint64_t cost_hint() const override { return inner_->cost_hint() + 1; }

 private:
  BlackBoxPtr inner_;
  Rat alpha_;
};

/// Forwards to another box and counts evaluation points (thread safe).
class CountingBlackBox final : public ModularBlackBox {
 public:
  explicit CountingBlackBox(BlackBoxPtr inner) : inner_(std::move(inner)) {}

  std::uint64_t eval(std::uint64_t p, std::uint64_t theta) const override;
  Int eval_big(const Int& p, const Int& theta) const override;
  void eval_range(std::uint64_t p, std::uint64_t first, std::span<std::uint64_t> out) const override;
  std::uint64_t cost_hint() const override { return inner_->cost_hint(); }

  std::uint64_t calls() const { return calls_.load(); }
  void reset() { calls_ = 0; }

 private:
  BlackBoxPtr inner_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

BlackBoxPtr make_blackbox(const ShiftedLacunary& f);
BlackBoxPtr make_blackbox(const RationalPoly& f);
BlackBoxPtr shifted_blackbox(BlackBoxPtr bb, const Rat& alpha);

struct ReduceOptions {
  InterpolationOptions interpolation;
  unsigned threads = 1;
};

/// f^(p): evaluates the box on all of Z_p (exactly p evaluations) and
/// interpolates. Requires a prime p < 2^32. DenominatorVanished propagates.
DensePolyMod reduce_mod(const ModularBlackBox& bb, std::uint64_t p, const ReduceOptions& options = {});

}  // namespace lacuna
