#include "lacuna/sparse_interp.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>

#include "lacuna/errors.hpp"
#include "lacuna/roots.hpp"

namespace lacuna {

PrimeImage make_image(const DensePolyMod& fp) {
  PrimeImage img;
  img.p = fp.modulus();
  img.fp = fp;
  img.constant = fp[0];
  const auto& c = fp.coeffs();
  for (std::size_t k = 1; k < c.size(); ++k) {
    if (c[k] != 0) {
      img.exponents.push_back(k);
      img.coeffs.push_back(c[k]);
    }
  }
  return img;
}

Int SymPoly::eval(const Int& z) const {
  Int acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::uint64_t q_target(const Bounds& bounds) {
  const Bounds b = bounds.normalized();
  return b.BT * (b.BN + 1) + 1;
}

namespace {

OracleConfig interp_config(const Bounds& b, double mu) {
  OracleConfig c;
  c.beta1 = 2 * b.BH * b.BT;
  c.beta2 = b.BN * b.BT * (b.BT - 1) / 2;
  c.ell = std::max(2 * b.BH + 1, b.BN);
  c.mu = mu;
  return c;
}

}  // namespace

ImageCollector::ImageCollector(const Bounds& bounds, const InterpOptions& options)
    : bounds_(bounds.normalized()),
      options_(options),
      stream_(interp_config(bounds_, options.mu), options.max_regenerations) {}

bool ImageCollector::satisfied() const {
  return product_ >= (Int(1) << (2 * bounds_.BH + 1)) && lcm_ >= (Int(1) << q_target(bounds_)) &&
         stream_.guarantee_reached(1);
}

void ImageCollector::recompute() {
  product_ = 1;
  lcm_ = 1;
  for (const auto& img : images_) {
    product_ *= static_cast<unsigned long>(img.p);
    mpz_lcm_ui(lcm_.get_mpz_t(), lcm_.get_mpz_t(), static_cast<unsigned long>(img.p - 1));
  }
}

void ImageCollector::collect(const ModularBlackBox& bb, bool require_new) {
  bool added = false;
  while (!satisfied() || (require_new && !added)) {
    const std::uint64_t p = stream_.next_prime();
    ++drawn_;
    DensePolyMod fp;
    try {
      fp = reduce_mod(bb, p, options_.reduce);
    } catch (const DenominatorVanished&) {
      stream_.reject(p);
      continue;
    }
    PrimeImage img = make_image(fp);
    const long t = static_cast<long>(img.tau());
    if (img.tau() > bounds_.BT) {
      throw NoReconstruction("an image modulo " + std::to_string(p) + " has " + std::to_string(img.tau()) +
                             " terms, more than BT = " + std::to_string(bounds_.BT));
    }
    if (t > best_tau_) {
      // every image kept so far lost a term modulo its prime
      best_tau_ = t;
      images_.clear();
    } else if (t < best_tau_) {
      continue;
    }
    images_.push_back(std::move(img));
    recompute();
    added = true;
  }
}

void ImageCollector::drop_newest() {
  if (images_.empty()) return;
  images_.pop_back();
  recompute();
}

std::vector<PrimeImage> collect_images(const ModularBlackBox& bb, const Bounds& bounds, const InterpOptions& options) {
  ImageCollector c(bounds, options);
  c.collect(bb);
  return c.images();
}

DensePolyMod build_g_image(const std::vector<std::uint64_t>& exponents, std::uint64_t m) {
  if (m < 2) throw std::invalid_argument("build_g_image needs a modulus of at least 2");
  std::vector<std::uint64_t> g{1};
  for (std::uint64_t e : exponents) {
    // g <- g * (z - e)
    const std::uint64_t root = e % m;
    g.push_back(0);
    for (std::size_t k = g.size() - 1; k > 0; --k) g[k] = sub_mod(g[k - 1], mul_mod(g[k], root, m), m);
    g[0] = sub_mod(0, mul_mod(g[0], root, m), m);
  }
  return DensePolyMod(m, std::move(g));
}

SymPoly recover_g(const std::vector<PrimeImage>& images) {
  if (images.empty()) throw std::invalid_argument("recover_g needs at least one image");
  const std::size_t t = images.front().tau();
  std::vector<Residue> acc(t + 1, Residue(0, 1));
  for (const auto& img : images) {
    if (img.tau() != t) throw std::invalid_argument("images disagree in the number of terms");
    DensePolyMod gi = build_g_image(img.exponents, img.p - 1);
    const Int m = static_cast<unsigned long>(img.p - 1);
    for (std::size_t k = 0; k <= t; ++k) {
      acc[k] = crt_pair(acc[k], Residue(Int(static_cast<unsigned long>(gi[k])), m));
    }
  }
  SymPoly g;
  for (const auto& r : acc) g.coeffs.push_back(r.symmetric());
  g.coeffs.back() = 1;
  return g;
}

std::vector<std::uint64_t> integer_roots(const SymPoly& g, const Int& bound, std::uint64_t seed) {
  const std::size_t t = g.degree();
  if (g.coeffs.empty() || g.coeffs.back() != 1) throw std::invalid_argument("integer_roots needs a monic polynomial");
  std::vector<std::uint64_t> out;
  if (t == 0) return out;
  if (bound > (Int(1) << 60)) throw std::domain_error("exponent bound above 2^60 is not supported");
  if (t == 1) {
    const Int e = -g.coeffs[0];
    if (e < 1 || e > bound) throw NotSplitting("linear exponent polynomial has no root in range");
    out.push_back(e.get_ui());
    return out;
  }
  // every root lies in [1, bound], so its residue modulo r > 4 * bound is the root itself
  const std::uint64_t r = next_prime_above(static_cast<std::uint64_t>(Int(4 * bound).get_ui()));
  const Int rz = static_cast<unsigned long>(r);
  std::vector<std::uint64_t> reduced;
  for (const auto& c : g.coeffs) reduced.push_back(rem(c, rz).get_ui());
  for (std::uint64_t u : roots_mod_prime(reduced, r, seed)) {
    const Int e = static_cast<unsigned long>(u);
    if (e >= 1 && e <= bound && g.eval(e) == 0) out.push_back(u);
  }
  if (out.size() != t) {
    throw NotSplitting("exponent polynomial of degree " + std::to_string(t) + " has only " +
                       std::to_string(out.size()) + " admissible integer roots");
  }
  return out;
}

ShiftedLacunary match_and_recover(const std::vector<std::uint64_t>& roots, const std::vector<PrimeImage>& images,
                                  std::uint64_t BH) {
  if (images.empty()) throw std::invalid_argument("match_and_recover needs at least one image");
  const Int bound = Int(1) << BH;
  ShiftedLacunary f;
  Residue c0(0, 1);
  for (const auto& img : images) c0 = crt_pair(c0, Residue(Int(static_cast<unsigned long>(img.constant)),
                                                           Int(static_cast<unsigned long>(img.p))));
  f.constant = rational_reconstruct(c0, bound);

  for (std::size_t j = 0; j < images.size(); ++j) {
    std::vector<std::uint64_t> wanted;
    for (std::uint64_t e : roots) wanted.push_back(remo(e, images[j].p - 1));
    std::vector<std::uint64_t> sorted = wanted;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw AmbiguousMatch("two exponents collide modulo " + std::to_string(images[j].p - 1));
    }
  }
  for (std::uint64_t e : roots) {
    Residue c(0, 1);
    for (const auto& img : images) {
      const std::uint64_t target = remo(e, img.p - 1);
      auto it = std::lower_bound(img.exponents.begin(), img.exponents.end(), target);
      if (it == img.exponents.end() || *it != target) {
        throw NoMatch("exponent " + std::to_string(e) + " has no image modulo " + std::to_string(img.p));
      }
      const std::uint64_t coeff = img.coeffs[static_cast<std::size_t>(it - img.exponents.begin())];
      c = crt_pair(c, Residue(Int(static_cast<unsigned long>(coeff)), Int(static_cast<unsigned long>(img.p))));
    }
    f.terms.push_back({rational_reconstruct(c, bound), e});
  }
  f.normalize();
  return f;
}

ShiftedLacunary sparse_interpolate(const ModularBlackBox& bb, const Bounds& bounds_in, const InterpOptions& options) {
  const Bounds b = bounds_in.normalized();
  ImageCollector collector(b, options);
  std::exception_ptr last;
  for (unsigned attempt = 0; attempt <= options.max_retries; ++attempt) {
    collector.collect(bb, attempt > 0);
    try {
      const auto& images = collector.images();
      SymPoly g = recover_g(images);
      auto roots = integer_roots(g, Int(1) << b.BN, options.seed + attempt);
      return match_and_recover(roots, images, b.BH);
    } catch (const ReconstructionFailure&) {
      // with a full set of good images this cannot happen; the newest image is the suspect
      last = std::current_exception();
      collector.drop_newest();
    }
  }
  std::rethrow_exception(last);
}

ShiftedLacunary interpolate_with_shift(const ModularBlackBox& bb, const Bounds& bounds, const Rat& alpha,
                                       const InterpOptions& options) {
  BlackBoxPtr view(&bb, [](const ModularBlackBox*) {});
  auto shifted = shifted_blackbox(view, alpha);
  ShiftedLacunary f = sparse_interpolate(*shifted, bounds, options);
  f.shift = alpha;
  return f;
}

ShiftedLacunary full_interpolate(const ModularBlackBox& bb, const Bounds& bounds, const InterpOptions& options) {
  ShiftOptions so;
  so.reduce = options.reduce;
  so.mu = options.mu;
  so.max_regenerations = options.max_regenerations;
  ShiftResult s = sparsest_shift(bb, bounds, so);
  if (s.path == ShiftPath::DenseFallback) {
    ShiftedLacunary f = to_lacunary(*s.dense, s.alpha);
    f.normalize();
    return f;
  }
  return interpolate_with_shift(bb, bounds, s.alpha, options);
}

}  // namespace lacuna
