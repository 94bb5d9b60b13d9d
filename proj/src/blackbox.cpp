#include "lacuna/blackbox.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <thread>

#include "lacuna/errors.hpp"

namespace lacuna {

// ---------------------------------------------------------------------------
// Representations
// ---------------------------------------------------------------------------

void ShiftedLacunary::normalize() {
  shift.canonicalize();
  constant.canonicalize();
  std::map<std::uint64_t, Rat> merged;
  for (auto& t : terms) {
    if (t.exp == 0) throw std::invalid_argument("term exponents must be >= 1");
    merged[t.exp] += t.coeff;
  }
  terms.clear();
  for (auto& [e, c] : merged) {
    if (c != 0) terms.push_back({c, e});
  }
}

namespace {

Rat rat_pow(const Rat& base, std::uint64_t e) {
  Int num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  return Rat(num, den);  // already in lowest terms
}

}  // namespace

Rat ShiftedLacunary::eval(const Rat& x) const {
  Rat y = x - shift;
  Rat acc = constant;
  for (const auto& t : terms) acc += t.coeff * rat_pow(y, t.exp);
  return acc;
}

RationalPoly::RationalPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rat RationalPoly::eval(const Rat& x) const {
  Rat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RationalPoly taylor_shift(const RationalPoly& f, const Rat& gamma) {
  std::vector<Rat> a = f.coeffs();
  const std::size_t n = a.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j-- > i;) a[j] += gamma * a[j + 1];
  }
  return RationalPoly(std::move(a));
}

std::size_t tau(const RationalPoly& f) {
  const auto& c = f.coeffs();
  if (c.size() <= 1) return 0;
  return static_cast<std::size_t>(std::count_if(c.begin() + 1, c.end(), [](const Rat& x) { return x != 0; }));
}

RationalPoly expand(const ShiftedLacunary& f) {
  std::vector<Rat> out(f.degree() + 1, Rat(0));
  out[0] = f.constant;
  const Rat minus_alpha = -f.shift;
  for (const auto& t : f.terms) {
    // c * sum_k C(e,k) x^k (-alpha)^(e-k)
    Int binom = 1;
    std::vector<Rat> powers(t.exp + 1);
    powers[0] = 1;
    for (std::uint64_t k = 1; k <= t.exp; ++k) powers[k] = powers[k - 1] * minus_alpha;
    for (std::uint64_t k = 0; k <= t.exp; ++k) {
      out[k] += t.coeff * Rat(binom) * powers[t.exp - k];
      binom = binom * (t.exp - k) / (k + 1);
    }
  }
  return RationalPoly(std::move(out));
}

ShiftedLacunary to_lacunary(const RationalPoly& f, const Rat& alpha) {
  RationalPoly g = taylor_shift(f, alpha);
  ShiftedLacunary out;
  out.shift = alpha;
  out.constant = g[0];
  for (std::size_t k = 1; k < g.coeffs().size(); ++k) {
    if (g.coeffs()[k] != 0) out.terms.push_back({g.coeffs()[k], k});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Black boxes
// ---------------------------------------------------------------------------

std::uint64_t ModularBlackBox::eval(std::uint64_t p, std::uint64_t theta) const {
  return eval_big(Int(static_cast<unsigned long>(p)), Int(static_cast<unsigned long>(theta))).get_ui();
}

void ModularBlackBox::eval_range(std::uint64_t p, std::uint64_t first, std::span<std::uint64_t> out) const {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = eval(p, (first + i) % p);
}

namespace {

Int pow_mod_big(const Int& base, std::uint64_t e, const Int& m) {
  Int r, ex = static_cast<unsigned long>(e);
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), ex.get_mpz_t(), m.get_mpz_t());
  return r;
}

struct LacunaryResidues {
  std::uint64_t shift = 0;
  std::uint64_t constant = 0;
  std::vector<std::uint64_t> coeffs;
  std::vector<std::uint64_t> exps;  // remo(e, p - 1): y^e = y^remo(e, p - 1) on all of Z_p
};

LacunaryResidues reduce_lacunary(const ShiftedLacunary& f, std::uint64_t p) {
  LacunaryResidues r;
  r.shift = rat_mod(f.shift, p);
  r.constant = rat_mod(f.constant, p);
  r.coeffs.reserve(f.terms.size());
  for (const auto& t : f.terms) {
    r.coeffs.push_back(rat_mod(t.coeff, p));
    r.exps.push_back(remo(t.exp, p - 1));
  }
  return r;
}

std::uint64_t eval_lacunary(const LacunaryResidues& r, const FastMod& fm, std::uint64_t theta) {
  const std::uint64_t y = fm.sub(theta % fm.modulus(), r.shift);
  std::uint64_t acc = r.constant;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) acc = fm.add(acc, fm.mul(r.coeffs[i], fm.pow(y, r.exps[i])));
  return acc;
}

}  // namespace

LacunaryBlackBox::LacunaryBlackBox(ShiftedLacunary f) : f_(std::move(f)) { f_.normalize(); }

std::uint64_t LacunaryBlackBox::eval(std::uint64_t p, std::uint64_t theta) const {
  if (p >= (std::uint64_t{1} << 32)) return ModularBlackBox::eval(p, theta);
  return eval_lacunary(reduce_lacunary(f_, p), FastMod(p), theta);
}

Int LacunaryBlackBox::eval_big(const Int& p, const Int& theta) const {
  Int y = rem(theta - rat_mod(f_.shift, p), p);
  Int acc = rat_mod(f_.constant, p);
  for (const auto& t : f_.terms) acc += rat_mod(t.coeff, p) * pow_mod_big(y, t.exp, p);
  return rem(acc, p);
}

void LacunaryBlackBox::eval_range(std::uint64_t p, std::uint64_t first, std::span<std::uint64_t> out) const {
  if (p >= (std::uint64_t{1} << 32)) return ModularBlackBox::eval_range(p, first, out);
  const auto r = reduce_lacunary(f_, p);
  const FastMod fm(p);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = eval_lacunary(r, fm, (first + i) % p);
}

std::uint64_t LacunaryBlackBox::cost_hint() const {
  std::uint64_t ops = 1;
  for (const auto& t : f_.terms) ops += 2 + 2 * bit_length(Int(static_cast<unsigned long>(t.exp)));
  return ops;
}

DenseBlackBox::DenseBlackBox(RationalPoly f) : f_(std::move(f)) {}

std::uint64_t DenseBlackBox::eval(std::uint64_t p, std::uint64_t theta) const {
  std::uint64_t acc = 0;
  theta %= p;
  const auto& c = f_.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = add_mod(mul_mod(acc, theta, p), rat_mod(*it, p), p);
  return acc;
}

Int DenseBlackBox::eval_big(const Int& p, const Int& theta) const {
  Int acc = 0;
  const auto& c = f_.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = rem(acc * theta + rat_mod(*it, p), p);
  return acc;
}

void DenseBlackBox::eval_range(std::uint64_t p, std::uint64_t first, std::span<std::uint64_t> out) const {
  std::vector<std::uint64_t> c;
  c.reserve(f_.coeffs().size());
  for (const auto& a : f_.coeffs()) c.push_back(rat_mod(a, p));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint64_t x = (first + i) % p;
    std::uint64_t acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = add_mod(mul_mod(acc, x, p), *it, p);
    out[i] = acc;
  }
}

std::uint64_t DenseBlackBox::cost_hint() const { return 2 * f_.coeffs().size(); }

ProgramBlackBox::ProgramBlackBox(std::vector<Instruction> program) : program_(std::move(program)) {
  if (program_.empty()) throw std::invalid_argument("empty program");
  for (std::size_t i = 0; i < program_.size(); ++i) {
    const auto& ins = program_[i];
    const bool binary = ins.op == Instruction::Op::Add || ins.op == Instruction::Op::Sub ||
                        ins.op == Instruction::Op::Mul;
    if ((binary || ins.op == Instruction::Op::Pow) && ins.lhs >= i) {
      throw std::invalid_argument("instruction refers to a later register");
    }
    if (binary && ins.rhs >= i) throw std::invalid_argument("instruction refers to a later register");
  }
}

std::uint64_t ProgramBlackBox::eval(std::uint64_t p, std::uint64_t theta) const {
  std::vector<std::uint64_t> reg(program_.size());
  for (std::size_t i = 0; i < program_.size(); ++i) {
    const auto& ins = program_[i];
    switch (ins.op) {
      case Instruction::Op::Const: reg[i] = rat_mod(ins.value, p); break;
      case Instruction::Op::Var: reg[i] = theta % p; break;
      case Instruction::Op::Add: reg[i] = add_mod(reg[ins.lhs], reg[ins.rhs], p); break;
      case Instruction::Op::Sub: reg[i] = sub_mod(reg[ins.lhs], reg[ins.rhs], p); break;
      case Instruction::Op::Mul: reg[i] = mul_mod(reg[ins.lhs], reg[ins.rhs], p); break;
      case Instruction::Op::Pow: reg[i] = pow_mod(reg[ins.lhs], ins.power, p); break;
    }
  }
  return reg.back();
}

Int ProgramBlackBox::eval_big(const Int& p, const Int& theta) const {
  std::vector<Int> reg(program_.size());
  for (std::size_t i = 0; i < program_.size(); ++i) {
    const auto& ins = program_[i];
    switch (ins.op) {
      case Instruction::Op::Const: reg[i] = rat_mod(ins.value, p); break;
      case Instruction::Op::Var: reg[i] = rem(theta, p); break;
      case Instruction::Op::Add: reg[i] = rem(reg[ins.lhs] + reg[ins.rhs], p); break;
      case Instruction::Op::Sub: reg[i] = rem(reg[ins.lhs] - reg[ins.rhs], p); break;
      case Instruction::Op::Mul: reg[i] = rem(reg[ins.lhs] * reg[ins.rhs], p); break;
      case Instruction::Op::Pow: reg[i] = pow_mod_big(reg[ins.lhs], ins.power, p); break;
    }
  }
  return reg.back();
}

std::uint64_t ProgramBlackBox::cost_hint() const {
  std::uint64_t ops = 0;
  for (const auto& ins : program_) {
    ops += ins.op == Instruction::Op::Pow ? 2 * bit_length(Int(static_cast<unsigned long>(ins.power))) : 1;
  }
  return ops;
}

ShiftedBlackBox::ShiftedBlackBox(BlackBoxPtr inner, Rat alpha) : inner_(std::move(inner)), alpha_(std::move(alpha)) {
  if (!inner_) throw std::invalid_argument("null black box");
}

std::uint64_t ShiftedBlackBox::eval(std::uint64_t p, std::uint64_t theta) const {
  return inner_->eval(p, add_mod(theta % p, rat_mod(alpha_, p), p));
}

Int ShiftedBlackBox::eval_big(const Int& p, const Int& theta) const {
  return inner_->eval_big(p, rem(theta + rat_mod(alpha_, p), p));
}

void ShiftedBlackBox::eval_range(std::uint64_t p, std::uint64_t first, std::span<std::uint64_t> out) const {
  inner_->eval_range(p, add_mod(first % p, rat_mod(alpha_, p), p), out);
}

std::uint64_t CountingBlackBox::eval(std::uint64_t p, std::uint64_t theta) const {
  ++calls_;
  return inner_->eval(p, theta);
}

Int CountingBlackBox::eval_big(const Int& p, const Int& theta) const {
  ++calls_;
  return inner_->eval_big(p, theta);
}

void CountingBlackBox::eval_range(std::uint64_t p, std::uint64_t first, std::span<std::uint64_t> out) const {
  calls_ += out.size();
  inner_->eval_range(p, first, out);
}

BlackBoxPtr make_blackbox(const ShiftedLacunary& f) { return std::make_shared<LacunaryBlackBox>(f); }
BlackBoxPtr make_blackbox(const RationalPoly& f) { return std::make_shared<DenseBlackBox>(f); }

BlackBoxPtr shifted_blackbox(BlackBoxPtr bb, const Rat& alpha) {
  return std::make_shared<ShiftedBlackBox>(std::move(bb), alpha);
}

DensePolyMod reduce_mod(const ModularBlackBox& bb, std::uint64_t p, const ReduceOptions& options) {
  if (p >= (std::uint64_t{1} << 32) || !is_prime(p)) throw std::invalid_argument("reduce_mod needs a word-size prime");
  std::vector<std::uint64_t> values(p);
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(p / 1024 + 1)));
  if (threads == 1) {
    bb.eval_range(p, 0, values);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::uint64_t chunk = (p + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t lo = t * chunk, hi = std::min(p, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&, t, lo, hi] {
        try {
          bb.eval_range(p, lo, std::span<std::uint64_t>(values).subspan(lo, hi - lo));
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  return interpolate_range(values, p, options.interpolation);
}

}  // namespace lacuna
