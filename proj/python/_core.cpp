#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "lacuna/cli.hpp"
#include "lacuna/errors.hpp"
#include "lacuna/poly_json.hpp"
#include "lacuna/sparse_interp.hpp"

namespace py = pybind11;
using namespace lacuna;

namespace {

py::int_ to_py(const Int& z) { return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(z.get_str().c_str(), nullptr, 10))); }

Int from_py(const py::handle& h) { return Int(py::str(h).cast<std::string>()); }

// A black box backed by a Python callable f(p, theta) -> int. Raising
// ZeroDivisionError means the denominator vanishes modulo p.
class CallableBlackBox final : public ModularBlackBox {
 public:
  explicit CallableBlackBox(py::function fn) : fn_(std::move(fn)) {}

  Int eval_big(const Int& p, const Int& theta) const override {
    py::gil_scoped_acquire gil;
    py::object v;
    try {
      v = fn_(to_py(p), to_py(theta));
    } catch (py::error_already_set& e) {
      if (e.matches(PyExc_ZeroDivisionError)) throw DenominatorVanished("callable reported a vanishing denominator");
      throw;
    }
    return rem(from_py(v), p);
  }

  std::uint64_t cost_hint() const override { return 1000; }

 private:
  py::function fn_;
};

BlackBoxPtr box_from(const py::object& source) {
  if (py::isinstance<py::str>(source)) return make_blackbox(parse_polynomial(source.cast<std::string>()));
  if (py::isinstance<py::function>(source) || PyCallable_Check(source.ptr())) {
    return std::make_shared<CallableBlackBox>(source.cast<py::function>());
  }
  throw std::invalid_argument("expected polynomial JSON text or a callable f(p, theta)");
}

Bounds bounds_from(const std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t>& b) {
  auto [ba, bt, bh, bn] = b;
  if (ba == 0 || bt == 0 || bh == 0 || bn == 0) throw std::invalid_argument("bounds must be positive");
  return {ba, bt, bh, bn};
}

ReduceOptions reduce_opts(unsigned threads) {
  ReduceOptions r;
  r.threads = threads;
  return r;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sparsest-shift interpolation of rational polynomials from modular black boxes";

  auto base = py::register_exception<Error>(m, "LacunaError", PyExc_RuntimeError);
  auto recon = py::register_exception<ReconstructionFailure>(m, "ReconstructionFailure", base.ptr());
  auto evalf = py::register_exception<EvaluationFailure>(m, "EvaluationFailure", base.ptr());
  py::register_exception<DenominatorVanished>(m, "DenominatorVanished", evalf.ptr());
  (void)recon;

  m.def("canonical", [](const std::string& text) { return to_json(parse_polynomial(text)); },
        "Canonical JSON of a polynomial given as JSON text.");

  m.def("tight_bounds", [](const std::string& text) {
    auto poly = parse_polynomial(text);
    if (!std::holds_alternative<ShiftedLacunary>(poly)) throw std::invalid_argument("tight bounds need the shifted form");
    Bounds b = tight_bounds(std::get<ShiftedLacunary>(poly));
    return std::make_tuple(b.BA, b.BT, b.BH, b.BN);
  });

  m.def(
      "evaluate",
      [](const py::object& box, const py::object& p, const py::object& theta) {
        BlackBoxPtr bb = box_from(box);
        const Int pz = from_py(p);
        return to_py(bb->eval_big(pz, rem(from_py(theta), pz)));
      },
      py::arg("box"), py::arg("p"), py::arg("theta"));

  m.def(
      "reduce",
      [](const py::object& box, std::uint64_t p, unsigned threads) {
        BlackBoxPtr bb = box_from(box);
        if (!py::isinstance<py::str>(box)) threads = 1;
        py::gil_scoped_release release;
        return reduce_mod(*bb, p, reduce_opts(threads)).coeffs();
      },
      py::arg("box"), py::arg("p"), py::arg("threads") = 1);

  m.def(
      "sparsest_shift",
      [](const py::object& box, const std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t>& bounds,
         double mu) {
        BlackBoxPtr bb = box_from(box);
        ShiftOptions so;
        so.mu = mu;
        ShiftResult r;
        {
          py::gil_scoped_release release;
          r = sparsest_shift(*bb, bounds_from(bounds), so);
        }
        py::dict out;
        out["alpha"] = to_string(r.alpha);
        out["path"] = r.path == ShiftPath::Modular ? "modular" : "dense";
        out["residues"] = r.residues;
        out["primes_drawn"] = r.primes_drawn;
        return out;
      },
      py::arg("box"), py::arg("bounds"), py::arg("mu") = 1.0);

  m.def(
      "interpolate",
      [](const py::object& box, const std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t>& bounds,
         std::optional<std::string> assume_shift, double mu, std::uint64_t seed) {
        BlackBoxPtr bb = box_from(box);
        InterpOptions o;
        o.mu = mu;
        o.seed = seed;
        const Bounds b = bounds_from(bounds);
        ShiftedLacunary f;
        {
          py::gil_scoped_release release;
          f = assume_shift ? interpolate_with_shift(*bb, b, parse_rat(*assume_shift), o) : full_interpolate(*bb, b, o);
        }
        return to_json(f);
      },
      py::arg("box"), py::arg("bounds"), py::arg("assume_shift") = py::none(), py::arg("mu") = 1.0,
      py::arg("seed") = 0);

  m.def("s_of_q", &s_of_q, py::arg("q"), py::arg("cap_exponent") = kDefaultCapExponent);

  m.def(
      "oracle",
      [](std::uint64_t beta1, std::uint64_t beta2, std::uint64_t ell, double mu) {
        Reservoir r = generate({beta1, beta2, ell, mu});
        std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> primes;
        for (const auto& e : r.primes) primes.emplace_back(e.p, e.q, e.k);
        py::dict out;
        out["n"] = r.n;
        out["mu"] = r.mu;
        out["primes"] = primes;
        return out;
      },
      py::arg("beta1"), py::arg("beta2"), py::arg("ell"), py::arg("mu") = 1.0);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = run_cli(args, out, err);
    }
    return std::make_tuple(code, out.str(), err.str());
  });
}
