#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "swerect/algebra.hpp"
#include "swerect/boundary.hpp"
#include "swerect/cli.hpp"
#include "swerect/error.hpp"
#include "swerect/evolve.hpp"
#include "swerect/fields.hpp"
#include "swerect/regime.hpp"
#include "swerect/spatial_operator.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace swerect;

namespace {

Regime parse_regime(const std::string& name) {
  if (auto r = regime_from_string(name)) return *r;
  throw Error(ErrorKind::InvalidValue, "unknown regime '" + name + "'");
}

// (nx, ny, 3) array of (u, v, phi).
py::array_t<double> to_array(const StateField& U) {
  const Grid& g = U.grid();
  py::array_t<double> out({g.nx, g.ny, std::size_t{3}});
  auto a = out.mutable_unchecked<3>();
  for (std::size_t i = 0; i < g.nx; ++i) {
    for (std::size_t j = 0; j < g.ny; ++j) {
      for (int c = 0; c < 3; ++c) a(i, j, c) = U(i, j)[c];
    }
  }
  return out;
}

StateField from_array(const Grid& g, const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
  if (arr.ndim() != 3 || static_cast<std::size_t>(arr.shape(0)) != g.nx ||
      static_cast<std::size_t>(arr.shape(1)) != g.ny || arr.shape(2) != 3) {
    throw Error(ErrorKind::ShapeMismatch, "initial state must have shape (nx, ny, 3)");
  }
  auto a = arr.unchecked<3>();
  StateField U(g);
  for (std::size_t i = 0; i < g.nx; ++i) {
    for (std::size_t j = 0; j < g.ny; ++j) U(i, j) = Vec3(a(i, j, 0), a(i, j, 1), a(i, j, 2));
  }
  return U;
}

py::dict run_free(const PhysicalConstants& p, std::size_t nx, std::size_t ny, double L1, double L2, double t_end,
                  double cfl, const std::string& scheme, std::uint64_t seed, py::object initial) {
  RunConfig cfg;
  cfg.p = p;
  cfg.grid = Grid::make(L1, L2, nx, ny);
  cfg.t_end = t_end;
  cfg.cfl = cfl;
  if (auto s = scheme_from_string(scheme)) {
    cfg.scheme = *s;
  } else {
    throw Error(ErrorKind::InvalidValue, "unknown scheme '" + scheme + "'");
  }
  if (initial.is_none()) {
    SplitMix64 rng(seed);
    cfg.initial = band_limited_field(cfg.grid, default_probe_modes(cfg.grid), rng);
  } else {
    cfg.initial = from_array(cfg.grid, initial.cast<py::array_t<double, py::array::c_style | py::array::forcecast>>());
  }
  RunResult res;
  {
    py::gil_scoped_release release;
    res = run(cfg);
  }
  std::vector<double> t, e;
  for (const EnergyEntry& en : res.log.entries()) {
    t.push_back(en.t);
    e.push_back(en.energy);
  }
  return py::dict("state"_a = to_array(res.final_state), "t"_a = py::array(py::cast(t)),
                  "energy"_a = py::array(py::cast(e)), "steps"_a = res.steps, "dt"_a = res.dt,
                  "contraction"_a = contraction_check(res.log).pass);
}

}  // namespace

PYBIND11_MODULE(_swerect, m) {
  m.doc() = "Linearized shallow water equations on a rectangle";

  static py::exception<Error> error(m, "SweRectError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr ptr) {
    try {
      if (ptr) std::rethrow_exception(ptr);
    } catch (const Error& e) {
      py::object exc = py::handle(error)(std::string(to_string(e.kind())) + ": " + e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<PhysicalConstants>(m, "PhysicalConstants")
      .def(py::init([](double u0, double v0, double phi0, double g, double f) {
             return validate_params(u0, v0, phi0, g, f);
           }),
           "u0"_a, "v0"_a, "phi0"_a, "g"_a, "f"_a = 0.0)
      .def_readonly("u0", &PhysicalConstants::u0)
      .def_readonly("v0", &PhysicalConstants::v0)
      .def_readonly("phi0", &PhysicalConstants::phi0)
      .def_readonly("g", &PhysicalConstants::g)
      .def_readonly("f", &PhysicalConstants::f)
      .def_property_readonly("delta", &PhysicalConstants::delta)
      .def("__repr__", [](const PhysicalConstants& p) {
        std::ostringstream os;
        os.precision(17);
        os << "PhysicalConstants(u0=" << p.u0 << ", v0=" << p.v0 << ", phi0=" << p.phi0 << ", g=" << p.g
           << ", f=" << p.f << ")";
        return os.str();
      });

  m.def("classify", [](const PhysicalConstants& p) { return std::string(to_string(classify(p))); }, "p"_a);
  m.def("kappa", [](const PhysicalConstants& p) {
    const KappaValue k = kappa(p);
    return py::make_tuple(k.value, k.kind == KappaKind::Kappa0 ? "kappa0" : "kappa1");
  }, "p"_a);
  m.def("from_primitive_mode", [](double U0, double V0, double Nsq, double lambda, double f) {
    const PrimitiveModeMapping mp = from_primitive_mode(U0, V0, Nsq, lambda, f);
    return py::make_tuple(mp.constants, mp.phi_sign);
  }, "U0"_a, "V0"_a, "Nsq"_a, "lam"_a, "f"_a = 0.0);

  m.def("coefficient_matrices", [](const PhysicalConstants& p) {
    const CoefficientMatrices c = coefficient_matrices(p);
    return py::dict("E1"_a = c.E1, "E2"_a = c.E2, "S0"_a = c.S0);
  }, "p"_a);
  m.def("verify_diagonalization", [](const PhysicalConstants& p, double tol) {
    const DiagnosticReport r = verify_diagonalization(p, tol);
    return py::dict("regime"_a = std::string(to_string(r.regime)), "congruence_x"_a = r.congruence_x,
                    "congruence_y"_a = r.congruence_y, "similarity"_a = r.similarity, "pass"_a = r.pass);
  }, "p"_a, "tol"_a = 1e-10);
  m.def("incoming_counts", [](const PhysicalConstants& p) {
    const IncomingCountReport r = incoming_count_check(p, classify(p));
    return py::dict("expected"_a = r.expected, "actual"_a = r.actual, "pass"_a = r.pass);
  }, "p"_a);
  m.def("boundary_form_min", [](const PhysicalConstants& p, bool adjoint) {
    return boundary_quadratic_forms(p, classify(p), adjoint ? CatalogKind::Adjoint : CatalogKind::Operator)
        .min_normalized();
  }, "p"_a, "adjoint"_a = false);

  m.def("positivity_probe", [](const PhysicalConstants& p, std::size_t n, std::size_t samples, std::uint64_t seed) {
    ProbeReport r;
    {
      py::gil_scoped_release release;
      r = positivity_probe(p, classify(p), Grid::make(1, 1, n, n), samples, seed);
    }
    return py::dict("min_quotient"_a = r.min_quotient, "max_quotient"_a = r.max_quotient, "bound"_a = r.bound,
                    "pass"_a = r.pass);
  }, "p"_a, "n"_a = 32, "samples"_a = 50, "seed"_a = 1);

  m.def("run_free", &run_free, "Homogeneous run with F = 0 and zero boundary data.", "p"_a, "nx"_a, "ny"_a,
        "L1"_a = 1.0, "L2"_a = 1.0, "t_end"_a = 1.0, "cfl"_a = 0.45, "scheme"_a = "ssp-rk2", "seed"_a = 0,
        "initial"_a = py::none());

  m.def("mms_convergence", [](const PhysicalConstants& p, std::size_t n0, std::size_t levels, double t_end) {
    MmsReport r;
    {
      py::gil_scoped_release release;
      r = mms_convergence(trig_packet(), p, classify(p), refinement_sequence(Grid::make(1, 1, n0, n0), levels), t_end);
    }
    std::vector<double> errors;
    for (const MmsLevel& l : r.levels) errors.push_back(l.error);
    return py::dict("errors"_a = errors, "orders"_a = r.orders, "observed_order"_a = r.observed_order,
                    "reduction"_a = r.reduction);
  }, "p"_a, "n0"_a = 17, "levels"_a = 3, "t_end"_a = 0.2);

  m.def("cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = swerect::cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, "args"_a, "Run the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
