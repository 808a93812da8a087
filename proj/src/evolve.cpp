#include "swerect/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

#include "swerect/algebra.hpp"
#include "swerect/error.hpp"
#include "swerect/parallel.hpp"

namespace swerect {

std::string_view to_string(TimeScheme s) noexcept {
  switch (s) {
    case TimeScheme::SspRk2: return "ssp-rk2";
    case TimeScheme::ForwardEuler: return "forward-euler";
  }
  return "unknown";
}

std::optional<TimeScheme> scheme_from_string(std::string_view name) noexcept {
  if (name == "ssp-rk2") return TimeScheme::SspRk2;
  if (name == "forward-euler") return TimeScheme::ForwardEuler;
  return std::nullopt;
}

void RunConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 0.9)) throw Error(ErrorKind::InvalidValue, "cfl must lie in (0, 0.9]");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw Error(ErrorKind::InvalidValue, "t_end must be positive");
  require_same_grid(grid, initial.grid(), "initial state");
}

void EnergyLog::append(double t, double energy) {
  if (!entries_.empty() && !(t > entries_.back().t)) {
    std::ostringstream os;
    os << "energy log times must increase strictly (" << t << " after " << entries_.back().t << ")";
    throw Error(ErrorKind::InvalidValue, os.str());
  }
  entries_.push_back({t, energy});
}

double cfl_dt(const PhysicalConstants& p, const Grid& grid, double cfl) {
  const double c = p.wave_speed();
  return cfl / ((p.u0 + c) / grid.dx() + (p.v0 + c) / grid.dy());
}

Stepper::Stepper(const RunConfig& cfg)
    : cfg_(cfg),
      op_(cfg.p),
      enforcer_(bc_catalog(classify(cfg.p), cfg.p), cfg.p, cfg.grid, cfg.enforcement),
      max_dt_(cfl_dt(cfg.p, cfg.grid, cfg.cfl)) {
  cfg_.initial = StateField();
}

StateField Stepper::rhs(const StateField& U, double t) const {
  StateField out = cfg_.spatial_terms ? op_.apply(U) : StateField(U.grid());
  out += apply_B(U, cfg_.p);
  out *= -1.0;
  if (cfg_.forcing) out += cfg_.forcing(t);
  return out;
}

void Stepper::enforce(StateField& U, double t) const {
  if (cfg_.spatial_terms) enforcer_.apply(U, cfg_.boundary_data, t);
}

StateField Stepper::step(const StateField& U, double dt, double t) const {
  if (!(dt > 0.0) || dt > max_dt_ * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "dt = " << dt << " exceeds the CFL limit " << max_dt_;
    throw Error(ErrorKind::CflViolation, os.str());
  }
  StateField U1 = U;
  U1.axpy(dt, rhs(U, t));
  enforce(U1, t + dt);
  if (cfg_.scheme == TimeScheme::ForwardEuler) return U1;

  StateField U2 = U1;
  U2.axpy(dt, rhs(U1, t + dt));
  U2 += U;
  U2 *= 0.5;
  enforce(U2, t + dt);
  return U2;
}

StateField step(const StateField& state, double dt, double t, const RunConfig& cfg) {
  return Stepper(cfg).step(state, dt, t);
}

std::size_t step_count(const RunConfig& cfg) {
  const double ratio = cfg.t_end / cfl_dt(cfg.p, cfg.grid, cfg.cfl);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(ratio * (1.0 - 1e-12))));
}

RunResult run(const RunConfig& cfg) {
  cfg.validate();
  const Stepper stepper(cfg);
  const std::size_t n = step_count(cfg);
  const double dt = cfg.t_end / static_cast<double>(n);

  RunResult r;
  r.dt = dt;
  StateField U = cfg.initial;
  stepper.enforce(U, 0.0);
  r.log.append(0.0, energy(U, cfg.p));
  if (cfg.snapshot_cadence > 0) r.snapshots.push_back({0, 0.0, U});

  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * dt;
    U = stepper.step(U, dt, t);
    const double t_next = (k + 1 == n) ? cfg.t_end : static_cast<double>(k + 1) * dt;
    if (!U.all_finite()) {
      std::ostringstream os;
      os << "non-finite state after step " << (k + 1) << " (t = " << t_next << ", regime "
         << to_string(classify(cfg.p)) << ", dt = " << dt << ", cfl = " << cfg.cfl << ")";
      throw Error(ErrorKind::NonFinite, os.str());
    }
    r.log.append(t_next, energy(U, cfg.p));
    if (cfg.snapshot_cadence > 0 && (k + 1) % cfg.snapshot_cadence == 0) {
      r.snapshots.push_back({k + 1, t_next, U});
    }
  }
  r.steps = n;
  r.final_state = std::move(U);
  return r;
}

ContractionReport contraction_check(const EnergyLog& log, double tol) {
  ContractionReport r;
  const auto& e = log.entries();
  for (std::size_t k = 0; k + 1 < e.size(); ++k) {
    const double prev = e[k].energy, next = e[k + 1].energy;
    double growth;
    if (prev > 0.0) {
      growth = next / prev - 1.0;
    } else {
      growth = next > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    r.max_violation = std::max(r.max_violation, growth);
    if (next > prev * (1.0 + tol) && !r.first_violation) {
      r.first_violation = k + 1;
      r.pass = false;
    }
  }
  return r;
}

ManufacturedSolution trig_packet() {
  ManufacturedSolution m;
  m.value = [](double x, double y, double t) {
    return Vec3(std::sin(2 * x + y - t) + 0.5 * std::cos(x * y + t),
                std::cos(x - 2 * y + 2 * t) * std::exp(-0.3 * t),
                0.2 * std::sin(x + y + t) + 0.1 * x * y);
  };
  m.dt = [](double x, double y, double t) {
    const double e = std::exp(-0.3 * t), a = x - 2 * y + 2 * t;
    return Vec3(-std::cos(2 * x + y - t) - 0.5 * std::sin(x * y + t),
                (-2.0 * std::sin(a) - 0.3 * std::cos(a)) * e,
                0.2 * std::cos(x + y + t));
  };
  m.dx = [](double x, double y, double t) {
    return Vec3(2.0 * std::cos(2 * x + y - t) - 0.5 * y * std::sin(x * y + t),
                -std::sin(x - 2 * y + 2 * t) * std::exp(-0.3 * t),
                0.2 * std::cos(x + y + t) + 0.1 * y);
  };
  m.dy = [](double x, double y, double t) {
    return Vec3(std::cos(2 * x + y - t) - 0.5 * x * std::sin(x * y + t),
                2.0 * std::sin(x - 2 * y + 2 * t) * std::exp(-0.3 * t),
                0.2 * std::cos(x + y + t) + 0.1 * x);
  };
  return m;
}

ManufacturedSolution constant_solution(const Vec3& value) {
  ManufacturedSolution m;
  m.value = [value](double, double, double) { return value; };
  const SpaceTimeFunction zero = [](double, double, double) { return Vec3(Vec3::Zero()); };
  m.dt = zero;
  m.dx = zero;
  m.dy = zero;
  return m;
}

SpaceTimeFunction manufactured_forcing(const ManufacturedSolution& exact, const PhysicalConstants& p) {
  const CoefficientMatrices m = coefficient_matrices(p);
  return [exact, m, f = p.f](double x, double y, double t) -> Vec3 {
    const Vec3 U = exact.value(x, y, t);
    return exact.dt(x, y, t) + m.E1 * exact.dx(x, y, t) + m.E2 * exact.dy(x, y, t) +
           Vec3(-f * U(1), f * U(0), 0.0);
  };
}

RunConfig manufactured_run(const ManufacturedSolution& exact, const PhysicalConstants& p, const Grid& grid,
                           double t_end, double cfl) {
  RunConfig cfg;
  cfg.p = p;
  cfg.grid = grid;
  cfg.t_end = t_end;
  cfg.cfl = cfl;
  const SpaceTimeFunction F = manufactured_forcing(exact, p);
  cfg.forcing = [grid, F](double t) { return sample(grid, F, t); };
  cfg.boundary_data = BoundaryData::from_state(exact.value, bc_catalog(classify(p), p));
  cfg.initial = sample(grid, exact.value, 0.0);
  return cfg;
}

MmsReport mms_convergence(const ManufacturedSolution& exact, const PhysicalConstants& p, Regime regime,
                          const std::vector<Grid>& grids, double t_end, double cfl) {
  if (classify(p) != regime) throw Error(ErrorKind::RegimeMismatch, "parameters do not match the requested regime");
  MmsReport rep;
  rep.levels.resize(grids.size());
  std::vector<std::exception_ptr> failures(grids.size());
  parallel_for(grids.size(), [&](std::size_t k) {
    try {
      const RunConfig cfg = manufactured_run(exact, p, grids[k], t_end, cfl);
      const RunResult r = run(cfg);
      const StateField err = r.final_state - sample(grids[k], exact.value, t_end);
      rep.levels[k] = {grids[k].nx, std::max(grids[k].dx(), grids[k].dy()), std::sqrt(energy(err, p)), r.steps};
    } catch (...) {
      failures[k] = std::current_exception();
    }
  });
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  for (std::size_t k = 0; k + 1 < rep.levels.size(); ++k) {
    rep.orders.push_back(std::log2(rep.levels[k].error / rep.levels[k + 1].error));
  }
  if (!rep.orders.empty()) rep.observed_order = rep.orders.back();
  if (!rep.levels.empty() && rep.levels.back().error > 0.0) {
    rep.reduction = rep.levels.front().error / rep.levels.back().error;
  }
  return rep;
}

std::vector<Grid> refinement_sequence(const Grid& coarsest, std::size_t levels) {
  std::vector<Grid> out;
  Grid g = coarsest;
  for (std::size_t k = 0; k < levels; ++k) {
    out.push_back(g);
    g = Grid::make(g.L1, g.L2, 2 * (g.nx - 1) + 1, 2 * (g.ny - 1) + 1);
  }
  return out;
}

}  // namespace swerect
