#include <doctest.h>

#include <cmath>
#include <limits>

#include "swerect/error.hpp"
#include "swerect/evolve.hpp"
#include "swerect/fields.hpp"
#include "test_support.hpp"

using namespace swerect;
using swerect::testing::draw_params;
using swerect::testing::reference_params;

namespace {

ErrorKind error_kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::IoError;
}

RunConfig free_run(const PhysicalConstants& p, const Grid& grid, const StateField& U0, double t_end) {
  RunConfig cfg;
  cfg.p = p;
  cfg.grid = grid;
  cfg.t_end = t_end;
  cfg.initial = U0;
  return cfg;
}

StateField bump(const Grid& grid, double cx, double cy, double r) {
  return sample(grid, PointFunction([=](double x, double y) {
                  const double d2 = ((x - cx) * (x - cx) + (y - cy) * (y - cy)) / (r * r);
                  const double w = d2 < 1.0 ? std::pow(1.0 - d2, 4) : 0.0;
                  return Vec3(0.5 * w, -0.3 * w, w);
                }));
}

}  // namespace

TEST_CASE("cfl_dt") {
  const Grid grid = Grid::make(1, 1, 11, 11);
  const PhysicalConstants p{1, 1, 1, 1, 0};
  CHECK(cfl_dt(p, grid, 0.5) == doctest::Approx(0.0125).epsilon(1e-14));
  CHECK(cfl_dt(p, grid, 0.25) == doctest::Approx(0.5 * cfl_dt(p, grid, 0.5)).epsilon(1e-14));
  double prev = cfl_dt(p, grid, 0.9);
  for (double c : {0.5, 0.1, 0.01, 1e-6}) {
    const double dt = cfl_dt(p, grid, c);
    CHECK(dt < prev);
    prev = dt;
  }
  const Grid fine = refinement_sequence(grid, 2).back();
  CHECK(fine.nx == 21);
  CHECK(cfl_dt(p, fine, 0.5) == doctest::Approx(0.5 * cfl_dt(p, grid, 0.5)).epsilon(1e-14));

  const PhysicalConstants q = reference_params(Regime::MixedHyperbolicI);
  const Grid rect = Grid::make(2, 1, 21, 21);
  const double c = std::sqrt(q.g * q.phi0);
  CHECK(cfl_dt(q, rect, 0.45) == doctest::Approx(0.45 / ((q.u0 + c) / 0.1 + (q.v0 + c) / 0.05)));
}

TEST_CASE("scheme names") {
  for (TimeScheme s : {TimeScheme::SspRk2, TimeScheme::ForwardEuler}) CHECK(scheme_from_string(to_string(s)) == s);
  CHECK(to_string(TimeScheme::SspRk2) == "ssp-rk2");
  CHECK_FALSE(scheme_from_string("rk4").has_value());
}

TEST_CASE("run configuration validation") {
  const Grid grid = Grid::make(1, 1, 8, 8);
  const PhysicalConstants p = reference_params(Regime::Supercritical);
  RunConfig cfg = free_run(p, grid, StateField(grid), 0.1);
  CHECK_NOTHROW(cfg.validate());
  cfg.cfl = 0.0;
  CHECK(error_kind_of([&] { cfg.validate(); }) == ErrorKind::InvalidValue);
  cfg.cfl = 0.95;
  CHECK(error_kind_of([&] { cfg.validate(); }) == ErrorKind::InvalidValue);
  cfg.cfl = 0.9;
  CHECK_NOTHROW(cfg.validate());
  cfg.t_end = 0.0;
  CHECK(error_kind_of([&] { cfg.validate(); }) == ErrorKind::InvalidValue);
  cfg.t_end = 0.1;
  cfg.initial = StateField(Grid::make(1, 1, 9, 8));
  CHECK(error_kind_of([&] { cfg.validate(); }) == ErrorKind::ShapeMismatch);
}

TEST_CASE("step count lands exactly on t_end") {
  const Grid grid = Grid::make(1, 1, 17, 17);
  const PhysicalConstants p = reference_params(Regime::MixedSubcritical);
  RunConfig cfg = free_run(p, grid, StateField(grid), 0.3);
  const std::size_t n = step_count(cfg);
  CHECK(cfg.t_end / static_cast<double>(n) <= cfl_dt(p, grid, cfg.cfl));
  CHECK(cfg.t_end / static_cast<double>(n - 1) > cfl_dt(p, grid, cfg.cfl));
  // An exact multiple of the CFL step needs no extra step.
  cfg.t_end = 7 * cfl_dt(p, grid, cfg.cfl);
  CHECK(step_count(cfg) == 7);
  const RunResult r = run(cfg);
  CHECK(r.steps == 7);
  CHECK(r.log.entries().back().t == cfg.t_end);
}

TEST_CASE("energy log and contraction check") {
  EnergyLog log;
  log.append(0.0, 1.0);
  log.append(0.1, 0.9);
  CHECK(error_kind_of([&] { log.append(0.1, 0.8); }) == ErrorKind::InvalidValue);
  CHECK(error_kind_of([&] { log.append(0.05, 0.8); }) == ErrorKind::InvalidValue);
  log.append(0.2, 0.9);
  log.append(0.3, 0.5);
  const ContractionReport ok = contraction_check(log, 1e-12);
  CHECK(ok.pass);
  CHECK_FALSE(ok.first_violation.has_value());

  const double tol = 1e-12;
  EnergyLog up;
  up.append(0.0, 1.0);
  up.append(1.0, 1.0);
  up.append(2.0, 1.0 + 2 * tol);
  up.append(3.0, 0.5);
  const ContractionReport bad = contraction_check(up, tol);
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.first_violation.has_value());
  CHECK(*bad.first_violation == 2);
  CHECK(bad.max_violation == doctest::Approx(2 * tol).epsilon(1e-3));

  EnergyLog zeros;
  zeros.append(0.0, 0.0);
  zeros.append(1.0, 0.0);
  CHECK(contraction_check(zeros).pass);
}

TEST_CASE("zero state is a fixed point") {
  const Grid grid = Grid::make(1, 1, 10, 12);
  for (Regime r : kAllRegimes) {
    const RunConfig cfg = free_run(reference_params(r, 0.7), grid, StateField(grid), 0.2);
    const StateField one = step(cfg.initial, 0.5 * cfl_dt(cfg.p, grid, cfg.cfl), 0.0, cfg);
    CHECK(one.max_abs() == 0.0);
    const RunResult res = run(cfg);
    CHECK(res.final_state.max_abs() == 0.0);
    for (const EnergyEntry& e : res.log.entries()) CHECK(e.energy == 0.0);
  }
}

TEST_CASE("step rejects time steps above the CFL limit") {
  const Grid grid = Grid::make(1, 1, 10, 10);
  const RunConfig cfg = free_run(reference_params(Regime::Supercritical), grid, StateField(grid), 0.2);
  const Stepper s(cfg);
  CHECK(s.max_dt() == doctest::Approx(cfl_dt(cfg.p, grid, cfg.cfl)));
  CHECK(error_kind_of([&] { s.step(cfg.initial, 1.5 * s.max_dt(), 0.0); }) == ErrorKind::CflViolation);
  CHECK(error_kind_of([&] { s.step(cfg.initial, -1.0, 0.0); }) == ErrorKind::CflViolation);
}

TEST_CASE("non-finite states abort the run") {
  const Grid grid = Grid::make(1, 1, 10, 10);
  StateField U(grid);
  U(4, 4)[0] = std::numeric_limits<double>::quiet_NaN();
  const RunConfig cfg = free_run(reference_params(Regime::FullyHyperbolicSubcritical), grid, U, 0.1);
  try {
    run(cfg);
    FAIL("expected NonFinite");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFinite);
    CHECK(std::string(e.what()).find("FullyHyperbolicSubcritical") != std::string::npos);
  }
}

TEST_CASE("pure rotation hook") {
  const Grid grid = Grid::make(1, 1, 5, 5);
  const double f = 40.0;
  const PhysicalConstants p{1, 1, 1, 9.81, f};
  StateField U0(grid);
  for (auto& v : U0.values()) v = Vec3(1.0, 0.5, 0.2);
  RunConfig cfg = free_run(p, grid, U0, 0.0);
  cfg.spatial_terms = false;
  const double dt = 0.4 * cfl_dt(p, grid, cfg.cfl);
  // One step: |U|^2 changes by (f dt)^4 / 4 for RK2 on a rotation.
  const StateField U1 = step(U0, dt, 0.0, cfg);
  const double r0 = 1.25, r1 = U1[0][0] * U1[0][0] + U1[0][1] * U1[0][1];
  CHECK(std::abs(r1 / r0 - 1.0) == doctest::Approx(std::pow(f * dt, 4) / 4).epsilon(1e-6));
  CHECK(U1[0][2] == 0.2);

  // Global error against the exact rotation is second order in dt.
  double prev = 0.0;
  for (double cfl : {0.4, 0.2, 0.1}) {
    cfg.t_end = 0.5;
    cfg.cfl = cfl;
    const RunResult r = run(cfg);
    const double t = cfg.t_end;
    const Vec3 exact(std::cos(f * t) + 0.5 * std::sin(f * t), 0.5 * std::cos(f * t) - std::sin(f * t), 0.2);
    const double err = (r.final_state[7] - exact).norm();
    if (prev > 0.0) CHECK(std::log2(prev / err) == doctest::Approx(2.0).epsilon(0.1));
    prev = err;
  }
}

TEST_CASE("contraction for homogeneous runs") {
  const Grid grid = Grid::make(1, 1, 24, 24);
  SplitMix64 rng(51);
  for (Regime r : kAllRegimes) {
    for (TimeScheme s : {TimeScheme::SspRk2, TimeScheme::ForwardEuler}) {
      const PhysicalConstants p = draw_params(r, rng, rng.uniform(-2, 2));
      RunConfig cfg = free_run(p, grid, band_limited_field(grid, default_probe_modes(grid), rng), 1.0);
      cfg.scheme = s;
      cfg.t_end = 100 * cfl_dt(p, grid, cfg.cfl);
      const RunResult res = run(cfg);
      CHECK(res.steps == 100);
      const ContractionReport rep = contraction_check(res.log, 1e-12);
      CHECK(rep.pass);
      CHECK(res.log.entries().back().energy < res.log.entries().front().energy);
    }
  }
}

TEST_CASE("Coriolis does not inject energy") {
  const Grid grid = Grid::make(1, 1, 20, 20);
  SplitMix64 rng(52);
  for (Regime r : kAllRegimes) {
    const StateField U0 = band_limited_field(grid, 4, rng);
    const PhysicalConstants p0 = reference_params(r, 0.0), pf = reference_params(r, 3.0);
    const double t_end = 60 * cfl_dt(p0, grid, 0.45);
    const RunResult a = run(free_run(p0, grid, U0, t_end));
    const RunResult b = run(free_run(pf, grid, U0, t_end));
    const double e0 = a.log.entries().front().energy;
    CHECK(b.log.entries().front().energy == e0);
    for (const EnergyEntry& e : b.log.entries()) CHECK(e.energy <= e0 * (1 + 1e-12));
    CHECK(contraction_check(b.log).pass);
  }
}

TEST_CASE("linearity") {
  const Grid grid = Grid::make(1.5, 1, 18, 14);
  SplitMix64 rng(53);
  for (Regime r : kAllRegimes) {
    const PhysicalConstants p = reference_params(r, 0.5);
    const StateField U = band_limited_field(grid, 3, rng), V = band_limited_field(grid, 3, rng);
    const double a = 1.7, b = -0.4;
    const double t_end = 40 * cfl_dt(p, grid, 0.45);
    const StateField ru = run(free_run(p, grid, U, t_end)).final_state;
    const StateField rv = run(free_run(p, grid, V, t_end)).final_state;
    const StateField rc = run(free_run(p, grid, a * U + b * V, t_end)).final_state;
    CHECK((rc - (a * ru + b * rv)).max_abs() <= 1e-12 * std::max(1.0, rc.max_abs()));
  }
}

TEST_CASE("supercritical bump advects toward the outflow corner") {
  const Grid grid = Grid::make(1, 1, 41, 41);
  const PhysicalConstants p = reference_params(Regime::Supercritical);
  RunConfig cfg = free_run(p, grid, bump(grid, 0.35, 0.35, 0.15), 0.05);
  cfg.snapshot_cadence = 1;
  const RunResult r = run(cfg);
  const auto centroid = [&](const StateField& U) {
    double m = 0, mx = 0, my = 0;
    for (std::size_t i = 0; i < grid.nx; ++i) {
      for (std::size_t j = 0; j < grid.ny; ++j) {
        const double w = U(i, j).squaredNorm();
        m += w;
        mx += w * grid.x(i);
        my += w * grid.y(j);
      }
    }
    return std::pair{mx / m, my / m};
  };
  const auto [x0, y0] = centroid(cfg.initial);
  const auto [x1, y1] = centroid(r.final_state);
  CHECK(x1 > x0 + 0.5 * p.u0 * cfg.t_end);
  CHECK(y1 > y0 + 0.5 * p.v0 * cfg.t_end);
  CHECK(r.snapshots.size() == r.steps + 1);
  CHECK(r.snapshots.front().step == 0);

  // Long enough to leave through the outflow sides: energy drops substantially.
  cfg.t_end = 0.4;
  cfg.snapshot_cadence = 0;
  const RunResult out = run(cfg);
  CHECK(out.snapshots.empty());
  CHECK(out.log.entries().back().energy < 0.05 * out.log.entries().front().energy);
}

TEST_CASE("finite propagation speed") {
  // Upwind smearing has width ~ sqrt(t h); the grid keeps it well inside the factor-2 allowance.
  const Grid grid = Grid::make(2, 2, 161, 161);
  for (Regime r : kAllRegimes) {
    const PhysicalConstants p = reference_params(r);
    const double r0 = 0.2, cx = 1.0, cy = 1.0;
    const double t_end = 0.05;
    const RunResult res = run(free_run(p, grid, bump(grid, cx, cy, r0), t_end));
    const double speed = std::hypot(p.u0, p.v0) + std::sqrt(p.g * p.phi0);
    const double reach = r0 + 2.0 * t_end * speed;
    double outside = 0.0;
    for (std::size_t i = 0; i < grid.nx; ++i) {
      for (std::size_t j = 0; j < grid.ny; ++j) {
        if (std::hypot(grid.x(i) - cx, grid.y(j) - cy) > reach) outside = std::max(outside, res.final_state(i, j).norm());
      }
    }
    CHECK(outside <= 1e-6);
  }
}

TEST_CASE("manufactured derivatives are consistent") {
  const ManufacturedSolution m = trig_packet();
  const double e = 1e-6;
  for (auto [x, y, t] : {std::tuple{0.3, 0.7, 0.1}, std::tuple{0.9, 0.2, 0.25}}) {
    const Vec3 dt = (m.value(x, y, t + e) - m.value(x, y, t - e)) / (2 * e);
    const Vec3 dx = (m.value(x + e, y, t) - m.value(x - e, y, t)) / (2 * e);
    const Vec3 dy = (m.value(x, y + e, t) - m.value(x, y - e, t)) / (2 * e);
    CHECK((dt - m.dt(x, y, t)).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK((dx - m.dx(x, y, t)).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK((dy - m.dy(x, y, t)).cwiseAbs().maxCoeff() <= 1e-8);
  }
  const PhysicalConstants p = reference_params(Regime::MixedSubcritical, 0.5);
  const Vec3 F = manufactured_forcing(constant_solution(Vec3(1, 2, 3)), p)(0.1, 0.2, 0.3);
  CHECK((F - Vec3(-1.0, 0.5, 0.0)).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("constant manufactured solution is reproduced") {
  const Grid grid = Grid::make(1, 1, 12, 12);
  for (Regime r : kAllRegimes) {
    const PhysicalConstants p = reference_params(r, 0.5);
    const ManufacturedSolution m = constant_solution(Vec3(0.3, -1.2, 0.8));
    const RunResult res = run(manufactured_run(m, p, grid, 0.1));
    CHECK((res.final_state - sample(grid, m.value, 0.1)).max_abs() <= 1e-12);
  }
}

TEST_CASE("refinement sequence") {
  const auto seq = refinement_sequence(Grid::make(2, 1, 9, 5), 3);
  REQUIRE(seq.size() == 3);
  CHECK(seq[1].nx == 17);
  CHECK(seq[1].ny == 9);
  CHECK(seq[2].nx == 33);
  CHECK(seq[2].dx() == doctest::Approx(0.25 * seq[0].dx()));
}

TEST_CASE("manufactured convergence is first order") {
  const auto grids = refinement_sequence(Grid::make(1, 1, 17, 17), 3);
  for (Regime r : {Regime::FullyHyperbolicSubcritical, Regime::MixedSubcritical}) {
    const MmsReport rep = mms_convergence(trig_packet(), reference_params(r, 0.5), r, grids, 0.2);
    REQUIRE(rep.levels.size() == 3);
    REQUIRE(rep.orders.size() == 2);
    CHECK(rep.levels[0].error > rep.levels[1].error);
    CHECK(rep.observed_order == rep.orders.back());
    CHECK(rep.observed_order >= 0.8);
    CHECK(rep.observed_order <= 1.3);
    CHECK(rep.reduction == doctest::Approx(rep.levels[0].error / rep.levels[2].error));
  }
  CHECK(error_kind_of([&] {
          mms_convergence(trig_packet(), reference_params(Regime::Supercritical), Regime::MixedSubcritical, grids, 0.1);
        }) == ErrorKind::RegimeMismatch);
}

TEST_CASE("lifted run matches direct boundary enforcement") {
  for (Regime r : {Regime::MixedHyperbolicI, Regime::MixedSubcritical}) {
    const PhysicalConstants p = reference_params(r, 0.5);
    const ManufacturedSolution m = trig_packet();
    const Grid grid = Grid::make(1, 1, 33, 33);
    const double t_end = 0.2;
    const RunConfig direct = manufactured_run(m, p, grid, t_end);
    const RunResult d = run(direct);
    const StateField exact = sample(grid, m.value, t_end);
    const double mms_error = std::sqrt(energy(d.final_state - exact, p));

    const LiftingSource src = LiftingSource::from_functions(grid, m.value, m.dt);
    const LiftedProblem lifted = lift_nonhomogeneous(src, direct.forcing, p, r);
    RunConfig cfg = free_run(p, grid, lifted.shift_initial(direct.initial), t_end);
    cfg.forcing = lifted.forcing;
    const RunResult l = run(cfg);
    const StateField U = lifted.recover(l.final_state, t_end);
    const double diff = std::sqrt(energy(U - d.final_state, p));
    CHECK(diff <= 2.0 * mms_error);
    CHECK(std::sqrt(energy(U - exact, p)) <= 2.0 * mms_error);
  }
}
