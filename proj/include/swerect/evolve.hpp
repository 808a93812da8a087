#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "swerect/boundary.hpp"
#include "swerect/grid.hpp"
#include "swerect/regime.hpp"
#include "swerect/spatial_operator.hpp"

namespace swerect {

enum class TimeScheme { SspRk2, ForwardEuler };

std::string_view to_string(TimeScheme s) noexcept;
std::optional<TimeScheme> scheme_from_string(std::string_view name) noexcept;

// Solves dU/dt + (A_h + B) U = F with the regime's operator catalog enforced.
struct RunConfig {
  PhysicalConstants p;
  Grid grid;
  double t_end = 1.0;
  double cfl = 0.45;
  TimeScheme scheme = TimeScheme::SspRk2;
  StateProvider forcing;        // empty: F = 0
  BoundaryData boundary_data;   // empty: homogeneous
  StateField initial;
  std::size_t snapshot_cadence = 0;  // every k steps (0: none)
  EnforcementMode enforcement = EnforcementMode::Projection;
  // Test hook: when false, A_h and boundary enforcement are skipped (pure Coriolis ODE).
  bool spatial_terms = true;

  void validate() const;
};

struct EnergyEntry {
  double t;
  double energy;
};

class EnergyLog {
 public:
  // Throws InvalidValue unless t is strictly larger than the last entry.
  void append(double t, double energy);
  const std::vector<EnergyEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<EnergyEntry> entries_;
};

double cfl_dt(const PhysicalConstants& p, const Grid& grid, double cfl);

class Stepper {
 public:
  explicit Stepper(const RunConfig& cfg);

  double max_dt() const { return max_dt_; }
  // -(A_h + B) U + F(t)
  StateField rhs(const StateField& U, double t) const;
  void enforce(StateField& U, double t) const;
  StateField step(const StateField& U, double dt, double t) const;

 private:
  RunConfig cfg_;
  UpwindOperator op_;
  BoundaryEnforcer enforcer_;
  double max_dt_;
};

StateField step(const StateField& state, double dt, double t, const RunConfig& cfg);

struct Snapshot {
  std::size_t step;
  double t;
  StateField state;
};

struct RunResult {
  StateField final_state;
  EnergyLog log;
  std::vector<Snapshot> snapshots;
  std::size_t steps = 0;
  double dt = 0.0;
};

// Uses the largest uniform dt <= cfl_dt that lands exactly on t_end.
std::size_t step_count(const RunConfig& cfg);
RunResult run(const RunConfig& cfg);

struct ContractionReport {
  bool pass = true;
  double max_violation = 0.0;  // max of E_{k+1}/E_k - 1 (relative growth)
  std::optional<std::size_t> first_violation;  // index k+1 of the first offending entry
};

ContractionReport contraction_check(const EnergyLog& log, double tol = 1e-12);

struct ManufacturedSolution {
  SpaceTimeFunction value;
  SpaceTimeFunction dt;
  SpaceTimeFunction dx;
  SpaceTimeFunction dy;
};

// Smooth trigonometric packet used by the convergence harness and the CLI.
ManufacturedSolution trig_packet();
ManufacturedSolution constant_solution(const Vec3& value);

// F = U*_t + E1 U*_x + E2 U*_y + B U*
SpaceTimeFunction manufactured_forcing(const ManufacturedSolution& exact, const PhysicalConstants& p);

// Run configured for an exact solution: forcing, boundary data and initial state from U*.
RunConfig manufactured_run(const ManufacturedSolution& exact, const PhysicalConstants& p, const Grid& grid,
                           double t_end, double cfl = 0.45);

struct MmsLevel {
  std::size_t n = 0;
  double h = 0.0;
  double error = 0.0;  // sqrt of the H-energy of U - U*
  std::size_t steps = 0;
};

struct MmsReport {
  std::vector<MmsLevel> levels;
  std::vector<double> orders;  // log2(e_k / e_{k+1})
  double observed_order = 0.0;  // last entry of orders
  double reduction = 0.0;       // first error / last error
};

MmsReport mms_convergence(const ManufacturedSolution& exact, const PhysicalConstants& p, Regime regime,
                          const std::vector<Grid>& grids, double t_end, double cfl = 0.45);

// Grids n, 2(n-1)+1, ... halving the spacing each level.
std::vector<Grid> refinement_sequence(const Grid& coarsest, std::size_t levels);

}  // namespace swerect
