#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "swerect/grid.hpp"
#include "swerect/regime.hpp"

namespace swerect {

enum class Side { West, East, South, North };

inline constexpr std::array<Side, 4> kSides = {Side::West, Side::East, Side::South, Side::North};

inline constexpr std::size_t side_index(Side s) noexcept { return static_cast<std::size_t>(s); }
std::string_view to_string(Side s) noexcept;

enum class CatalogKind { Operator, Adjoint };

using ConstraintRow = Eigen::RowVector3d;

// Per side, rows c meaning c . (u, v, phi) = data.
struct BoundarySpec {
  Regime regime = Regime::Supercritical;
  CatalogKind kind = CatalogKind::Operator;
  bool derived = false;  // not taken from a published table
  std::array<std::vector<ConstraintRow>, 4> rows;

  const std::vector<ConstraintRow>& on(Side s) const { return rows[side_index(s)]; }
  std::vector<ConstraintRow>& on(Side s) { return rows[side_index(s)]; }
  std::size_t count(Side s) const { return on(s).size(); }
};

BoundarySpec bc_catalog(Regime regime, const PhysicalConstants& p);
BoundarySpec adjoint_bc_catalog(Regime regime, const PhysicalConstants& p);

// S0-orthogonal projector onto the null space of the given rows.
Eigen::Matrix3d null_space_projector(const std::vector<ConstraintRow>& rows, const PhysicalConstants& p);

// Orthonormal (Euclidean) basis of the null space of the given rows, one column per direction.
Eigen::MatrixXd null_space_basis(const std::vector<ConstraintRow>& rows);

using TraceFunction =
    std::function<double(Side side, std::size_t row, double x, double y, double t)>;

// Right-hand sides of the constraint rows; empty means homogeneous.
class BoundaryData {
 public:
  BoundaryData() = default;
  explicit BoundaryData(TraceFunction trace) : trace_(std::move(trace)) {}

  // Data consistent with a reference state: row . Ug(x, y, t).
  static BoundaryData from_state(SpaceTimeFunction ug, const BoundarySpec& spec);

  bool homogeneous() const { return !trace_; }
  double value(Side side, std::size_t row, double x, double y, double t) const {
    return trace_ ? trace_(side, row, x, y, t) : 0.0;
  }

 private:
  TraceFunction trace_;
};

enum class EnforcementMode {
  Projection,     // unconstrained part kept from the node itself (S0-orthogonal)
  Extrapolation,  // unconstrained part copied from the adjacent interior node
};

// Precomputed nodal enforcement of a catalog on one grid.
class BoundaryEnforcer {
 public:
  BoundaryEnforcer(const BoundarySpec& spec, const PhysicalConstants& p, const Grid& grid,
                   EnforcementMode mode = EnforcementMode::Projection);

  void apply(StateField& U, const BoundaryData& data, double t) const;
  void apply_homogeneous(StateField& U) const;

  // Max over boundary nodes and rows of |c . U - data|.
  double max_residual(const StateField& U, const BoundaryData& data, double t) const;

  const BoundarySpec& spec() const { return spec_; }
  const Grid& grid() const { return grid_; }
  EnforcementMode mode() const { return mode_; }

 private:
  struct RowRef {
    Side side;
    std::size_t row;
  };
  struct Node {
    std::size_t index;
    std::size_t source;  // node supplying the unconstrained part
    double x, y;
    Eigen::Matrix3d keep;                   // I - K C
    Eigen::Matrix<double, 3, Eigen::Dynamic> lift;  // maps row data to the constrained part
    std::vector<RowRef> refs;
  };

  BoundarySpec spec_;
  Grid grid_;
  EnforcementMode mode_;
  std::vector<Node> nodes_;
};

StateField apply_bc(const StateField& state, const BoundarySpec& spec, const PhysicalConstants& p,
                    const BoundaryData& data = {}, double t = 0.0,
                    EnforcementMode mode = EnforcementMode::Projection);

struct IncomingCountReport {
  Regime regime = Regime::Supercritical;
  std::array<std::size_t, 4> expected{};  // W, E, S, N
  std::array<std::size_t, 4> actual{};
  bool pass = false;
};

IncomingCountReport incoming_count_check(const PhysicalConstants& p, Regime regime);

// Non-homogeneous data through a lifting Ug: solve for U' = U - Ug with
// homogeneous constraints and forcing F' = F - Ug_t - A_h Ug - B Ug.
struct LiftingSource {
  StateProvider value;
  StateProvider time_derivative;

  static LiftingSource from_functions(const Grid& grid, SpaceTimeFunction value,
                                      SpaceTimeFunction time_derivative);
};

struct LiftedProblem {
  StateProvider forcing;
  BoundarySpec spec;
  LiftingSource lifting;

  StateField shift_initial(const StateField& U0) const;
  StateField recover(const StateField& U_prime, double t) const;
};

LiftedProblem lift_nonhomogeneous(const LiftingSource& ug, StateProvider forcing,
                                  const PhysicalConstants& p, Regime regime);

}  // namespace swerect
