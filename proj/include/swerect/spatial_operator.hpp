#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Dense>

#include "swerect/boundary.hpp"
#include "swerect/grid.hpp"
#include "swerect/regime.hpp"

namespace swerect {

// E = plus + minus with S0*plus >= 0 and S0*minus <= 0 (both S0-symmetric).
struct FluxSplit {
  Eigen::Matrix3d plus;
  Eigen::Matrix3d minus;
  Eigen::Vector3d speeds;  // ascending eigenvalues of E
};

FluxSplit split_flux(const Eigen::Matrix3d& E, const Eigen::Matrix3d& S0);

// Trapezoid quadrature of U^t S0 V.
double weighted_inner(const StateField& U, const StateField& V, const PhysicalConstants& p);
double energy(const StateField& U, const PhysicalConstants& p);

// First-order flux-split upwind discretization of E1 d/dx + E2 d/dy.
// Boundary rows are closed so that <A_h U, U>_H equals upwind dissipation
// plus the discrete boundary flux, mirroring the continuous energy identity.
class UpwindOperator {
 public:
  explicit UpwindOperator(const PhysicalConstants& p);

  StateField apply(const StateField& U) const;
  // Discretized -E1 d/dx - E2 d/dy with mirrored upwinding and one-sided closures.
  StateField apply_adjoint(const StateField& V) const;
  // The S0-weighted transpose of apply() with the boundary flux removed; test cross-check.
  StateField apply_adjoint_transpose(const StateField& V) const;

  const FluxSplit& x_split() const { return sx_; }
  const FluxSplit& y_split() const { return sy_; }
  const PhysicalConstants& constants() const { return p_; }

 private:
  enum class Closure { Forward, Adjoint, Transpose };
  StateField evaluate(const StateField& U, Closure c) const;

  PhysicalConstants p_;
  Eigen::Matrix3d E1_, E2_;
  FluxSplit sx_, sy_;
};

StateField apply_A(const StateField& U, const PhysicalConstants& p);
StateField apply_B(const StateField& U, const PhysicalConstants& p);
StateField apply_adjoint(const StateField& V, const PhysicalConstants& p);

struct ProbeReport {
  Regime regime = Regime::Supercritical;
  std::size_t samples = 0;
  double min_quotient = 0.0;
  double max_quotient = 0.0;
  double bound = 0.0;  // acceptance threshold (negative)
  bool pass = false;
};

ProbeReport positivity_probe(const PhysicalConstants& p, Regime regime, const Grid& grid,
                             std::size_t n_samples, std::uint64_t seed);

struct SideForm {
  Side side = Side::West;
  Eigen::Matrix3d full;         // outward flux form, +-1/2 S0 E
  Eigen::MatrixXd restricted;   // N^t full N on the constraint null space
  Eigen::VectorXd eigenvalues;  // of restricted, ascending
  double min_normalized = 0.0;  // min eigenvalue / spectral norm of full (0 if none)
};

struct BoundaryForms {
  CatalogKind kind = CatalogKind::Operator;
  std::array<SideForm, 4> sides;

  double min_normalized() const;
  bool psd(double tol = 1e-12) const { return min_normalized() >= -tol; }
};

// For the adjoint catalog the flux signs are reversed (A* = -E1 d/dx - E2 d/dy).
BoundaryForms boundary_quadratic_forms(const PhysicalConstants& p, Regime regime,
                                       CatalogKind kind = CatalogKind::Operator);

}  // namespace swerect
