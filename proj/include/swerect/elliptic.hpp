#pragma once

#include <Eigen/Dense>

#include "swerect/grid.hpp"
#include "swerect/regime.hpp"

namespace swerect {

// T = T1 d/dx + T2 d/dy with T1 = [[a1, b1], [b1, -a1]], T2 = [[a2, b2], [b2, -a2]].
struct EllipticCoeffs {
  double alpha1 = 0.0, alpha2 = 0.0, beta1 = 0.0, beta2 = 0.0;
  Eigen::Matrix2d T1, T2;
  Eigen::Matrix2d T0;  // [[a1, a2], [b1, b2]]
  double c1 = 0.0;     // ||T0^{-1}||_2
  double c2 = 0.0;     // ||T0||_2

  double det() const { return alpha2 * beta1 - alpha1 * beta2; }
};

EllipticCoeffs build_coeffs(double alpha1, double alpha2, double beta1, double beta2);
EllipticCoeffs swe_elliptic_block(const PhysicalConstants& p);

class ThetaField {
 public:
  ThetaField() = default;
  explicit ThetaField(const Grid& grid);

  const Grid& grid() const { return grid_; }
  double& theta1(std::size_t i, std::size_t j) { return t1_(idx(i, j)); }
  double theta1(std::size_t i, std::size_t j) const { return t1_(idx(i, j)); }
  double& theta2(std::size_t i, std::size_t j) { return t2_(idx(i, j)); }
  double theta2(std::size_t i, std::size_t j) const { return t2_(idx(i, j)); }
  Eigen::VectorXd& theta1() { return t1_; }
  const Eigen::VectorXd& theta1() const { return t1_; }
  Eigen::VectorXd& theta2() { return t2_; }
  const Eigen::VectorXd& theta2() const { return t2_; }

  double max_abs() const;

 private:
  Eigen::Index idx(std::size_t i, std::size_t j) const { return static_cast<Eigen::Index>(grid_.index(i, j)); }
  Grid grid_;
  Eigen::VectorXd t1_, t2_;
};

using ThetaFunction = std::function<Eigen::Vector2d(double x, double y)>;
ThetaField sample_theta(const Grid& grid, const ThetaFunction& fn);

// Trapezoid L2 inner product and norm of two-component fields.
double theta_inner(const ThetaField& a, const ThetaField& b);
double theta_norm(const ThetaField& a);

// Second-order centered differences inside, second-order one-sided on the boundary.
ThetaField apply_T(const ThetaField& theta, const EllipticCoeffs& c);
ThetaField apply_T_star(const ThetaField& theta, const EllipticCoeffs& c);

// theta1 = 0 on West and South, theta2 = 0 on East and North.
bool in_discrete_V(const ThetaField& theta, double tol = 1e-12);
// Max violation of beta1 t1 - alpha1 t2 = 0 (W), alpha1 t1 + beta1 t2 = 0 (E),
// beta2 t1 - alpha2 t2 = 0 (S), alpha2 t1 + beta2 t2 = 0 (N).
double adjoint_bc_residual(const ThetaField& theta, const EllipticCoeffs& c);

// |int t2x t1y - int t1x t2y|; throws BcViolation when theta is not in discrete V.
double lemma61_residual(const ThetaField& theta);

struct AprioriReport {
  bool skipped = false;     // zero gradient
  double grad_norm = 0.0;   // ||grad Theta||
  double T_norm = 0.0;      // ||T Theta||
  double lower = 0.0;       // ||grad Theta|| / c1
  double upper = 0.0;       // c2 ||grad Theta||
  double lower_margin = 0.0;  // (||T||^2 - lower^2) / ||grad||^2
  double upper_margin = 0.0;  // (upper^2 - ||T||^2) / ||grad||^2
  double slack = 0.0;         // 2 |det| cross-term residual / ||grad||^2
  bool holds = false;         // both margins >= -slack
};

AprioriReport apriori_check(const ThetaField& theta, const EllipticCoeffs& c);

ThetaField solve_T(const ThetaField& F, const EllipticCoeffs& c);
ThetaField solve_T_star(const ThetaField& Psi, const EllipticCoeffs& c);

// (x', y') = (b2 x - b1 y, a2 x - a1 y) and its inverse.
Eigen::Vector2d to_transformed_coordinates(const EllipticCoeffs& c, double x, double y);
Eigen::Vector2d from_transformed_coordinates(const EllipticCoeffs& c, double xp, double yp);

// Normal-derivative relations implied at the complementary sides when F vanishes there:
//   East:  (a1^2+b1^2) t1x + (a1a2+b1b2) t1y = 0,  North: (a1a2+b1b2) t1x + (a2^2+b2^2) t1y = 0,
//   West:  (a1^2+b1^2) t2x + (a1a2+b1b2) t2y = 0,  South: (a1a2+b1b2) t2x + (a2^2+b2^2) t2y = 0.
// Each entry is the max over non-corner side nodes, divided by the max gradient magnitude.
// corner_margin excludes nodes within that fraction of the side length from either end;
// the solution is singular at the corners, so only the margin-restricted value converges at O(h).
struct NeumannReport {
  double east = 0.0, north = 0.0, west = 0.0, south = 0.0;
  double max() const;
};

NeumannReport neumann_residuals(const ThetaField& theta, const EllipticCoeffs& c, double corner_margin = 0.0);

// Smooth exact solution and the matching right-hand side.
struct ManufacturedTheta {
  ThetaFunction value;
  ThetaFunction forcing;
};

// In V: theta1 = sin(pi X/2) sin(pi Y/2) e^(X-Y), theta2 = cos(pi X/2) cos(pi Y/2) (1 + XY),
// X = x/L1, Y = y/L2; forcing = T theta.
ManufacturedTheta manufactured_in_V(const EllipticCoeffs& c, double L1, double L2);
// Satisfies the adjoint side constraints; forcing = T* theta.
ManufacturedTheta manufactured_adjoint(const EllipticCoeffs& c, double L1, double L2);

}  // namespace swerect
