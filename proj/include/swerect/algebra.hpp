#pragma once

#include <optional>
#include <variant>

#include <Eigen/Dense>

#include "swerect/regime.hpp"

namespace swerect {

struct CoefficientMatrices {
  Eigen::Matrix3d E1;
  Eigen::Matrix3d E2;
  Eigen::Matrix3d S0;
};

CoefficientMatrices coefficient_matrices(const PhysicalConstants& p);

// Characteristic variables (xi, eta, zeta) = Pinv * (u, v, phi) for Delta > 0.
struct CharTransform {
  Eigen::Matrix3d Pinv;
  Eigen::Matrix3d P;
  Eigen::Vector3d a;       // diagonal of P^t S0 E1 P
  Eigen::Vector3d b;       // diagonal of P^t S0 E2 P
  Eigen::Vector3d lambda;  // eigenvalues of E2^{-1} E1
  double kappa0 = 0.0;
};

// Block transform for Delta < 0: (xi, eta) couple elliptically, zeta is transported.
struct EllipticTransform {
  Eigen::Matrix3d Pinv;
  Eigen::Matrix3d P;
  Eigen::Matrix2d blockX;
  Eigen::Matrix2d blockY;
  Eigen::Vector2d zetaSpeed;
  double kappa1 = 0.0;
};

using Transform = std::variant<CharTransform, EllipticTransform>;

CharTransform hyperbolic_transform(const PhysicalConstants& p);
EllipticTransform elliptic_transform(const PhysicalConstants& p);
Transform transform_for(const PhysicalConstants& p);

Eigen::Vector3d to_characteristic(const Eigen::Vector3d& U, const CharTransform& t);
Eigen::Vector3d to_characteristic(const Eigen::Vector3d& U, const EllipticTransform& t);
Eigen::Vector3d to_characteristic(const Eigen::Vector3d& U, const Transform& t);
Eigen::Vector3d from_characteristic(const Eigen::Vector3d& X, const CharTransform& t);
Eigen::Vector3d from_characteristic(const Eigen::Vector3d& X, const EllipticTransform& t);
Eigen::Vector3d from_characteristic(const Eigen::Vector3d& X, const Transform& t);

struct DiagnosticReport {
  Regime regime = Regime::Supercritical;
  double congruence_x = 0.0;  // relative max-norm residual
  double congruence_y = 0.0;
  std::optional<double> similarity;  // hyperbolic regimes only
  double tol = 0.0;
  bool pass = false;

  double max_residual() const;
};

DiagnosticReport verify_diagonalization(const PhysicalConstants& p, double tol = 1e-10);

}  // namespace swerect
