#include "swerect/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "swerect/error.hpp"

namespace swerect {

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

double relative_residual(const Eigen::MatrixXd& computed, const Eigen::MatrixXd& expected) {
  const double scale = std::max(max_abs(computed), max_abs(expected));
  if (scale == 0.0) return 0.0;
  return max_abs(computed - expected) / scale;
}

}  // namespace

CoefficientMatrices coefficient_matrices(const PhysicalConstants& p) {
  CoefficientMatrices m;
  m.E1 << p.u0, 0.0, p.g,
          0.0, p.u0, 0.0,
          p.phi0, 0.0, p.u0;
  m.E2 << p.v0, 0.0, 0.0,
          0.0, p.v0, p.g,
          0.0, p.phi0, p.v0;
  m.S0 = Eigen::Vector3d(1.0, 1.0, p.g / p.phi0).asDiagonal();
  return m;
}

CharTransform hyperbolic_transform(const PhysicalConstants& p) {
  const double d = p.delta();
  if (!(d > 0.0)) throw Error(ErrorKind::NotHyperbolic, "u0^2 + v0^2 - g*phi0 must be positive");
  const double u0 = p.u0, v0 = p.v0, g = p.g, phi0 = p.phi0;
  const double k0 = std::sqrt(g * d / phi0);
  const double s = u0 * u0 + v0 * v0;

  CharTransform t;
  t.kappa0 = k0;
  t.Pinv << v0, -u0, k0,
            v0, -u0, -k0,
            u0, v0, g;
  t.P = t.Pinv.inverse();
  const double den = 2.0 * s * k0;
  t.a << (u0 * k0 + g * v0) / den, (u0 * k0 - g * v0) / den, 2.0 * k0 * u0 / den;
  t.b << (v0 * k0 - g * u0) / den, (v0 * k0 + g * u0) / den, 2.0 * k0 * v0 / den;
  const double vc = v0 * v0 - g * phi0;
  t.lambda << (u0 * v0 + phi0 * k0) / vc, (u0 * v0 - phi0 * k0) / vc, u0 / v0;
  return t;
}

EllipticTransform elliptic_transform(const PhysicalConstants& p) {
  const double d = p.delta();
  if (!(d < 0.0)) throw Error(ErrorKind::NotElliptic, "u0^2 + v0^2 - g*phi0 must be negative");
  const double u0 = p.u0, v0 = p.v0, g = p.g, phi0 = p.phi0;
  const double k1 = std::sqrt(-g * d / phi0);
  const double s = u0 * u0 + v0 * v0;

  EllipticTransform t;
  t.kappa1 = k1;
  t.Pinv << v0, -u0, 0.0,
            0.0, 0.0, k1,
            u0, v0, g;
  t.P = t.Pinv.inverse();
  t.blockX << u0, g * v0 / k1,
              g * v0 / k1, -u0;
  t.blockX /= s;
  t.blockY << v0, -g * u0 / k1,
              -g * u0 / k1, -v0;
  t.blockY /= s;
  t.zetaSpeed << u0 / s, v0 / s;
  return t;
}

Transform transform_for(const PhysicalConstants& p) {
  if (p.delta() > 0.0) return hyperbolic_transform(p);
  return elliptic_transform(p);
}

Eigen::Vector3d to_characteristic(const Eigen::Vector3d& U, const CharTransform& t) { return t.Pinv * U; }
Eigen::Vector3d to_characteristic(const Eigen::Vector3d& U, const EllipticTransform& t) { return t.Pinv * U; }
Eigen::Vector3d to_characteristic(const Eigen::Vector3d& U, const Transform& t) {
  return std::visit([&](const auto& tr) { return to_characteristic(U, tr); }, t);
}

Eigen::Vector3d from_characteristic(const Eigen::Vector3d& X, const CharTransform& t) { return t.P * X; }
Eigen::Vector3d from_characteristic(const Eigen::Vector3d& X, const EllipticTransform& t) { return t.P * X; }
Eigen::Vector3d from_characteristic(const Eigen::Vector3d& X, const Transform& t) {
  return std::visit([&](const auto& tr) { return from_characteristic(X, tr); }, t);
}

double DiagnosticReport::max_residual() const {
  double m = std::max(congruence_x, congruence_y);
  if (similarity) m = std::max(m, *similarity);
  return m;
}

DiagnosticReport verify_diagonalization(const PhysicalConstants& p, double tol) {
  const CoefficientMatrices m = coefficient_matrices(p);
  DiagnosticReport r;
  r.regime = classify(p);
  r.tol = tol;
  if (p.delta() > 0.0) {
    const CharTransform t = hyperbolic_transform(p);
    const Eigen::Matrix3d cx = t.P.transpose() * m.S0 * m.E1 * t.P;
    const Eigen::Matrix3d cy = t.P.transpose() * m.S0 * m.E2 * t.P;
    r.congruence_x = relative_residual(cx, t.a.asDiagonal().toDenseMatrix());
    r.congruence_y = relative_residual(cy, t.b.asDiagonal().toDenseMatrix());
    const Eigen::Matrix3d sim = t.Pinv * m.E2.inverse() * m.E1 * t.P;
    r.similarity = relative_residual(sim, t.lambda.asDiagonal().toDenseMatrix());
  } else {
    const EllipticTransform t = elliptic_transform(p);
    const Eigen::Matrix3d cx = t.P.transpose() * m.S0 * m.E1 * t.P;
    const Eigen::Matrix3d cy = t.P.transpose() * m.S0 * m.E2 * t.P;
    Eigen::Matrix3d ex = Eigen::Matrix3d::Zero(), ey = Eigen::Matrix3d::Zero();
    ex.topLeftCorner<2, 2>() = t.blockX;
    ex(2, 2) = t.zetaSpeed(0);
    ey.topLeftCorner<2, 2>() = t.blockY;
    ey(2, 2) = t.zetaSpeed(1);
    r.congruence_x = relative_residual(cx, ex);
    r.congruence_y = relative_residual(cy, ey);
  }
  r.pass = std::isfinite(r.max_residual()) && r.max_residual() <= tol;
  return r;
}

}  // namespace swerect
