#include "swerect/spatial_operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "swerect/algebra.hpp"
#include "swerect/fields.hpp"
#include "swerect/parallel.hpp"

namespace swerect {

FluxSplit split_flux(const Eigen::Matrix3d& E, const Eigen::Matrix3d& S0) {
  const Eigen::Vector3d r = S0.diagonal().cwiseSqrt();
  const Eigen::Matrix3d Es = r.asDiagonal() * E * r.cwiseInverse().asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(0.5 * (Es + Es.transpose()));
  const Eigen::Matrix3d& Q = eig.eigenvectors();
  const Eigen::Vector3d w = eig.eigenvalues();
  FluxSplit s;
  s.speeds = w;
  const Eigen::Matrix3d lhs = r.cwiseInverse().asDiagonal() * Q;
  const Eigen::Matrix3d rhs = Q.transpose() * r.asDiagonal();
  s.plus = lhs * w.cwiseMax(0.0).asDiagonal() * rhs;
  s.minus = lhs * w.cwiseMin(0.0).asDiagonal() * rhs;
  return s;
}

double weighted_inner(const StateField& U, const StateField& V, const PhysicalConstants& p) {
  require_same_grid(U.grid(), V.grid(), "weighted_inner");
  const Grid& g = U.grid();
  const Eigen::Vector3d s0(1.0, 1.0, p.g / p.phi0);
  double total = 0.0;
  for (std::size_t i = 0; i < g.nx; ++i) {
    double col = 0.0;
    for (std::size_t j = 0; j < g.ny; ++j) {
      col += g.weight_y(j) * U(i, j).cwiseProduct(s0).dot(V(i, j));
    }
    total += g.weight_x(i) * col;
  }
  return total;
}

double energy(const StateField& U, const PhysicalConstants& p) { return weighted_inner(U, U, p); }

UpwindOperator::UpwindOperator(const PhysicalConstants& p) : p_(p) {
  const CoefficientMatrices m = coefficient_matrices(p);
  E1_ = m.E1;
  E2_ = m.E2;
  sx_ = split_flux(m.E1, m.S0);
  sy_ = split_flux(m.E2, m.S0);
}

StateField UpwindOperator::evaluate(const StateField& U, Closure c) const {
  const Grid& g = U.grid();
  StateField out(g);
  const std::size_t nx = g.nx, ny = g.ny;
  const double rdx = 1.0 / g.dx(), rdy = 1.0 / g.dy();

  // d: backward difference into node k, f: forward difference out of node k.
  auto line = [c](const FluxSplit& s, const Eigen::Matrix3d& E, std::size_t k, std::size_t n,
                  const Vec3& d, const Vec3& f) -> Vec3 {
    switch (c) {
      case Closure::Forward:
        if (k == 0) return 2.0 * (s.minus * f);
        if (k + 1 == n) return 2.0 * (s.plus * d);
        return s.plus * d + s.minus * f;
      case Closure::Adjoint:
        if (k == 0) return -(E * f);
        if (k + 1 == n) return -(E * d);
        return -(s.minus * d) - s.plus * f;
      case Closure::Transpose:
        if (k == 0) return -2.0 * (s.plus * f);
        if (k + 1 == n) return -2.0 * (s.minus * d);
        return -(s.minus * d) - s.plus * f;
    }
    return Vec3::Zero();
  };

  parallel_for(nx, [&](std::size_t i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const Vec3& u = U(i, j);
      const Vec3 dx_b = i > 0 ? Vec3((u - U(i - 1, j)) * rdx) : Vec3::Zero();
      const Vec3 dx_f = i + 1 < nx ? Vec3((U(i + 1, j) - u) * rdx) : Vec3::Zero();
      const Vec3 dy_b = j > 0 ? Vec3((u - U(i, j - 1)) * rdy) : Vec3::Zero();
      const Vec3 dy_f = j + 1 < ny ? Vec3((U(i, j + 1) - u) * rdy) : Vec3::Zero();
      out(i, j) = line(sx_, E1_, i, nx, dx_b, dx_f) + line(sy_, E2_, j, ny, dy_b, dy_f);
    }
  });
  return out;
}

StateField UpwindOperator::apply(const StateField& U) const { return evaluate(U, Closure::Forward); }
StateField UpwindOperator::apply_adjoint(const StateField& V) const { return evaluate(V, Closure::Adjoint); }
StateField UpwindOperator::apply_adjoint_transpose(const StateField& V) const {
  return evaluate(V, Closure::Transpose);
}

StateField apply_A(const StateField& U, const PhysicalConstants& p) { return UpwindOperator(p).apply(U); }

StateField apply_adjoint(const StateField& V, const PhysicalConstants& p) {
  return UpwindOperator(p).apply_adjoint(V);
}

StateField apply_B(const StateField& U, const PhysicalConstants& p) {
  StateField out(U.grid());
  for (std::size_t k = 0; k < U.size(); ++k) out[k] = Vec3(-p.f * U[k](1), p.f * U[k](0), 0.0);
  return out;
}

ProbeReport positivity_probe(const PhysicalConstants& p, Regime regime, const Grid& grid,
                             std::size_t n_samples, std::uint64_t seed) {
  const BoundarySpec spec = bc_catalog(regime, p);
  const BoundaryEnforcer enforcer(spec, p, grid);
  const UpwindOperator op(p);
  SplitMix64 rng(seed);
  const std::size_t modes = default_probe_modes(grid);

  ProbeReport r;
  r.regime = regime;
  r.min_quotient = std::numeric_limits<double>::infinity();
  r.max_quotient = -std::numeric_limits<double>::infinity();
  r.bound = -1e-6 * (p.u0 + p.v0 + p.wave_speed()) / std::min(grid.dx(), grid.dy());
  for (std::size_t s = 0; s < n_samples; ++s) {
    StateField U = band_limited_field(grid, modes, rng);
    enforcer.apply_homogeneous(U);
    const double e = energy(U, p);
    if (!(e > 0.0)) continue;
    const double q = weighted_inner(op.apply(U), U, p) / e;
    r.min_quotient = std::min(r.min_quotient, q);
    r.max_quotient = std::max(r.max_quotient, q);
    ++r.samples;
  }
  r.pass = r.samples > 0 && r.min_quotient >= r.bound;
  return r;
}

double BoundaryForms::min_normalized() const {
  double m = std::numeric_limits<double>::infinity();
  for (const SideForm& s : sides) m = std::min(m, s.min_normalized);
  return m;
}

BoundaryForms boundary_quadratic_forms(const PhysicalConstants& p, Regime regime, CatalogKind kind) {
  const BoundarySpec spec =
      kind == CatalogKind::Operator ? bc_catalog(regime, p) : adjoint_bc_catalog(regime, p);
  const CoefficientMatrices m = coefficient_matrices(p);
  const double flip = kind == CatalogKind::Operator ? 1.0 : -1.0;
  BoundaryForms out;
  out.kind = kind;
  for (Side s : kSides) {
    SideForm& f = out.sides[side_index(s)];
    f.side = s;
    const Eigen::Matrix3d& E = (s == Side::West || s == Side::East) ? m.E1 : m.E2;
    const double outward = (s == Side::East || s == Side::North) ? 1.0 : -1.0;
    Eigen::Matrix3d M = 0.5 * flip * outward * (m.S0 * E);
    M = 0.5 * (M + M.transpose());
    f.full = M;
    const Eigen::MatrixXd N = null_space_basis(spec.on(s));
    if (N.cols() == 0) {
      f.restricted.resize(0, 0);
      f.eigenvalues.resize(0);
      f.min_normalized = 0.0;
      continue;
    }
    f.restricted = N.transpose() * M * N;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(f.restricted);
    f.eigenvalues = eig.eigenvalues();
    const double scale = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(M).eigenvalues().cwiseAbs().maxCoeff();
    f.min_normalized = scale > 0.0 ? f.eigenvalues.minCoeff() / scale : 0.0;
  }
  return out;
}

}  // namespace swerect
