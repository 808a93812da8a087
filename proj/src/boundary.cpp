#include "swerect/boundary.hpp"

#include <cmath>
#include <sstream>

#include "swerect/algebra.hpp"
#include "swerect/error.hpp"

namespace swerect {

namespace {

using Rows = std::vector<ConstraintRow>;

Rows dirichlet() {
  return {ConstraintRow(1.0, 0.0, 0.0), ConstraintRow(0.0, 1.0, 0.0), ConstraintRow(0.0, 0.0, 1.0)};
}

void require_regime(Regime regime, const PhysicalConstants& p) {
  const Regime actual = classify(p);
  if (actual != regime) {
    std::ostringstream os;
    os << "requested " << to_string(regime) << " but parameters classify as " << to_string(actual);
    throw Error(ErrorKind::RegimeMismatch, os.str());
  }
}

struct Chars {
  ConstraintRow xi, eta, zeta;
};

Chars hyperbolic_rows(const PhysicalConstants& p) {
  const double k0 = kappa(p).value;
  return {ConstraintRow(p.v0, -p.u0, k0), ConstraintRow(p.v0, -p.u0, -k0),
          ConstraintRow(p.u0, p.v0, p.g)};
}

// Rank-revealing factorization of a row set: rows = Ur * diag(sr) * Vr^t.
struct RowSvd {
  Eigen::MatrixXd U;
  Eigen::VectorXd s;
  Eigen::MatrixXd V;
  Eigen::Index rank = 0;
};

RowSvd row_svd(const Rows& rows) {
  RowSvd out;
  if (rows.empty()) return out;
  Eigen::MatrixXd C(static_cast<Eigen::Index>(rows.size()), 3);
  for (std::size_t r = 0; r < rows.size(); ++r) C.row(static_cast<Eigen::Index>(r)) = rows[r];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > 1e-10 * sv(0)) ++rank;
  }
  out.rank = rank;
  out.U = svd.matrixU().leftCols(rank);
  out.s = sv.head(rank);
  out.V = svd.matrixV();
  return out;
}

}  // namespace

std::string_view to_string(Side s) noexcept {
  switch (s) {
    case Side::West: return "West";
    case Side::East: return "East";
    case Side::South: return "South";
    case Side::North: return "North";
  }
  return "Unknown";
}

BoundarySpec bc_catalog(Regime regime, const PhysicalConstants& p) {
  require_regime(regime, p);
  BoundarySpec s;
  s.regime = regime;
  s.kind = CatalogKind::Operator;
  if (regime == Regime::MixedSubcritical) {
    const ConstraintRow xi(p.v0, -p.u0, 0.0), zeta(p.u0, p.v0, p.g), phi(0.0, 0.0, 1.0);
    s.on(Side::West) = {xi, zeta};
    s.on(Side::South) = {xi, zeta};
    s.on(Side::East) = {phi};
    s.on(Side::North) = {phi};
    return s;
  }
  const Chars c = hyperbolic_rows(p);
  switch (regime) {
    case Regime::Supercritical:
      s.on(Side::West) = dirichlet();
      s.on(Side::South) = dirichlet();
      break;
    case Regime::MixedHyperbolicI:
      s.on(Side::West) = {c.xi, c.zeta};
      s.on(Side::East) = {c.eta};
      s.on(Side::South) = dirichlet();
      break;
    case Regime::MixedHyperbolicII:
      s.on(Side::West) = dirichlet();
      s.on(Side::South) = {c.eta, c.zeta};
      s.on(Side::North) = {c.xi};
      break;
    case Regime::FullyHyperbolicSubcritical:
      s.on(Side::West) = {c.xi, c.zeta};
      s.on(Side::East) = {c.eta};
      s.on(Side::South) = {c.eta, c.zeta};
      s.on(Side::North) = {c.xi};
      break;
    case Regime::MixedSubcritical:
      break;
  }
  return s;
}

BoundarySpec adjoint_bc_catalog(Regime regime, const PhysicalConstants& p) {
  require_regime(regime, p);
  BoundarySpec s;
  s.regime = regime;
  s.kind = CatalogKind::Adjoint;
  if (regime == Regime::MixedSubcritical) {
    const double u0 = p.u0, v0 = p.v0, g = p.g;
    const double k1sq = kappa(p).value * kappa(p).value;
    const ConstraintRow zeta(u0, v0, g);
    s.on(Side::West) = {ConstraintRow(g * v0 * v0, -g * v0 * u0, -u0 * k1sq)};
    s.on(Side::East) = {ConstraintRow(u0 * v0, -u0 * u0, g * v0), zeta};
    s.on(Side::South) = {ConstraintRow(g * u0 * v0, -g * u0 * u0, v0 * k1sq)};
    s.on(Side::North) = {ConstraintRow(v0 * v0, -v0 * u0, -g * u0), zeta};
    return s;
  }
  const Chars c = hyperbolic_rows(p);
  switch (regime) {
    case Regime::Supercritical:
      s.on(Side::East) = dirichlet();
      s.on(Side::North) = dirichlet();
      break;
    case Regime::MixedHyperbolicI:
      s.on(Side::West) = {c.eta};
      s.on(Side::East) = {c.xi, c.zeta};
      s.on(Side::North) = dirichlet();
      break;
    case Regime::MixedHyperbolicII:
      // Mirror of case I under x<->y, u<->v, which sends xi to -eta.
      s.derived = true;
      s.on(Side::East) = dirichlet();
      s.on(Side::South) = {c.xi};
      s.on(Side::North) = {c.eta, c.zeta};
      break;
    case Regime::FullyHyperbolicSubcritical:
      s.on(Side::West) = {c.eta};
      s.on(Side::East) = {c.xi, c.zeta};
      s.on(Side::South) = {c.xi};
      s.on(Side::North) = {c.eta, c.zeta};
      break;
    case Regime::MixedSubcritical:
      break;
  }
  return s;
}

Eigen::Matrix3d null_space_projector(const std::vector<ConstraintRow>& rows, const PhysicalConstants& p) {
  const RowSvd f = row_svd(rows);
  if (f.rank == 0) return Eigen::Matrix3d::Identity();
  const Eigen::Vector3d sinv(1.0, 1.0, p.phi0 / p.g);
  const Eigen::MatrixXd C = f.V.leftCols(f.rank).transpose();
  const Eigen::MatrixXd K = sinv.asDiagonal() * C.transpose() *
                            (C * sinv.asDiagonal() * C.transpose()).inverse();
  return Eigen::Matrix3d::Identity() - K * C;
}

Eigen::MatrixXd null_space_basis(const std::vector<ConstraintRow>& rows) {
  if (rows.empty()) return Eigen::Matrix3d::Identity();
  const RowSvd f = row_svd(rows);
  return f.V.rightCols(3 - f.rank);
}

BoundaryData BoundaryData::from_state(SpaceTimeFunction ug, const BoundarySpec& spec) {
  return BoundaryData([ug = std::move(ug), spec](Side side, std::size_t row, double x, double y, double t) {
    return spec.on(side)[row].dot(ug(x, y, t).transpose());
  });
}

BoundaryEnforcer::BoundaryEnforcer(const BoundarySpec& spec, const PhysicalConstants& p, const Grid& grid,
                                   EnforcementMode mode)
    : spec_(spec), grid_(grid), mode_(mode) {
  for (Side s : kSides) {
    const RowSvd f = row_svd(spec.on(s));
    if (f.rank != static_cast<Eigen::Index>(spec.count(s))) {
      std::ostringstream os;
      os << "constraint rows on " << to_string(s) << " are linearly dependent";
      throw Error(ErrorKind::SingularConstraintSystem, os.str());
    }
  }
  const Eigen::Vector3d sinv(1.0, 1.0, p.phi0 / p.g);
  const std::size_t nx = grid.nx, ny = grid.ny;
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      std::vector<Side> sides;
      if (i == 0) sides.push_back(Side::West);
      if (i + 1 == nx) sides.push_back(Side::East);
      if (j == 0) sides.push_back(Side::South);
      if (j + 1 == ny) sides.push_back(Side::North);
      if (sides.empty()) continue;

      Rows rows;
      std::vector<RowRef> refs;
      for (Side s : sides) {
        for (std::size_t r = 0; r < spec.count(s); ++r) {
          rows.push_back(spec.on(s)[r]);
          refs.push_back({s, r});
        }
      }
      if (rows.empty()) continue;

      Node node;
      node.index = grid.index(i, j);
      const std::size_t si = (i == 0) ? 1 : (i + 1 == nx ? nx - 2 : i);
      const std::size_t sj = (j == 0) ? 1 : (j + 1 == ny ? ny - 2 : j);
      node.source = mode == EnforcementMode::Extrapolation ? grid.index(si, sj) : node.index;
      node.x = grid.x(i);
      node.y = grid.y(j);
      node.refs = std::move(refs);

      const RowSvd f = row_svd(rows);
      const Eigen::MatrixXd C = f.V.leftCols(f.rank).transpose();
      const Eigen::MatrixXd K = sinv.asDiagonal() * C.transpose() *
                                (C * sinv.asDiagonal() * C.transpose()).inverse();
      node.keep = Eigen::Matrix3d::Identity() - K * C;
      // Reduced data d_red = diag(1/s) U^t d.
      node.lift = K * f.s.cwiseInverse().asDiagonal() * f.U.transpose();
      nodes_.push_back(std::move(node));
    }
  }
}

void BoundaryEnforcer::apply(StateField& U, const BoundaryData& data, double t) const {
  require_same_grid(grid_, U.grid(), "apply_bc");
  // Sources are interior nodes in extrapolation mode, so in-place update is safe.
  for (const Node& n : nodes_) {
    Vec3 value = n.keep * U[n.source];
    if (!data.homogeneous()) {
      Eigen::VectorXd d(static_cast<Eigen::Index>(n.refs.size()));
      for (std::size_t k = 0; k < n.refs.size(); ++k) {
        d(static_cast<Eigen::Index>(k)) = data.value(n.refs[k].side, n.refs[k].row, n.x, n.y, t);
      }
      value += n.lift * d;
    }
    U[n.index] = value;
  }
}

void BoundaryEnforcer::apply_homogeneous(StateField& U) const { apply(U, BoundaryData{}, 0.0); }

double BoundaryEnforcer::max_residual(const StateField& U, const BoundaryData& data, double t) const {
  require_same_grid(grid_, U.grid(), "boundary residual");
  double m = 0.0;
  for (const Node& n : nodes_) {
    for (const RowRef& r : n.refs) {
      const double lhs = spec_.on(r.side)[r.row].dot(U[n.index].transpose());
      m = std::max(m, std::abs(lhs - data.value(r.side, r.row, n.x, n.y, t)));
    }
  }
  return m;
}

StateField apply_bc(const StateField& state, const BoundarySpec& spec, const PhysicalConstants& p,
                    const BoundaryData& data, double t, EnforcementMode mode) {
  StateField out = state;
  BoundaryEnforcer(spec, p, state.grid(), mode).apply(out, data, t);
  return out;
}

IncomingCountReport incoming_count_check(const PhysicalConstants& p, Regime regime) {
  const BoundarySpec spec = bc_catalog(regime, p);
  IncomingCountReport r;
  r.regime = regime;
  if (regime == Regime::MixedSubcritical) {
    r.expected = {2, 1, 2, 1};
  } else {
    const CharTransform t = hyperbolic_transform(p);
    for (int k = 0; k < 3; ++k) {
      if (t.a(k) > 0.0) ++r.expected[0];
      if (t.a(k) < 0.0) ++r.expected[1];
      if (t.b(k) > 0.0) ++r.expected[2];
      if (t.b(k) < 0.0) ++r.expected[3];
    }
  }
  for (Side s : kSides) r.actual[side_index(s)] = spec.count(s);
  r.pass = r.expected == r.actual;
  return r;
}

}  // namespace swerect
