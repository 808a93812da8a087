#include "swerect/elliptic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "swerect/error.hpp"

namespace swerect {

namespace {

struct Tap {
  std::size_t at;
  double w;
};

// Second-order first-derivative stencil at node k of n with spacing h.
std::array<Tap, 3> stencil(std::size_t k, std::size_t n, double h) {
  if (k == 0) return {{{0, -1.5 / h}, {1, 2.0 / h}, {2, -0.5 / h}}};
  if (k + 1 == n) return {{{n - 1, 1.5 / h}, {n - 2, -2.0 / h}, {n - 3, 0.5 / h}}};
  return {{{k - 1, -0.5 / h}, {k, 0.0}, {k + 1, 0.5 / h}}};
}

struct Gradients {
  Eigen::VectorXd t1x, t1y, t2x, t2y;
};

Gradients gradients(const ThetaField& th) {
  const Grid& g = th.grid();
  const auto N = static_cast<Eigen::Index>(g.size());
  Gradients d{Eigen::VectorXd::Zero(N), Eigen::VectorXd::Zero(N), Eigen::VectorXd::Zero(N),
              Eigen::VectorXd::Zero(N)};
  for (std::size_t i = 0; i < g.nx; ++i) {
    for (std::size_t j = 0; j < g.ny; ++j) {
      const auto k = static_cast<Eigen::Index>(g.index(i, j));
      for (const Tap& t : stencil(i, g.nx, g.dx())) {
        d.t1x(k) += t.w * th.theta1(t.at, j);
        d.t2x(k) += t.w * th.theta2(t.at, j);
      }
      for (const Tap& t : stencil(j, g.ny, g.dy())) {
        d.t1y(k) += t.w * th.theta1(i, t.at);
        d.t2y(k) += t.w * th.theta2(i, t.at);
      }
    }
  }
  return d;
}

Eigen::VectorXd quadrature_weights(const Grid& g) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(g.size()));
  for (std::size_t i = 0; i < g.nx; ++i) {
    for (std::size_t j = 0; j < g.ny; ++j) w(static_cast<Eigen::Index>(g.index(i, j))) = g.weight(i, j);
  }
  return w;
}

ThetaField apply_signed(const ThetaField& th, const EllipticCoeffs& c, double sign) {
  const Gradients d = gradients(th);
  ThetaField out(th.grid());
  out.theta1() = sign * (c.alpha1 * d.t1x + c.beta1 * d.t2x + c.alpha2 * d.t1y + c.beta2 * d.t2y);
  out.theta2() = sign * (c.beta1 * d.t1x - c.alpha1 * d.t2x + c.beta2 * d.t1y - c.alpha2 * d.t2y);
  return out;
}

// Constraint a*t1 + b*t2 = 0 replacing equation row `eq` at a node.
struct Replacement {
  int eq;
  double a, b;
};

ThetaField solve_system(const ThetaField& rhs_field, const EllipticCoeffs& c, double sign,
                        const std::function<std::vector<Replacement>(std::size_t, std::size_t)>& bc) {
  const Grid& g = rhs_field.grid();
  const std::size_t N = g.size();
  const auto NN = static_cast<Eigen::Index>(N);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(N * 14);
  Eigen::VectorXd rhs(2 * NN);
  rhs << rhs_field.theta1(), rhs_field.theta2();
  std::vector<bool> equation_row(2 * N, true);

  // Coefficients of (theta1, theta2) in eq1 and eq2 for d/dx and d/dy.
  const double ex[2][2] = {{c.alpha1, c.beta1}, {c.beta1, -c.alpha1}};
  const double ey[2][2] = {{c.alpha2, c.beta2}, {c.beta2, -c.alpha2}};

  for (std::size_t i = 0; i < g.nx; ++i) {
    for (std::size_t j = 0; j < g.ny; ++j) {
      const std::size_t k = g.index(i, j);
      const std::vector<Replacement> reps = bc(i, j);
      bool replaced[2] = {false, false};
      for (const Replacement& r : reps) {
        const auto row = static_cast<Eigen::Index>(r.eq * N + k);
        replaced[r.eq] = true;
        equation_row[static_cast<std::size_t>(row)] = false;
        if (r.a != 0.0) trip.emplace_back(row, static_cast<Eigen::Index>(k), r.a);
        if (r.b != 0.0) trip.emplace_back(row, static_cast<Eigen::Index>(N + k), r.b);
        rhs(row) = 0.0;
      }
      for (int e = 0; e < 2; ++e) {
        if (replaced[e]) continue;
        const auto row = static_cast<Eigen::Index>(e * N + k);
        for (const Tap& t : stencil(i, g.nx, g.dx())) {
          if (t.w == 0.0) continue;
          const std::size_t col = g.index(t.at, j);
          for (int comp = 0; comp < 2; ++comp) {
            const double v = sign * ex[e][comp] * t.w;
            if (v != 0.0) trip.emplace_back(row, static_cast<Eigen::Index>(comp * N + col), v);
          }
        }
        for (const Tap& t : stencil(j, g.ny, g.dy())) {
          if (t.w == 0.0) continue;
          const std::size_t col = g.index(i, t.at);
          for (int comp = 0; comp < 2; ++comp) {
            const double v = sign * ey[e][comp] * t.w;
            if (v != 0.0) trip.emplace_back(row, static_cast<Eigen::Index>(comp * N + col), v);
          }
        }
      }
    }
  }

  Eigen::SparseMatrix<double> A(2 * NN, 2 * NN);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success) {
    throw Error(ErrorKind::SingularSystem, "sparse factorization failed: " + lu.lastErrorMessage());
  }
  const Eigen::VectorXd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !x.allFinite()) {
    throw Error(ErrorKind::SingularSystem, "sparse solve failed");
  }

  const Eigen::VectorXd res = A * x - rhs;
  double res_max = 0.0;
  for (Eigen::Index r = 0; r < 2 * NN; ++r) {
    if (equation_row[static_cast<std::size_t>(r)]) res_max = std::max(res_max, std::abs(res(r)));
  }
  const double scale = rhs.cwiseAbs().maxCoeff();
  if (res_max > 1e-10 * std::max(scale, 1e-300) && res_max > 0.0) {
    std::ostringstream os;
    os << "equation residual " << res_max << " exceeds 1e-10 relative to " << scale;
    throw Error(ErrorKind::NonConvergence, os.str());
  }

  ThetaField out(g);
  out.theta1() = x.head(NN);
  out.theta2() = x.tail(NN);
  return out;
}

// Value with exact first derivatives in x and y.
struct Dual {
  double v, dx, dy;
};

Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.dx + b.dx, a.dy + b.dy}; }
Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.dx - b.dx, a.dy - b.dy}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.dx * b.v + a.v * b.dx, a.dy * b.v + a.v * b.dy}; }
Dual operator*(double s, Dual a) { return {s * a.v, s * a.dx, s * a.dy}; }
Dual operator+(double s, Dual a) { return {s + a.v, a.dx, a.dy}; }
Dual sin(Dual a) { return {std::sin(a.v), std::cos(a.v) * a.dx, std::cos(a.v) * a.dy}; }
Dual cos(Dual a) { return {std::cos(a.v), -std::sin(a.v) * a.dx, -std::sin(a.v) * a.dy}; }
Dual exp(Dual a) { return {std::exp(a.v), std::exp(a.v) * a.dx, std::exp(a.v) * a.dy}; }

using DualPair = std::array<Dual, 2>;

ManufacturedTheta make_manufactured(const EllipticCoeffs& c, double L1, double L2, double sign,
                                    std::function<DualPair(Dual, Dual)> fn) {
  auto eval = [=](double x, double y) { return fn(Dual{x / L1, 1.0 / L1, 0.0}, Dual{y / L2, 0.0, 1.0 / L2}); };
  ManufacturedTheta m;
  m.value = [eval](double x, double y) {
    const DualPair t = eval(x, y);
    return Eigen::Vector2d(t[0].v, t[1].v);
  };
  m.forcing = [eval, c, sign](double x, double y) {
    const DualPair t = eval(x, y);
    const Eigen::Vector2d tx(t[0].dx, t[1].dx), ty(t[0].dy, t[1].dy);
    return Eigen::Vector2d(sign * (c.T1 * tx + c.T2 * ty));
  };
  return m;
}

}  // namespace

ManufacturedTheta manufactured_in_V(const EllipticCoeffs& c, double L1, double L2) {
  constexpr double h = 0.5 * 3.14159265358979323846;
  return make_manufactured(c, L1, L2, 1.0, [](Dual X, Dual Y) -> DualPair {
    return {sin(h * X) * sin(h * Y) * exp(X - Y), cos(h * X) * cos(h * Y) * (1.0 + X * Y)};
  });
}

ManufacturedTheta manufactured_adjoint(const EllipticCoeffs& c, double L1, double L2) {
  const double a1 = c.alpha1, a2 = c.alpha2, b1 = c.beta1, b2 = c.beta2;
  return make_manufactured(c, L1, L2, -1.0, [=](Dual X, Dual Y) -> DualPair {
    const Dual s = 1.0 + exp(X * Y);
    const Dual r = cos(X + 2.0 * Y);
    const Dual by = Y * (1.0 + (-1.0) * Y), bx = X * (1.0 + (-1.0) * X);
    const Dual mx = 1.0 + (-1.0) * X, my = 1.0 + (-1.0) * Y;
    // W: (a1, b1), E: (b1, -a1), S: (a2, b2), N: (b2, -a2) span the side null spaces.
    const Dual t1 = by * (a1 * mx + b1 * X) * s + bx * (a2 * my + b2 * Y) * r;
    const Dual t2 = by * (b1 * mx + (-a1) * X) * s + bx * (b2 * my + (-a2) * Y) * r;
    return {t1, t2};
  });
}

EllipticCoeffs build_coeffs(double alpha1, double alpha2, double beta1, double beta2) {
  const bool finite = std::isfinite(alpha1) && std::isfinite(alpha2) && std::isfinite(beta1) &&
                      std::isfinite(beta2);
  if (!finite || !(alpha1 > 0.0) || !(alpha2 > 0.0)) {
    throw Error(ErrorKind::ViolatesCondition, "alpha1 and alpha2 must be positive");
  }
  const double det = alpha2 * beta1 - alpha1 * beta2;
  const double scale = std::max(std::abs(alpha2 * beta1), std::abs(alpha1 * beta2));
  if (std::abs(det) <= 1e-12 * scale || det == 0.0) {
    throw Error(ErrorKind::ViolatesCondition, "alpha2*beta1 - alpha1*beta2 must be nonzero");
  }
  EllipticCoeffs c;
  c.alpha1 = alpha1;
  c.alpha2 = alpha2;
  c.beta1 = beta1;
  c.beta2 = beta2;
  c.T1 << alpha1, beta1, beta1, -alpha1;
  c.T2 << alpha2, beta2, beta2, -alpha2;
  c.T0 << alpha1, alpha2, beta1, beta2;
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(c.T0);
  c.c2 = svd.singularValues()(0);
  c.c1 = 1.0 / svd.singularValues()(1);
  return c;
}

EllipticCoeffs swe_elliptic_block(const PhysicalConstants& p) {
  if (classify(p) != Regime::MixedSubcritical) {
    throw Error(ErrorKind::RegimeMismatch, "the elliptic block exists only in the MixedSubcritical regime");
  }
  const double s = p.u0 * p.u0 + p.v0 * p.v0;
  const double k1 = kappa(p).value;
  return build_coeffs(p.u0 / s, p.v0 / s, p.g * p.v0 / (k1 * s), -p.g * p.u0 / (k1 * s));
}

ThetaField::ThetaField(const Grid& grid)
    : grid_(grid),
      t1_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.size()))),
      t2_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.size()))) {}

double ThetaField::max_abs() const {
  if (t1_.size() == 0) return 0.0;
  return std::max(t1_.cwiseAbs().maxCoeff(), t2_.cwiseAbs().maxCoeff());
}

ThetaField sample_theta(const Grid& grid, const ThetaFunction& fn) {
  ThetaField out(grid);
  for (std::size_t i = 0; i < grid.nx; ++i) {
    for (std::size_t j = 0; j < grid.ny; ++j) {
      const Eigen::Vector2d v = fn(grid.x(i), grid.y(j));
      out.theta1(i, j) = v(0);
      out.theta2(i, j) = v(1);
    }
  }
  return out;
}

double theta_inner(const ThetaField& a, const ThetaField& b) {
  require_same_grid(a.grid(), b.grid(), "theta_inner");
  const Eigen::VectorXd w = quadrature_weights(a.grid());
  return (w.array() * (a.theta1().array() * b.theta1().array() + a.theta2().array() * b.theta2().array())).sum();
}

double theta_norm(const ThetaField& a) { return std::sqrt(theta_inner(a, a)); }

ThetaField apply_T(const ThetaField& theta, const EllipticCoeffs& c) { return apply_signed(theta, c, 1.0); }
ThetaField apply_T_star(const ThetaField& theta, const EllipticCoeffs& c) { return apply_signed(theta, c, -1.0); }

bool in_discrete_V(const ThetaField& theta, double tol) {
  const Grid& g = theta.grid();
  const double bound = tol * std::max(1.0, theta.max_abs());
  for (std::size_t i = 0; i < g.nx; ++i) {
    for (std::size_t j = 0; j < g.ny; ++j) {
      if ((i == 0 || j == 0) && std::abs(theta.theta1(i, j)) > bound) return false;
      if ((i + 1 == g.nx || j + 1 == g.ny) && std::abs(theta.theta2(i, j)) > bound) return false;
    }
  }
  return true;
}

double adjoint_bc_residual(const ThetaField& th, const EllipticCoeffs& c) {
  const Grid& g = th.grid();
  double m = 0.0;
  for (std::size_t i = 0; i < g.nx; ++i) {
    for (std::size_t j = 0; j < g.ny; ++j) {
      const double a = th.theta1(i, j), b = th.theta2(i, j);
      if (i == 0) m = std::max(m, std::abs(c.beta1 * a - c.alpha1 * b));
      if (i + 1 == g.nx) m = std::max(m, std::abs(c.alpha1 * a + c.beta1 * b));
      if (j == 0) m = std::max(m, std::abs(c.beta2 * a - c.alpha2 * b));
      if (j + 1 == g.ny) m = std::max(m, std::abs(c.alpha2 * a + c.beta2 * b));
    }
  }
  return m;
}

double lemma61_residual(const ThetaField& theta) {
  if (!in_discrete_V(theta)) {
    throw Error(ErrorKind::BcViolation, "theta1 must vanish on West/South and theta2 on East/North");
  }
  const Gradients d = gradients(theta);
  const Eigen::VectorXd w = quadrature_weights(theta.grid());
  const double a = (w.array() * d.t2x.array() * d.t1y.array()).sum();
  const double b = (w.array() * d.t1x.array() * d.t2y.array()).sum();
  return std::abs(a - b);
}

AprioriReport apriori_check(const ThetaField& theta, const EllipticCoeffs& c) {
  AprioriReport r;
  const Gradients d = gradients(theta);
  const Eigen::VectorXd w = quadrature_weights(theta.grid());
  const double grad_sq =
      (w.array() * (d.t1x.array().square() + d.t1y.array().square() + d.t2x.array().square() +
                    d.t2y.array().square()))
          .sum();
  r.grad_norm = std::sqrt(grad_sq);
  r.T_norm = theta_norm(apply_T(theta, c));
  r.lower = r.grad_norm / c.c1;
  r.upper = c.c2 * r.grad_norm;
  if (!(grad_sq > 0.0)) {
    r.skipped = true;
    r.holds = true;
    return r;
  }
  const double t_sq = r.T_norm * r.T_norm;
  r.lower_margin = (t_sq - r.lower * r.lower) / grad_sq;
  r.upper_margin = (r.upper * r.upper - t_sq) / grad_sq;
  r.slack = 2.0 * std::abs(c.det()) * lemma61_residual(theta) / grad_sq;
  const double eps = 1e-12;
  r.holds = r.lower_margin >= -r.slack - eps && r.upper_margin >= -r.slack - eps;
  return r;
}

ThetaField solve_T(const ThetaField& F, const EllipticCoeffs& c) {
  const Grid& g = F.grid();
  return solve_system(F, c, 1.0, [&](std::size_t i, std::size_t j) {
    std::vector<Replacement> reps;
    if (i == 0 || j == 0) reps.push_back({0, 1.0, 0.0});
    if (i + 1 == g.nx || j + 1 == g.ny) reps.push_back({1, 0.0, 1.0});
    return reps;
  });
}

ThetaField solve_T_star(const ThetaField& Psi, const EllipticCoeffs& c) {
  const Grid& g = Psi.grid();
  return solve_system(Psi, c, -1.0, [&](std::size_t i, std::size_t j) {
    std::vector<Replacement> cons;
    if (i == 0) cons.push_back({0, c.beta1, -c.alpha1});
    if (i + 1 == g.nx) cons.push_back({0, c.alpha1, c.beta1});
    if (j == 0) cons.push_back({0, c.beta2, -c.alpha2});
    if (j + 1 == g.ny) cons.push_back({0, c.alpha2, c.beta2});
    if (cons.size() == 2) {
      const Replacement& a = cons[0];
      const Replacement& b = cons[1];
      const double det = a.a * b.b - a.b * b.a;
      const double scale = std::hypot(a.a, a.b) * std::hypot(b.a, b.b);
      if (std::abs(det) <= 1e-12 * scale) {
        cons.pop_back();  // dependent corner constraints: keep one, retain eq2
      } else {
        cons[1].eq = 1;
      }
    }
    return cons;
  });
}

Eigen::Vector2d to_transformed_coordinates(const EllipticCoeffs& c, double x, double y) {
  return {c.beta2 * x - c.beta1 * y, c.alpha2 * x - c.alpha1 * y};
}

Eigen::Vector2d from_transformed_coordinates(const EllipticCoeffs& c, double xp, double yp) {
  const double d = c.det();
  return {(-c.alpha1 * xp + c.beta1 * yp) / d, (-c.alpha2 * xp + c.beta2 * yp) / d};
}

double NeumannReport::max() const { return std::max({east, north, west, south}); }

NeumannReport neumann_residuals(const ThetaField& theta, const EllipticCoeffs& c, double corner_margin) {
  const Grid& g = theta.grid();
  const Gradients d = gradients(theta);
  double gmax = 0.0;
  for (Eigen::Index k = 0; k < d.t1x.size(); ++k) {
    gmax = std::max({gmax, std::abs(d.t1x(k)), std::abs(d.t1y(k)), std::abs(d.t2x(k)), std::abs(d.t2y(k))});
  }
  NeumannReport r;
  if (gmax == 0.0) return r;
  const double xx = c.alpha1 * c.alpha1 + c.beta1 * c.beta1;
  const double xy = c.alpha1 * c.alpha2 + c.beta1 * c.beta2;
  const double yy = c.alpha2 * c.alpha2 + c.beta2 * c.beta2;
  auto at = [&](std::size_t i, std::size_t j) { return static_cast<Eigen::Index>(g.index(i, j)); };
  const auto away_y = [&](std::size_t j) { return g.y(j) >= corner_margin * g.L2 && g.y(j) <= (1 - corner_margin) * g.L2; };
  const auto away_x = [&](std::size_t i) { return g.x(i) >= corner_margin * g.L1 && g.x(i) <= (1 - corner_margin) * g.L1; };
  for (std::size_t j = 1; j + 1 < g.ny; ++j) {
    if (!away_y(j)) continue;
    const auto e = at(g.nx - 1, j), w = at(0, j);
    r.east = std::max(r.east, std::abs(xx * d.t1x(e) + xy * d.t1y(e)));
    r.west = std::max(r.west, std::abs(xx * d.t2x(w) + xy * d.t2y(w)));
  }
  for (std::size_t i = 1; i + 1 < g.nx; ++i) {
    if (!away_x(i)) continue;
    const auto n = at(i, g.ny - 1), s = at(i, 0);
    r.north = std::max(r.north, std::abs(xy * d.t1x(n) + yy * d.t1y(n)));
    r.south = std::max(r.south, std::abs(xy * d.t2x(s) + yy * d.t2y(s)));
  }
  const double scale = gmax * std::max({xx, yy, std::abs(xy)});
  r.east /= scale;
  r.west /= scale;
  r.north /= scale;
  r.south /= scale;
  return r;
}

}  // namespace swerect
