#include "swerect/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace swerect {

std::size_t default_probe_modes(const Grid& grid) {
  return std::max<std::size_t>(1, std::min(grid.nx, grid.ny) / 4);
}

StateField band_limited_field(const Grid& grid, std::size_t modes, SplitMix64& rng) {
  using std::numbers::pi;
  const std::size_t K = std::max<std::size_t>(1, modes);
  Eigen::MatrixXd cx(grid.nx, K), cy(grid.ny, K);
  for (std::size_t i = 0; i < grid.nx; ++i) {
    for (std::size_t a = 0; a < K; ++a) cx(i, a) = std::cos(static_cast<double>(a) * pi * grid.x(i) / grid.L1);
  }
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t b = 0; b < K; ++b) cy(j, b) = std::cos(static_cast<double>(b) * pi * grid.y(j) / grid.L2);
  }
  StateField out(grid);
  for (int c = 0; c < 3; ++c) {
    Eigen::MatrixXd A(K, K);
    for (std::size_t a = 0; a < K; ++a) {
      for (std::size_t b = 0; b < K; ++b) A(a, b) = rng.uniform(-1.0, 1.0);
    }
    const Eigen::MatrixXd values = cx * A * cy.transpose();
    for (std::size_t i = 0; i < grid.nx; ++i) {
      for (std::size_t j = 0; j < grid.ny; ++j) out(i, j)(c) = values(i, j);
    }
  }
  return out;
}

PointFunction random_smooth_function(SplitMix64& rng, double L1, double L2, std::size_t modes) {
  struct Term {
    double amp, kx, ky, px, py;
  };
  std::vector<Term> terms[3];
  for (auto& comp : terms) {
    for (std::size_t m = 0; m < modes; ++m) {
      Term t;
      t.amp = rng.uniform(-1.0, 1.0);
      t.kx = std::numbers::pi * rng.uniform(0.0, 2.0) / L1;
      t.ky = std::numbers::pi * rng.uniform(0.0, 2.0) / L2;
      t.px = rng.uniform(0.0, 2.0 * std::numbers::pi);
      t.py = rng.uniform(0.0, 2.0 * std::numbers::pi);
      comp.push_back(t);
    }
  }
  return [terms](double x, double y) {
    Vec3 v = Vec3::Zero();
    for (int c = 0; c < 3; ++c) {
      for (const Term& t : terms[c]) v(c) += t.amp * std::cos(t.kx * x + t.px) * std::cos(t.ky * y + t.py);
    }
    return v;
  };
}

StateField compatible_field(const Grid& grid, const BoundarySpec& spec, const PhysicalConstants& p,
                            const PointFunction& g1, const PointFunction& g2, const PointFunction& g3) {
  const Eigen::Matrix3d NW = null_space_projector(spec.on(Side::West), p);
  const Eigen::Matrix3d NE = null_space_projector(spec.on(Side::East), p);
  const Eigen::Matrix3d NS = null_space_projector(spec.on(Side::South), p);
  const Eigen::Matrix3d NN = null_space_projector(spec.on(Side::North), p);
  const double L1 = grid.L1, L2 = grid.L2;
  return sample(grid, [&](double x, double y) -> Vec3 {
    const double bx = x * (L1 - x), by = y * (L2 - y);
    const double sx = x / L1, sy = y / L2;
    const Vec3 a = g1(x, y), b = g2(x, y);
    return by * ((1.0 - sx) * (NW * a) + sx * (NE * a)) + bx * ((1.0 - sy) * (NS * b) + sy * (NN * b)) +
           bx * by * g3(x, y);
  });
}

}  // namespace swerect
