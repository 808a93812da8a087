#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace swerect {

// Collocated nodes x_i = i*dx, y_j = j*dy with dx = L1/(nx-1), dy = L2/(ny-1).
struct Grid {
  double L1 = 1.0;
  double L2 = 1.0;
  std::size_t nx = 0;
  std::size_t ny = 0;

  static Grid make(double L1, double L2, std::size_t nx, std::size_t ny);

  double dx() const { return L1 / static_cast<double>(nx - 1); }
  double dy() const { return L2 / static_cast<double>(ny - 1); }
  double x(std::size_t i) const { return i + 1 == nx ? L1 : static_cast<double>(i) * dx(); }
  double y(std::size_t j) const { return j + 1 == ny ? L2 : static_cast<double>(j) * dy(); }
  std::size_t size() const { return nx * ny; }
  std::size_t index(std::size_t i, std::size_t j) const { return i * ny + j; }
  // Trapezoid weights, halved at the end nodes.
  double weight_x(std::size_t i) const { return (i == 0 || i + 1 == nx) ? 0.5 * dx() : dx(); }
  double weight_y(std::size_t j) const { return (j == 0 || j + 1 == ny) ? 0.5 * dy() : dy(); }
  double weight(std::size_t i, std::size_t j) const { return weight_x(i) * weight_y(j); }

  bool operator==(const Grid& o) const {
    return L1 == o.L1 && L2 == o.L2 && nx == o.nx && ny == o.ny;
  }
};

using Vec3 = Eigen::Vector3d;

// (u, v, phi) at every node, stored x-major.
class StateField {
 public:
  StateField() = default;
  explicit StateField(const Grid& grid);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  Vec3& operator()(std::size_t i, std::size_t j) { return values_[grid_.index(i, j)]; }
  const Vec3& operator()(std::size_t i, std::size_t j) const { return values_[grid_.index(i, j)]; }
  Vec3& operator[](std::size_t k) { return values_[k]; }
  const Vec3& operator[](std::size_t k) const { return values_[k]; }

  std::vector<Vec3>& values() { return values_; }
  const std::vector<Vec3>& values() const { return values_; }

  bool all_finite() const;
  double max_abs() const;

  StateField& operator+=(const StateField& o);
  StateField& operator-=(const StateField& o);
  StateField& operator*=(double s);
  // this += s * o
  StateField& axpy(double s, const StateField& o);

 private:
  Grid grid_;
  std::vector<Vec3> values_;
};

StateField operator+(StateField a, const StateField& b);
StateField operator-(StateField a, const StateField& b);
StateField operator*(double s, StateField a);

// Throws ShapeMismatch when the two fields live on different grids.
void require_same_grid(const Grid& a, const Grid& b, const char* context);

using PointFunction = std::function<Vec3(double x, double y)>;
using SpaceTimeFunction = std::function<Vec3(double x, double y, double t)>;
using StateProvider = std::function<StateField(double t)>;

StateField sample(const Grid& grid, const PointFunction& fn);
StateField sample(const Grid& grid, const SpaceTimeFunction& fn, double t);

}  // namespace swerect
