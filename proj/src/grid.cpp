#include "swerect/grid.hpp"

#include <cmath>
#include <sstream>

#include "swerect/error.hpp"

namespace swerect {

Grid Grid::make(double L1, double L2, std::size_t nx, std::size_t ny) {
  if (!(std::isfinite(L1) && L1 > 0.0) || !(std::isfinite(L2) && L2 > 0.0)) {
    throw Error(ErrorKind::InvalidValue, "domain lengths must be positive and finite");
  }
  if (nx < 4 || ny < 4) {
    std::ostringstream os;
    os << "grid needs at least 4 nodes per direction, got " << nx << "x" << ny;
    throw Error(ErrorKind::InvalidValue, os.str());
  }
  return Grid{L1, L2, nx, ny};
}

StateField::StateField(const Grid& grid) : grid_(grid), values_(grid.size(), Vec3::Zero()) {}

bool StateField::all_finite() const {
  for (const Vec3& v : values_) {
    if (!v.allFinite()) return false;
  }
  return true;
}

double StateField::max_abs() const {
  double m = 0.0;
  for (const Vec3& v : values_) m = std::max(m, v.cwiseAbs().maxCoeff());
  return m;
}

StateField& StateField::operator+=(const StateField& o) {
  require_same_grid(grid_, o.grid_, "StateField +=");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
  return *this;
}

StateField& StateField::operator-=(const StateField& o) {
  require_same_grid(grid_, o.grid_, "StateField -=");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
  return *this;
}

StateField& StateField::operator*=(double s) {
  for (Vec3& v : values_) v *= s;
  return *this;
}

StateField& StateField::axpy(double s, const StateField& o) {
  require_same_grid(grid_, o.grid_, "StateField axpy");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += s * o.values_[k];
  return *this;
}

StateField operator+(StateField a, const StateField& b) { return a += b; }
StateField operator-(StateField a, const StateField& b) { return a -= b; }
StateField operator*(double s, StateField a) { return a *= s; }

void require_same_grid(const Grid& a, const Grid& b, const char* context) {
  if (!(a == b)) {
    std::ostringstream os;
    os << context << ": grid " << a.nx << "x" << a.ny << " vs " << b.nx << "x" << b.ny;
    throw Error(ErrorKind::ShapeMismatch, os.str());
  }
}

StateField sample(const Grid& grid, const PointFunction& fn) {
  StateField s(grid);
  for (std::size_t i = 0; i < grid.nx; ++i) {
    for (std::size_t j = 0; j < grid.ny; ++j) s(i, j) = fn(grid.x(i), grid.y(j));
  }
  return s;
}

StateField sample(const Grid& grid, const SpaceTimeFunction& fn, double t) {
  StateField s(grid);
  for (std::size_t i = 0; i < grid.nx; ++i) {
    for (std::size_t j = 0; j < grid.ny; ++j) s(i, j) = fn(grid.x(i), grid.y(j), t);
  }
  return s;
}

}  // namespace swerect
