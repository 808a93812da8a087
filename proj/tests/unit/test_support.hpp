#pragma once

#include <cmath>

#include "swerect/regime.hpp"
#include "swerect/rng.hpp"

namespace swerect::testing {

// Random valid constants inside the given regime, away from the critical surfaces.
inline PhysicalConstants draw_params(Regime regime, SplitMix64& rng, double f = 0.0) {
  while (true) {
    const double phi0 = rng.uniform(0.5, 3.0);
    const double g = rng.uniform(1.0, 20.0);
    const double c = std::sqrt(g * phi0);
    double r1 = 0.0, r2 = 0.0;
    switch (regime) {
      case Regime::Supercritical:
        r1 = rng.uniform(1.05, 3.0);
        r2 = rng.uniform(1.05, 3.0);
        break;
      case Regime::MixedHyperbolicI:
        r1 = rng.uniform(0.05, 0.95);
        r2 = rng.uniform(1.05, 3.0);
        break;
      case Regime::MixedHyperbolicII:
        r1 = rng.uniform(1.05, 3.0);
        r2 = rng.uniform(0.05, 0.95);
        break;
      case Regime::FullyHyperbolicSubcritical:
        r1 = rng.uniform(0.2, 0.97);
        r2 = rng.uniform(0.2, 0.97);
        if (r1 * r1 + r2 * r2 < 1.03) continue;
        break;
      case Regime::MixedSubcritical:
        r1 = rng.uniform(0.05, 0.95);
        r2 = rng.uniform(0.05, 0.95);
        if (r1 * r1 + r2 * r2 > 0.97) continue;
        break;
    }
    return PhysicalConstants{r1 * c, r2 * c, phi0, g, f};
  }
}

// Random constants from any regime, rejecting near-critical draws.
inline PhysicalConstants draw_any(SplitMix64& rng) {
  while (true) {
    const double phi0 = rng.uniform(0.1, 5.0);
    const double g = rng.uniform(0.5, 30.0);
    const double c2 = g * phi0;
    const double u0 = std::sqrt(c2) * rng.uniform(0.01, 3.0);
    const double v0 = std::sqrt(c2) * rng.uniform(0.01, 3.0);
    const double tol = 1e-6 * c2;
    if (std::abs(u0 * u0 - c2) < tol || std::abs(v0 * v0 - c2) < tol || std::abs(u0 * u0 + v0 * v0 - c2) < tol) {
      continue;
    }
    return PhysicalConstants{u0, v0, phi0, g, rng.uniform(-1.0, 1.0)};
  }
}

inline PhysicalConstants reference_params(Regime regime, double f = 0.0) {
  switch (regime) {
    case Regime::Supercritical: return {4, 4, 1, 9.81, f};
    case Regime::MixedHyperbolicI: return {2, 4, 1, 9.81, f};
    case Regime::MixedHyperbolicII: return {4, 2, 1, 9.81, f};
    case Regime::FullyHyperbolicSubcritical: return {3, 3, 1, 9.81, f};
    case Regime::MixedSubcritical: return {1, 1, 1, 9.81, f};
  }
  return {};
}

inline double rel_diff(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace swerect::testing
