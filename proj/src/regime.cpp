#include "swerect/regime.hpp"

#include <cmath>
#include <sstream>

#include "swerect/error.hpp"

namespace swerect {

namespace {

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || !(value > 0.0)) {
    std::ostringstream os;
    os << name << " must be positive and finite, got " << value;
    throw Error(ErrorKind::NonPositiveParameter, os.str());
  }
}

}  // namespace

double PhysicalConstants::wave_speed() const { return std::sqrt(g * phi0); }

PhysicalConstants validate_params(double u0, double v0, double phi0, double g, double f) {
  require_positive(u0, "u0");
  require_positive(v0, "v0");
  require_positive(phi0, "phi0");
  require_positive(g, "g");
  if (!std::isfinite(f)) throw Error(ErrorKind::NonPositiveParameter, "f must be finite");

  const double c2 = g * phi0;
  const double tol = kGenericityTolerance * c2;
  if (std::abs(u0 * u0 - c2) <= tol) {
    throw Error(ErrorKind::DegenerateCase, "u0^2 ~ g*phi0 (critical x-velocity)");
  }
  if (std::abs(v0 * v0 - c2) <= tol) {
    throw Error(ErrorKind::DegenerateCase, "v0^2 ~ g*phi0 (critical y-velocity)");
  }
  if (std::abs(u0 * u0 + v0 * v0 - c2) <= tol) {
    throw Error(ErrorKind::DegenerateCase, "u0^2 + v0^2 ~ g*phi0 (critical speed)");
  }
  return PhysicalConstants{u0, v0, phi0, g, f};
}

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::Supercritical: return "Supercritical";
    case Regime::MixedHyperbolicI: return "MixedHyperbolicI";
    case Regime::MixedHyperbolicII: return "MixedHyperbolicII";
    case Regime::FullyHyperbolicSubcritical: return "FullyHyperbolicSubcritical";
    case Regime::MixedSubcritical: return "MixedSubcritical";
  }
  return "Unknown";
}

std::optional<Regime> regime_from_string(std::string_view name) noexcept {
  for (Regime r : kAllRegimes) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

Regime classify(const PhysicalConstants& p) {
  const double c2 = p.wave_speed_sq();
  const bool x_super = p.u0 * p.u0 > c2;
  const bool y_super = p.v0 * p.v0 > c2;
  if (x_super && y_super) return Regime::Supercritical;
  if (!x_super && y_super) return Regime::MixedHyperbolicI;
  if (x_super && !y_super) return Regime::MixedHyperbolicII;
  return p.delta() > 0.0 ? Regime::FullyHyperbolicSubcritical : Regime::MixedSubcritical;
}

KappaValue kappa(const PhysicalConstants& p) {
  const double d = p.delta();
  if (d > 0.0) return {std::sqrt(p.g * d / p.phi0), KappaKind::Kappa0};
  return {std::sqrt(-p.g * d / p.phi0), KappaKind::Kappa1};
}

PrimitiveModeMapping from_primitive_mode(double U0, double V0, double Nsq, double lambda, double f) {
  require_positive(U0, "U0");
  require_positive(V0, "V0");
  require_positive(Nsq, "N^2");
  require_positive(lambda, "lambda");
  PrimitiveModeMapping m;
  m.constants = PhysicalConstants{U0, V0, Nsq / lambda, 1.0 / lambda, f};
  m.phi_sign = -1.0;
  return m;
}

}  // namespace swerect
