#pragma once

#include <optional>
#include <string_view>

namespace swerect {

// Relative tolerance (in units of g*phi0) used to reject near-critical states.
inline constexpr double kGenericityTolerance = 1e-9;

struct PhysicalConstants {
  double u0 = 0.0;
  double v0 = 0.0;
  double phi0 = 0.0;
  double g = 0.0;
  double f = 0.0;

  double wave_speed_sq() const { return g * phi0; }
  double wave_speed() const;
  // u0^2 + v0^2 - g*phi0
  double delta() const { return u0 * u0 + v0 * v0 - g * phi0; }
};

PhysicalConstants validate_params(double u0, double v0, double phi0, double g, double f = 0.0);

enum class Regime {
  Supercritical,
  MixedHyperbolicI,
  MixedHyperbolicII,
  FullyHyperbolicSubcritical,
  MixedSubcritical,
};

inline constexpr Regime kAllRegimes[] = {
    Regime::Supercritical, Regime::MixedHyperbolicI, Regime::MixedHyperbolicII,
    Regime::FullyHyperbolicSubcritical, Regime::MixedSubcritical};

std::string_view to_string(Regime r) noexcept;
std::optional<Regime> regime_from_string(std::string_view name) noexcept;

Regime classify(const PhysicalConstants& p);

inline bool is_hyperbolic(Regime r) noexcept { return r != Regime::MixedSubcritical; }

enum class KappaKind { Kappa0, Kappa1 };

struct KappaValue {
  double value = 0.0;
  KappaKind kind = KappaKind::Kappa0;
};

KappaValue kappa(const PhysicalConstants& p);

// Primitive-equation vertical mode (U0, V0, N^2, lambda) mapped onto the
// shallow water system: g' = 1/lambda, phi0' = N^2/lambda, phi = phi_sign * psi.
struct PrimitiveModeMapping {
  PhysicalConstants constants;
  double phi_sign = -1.0;
};

PrimitiveModeMapping from_primitive_mode(double U0, double V0, double Nsq, double lambda, double f = 0.0);

}  // namespace swerect
