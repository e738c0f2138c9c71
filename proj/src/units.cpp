#include "gfk/units.hpp"

#include <cmath>
#include <numbers>

#include "gfk/error.hpp"

namespace gfk::units {

double PhysicalParams::radial_omega() const { return 2.0 * std::numbers::pi * radial_trap_hz; }

void validate(const PhysicalParams& params) {
  if (!(params.atomic_mass_u > 0.0)) throw RangeError("atomic mass must be > 0");
  if (!(params.radial_trap_hz > 0.0)) throw RangeError("radial trap frequency must be > 0");
  if (!std::isfinite(params.scattering_length_a0)) throw RangeError("scattering length must be finite");
}

double coupling_si(const PhysicalParams& params) {
  validate(params);
  return 2.0 * kHbar * params.radial_omega() * std::abs(params.scattering_length_m());
}

double axial_omega(double coupling_j_m, double mass_kg, double g_tilde) {
  if (!(coupling_j_m > 0.0) || !(mass_kg > 0.0) || !(g_tilde > 0.0))
    throw RangeError("axial_omega inputs must be positive");
  return coupling_j_m * coupling_j_m * mass_kg / (g_tilde * g_tilde * kHbar * kHbar * kHbar);
}

double g_tilde_from_omega(double coupling_j_m, double mass_kg, double omega) {
  if (!(coupling_j_m > 0.0) || !(mass_kg > 0.0) || !(omega > 0.0))
    throw RangeError("g_tilde_from_omega inputs must be positive");
  return coupling_j_m * std::sqrt(mass_kg / (omega * kHbar * kHbar * kHbar));
}

double quarter_period_seconds(double omega) {
  if (!(omega > 0.0)) throw RangeError("omega must be > 0");
  return (2.0 * std::numbers::pi / omega) / 4.0;
}

double radial_oscillator_length(const PhysicalParams& params) {
  validate(params);
  return std::sqrt(kHbar / (params.mass_kg() * params.radial_omega()));
}

double collapse_threshold(double a_r_m, double a_sc_m) {
  if (a_sc_m == 0.0) throw DivisionByZero("collapse threshold is undefined for a zero scattering length");
  return 0.67 * a_r_m / std::abs(a_sc_m);
}

}  // namespace gfk::units
