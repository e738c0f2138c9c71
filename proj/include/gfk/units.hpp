#pragma once

// Conversion between the dimensionless trap units (hbar = m = omega = 1) and
// SI quantities of a quasi-1D Li-7 setup. Angular frequencies are rad/s
// internally; the radial trap frequency is given as an ordinary frequency (Hz).

namespace gfk::units {

// CODATA 2018.
inline constexpr double kHbar = 1.054571817e-34;            // J s
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg
inline constexpr double kBohrRadius = 5.29177210903e-11;     // m

struct PhysicalParams {
  double atomic_mass_u = 7.016;
  double scattering_length_a0 = -16.2;  // signed, Bohr radii
  double radial_trap_hz = 297.0;

  double mass_kg() const { return atomic_mass_u * kAtomicMassUnit; }
  double scattering_length_m() const { return scattering_length_a0 * kBohrRadius; }
  double radial_omega() const;  // rad/s
};

void validate(const PhysicalParams& params);

// 1D coupling |g| = 2 hbar omega_r |a_sc|, in J m.
double coupling_si(const PhysicalParams& params);

// Axial angular frequency g^2 m / (g_tilde^2 hbar^3) at which the coupling
// takes the dimensionless value g_tilde, in rad/s.
double axial_omega(double coupling_j_m, double mass_kg, double g_tilde);

// Inverse of axial_omega.
double g_tilde_from_omega(double coupling_j_m, double mass_kg, double omega);

// (2 pi / omega) / 4, in s.
double quarter_period_seconds(double omega);

// Radial oscillator length sqrt(hbar / (m omega_r)), in m.
double radial_oscillator_length(const PhysicalParams& params);

// 0.67 a_r / |a_sc|. Throws DivisionByZero for a_sc = 0.
double collapse_threshold(double a_r_m, double a_sc_m);

}  // namespace gfk::units
