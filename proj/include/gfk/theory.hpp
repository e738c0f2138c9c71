#pragma once

// Large-N Bogoliubov-side predictions for the 3:1 breather created by a
// four-fold interaction quench, in units hbar = m = omega = 1.

namespace gfk::theory {

// Prefactor of the relative-velocity variance, <V_rel^2> = 0.0429 g^2 N.
inline constexpr double kVrelPrefactor = 0.0429;
// Probability that two detected atoms sit in different solitons (norms N/4, 3N/4).
inline constexpr double kDetectionProbability = 6.0 / 16.0;
// Pair-distance prefactor: 6/16 * 0.0429 rounded to 0.0161.
inline constexpr double kPairPrefactor = 0.0161;

double vrel_variance(double g_tilde, double n_particles);

// <(x1 - x2)^2> at a quarter trap period after the quench.
double pair_variance_prediction(double g_tilde, double n_particles);

// Harmonic evolution with omega = 1 maps the velocity variance at t = 0 onto
// the position variance at t = T/4 one-to-one.
double quarter_period_map(double vrel_variance_at_zero);

struct ValidityReport {
  double lhs = 0.0;      // 1 / (g N)^2
  double bound_a = 0.0;  // trap zero-point condition
  double bound_b = 0.0;  // soliton-size condition, 0.01 / sqrt(N)
  double ratio_a = 0.0;
  double ratio_b = 0.0;
};

// Both conditions hold when the ratios are much smaller than one; no hard
// threshold is applied.
ValidityReport validity_conditions(double g_tilde, double n_particles);

// Size 2 / (g N') of a soliton holding N' atoms.
double soliton_size(double n_prime, double g_tilde);

// sqrt(8 / (3N)), the trap zero-point spread of the relative distance.
double zero_point_rel_fluct(double n_particles);

}  // namespace gfk::theory
