#include "gfk/theory.hpp"

#include <cmath>

#include "gfk/error.hpp"

namespace gfk::theory {

namespace {
void require_nonnegative(double g_tilde, double n_particles) {
  if (!(g_tilde >= 0.0) || !(n_particles > 0.0)) throw RangeError("theory inputs must be positive");
}
}  // namespace

double vrel_variance(double g_tilde, double n_particles) {
  require_nonnegative(g_tilde, n_particles);
  return kVrelPrefactor * g_tilde * g_tilde * n_particles;
}

double pair_variance_prediction(double g_tilde, double n_particles) {
  require_nonnegative(g_tilde, n_particles);
  return kPairPrefactor * g_tilde * g_tilde * n_particles;
}

double quarter_period_map(double vrel_variance_at_zero) {
  if (!(vrel_variance_at_zero >= 0.0)) throw RangeError("variance must be >= 0");
  return vrel_variance_at_zero;
}

ValidityReport validity_conditions(double g_tilde, double n_particles) {
  if (!(g_tilde > 0.0) || !(n_particles > 0.0)) throw RangeError("theory inputs must be positive");
  ValidityReport r;
  const double gn = g_tilde * n_particles;
  r.lhs = 1.0 / (gn * gn);
  r.bound_a = 0.06;
  r.bound_b = 0.01 / std::sqrt(n_particles);
  r.ratio_a = r.lhs / r.bound_a;
  r.ratio_b = r.lhs / r.bound_b;
  return r;
}

double soliton_size(double n_prime, double g_tilde) {
  if (!(g_tilde > 0.0) || !(n_prime > 0.0)) throw RangeError("soliton_size inputs must be positive");
  return 2.0 / (g_tilde * n_prime);
}

double zero_point_rel_fluct(double n_particles) {
  if (!(n_particles > 0.0)) throw RangeError("N must be positive");
  return std::sqrt(8.0 / (3.0 * n_particles));
}

}  // namespace gfk::theory
