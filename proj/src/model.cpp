#include "gfk/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gfk/error.hpp"

namespace gfk {

std::string_view to_string(CouplingMode mode) {
  return mode == CouplingMode::pre_quench ? "pre_quench" : "post_quench";
}

CouplingMode coupling_mode_from_string(std::string_view text) {
  if (text == "pre_quench") return CouplingMode::pre_quench;
  if (text == "post_quench") return CouplingMode::post_quench;
  throw RangeError("coupling_mode must be pre_quench or post_quench, got '" + std::string(text) + "'");
}

void validate(const ModelConfig& config) {
  if (config.n_particles < 1) throw RangeError("N must be >= 1");
  if (!(config.g_tilde >= 0.0) || !std::isfinite(config.g_tilde))
    throw RangeError("g_tilde must be finite and >= 0");
  if (!(config.quench_divisor > 0.0)) throw RangeError("quench_divisor must be > 0");
  if (!(config.sigma_tilde > 0.0) || !std::isfinite(config.sigma_tilde))
    throw RangeError("sigma_tilde must be finite and > 0");
  if (!(config.trial_b > 0.0) || !std::isfinite(config.trial_b))
    throw RangeError("trial_b must be finite and > 0");
  if (!std::isfinite(config.e0)) throw RangeError("e0 must be finite");
}

double v_trap(std::span<const double> x, bool trap_enabled) {
  if (!trap_enabled) return 0.0;
  double sum = 0.0;
  for (double xi : x) sum += xi * xi;
  return 0.5 * sum;
}

double gaussian_delta(double r, double sigma_tilde) {
  const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * sigma_tilde);
  return norm * std::exp(-r * r / (2.0 * sigma_tilde * sigma_tilde));
}

double v_int(std::span<const double> x, double g_eff, double sigma_tilde) {
  if (x.size() < 2 || g_eff == 0.0) return 0.0;

  // exp() of anything below this is zero or subnormal; such pairs are skipped.
  constexpr double kUnderflowExponent = 745.2;
  const double inv_two_sigma_sq = 1.0 / (2.0 * sigma_tilde * sigma_tilde);
  const double cutoff_sq = kUnderflowExponent / inv_two_sigma_sq;

  thread_local std::vector<double> sorted;
  sorted.assign(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());

  double sum = 0.0;
  const std::size_t n = sorted.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double xi = sorted[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = sorted[j] - xi;
      const double d_sq = d * d;
      if (d_sq > cutoff_sq) break;
      sum += std::exp(-d_sq * inv_two_sigma_sq);
    }
  }
  const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * sigma_tilde);
  return -g_eff * norm * sum;
}

double log_trial(std::span<const double> x, double b) {
  double sum = 0.0;
  for (double xi : x) sum += xi * xi;
  return -b * sum;
}

void drift(std::span<const double> x, double b, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = -2.0 * b * x[i];
}

std::vector<double> drift(std::span<const double> x, double b) {
  std::vector<double> out(x.size());
  drift(x, b, out);
  return out;
}

double local_u(std::span<const double> x, const ModelConfig& config) {
  // -(1/2) laplacian(phi0)/phi0 = -sum_i (2 b^2 x_i^2 - b). Collecting the x_i^2
  // coefficient first makes U exactly constant when the trial is exact
  // (trap on, b = 1/2).
  const double b = config.trial_b;
  const double quadratic = (config.trap_enabled ? 0.5 : 0.0) - 2.0 * b * b;
  double sum_sq = 0.0;
  for (double xi : x) sum_sq += xi * xi;
  double u = quadratic * sum_sq + static_cast<double>(x.size()) * b;
  u += v_int(x, config.effective_coupling(), config.sigma_tilde);
  return u;
}

double v_p(std::span<const double> x, const ModelConfig& config) {
  return local_u(x, config) - config.e0;
}

}  // namespace gfk
