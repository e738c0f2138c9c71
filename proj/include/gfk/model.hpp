#pragma once

// Dimensionless N-boson Hamiltonian in a 1D harmonic trap (hbar = m = omega = 1)
// with a Gaussian-regularized attractive contact interaction, and the
// importance-sampling transforms induced by the Gaussian trial function
//
//     phi0(x) = C exp(-b sum_i x_i^2).
//
// The normalization C never enters: everything is expressed through
// log(phi0) up to an additive constant, or through ratios.

#include <span>
#include <string_view>
#include <vector>

namespace gfk {

enum class CouplingMode { pre_quench, post_quench };

std::string_view to_string(CouplingMode mode);
CouplingMode coupling_mode_from_string(std::string_view text);

struct ModelConfig {
  int n_particles = 2;
  double g_tilde = 0.0;         // post-quench coupling
  double quench_divisor = 4.0;  // pre-quench coupling is g_tilde / quench_divisor
  double sigma_tilde = 0.015;
  bool trap_enabled = true;
  double trial_b = 0.5;
  double e0 = 0.0;
  CouplingMode coupling_mode = CouplingMode::pre_quench;

  double pre_quench_coupling() const { return g_tilde / quench_divisor; }
  // Coupling that enters the sampled potential.
  double effective_coupling() const {
    return coupling_mode == CouplingMode::pre_quench ? pre_quench_coupling() : g_tilde;
  }
};

// Throws RangeError when an invariant of ModelConfig is violated.
void validate(const ModelConfig& config);

double v_trap(std::span<const double> x, bool trap_enabled = true);

double gaussian_delta(double r, double sigma_tilde);

// -g_eff * sum_{i<j} delta_sigma(x_i - x_j). The pair sum runs over the sorted
// coordinates, so the result is bit-identical under particle permutations.
double v_int(std::span<const double> x, double g_eff, double sigma_tilde);

double log_trial(std::span<const double> x, double b);

void drift(std::span<const double> x, double b, std::span<double> out);
std::vector<double> drift(std::span<const double> x, double b);

// U = V - (1/2) laplacian(phi0)/phi0.
double local_u(std::span<const double> x, const ModelConfig& config);

// Weight-exponent density U - e0; the accumulated action is the time integral of this.
double v_p(std::span<const double> x, const ModelConfig& config);

}  // namespace gfk
