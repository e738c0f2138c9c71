#pragma once

// Drifted diffusion dY = (grad phi0 / phi0) ds + dX, discretized with n steps
// per unit imaginary time. dX is built from scaled binomial increments
// eps / sqrt(n), eps = +-1 (or Gaussian increments of variance 1/n), and the
// weight exponent integral of (U - e0) is accumulated with the end-point rule.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gfk/error.hpp"
#include "gfk/model.hpp"
#include "gfk/observables.hpp"
#include "gfk/random.hpp"

namespace gfk {

enum class IncrementKind { binomial, gaussian };
enum class InitMode { origin, trial_density };

std::string_view to_string(IncrementKind kind);
std::string_view to_string(InitMode mode);
IncrementKind increment_kind_from_string(std::string_view text);
InitMode init_mode_from_string(std::string_view text);

struct SamplerConfig {
  long scale = 30;  // n = scale^2 steps per unit time
  double t_total = 10.0;
  IncrementKind increment = IncrementKind::binomial;
  InitMode init = InitMode::origin;
  std::uint64_t master_seed = 12345;
  long stride = 0;  // recording stride in steps; 0 selects ceil(n / 10)

  long steps_per_unit() const { return scale * scale; }
  long total_steps() const { return std::lround(static_cast<double>(steps_per_unit()) * t_total); }
  long sampling_stride() const;
};

void validate(const SamplerConfig& config);

struct WalkerState {
  std::vector<double> positions;
  double action = 0.0;  // running sum of V_p / n
  long step_index = 0;
};

struct Observable {
  std::string name;
  std::function<double(std::span<const double>)> evaluate;
};

// One weighted path. Records are taken at the common times of the owning
// TrajectorySet; `values` is record-major with one entry per observable.
struct Trajectory {
  std::vector<double> log_weights;  // -action at each record, i.e. ln Z(s)
  std::vector<double> values;
  std::vector<double> pair_counts;  // record-major histogram counts, optional

  double final_log_weight() const { return log_weights.back(); }
};

struct TrajectorySet {
  std::vector<double> times;
  std::vector<std::string> observable_names;
  std::optional<HistogramBins> histogram;
  std::vector<Trajectory> trajectories;

  std::size_t n_records() const { return times.size(); }
  std::size_t n_observables() const { return observable_names.size(); }
  std::size_t n_trajectories() const { return trajectories.size(); }
  double value(std::size_t trajectory, std::size_t record, std::size_t observable) const {
    return trajectories[trajectory].values[record * n_observables() + observable];
  }
};

double increment(RandomStream& stream, long n, IncrementKind kind);

// One Euler-Maruyama step with time step 1/n. `next_increment` supplies the
// diffusion increment of each coordinate in order.
template <class IncrementSource>
void advance(WalkerState& state, const ModelConfig& model, long n, IncrementSource&& next_increment) {
  const double dt = 1.0 / static_cast<double>(n);
  const double b = model.trial_b;
  for (double& x : state.positions) {
    const double drift_term = -2.0 * b * x;
    x += drift_term * dt + next_increment();
  }
  for (double x : state.positions) {
    if (!std::isfinite(x)) {
      throw NonFiniteWalker("walker coordinate became non-finite at step " +
                            std::to_string(state.step_index + 1) +
                            "; the time step is too coarse for this sigma_tilde");
    }
  }
  state.action += v_p(state.positions, model) * dt;
  ++state.step_index;
}

WalkerState step(const WalkerState& state, const ModelConfig& model, const SamplerConfig& sampler,
                 RandomStream& stream);

WalkerState init_walker(const ModelConfig& model, const SamplerConfig& sampler, RandomStream& stream);

Trajectory generate_trajectory(const ModelConfig& model, const SamplerConfig& sampler,
                               std::span<const Observable> observables, std::uint64_t trajectory_index,
                               const std::optional<HistogramBins>& histogram = std::nullopt);

// Times at which generate_trajectory records: every stride steps from 0, and
// always the final step.
std::vector<double> record_times(const SamplerConfig& sampler);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

// Runs trajectories 0..count-1 on `threads` workers. The result is ordered by
// trajectory index and independent of the thread count. If trajectories fail,
// the error of the lowest failing index is rethrown.
TrajectorySet generate_trajectories(const ModelConfig& model, const SamplerConfig& sampler,
                                    std::span<const Observable> observables, std::size_t count,
                                    unsigned threads, const ProgressFn& progress = {},
                                    const std::optional<HistogramBins>& histogram = std::nullopt);

// Variational energy of phi0: the average of local_u over independent draws
// from phi0^2. Deterministic in `seed`.
double pilot_trial_energy(const ModelConfig& model, std::uint64_t seed, std::size_t samples);

}  // namespace gfk
