#include "gfk/sampler.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace gfk {

std::string_view to_string(IncrementKind kind) {
  return kind == IncrementKind::binomial ? "binomial" : "gaussian";
}

std::string_view to_string(InitMode mode) {
  return mode == InitMode::origin ? "origin" : "trial_density";
}

IncrementKind increment_kind_from_string(std::string_view text) {
  if (text == "binomial") return IncrementKind::binomial;
  if (text == "gaussian") return IncrementKind::gaussian;
  throw RangeError("increment must be binomial or gaussian, got '" + std::string(text) + "'");
}

InitMode init_mode_from_string(std::string_view text) {
  if (text == "origin") return InitMode::origin;
  if (text == "trial_density") return InitMode::trial_density;
  throw RangeError("init must be origin or trial_density, got '" + std::string(text) + "'");
}

long SamplerConfig::sampling_stride() const {
  if (stride > 0) return stride;
  const long n = steps_per_unit();
  return (n + 9) / 10;
}

void validate(const SamplerConfig& config) {
  if (config.scale < 1) throw RangeError("scale must be >= 1");
  if (!(config.t_total > 0.0) || !std::isfinite(config.t_total)) throw RangeError("t_total must be > 0");
  if (config.total_steps() < 1) throw RangeError("scale^2 * t_total must round to at least one step");
  if (config.stride < 0) throw RangeError("stride must be >= 0");
}

double increment(RandomStream& stream, long n, IncrementKind kind) {
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  if (kind == IncrementKind::binomial) return stream.sign() * inv_sqrt_n;
  return stream.normal() * inv_sqrt_n;
}

WalkerState step(const WalkerState& state, const ModelConfig& model, const SamplerConfig& sampler,
                 RandomStream& stream) {
  WalkerState next = state;
  const long n = sampler.steps_per_unit();
  advance(next, model, n, [&] { return increment(stream, n, sampler.increment); });
  return next;
}

WalkerState init_walker(const ModelConfig& model, const SamplerConfig& sampler, RandomStream& stream) {
  WalkerState state;
  state.positions.assign(static_cast<std::size_t>(model.n_particles), 0.0);
  if (sampler.init == InitMode::trial_density) {
    // phi0^2 = exp(-2 b x^2): normal with variance 1 / (4b).
    const double sd = std::sqrt(1.0 / (4.0 * model.trial_b));
    for (double& x : state.positions) x = sd * stream.normal();
  }
  return state;
}

std::vector<double> record_times(const SamplerConfig& sampler) {
  const long total = sampler.total_steps();
  const long stride = sampler.sampling_stride();
  const double n = static_cast<double>(sampler.steps_per_unit());
  std::vector<double> times;
  for (long k = 0; k <= total; ++k) {
    if (k % stride == 0 || k == total) times.push_back(static_cast<double>(k) / n);
  }
  return times;
}

namespace {

void record(Trajectory& traj, const WalkerState& state, std::span<const Observable> observables,
            const std::optional<HistogramBins>& histogram) {
  traj.log_weights.push_back(-state.action);
  for (const auto& obs : observables) traj.values.push_back(obs.evaluate(state.positions));
  if (histogram) {
    const std::size_t offset = traj.pair_counts.size();
    traj.pair_counts.resize(offset + histogram->count(), 0.0);
    accumulate_pair_counts(state.positions, *histogram,
                           std::span<double>(traj.pair_counts).subspan(offset));
  }
}

}  // namespace

Trajectory generate_trajectory(const ModelConfig& model, const SamplerConfig& sampler,
                               std::span<const Observable> observables, std::uint64_t trajectory_index,
                               const std::optional<HistogramBins>& histogram) {
  auto stream = RandomStream::for_trajectory(sampler.master_seed, trajectory_index);
  WalkerState state = init_walker(model, sampler, stream);

  const long n = sampler.steps_per_unit();
  const long total = sampler.total_steps();
  const long stride = sampler.sampling_stride();
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));

  Trajectory traj;
  const std::size_t expected_records = static_cast<std::size_t>(total / stride + 2);
  traj.log_weights.reserve(expected_records);
  traj.values.reserve(expected_records * observables.size());
  record(traj, state, observables, histogram);

  for (long k = 1; k <= total; ++k) {
    if (sampler.increment == IncrementKind::binomial) {
      advance(state, model, n, [&] { return stream.sign() * inv_sqrt_n; });
    } else {
      advance(state, model, n, [&] { return stream.normal() * inv_sqrt_n; });
    }
    if (k % stride == 0 || k == total) record(traj, state, observables, histogram);
  }
  return traj;
}

TrajectorySet generate_trajectories(const ModelConfig& model, const SamplerConfig& sampler,
                                    std::span<const Observable> observables, std::size_t count,
                                    unsigned threads, const ProgressFn& progress,
                                    const std::optional<HistogramBins>& histogram) {
  TrajectorySet set;
  set.times = record_times(sampler);
  for (const auto& obs : observables) set.observable_names.push_back(obs.name);
  set.histogram = histogram;
  set.trajectories.resize(count);

  std::vector<std::exception_ptr> failures(count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex progress_mutex;
  std::size_t done = 0;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        set.trajectories[i] = generate_trajectory(model, sampler, observables, i, histogram);
      } catch (...) {
        failures[i] = std::current_exception();
        failed.store(true);
      }
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(++done, count);
      }
    }
  };

  const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }

  for (auto& f : failures)
    if (f) std::rethrow_exception(f);
  return set;
}

double pilot_trial_energy(const ModelConfig& model, std::uint64_t seed, std::size_t samples) {
  RandomStream stream(seed);
  const double sd = std::sqrt(1.0 / (4.0 * model.trial_b));
  std::vector<double> x(static_cast<std::size_t>(model.n_particles));
  double sum = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    for (double& xi : x) xi = sd * stream.normal();
    sum += local_u(x, model);
  }
  return sum / static_cast<double>(samples);
}

}  // namespace gfk
