#include "gfk/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gfk/error.hpp"

namespace gfk {

namespace {

constexpr double kTimeTolerance = 1e-9;

// Self-normalized weights of one time slice, with the leave-one-out sums
// needed by the jackknife. All sums run in trajectory-index order.
struct Slice {
  std::vector<double> w;  // exp(lw - max lw)
  double total = 0.0;
  std::size_t argmax = 0;
};

Slice make_slice(const TrajectorySet& set, std::size_t record) {
  const std::size_t m_count = set.n_trajectories();
  Slice slice;
  slice.w.resize(m_count);
  double max_lw = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < m_count; ++m) {
    const double lw = set.trajectories[m].log_weights[record];
    if (std::isnan(lw)) throw NonFiniteWalker("log weight is NaN");
    if (lw > max_lw) {
      max_lw = lw;
      slice.argmax = m;
    }
  }
  for (std::size_t m = 0; m < m_count; ++m) {
    slice.w[m] = std::exp(set.trajectories[m].log_weights[record] - max_lw);
    slice.total += slice.w[m];
  }
  return slice;
}

// Weights of the slice with trajectory `skip` removed, re-shifted by the
// largest remaining log weight so the sum cannot underflow to zero.
std::vector<double> weights_without(const TrajectorySet& set, std::size_t record, std::size_t skip) {
  const std::size_t m_count = set.n_trajectories();
  double max_lw = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < m_count; ++m)
    if (m != skip) max_lw = std::max(max_lw, set.trajectories[m].log_weights[record]);
  std::vector<double> w(m_count, 0.0);
  for (std::size_t m = 0; m < m_count; ++m)
    if (m != skip) w[m] = std::exp(set.trajectories[m].log_weights[record] - max_lw);
  return w;
}

double variance(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double acc = 0.0;
  for (double v : values) acc += (v - mean) * (v - mean);
  return acc / static_cast<double>(values.size());
}

double log_weight_dispersion(const TrajectorySet& set, std::size_t record) {
  std::vector<double> lw;
  lw.reserve(set.n_trajectories());
  for (const auto& t : set.trajectories) lw.push_back(t.log_weights[record]);
  return variance(lw);
}

std::size_t lagged_record(const TrajectorySet& set, std::size_t record, double lag) {
  if (lag <= 0.0) return record;
  const double target = set.times[record] + lag + kTimeTolerance;
  std::size_t r = record;
  while (r + 1 < set.times.size() && set.times[r + 1] <= target) ++r;
  return r;
}

void require_trajectories(const TrajectorySet& set) {
  if (set.n_trajectories() < 2) throw RangeError("estimators need at least two trajectories");
}

std::string degenerate_message(const std::string& what, double ess, double raw) {
  std::ostringstream os;
  os << what << ": effective sample size " << ess << " is below the threshold; the importance "
     << "weights have collapsed (raw estimate " << raw << " is untrustworthy)";
  return os.str();
}

}  // namespace

std::vector<std::size_t> window_records(const TrajectorySet& set, Window window) {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < set.times.size(); ++r) {
    const double t = set.times[r];
    if (t >= window.t_start - kTimeTolerance && t <= window.t_end + kTimeTolerance) out.push_back(r);
  }
  return out;
}

EstimatorResult gfk_expectation(const TrajectorySet& set, std::size_t observable, Window window,
                                const ExpectationOptions& options) {
  require_trajectories(set);
  if (observable >= set.n_observables()) throw RangeError("observable index out of range");
  auto records = window_records(set, window);
  if (records.empty()) throw RangeError("measurement window contains no recorded times");
  if (!options.time_average) records.erase(records.begin(), records.end() - 1);

  const std::size_t m_count = set.n_trajectories();
  const double slices = static_cast<double>(records.size());

  double estimate = 0.0;
  std::vector<double> leave_one_out(m_count, 0.0);
  std::vector<double> block_weight(m_count, 0.0);
  std::vector<double> prefix_w(m_count + 1), prefix_wa(m_count + 1);
  std::vector<double> suffix_w(m_count + 1), suffix_wa(m_count + 1);

  for (std::size_t record : records) {
    const std::size_t weight_record = lagged_record(set, record, options.projection_lag);
    const Slice slice = make_slice(set, weight_record);

    double wa_total = 0.0;
    prefix_w[0] = prefix_wa[0] = 0.0;
    for (std::size_t m = 0; m < m_count; ++m) {
      const double wa = slice.w[m] * set.value(m, record, observable);
      wa_total += wa;
      prefix_w[m + 1] = prefix_w[m] + slice.w[m];
      prefix_wa[m + 1] = prefix_wa[m] + wa;
    }
    suffix_w[m_count] = suffix_wa[m_count] = 0.0;
    for (std::size_t m = m_count; m-- > 0;) {
      suffix_w[m] = suffix_w[m + 1] + slice.w[m];
      suffix_wa[m] = suffix_wa[m + 1] + slice.w[m] * set.value(m, record, observable);
    }

    estimate += wa_total / slice.total;

    for (std::size_t m = 0; m < m_count; ++m) {
      block_weight[m] += slice.w[m] / slice.total;
      double ratio = 0.0;
      if (m == slice.argmax) {
        const auto w = weights_without(set, weight_record, m);
        double wsum = 0.0;
        double wasum = 0.0;
        for (std::size_t k = 0; k < m_count; ++k) {
          wsum += w[k];
          wasum += w[k] * set.value(k, record, observable);
        }
        ratio = wasum / wsum;
      } else {
        ratio = (prefix_wa[m] + suffix_wa[m + 1]) / (prefix_w[m] + suffix_w[m + 1]);
      }
      leave_one_out[m] += ratio;
    }
  }

  // Sums over slices become averages only here, so a constant observable
  // comes out exactly.
  estimate /= slices;
  for (double& v : leave_one_out) v /= slices;
  for (double& u : block_weight) u /= slices;

  double sum_u = 0.0;
  double sum_u2 = 0.0;
  for (double u : block_weight) {
    sum_u += u;
    sum_u2 += u * u;
  }

  EstimatorResult result;
  result.name = set.observable_names[observable];
  result.mean = estimate;
  result.std_error = jackknife_std_error(leave_one_out);
  result.n_trajectories = m_count;
  result.effective_sample_size = sum_u * sum_u / sum_u2;
  result.window = {set.times[records.front()], set.times[records.back()]};
  result.weight_dispersion =
      log_weight_dispersion(set, lagged_record(set, records.back(), options.projection_lag));
  result.samples_per_trajectory = records.size();

  if (result.effective_sample_size < options.min_effective_samples) {
    throw DegenerateWeights(result.effective_sample_size, result.mean,
                            degenerate_message(result.name, result.effective_sample_size, result.mean));
  }
  return result;
}

namespace {

// -ln(mean of exp(lw)) over all trajectories, and the leave-one-out versions.
void minus_log_mean_weight(const TrajectorySet& set, std::size_t record, double& full,
                           std::vector<double>& leave_one_out) {
  const std::size_t m_count = set.n_trajectories();
  const Slice slice = make_slice(set, record);
  const double max_lw = set.trajectories[slice.argmax].log_weights[record];
  full = -(max_lw + std::log(slice.total / static_cast<double>(m_count)));

  std::vector<double> prefix(m_count + 1, 0.0);
  std::vector<double> suffix(m_count + 1, 0.0);
  for (std::size_t m = 0; m < m_count; ++m) prefix[m + 1] = prefix[m] + slice.w[m];
  for (std::size_t m = m_count; m-- > 0;) suffix[m] = suffix[m + 1] + slice.w[m];

  const double inv_rest = 1.0 / static_cast<double>(m_count - 1);
  leave_one_out.resize(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    if (m == slice.argmax) {
      double second = -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < m_count; ++k)
        if (k != m) second = std::max(second, set.trajectories[k].log_weights[record]);
      const auto w = weights_without(set, record, m);
      double sum = 0.0;
      for (double wk : w) sum += wk;
      leave_one_out[m] = -(second + std::log(sum * inv_rest));
    } else {
      leave_one_out[m] = -(max_lw + std::log((prefix[m] + suffix[m + 1]) * inv_rest));
    }
  }
}

double least_squares_slope(std::span<const double> t, std::span<const double> y) {
  double t_mean = 0.0;
  double y_mean = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    t_mean += t[i];
    y_mean += y[i];
  }
  t_mean /= static_cast<double>(t.size());
  y_mean /= static_cast<double>(y.size());
  double sty = 0.0;
  double stt = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    sty += (t[i] - t_mean) * (y[i] - y_mean);
    stt += (t[i] - t_mean) * (t[i] - t_mean);
  }
  return sty / stt;
}

}  // namespace

EstimatorResult ground_energy(const TrajectorySet& set, Window fit_window, double e0,
                              double min_effective_samples) {
  require_trajectories(set);
  const auto records = window_records(set, fit_window);
  if (records.size() < 2) throw RangeError("fit window must span at least two recorded times");

  const std::size_t m_count = set.n_trajectories();
  std::vector<double> times;
  std::vector<double> curve;
  std::vector<std::vector<double>> curve_without(m_count);
  std::vector<double> loo;
  for (std::size_t record : records) {
    double full = 0.0;
    minus_log_mean_weight(set, record, full, loo);
    times.push_back(set.times[record]);
    curve.push_back(full);
    for (std::size_t m = 0; m < m_count; ++m) curve_without[m].push_back(loo[m]);
  }

  std::vector<double> slopes(m_count);
  for (std::size_t m = 0; m < m_count; ++m) slopes[m] = least_squares_slope(times, curve_without[m]);

  const Slice last = make_slice(set, records.back());
  double sum_w2 = 0.0;
  for (double w : last.w) sum_w2 += w * w;

  EstimatorResult result;
  result.name = "ground_energy";
  result.mean = e0 + least_squares_slope(times, curve);
  result.std_error = jackknife_std_error(slopes);
  result.n_trajectories = m_count;
  result.effective_sample_size = last.total * last.total / sum_w2;
  result.window = {times.front(), times.back()};
  result.weight_dispersion = log_weight_dispersion(set, records.back());
  result.samples_per_trajectory = records.size();

  if (result.effective_sample_size < min_effective_samples) {
    throw DegenerateWeights(result.effective_sample_size, result.mean,
                            degenerate_message(result.name, result.effective_sample_size, result.mean));
  }
  return result;
}

Histogram weighted_pair_histogram(const TrajectorySet& set, Window window, const ExpectationOptions& options) {
  if (!set.histogram) throw RangeError("trajectories were generated without pair histograms");
  require_trajectories(set);
  auto records = window_records(set, window);
  if (records.empty()) throw RangeError("measurement window contains no recorded times");
  if (!options.time_average) records.erase(records.begin(), records.end() - 1);

  const std::size_t nbins = set.histogram->count();
  Histogram h{*set.histogram, std::vector<double>(nbins, 0.0)};
  for (std::size_t record : records) {
    const Slice slice = make_slice(set, lagged_record(set, record, options.projection_lag));
    for (std::size_t m = 0; m < set.n_trajectories(); ++m) {
      const double p = slice.w[m] / slice.total;
      if (p == 0.0) continue;
      const double* counts = set.trajectories[m].pair_counts.data() + record * nbins;
      for (std::size_t b = 0; b < nbins; ++b) h.mass[b] += p * counts[b];
    }
  }
  double total = 0.0;
  for (double v : h.mass) total += v;
  if (total > 0.0)
    for (double& v : h.mass) v /= total;
  return h;
}

double replica_average(std::span<const double> weights) {
  if (weights.empty()) throw RangeError("replica_average needs at least one weight");
  double sum = 0.0;
  for (double z : weights) sum += z;
  return sum / static_cast<double>(weights.size());
}

double jackknife_std_error(std::span<const double> leave_one_out) {
  const std::size_t m = leave_one_out.size();
  if (m < 2) throw RangeError("jackknife needs at least two trajectories");
  double mean = 0.0;
  for (double v : leave_one_out) mean += v;
  mean /= static_cast<double>(m);
  double acc = 0.0;
  for (double v : leave_one_out) acc += (v - mean) * (v - mean);
  return std::sqrt(static_cast<double>(m - 1) / static_cast<double>(m) * acc);
}

double jackknife_error(std::span<const RatioSums> per_trajectory) {
  const std::size_t m = per_trajectory.size();
  if (m < 2) throw RangeError("jackknife needs at least two trajectories");
  double w_total = 0.0;
  double wa_total = 0.0;
  for (const auto& s : per_trajectory) {
    w_total += s.weight;
    wa_total += s.weighted_value;
  }
  std::vector<double> loo(m);
  for (std::size_t i = 0; i < m; ++i)
    loo[i] = (wa_total - per_trajectory[i].weighted_value) / (w_total - per_trajectory[i].weight);
  return jackknife_std_error(loo);
}

}  // namespace gfk
