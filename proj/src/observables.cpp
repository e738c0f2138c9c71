#include "gfk/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gfk/error.hpp"

namespace gfk {

std::string_view to_string(PairMode mode) {
  return mode == PairMode::first_pair ? "first_pair" : "all_pairs";
}

PairMode pair_mode_from_string(std::string_view text) {
  if (text == "first_pair") return PairMode::first_pair;
  if (text == "all_pairs") return PairMode::all_pairs;
  throw RangeError("pair_mode must be first_pair or all_pairs, got '" + std::string(text) + "'");
}

double pair_distance_sq(std::span<const double> x, PairMode mode) {
  const std::size_t n = x.size();
  if (n < 2) throw TooFewParticles("pair_distance_sq needs at least two particles");
  if (mode == PairMode::first_pair) {
    const double d = x[0] - x[1];
    return d * d;
  }
  // sum_{i<j} (xi - xj)^2 = N sum xi^2 - (sum xi)^2, but evaluated about the
  // mean to stay accurate and exactly translation invariant for coincident points.
  double mean = 0.0;
  for (double xi : x) mean += xi;
  mean /= static_cast<double>(n);
  double sum_sq = 0.0;
  for (double xi : x) {
    const double d = xi - mean;
    sum_sq += d * d;
  }
  const double nd = static_cast<double>(n);
  const double pair_sum = nd * sum_sq;
  return pair_sum / (0.5 * nd * (nd - 1.0));
}

double mean_x_sq(std::span<const double> x) {
  double sum = 0.0;
  for (double xi : x) sum += xi * xi;
  return x.empty() ? 0.0 : sum / static_cast<double>(x.size());
}

std::size_t HistogramBins::count() const {
  if (!(bin_width > 0.0)) throw RangeError("histogram bin_width must be > 0");
  if (!(r_max > 0.0)) throw RangeError("histogram r_max must be > 0");
  return static_cast<std::size_t>(std::ceil(r_max / bin_width - 1e-12));
}

double HistogramBins::center(std::size_t bin) const {
  return (static_cast<double>(bin) + 0.5) * bin_width;
}

std::vector<double> Histogram::centers() const {
  std::vector<double> out(mass.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = bins.center(i);
  return out;
}

Histogram pair_histogram(std::span<const WeightedDistance> samples, double bin_width, double r_max) {
  Histogram h{HistogramBins{bin_width, r_max}, {}};
  const std::size_t nbins = h.bins.count();
  h.mass.assign(nbins, 0.0);
  double total = 0.0;
  for (const auto& s : samples) {
    const double r = std::abs(s.distance);
    if (!(r < r_max)) continue;
    const auto bin = std::min(nbins - 1, static_cast<std::size_t>(r / bin_width));
    h.mass[bin] += s.weight;
    total += s.weight;
  }
  if (total > 0.0)
    for (double& m : h.mass) m /= total;
  return h;
}

void accumulate_pair_counts(std::span<const double> x, const HistogramBins& bins,
                            std::span<double> counts) {
  const std::size_t n = x.size();
  if (n < 2) return;
  const std::size_t nbins = counts.size();
  const double unit = 1.0 / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = std::abs(x[i] - x[j]);
      if (!(r < bins.r_max)) continue;
      const auto bin = std::min(nbins - 1, static_cast<std::size_t>(r / bins.bin_width));
      counts[bin] += unit;
    }
  }
}

}  // namespace gfk
