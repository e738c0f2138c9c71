#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace gfk {

enum class PairMode { first_pair, all_pairs };

std::string_view to_string(PairMode mode);
PairMode pair_mode_from_string(std::string_view text);

// (x1 - x2)^2, or the average of (xi - xj)^2 over all i < j. Throws
// TooFewParticles for N < 2.
double pair_distance_sq(std::span<const double> x, PairMode mode);

double mean_x_sq(std::span<const double> x);

struct HistogramBins {
  double bin_width = 0.05;
  double r_max = 5.0;

  std::size_t count() const;
  double center(std::size_t bin) const;
};

struct WeightedDistance {
  double distance;
  double weight;
};

struct Histogram {
  HistogramBins bins;
  std::vector<double> mass;  // sums to 1 over the bins

  std::vector<double> centers() const;
};

// Weighted histogram of |r| over [0, r_max); samples beyond r_max are
// dropped before normalization.
Histogram pair_histogram(std::span<const WeightedDistance> samples, double bin_width, double r_max);

// Adds the all-pairs counts of |xi - xj| for one configuration into `counts`
// (size bins.count()), each pair contributing 1 / n_pairs.
void accumulate_pair_counts(std::span<const double> x, const HistogramBins& bins,
                            std::span<double> counts);

}  // namespace gfk
