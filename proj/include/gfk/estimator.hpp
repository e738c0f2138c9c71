#pragma once

// Weighted-path estimators. For an observable A sampled at window time s, the
// expectation is the self-normalized ratio
//
//     sum_m Z_m(s) A(Y_m(s)) / sum_m Z_m(s),     Z_m(s) = exp(-int_0^s V_p),
//
// formed per recorded time slice and then averaged over the slices of the
// window. Errors come from a leave-one-trajectory-out jackknife, treating each
// whole trajectory as one block.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gfk/observables.hpp"
#include "gfk/sampler.hpp"

namespace gfk {

struct Window {
  double t_start = 0.0;
  double t_end = 0.0;
};

struct EstimatorResult {
  std::string name;
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_trajectories = 0;
  double effective_sample_size = 0.0;
  Window window;
  double weight_dispersion = 0.0;  // variance of ln Z across trajectories at the window end
  std::size_t samples_per_trajectory = 0;
};

struct ExpectationOptions {
  bool time_average = true;  // false: use only the last record in the window
  // Weight the sample at s with Z(s + lag) instead of Z(s). Zero gives the
  // mixed estimator; a lag of several relaxation times approaches the pure one.
  double projection_lag = 0.0;
  double min_effective_samples = 5.0;
};

// Indices of the recorded times inside [t_start, t_end].
std::vector<std::size_t> window_records(const TrajectorySet& set, Window window);

EstimatorResult gfk_expectation(const TrajectorySet& set, std::size_t observable, Window window,
                                const ExpectationOptions& options = {});

// Ground-state energy e0 + slope of -ln(mean_m Z_m(t)) over the fit window.
EstimatorResult ground_energy(const TrajectorySet& set, Window fit_window, double e0,
                              double min_effective_samples = 5.0);

Histogram weighted_pair_histogram(const TrajectorySet& set, Window window,
                                  const ExpectationOptions& options = {});

double replica_average(std::span<const double> weights);

struct RatioSums {
  double weight = 0.0;          // sum of weights of one trajectory
  double weighted_value = 0.0;  // sum of weight * A of one trajectory
};

// Jackknife standard error of sum(weighted_value) / sum(weight).
double jackknife_error(std::span<const RatioSums> per_trajectory);

// sqrt((M - 1)/M * sum (theta_m - mean theta)^2) over leave-one-out estimates.
double jackknife_std_error(std::span<const double> leave_one_out);

}  // namespace gfk
