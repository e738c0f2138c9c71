#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "gfk/error.hpp"
#include "gfk/estimator.hpp"
#include "gfk/sampler.hpp"

using namespace gfk;

namespace {

// Trajectories with one observable on times 0, 1, 2.
TrajectorySet make_set(const std::vector<std::vector<double>>& log_weights,
                       const std::vector<std::vector<double>>& values) {
  TrajectorySet set;
  set.times = {0.0, 1.0, 2.0};
  set.observable_names = {"a"};
  for (std::size_t m = 0; m < log_weights.size(); ++m) set.trajectories.push_back({log_weights[m], values[m], {}});
  return set;
}

}  // namespace

TEST_CASE("window selection") {
  const auto set = make_set({{0, 0, 0}}, {{1, 2, 3}});
  CHECK(window_records(set, {1.0, 2.0}) == std::vector<std::size_t>{1, 2});
  CHECK(window_records(set, {0.5, 0.7}).empty());
}

TEST_CASE("constant observable is exact") {
  std::vector<std::vector<double>> lw;
  std::vector<std::vector<double>> v;
  for (int m = 0; m < 20; ++m) {
    lw.push_back({0.0, 0.3 * m, -0.1 * m * m});
    v.push_back({1.0, 1.0, 1.0});
  }
  const auto r = gfk_expectation(make_set(lw, v), 0, {1.0, 2.0});
  CHECK(r.mean == 1.0);
  CHECK(r.std_error == 0.0);
  CHECK(r.samples_per_trajectory == 2);
  CHECK(r.n_trajectories == 20);
}

TEST_CASE("equal weights reduce to the sample mean and its standard error") {
  std::vector<std::vector<double>> lw;
  std::vector<std::vector<double>> v;
  const std::vector<double> a{1, 4, 2, 8, 5, 7, 3, 6};
  for (double x : a) {
    lw.push_back({0, 0, 0});
    v.push_back({0, 0, x});
  }
  ExpectationOptions opt;
  opt.time_average = false;
  const auto r = gfk_expectation(make_set(lw, v), 0, {0.0, 2.0}, opt);
  CHECK(r.mean == doctest::Approx(4.5));
  double ss = 0;
  for (double x : a) ss += (x - 4.5) * (x - 4.5);
  const double se = std::sqrt(ss / 7.0 / 8.0);
  CHECK(r.std_error == doctest::Approx(se));
  CHECK(r.effective_sample_size == doctest::Approx(8.0));
}

TEST_CASE("weights enter as a self-normalized ratio") {
  std::vector<std::vector<double>> lw;
  std::vector<std::vector<double>> v;
  for (int m = 0; m < 10; ++m) {
    lw.push_back({0, 0, m < 5 ? 0.0 : std::log(3.0)});
    v.push_back({0, 0, m < 5 ? 1.0 : 2.0});
  }
  ExpectationOptions opt;
  opt.time_average = false;
  const auto r = gfk_expectation(make_set(lw, v), 0, {2.0, 2.0}, opt);
  CHECK(r.mean == doctest::Approx((5 * 1.0 + 15 * 2.0) / 20.0));
}

TEST_CASE("common weight rescaling leaves estimates unchanged") {
  std::vector<std::vector<double>> lw;
  std::vector<std::vector<double>> v;
  for (int m = 0; m < 12; ++m) {
    lw.push_back({0.0, 0.1 * m, 0.05 * m * (m % 3)});
    v.push_back({0.2 * m, 1.0 + m, 3.0 - 0.1 * m});
  }
  auto set = make_set(lw, v);
  const auto a = gfk_expectation(set, 0, {0.0, 2.0});
  const auto ea = ground_energy(set, {0.0, 2.0}, 0.3);
  for (auto& t : set.trajectories)
    for (double& x : t.log_weights) x += 500.0;
  const auto b = gfk_expectation(set, 0, {0.0, 2.0});
  const auto eb = ground_energy(set, {0.0, 2.0}, 0.3);
  CHECK(b.mean == doctest::Approx(a.mean).epsilon(1e-12));
  CHECK(b.std_error == doctest::Approx(a.std_error).epsilon(1e-10));
  CHECK(eb.mean == doctest::Approx(ea.mean).epsilon(1e-12));
}

TEST_CASE("collapsed weights raise DegenerateWeights") {
  std::vector<std::vector<double>> lw;
  std::vector<std::vector<double>> v;
  for (int m = 0; m < 10; ++m) {
    lw.push_back({0, 0, m == 0 ? 0.0 : -50.0});
    v.push_back({0, 0, 1.0 + m});
  }
  ExpectationOptions opt;
  opt.time_average = false;
  try {
    gfk_expectation(make_set(lw, v), 0, {2.0, 2.0}, opt);
    FAIL("expected DegenerateWeights");
  } catch (const DegenerateWeights& e) {
    CHECK(e.effective_sample_size() < 1.01);
    CHECK(e.raw_mean() == doctest::Approx(1.0));
  }
  opt.min_effective_samples = 0.0;
  CHECK_NOTHROW(gfk_expectation(make_set(lw, v), 0, {2.0, 2.0}, opt));
}

TEST_CASE("ground energy is e0 plus the decay rate of the mean weight") {
  std::vector<std::vector<double>> lw;
  std::vector<std::vector<double>> v;
  for (int m = 0; m < 8; ++m) {
    const double c = 0.01 * m;
    lw.push_back({c, c - 0.4, c - 0.8});
    v.push_back({0, 0, 0});
  }
  const auto e = ground_energy(make_set(lw, v), {0.0, 2.0}, 1.25);
  CHECK(e.mean == doctest::Approx(1.65));
  CHECK(e.std_error == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("projection lag shifts the weighting time") {
  std::vector<std::vector<double>> lw;
  std::vector<std::vector<double>> v;
  for (int m = 0; m < 10; ++m) {
    lw.push_back({0, 0, m < 5 ? 0.0 : std::log(4.0)});
    v.push_back({0, m < 5 ? 1.0 : 2.0, 0});
  }
  ExpectationOptions opt;
  opt.time_average = false;
  const auto mixed = gfk_expectation(make_set(lw, v), 0, {1.0, 1.0}, opt);
  CHECK(mixed.mean == doctest::Approx(1.5));
  opt.projection_lag = 1.0;
  const auto pure = gfk_expectation(make_set(lw, v), 0, {1.0, 1.0}, opt);
  CHECK(pure.mean == doctest::Approx((5 * 1.0 + 20 * 2.0) / 25.0));
}

TEST_CASE("jackknife helpers") {
  const std::vector<double> loo{1.0, 1.0, 1.0};
  CHECK(jackknife_std_error(loo) == 0.0);
  std::vector<RatioSums> sums;
  for (double x : {1.0, 2.0, 3.0, 4.0}) sums.push_back({1.0, x});
  // Jackknife of an unweighted mean is s / sqrt(M).
  CHECK(jackknife_error(sums) == doctest::Approx(std::sqrt((2.25 + 0.25 + 0.25 + 2.25) / 3.0 / 4.0)));
  const std::vector<double> w{2.0, 2.0, 2.0};
  CHECK(replica_average(w) == 2.0);
}
