#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "gfk/error.hpp"
#include "gfk/observables.hpp"
#include "gfk/random.hpp"
#include "gfk/sampler.hpp"

using namespace gfk;

namespace {
const std::vector<Observable> kMeanXSq{{"mean_x_sq", [](std::span<const double> x) { return mean_x_sq(x); }}};
}

TEST_CASE("trajectory seeds are deterministic and distinct") {
  CHECK(trajectory_seed(1, 0) == trajectory_seed(1, 0));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(trajectory_seed(42, i));
  CHECK(seen.size() == 1000);
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("binomial increments are exactly +-1/sqrt(n)") {
  RandomStream s(7);
  int plus = 0;
  for (int i = 0; i < 4000; ++i) {
    const double d = increment(s, 900, IncrementKind::binomial);
    CHECK(std::abs(d) == doctest::Approx(1.0 / 30.0).epsilon(1e-15));
    plus += d > 0;
  }
  CHECK(plus > 1800);
  CHECK(plus < 2200);
}

TEST_CASE("step counts and record times") {
  SamplerConfig s;
  s.scale = 30;
  s.t_total = 10;
  CHECK(s.steps_per_unit() == 900);
  CHECK(s.total_steps() == 9000);
  CHECK(s.sampling_stride() == 90);
  const auto t = record_times(s);
  CHECK(t.front() == 0.0);
  CHECK(t.back() == doctest::Approx(10.0));
  CHECK(t.size() == 101);
  s.stride = 7000;
  const auto t2 = record_times(s);
  REQUIRE(t2.size() == 3);
  CHECK(t2[1] == doctest::Approx(7000.0 / 900));
  CHECK(t2[2] == doctest::Approx(10.0));
}

TEST_CASE("deterministic step is an Ornstein-Uhlenbeck contraction") {
  ModelConfig m{2, 0.0, 4.0, 0.015, true, 0.5, 1.0, CouplingMode::pre_quench};
  WalkerState w{{1.0, -2.0}, 0.0, 0};
  advance(w, m, 100, [] { return 0.0; });
  CHECK(w.positions[0] == doctest::Approx(0.99));
  CHECK(w.positions[1] == doctest::Approx(-1.98));
  CHECK(w.action == 0.0);  // U = N b = e0
  CHECK(w.step_index == 1);
}

TEST_CASE("non-finite walker is reported") {
  ModelConfig m{1, 0.0, 4.0, 0.015, true, 0.5, 0.5, CouplingMode::pre_quench};
  WalkerState w{{0.0}, 0.0, 0};
  CHECK_THROWS_AS(advance(w, m, 100, [] { return std::numeric_limits<double>::infinity(); }), NonFiniteWalker);
}

TEST_CASE("walker initialisation") {
  ModelConfig m{4, 0.0, 4.0, 0.015, true, 0.5, 0.0, CouplingMode::pre_quench};
  SamplerConfig s;
  RandomStream stream(3);
  const auto origin = init_walker(m, s, stream);
  CHECK(origin.positions == std::vector<double>(4, 0.0));
  s.init = InitMode::trial_density;
  const auto spread = init_walker(m, s, stream);
  CHECK(spread.positions != std::vector<double>(4, 0.0));
}

TEST_CASE("trajectory generation is reproducible and thread-count independent") {
  ModelConfig m{3, 0.5, 1.0, 0.05, true, 0.5, 1.5, CouplingMode::post_quench};
  SamplerConfig s;
  s.scale = 10;
  s.t_total = 2.0;
  const auto a = generate_trajectories(m, s, kMeanXSq, 9, 1);
  const auto b = generate_trajectories(m, s, kMeanXSq, 9, 4);
  REQUIRE(a.n_trajectories() == 9);
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(a.trajectories[i].log_weights == b.trajectories[i].log_weights);
    CHECK(a.trajectories[i].values == b.trajectories[i].values);
  }
  CHECK(a.trajectories[0].log_weights != a.trajectories[1].log_weights);
  const auto single = generate_trajectory(m, s, kMeanXSq, 4);
  CHECK(single.log_weights == a.trajectories[4].log_weights);
  CHECK(a.trajectories[0].log_weights.size() == a.n_records());
}

TEST_CASE("exact trial gives unit weights") {
  ModelConfig m{1, 0.0, 4.0, 0.015, true, 0.5, 0.5, CouplingMode::pre_quench};
  SamplerConfig s;
  s.scale = 10;
  s.t_total = 3.0;
  const auto set = generate_trajectories(m, s, kMeanXSq, 5, 1);
  for (const auto& t : set.trajectories)
    for (double lw : t.log_weights) CHECK(lw == 0.0);
}

TEST_CASE("progress is reported once per trajectory") {
  ModelConfig m{1, 0.0, 4.0, 0.015, true, 0.5, 0.5, CouplingMode::pre_quench};
  SamplerConfig s;
  s.scale = 5;
  s.t_total = 1.0;
  std::size_t calls = 0;
  std::size_t last = 0;
  generate_trajectories(m, s, kMeanXSq, 6, 2, [&](std::size_t done, std::size_t total) {
    ++calls;
    last = done;
    CHECK(total == 6);
  });
  CHECK(calls == 6);
  CHECK(last == 6);
}

TEST_CASE("pilot energy of the exact trial is exact") {
  ModelConfig m{5, 0.0, 4.0, 0.015, true, 0.5, 0.0, CouplingMode::pre_quench};
  CHECK(pilot_trial_energy(m, 1, 100) == 2.5);
  ModelConfig free{1, 0.0, 4.0, 0.015, false, 0.25, 0.0, CouplingMode::pre_quench};
  // <-2 b^2 x^2 + b> with <x^2> = 1/(4b) gives b/2.
  CHECK(pilot_trial_energy(free, 1, 200000) == doctest::Approx(0.125).epsilon(0.02));
}
