#include <doctest.h>

#include <chrono>
#include <cmath>
#include <map>
#include <random>

#include "helpers.hpp"
#include "relseg/transport.hpp"

using namespace relseg;

namespace {

RelevanceProfile profile_from_weights(std::vector<double> w) {
  RelevanceProfile p;
  p.scores = w;
  p.weights = std::move(w);
  return p;
}

std::map<std::pair<std::size_t, std::size_t>, double> entry_map(const Coupling& c) {
  std::map<std::pair<std::size_t, std::size_t>, double> m;
  for (const CouplingEntry& e : c.entries) m[{e.source, e.target}] = e.mass;
  return m;
}

}  // namespace

TEST_CASE("single target receives all mass") {
  const Coupling c = optimal_coupling(profile_from_weights({0.5, 0.5}), 1);
  const auto m = entry_map(c);
  REQUIRE(m.size() == 2);
  CHECK(m.at({0, 0}) == doctest::Approx(0.5));
  CHECK(m.at({1, 0}) == doctest::Approx(0.5));
}

TEST_CASE("identity coupling at equal resolution") {
  const Coupling c = optimal_coupling(profile_from_weights({0.25, 0.25, 0.25, 0.25}), 4);
  REQUIRE(c.entries.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(c.entries[i].source == i);
    CHECK(c.entries[i].target == i);
    CHECK(c.entries[i].mass == doctest::Approx(0.25));
  }
}

TEST_CASE("hand-traced coupling on the worked example") {
  const Coupling c =
      optimal_coupling(profile_from_weights({0.0, 3.0 / 7.0, 3.0 / 7.0, 1.0 / 7.0}), 2);
  const auto m = entry_map(c);
  REQUIRE(m.size() == 4);
  CHECK(m.at({1, 0}) == doctest::Approx(3.0 / 7.0).epsilon(1e-14));
  CHECK(m.at({2, 0}) == doctest::Approx(1.0 / 14.0).epsilon(1e-13));
  CHECK(m.at({2, 1}) == doctest::Approx(5.0 / 14.0).epsilon(1e-13));
  CHECK(m.at({3, 1}) == doctest::Approx(1.0 / 7.0).epsilon(1e-14));
}

TEST_CASE("segmentation points of the worked example") {
  const RelevanceProfile p = profile_from_weights({0.0, 3.0 / 7.0, 3.0 / 7.0, 1.0 / 7.0});
  const std::vector<double> xs{1, 2, 3, 4};
  const Coupling c = optimal_coupling(p, 2);

  SUBCASE("real-valued transform") {
    const Segmentation seg = segmentation_points(c, xs, false);
    REQUIRE(seg.points.size() == 2);
    CHECK(seg.points[0] == doctest::Approx(15.0 / 7.0).epsilon(1e-13));
    CHECK(seg.points[1] == doctest::Approx(23.0 / 7.0).epsilon(1e-13));
    CHECK(seg.intervals[0].first == 1);
    CHECK(seg.intervals[0].second == 3);
    CHECK(seg.intervals[1].first == 3);
    CHECK(seg.intervals[1].second == 4);
    CHECK_FALSE(seg.integerized);
  }
  SUBCASE("integerized transform takes the ceiling") {
    const Segmentation seg = segmentation_points(c, xs, true);
    CHECK(seg.points[0] == 3.0);
    CHECK(seg.points[1] == 4.0);
    CHECK(seg.integerized);
  }
}

TEST_CASE("uniform weights at full resolution reproduce the timestamps exactly") {
  // dyadic sizes make the uniform weights and targets exactly representable
  for (std::size_t n : {4u, 8u, 16u}) {
    std::mt19937_64 rng(100 + n);
    const std::vector<double> xs = testing::random_timestamps(rng, n);
    const RelevanceProfile p =
        profile_from_weights(std::vector<double>(n, 1.0 / static_cast<double>(n)));
    const Coupling c = optimal_coupling(p, n);
    const Segmentation seg = segmentation_points(c, xs, false);
    for (std::size_t i = 0; i < n; ++i) CHECK(seg.points[i] == xs[i]);
  }
}

TEST_CASE("guaranteed intervals") {
  const std::vector<double> xs{1, 2, 3, 4};

  SUBCASE("worked example") {
    const RelevanceProfile p = profile_from_weights({0.0, 3.0 / 7.0, 3.0 / 7.0, 1.0 / 7.0});
    const auto iv = guaranteed_intervals(p, xs, 2);
    REQUIRE(iv.size() == 2);
    CHECK(iv[0] == std::pair<double, double>{1, 3});
    CHECK(iv[1] == std::pair<double, double>{3, 4});
  }
  SUBCASE("uniform weights") {
    const RelevanceProfile p = profile_from_weights({0.25, 0.25, 0.25, 0.25});
    const auto iv = guaranteed_intervals(p, xs, 2);
    CHECK(iv[0] == std::pair<double, double>{1, 2});
    CHECK(iv[1] == std::pair<double, double>{2, 4});
  }
  SUBCASE("single segment spans the whole range") {
    const RelevanceProfile p = profile_from_weights({0.1, 0.2, 0.3, 0.4});
    const auto iv = guaranteed_intervals(p, xs, 1);
    REQUIRE(iv.size() == 1);
    CHECK(iv[0] == std::pair<double, double>{1, 4});
  }
}

TEST_CASE("coupling-derived intervals agree with the direct computation") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 60)(rng);
    const std::size_t np = std::uniform_int_distribution<std::size_t>(1, n)(rng);
    const RelevanceProfile p = profile_from_weights(testing::random_weights(rng, n, 0.3));
    const std::vector<double> xs = testing::random_timestamps(rng, n);
    const Segmentation seg = segmentation_points(optimal_coupling(p, np), xs, false);
    const auto direct = guaranteed_intervals(p, xs, np);
    REQUIRE(seg.intervals.size() == direct.size());
    for (std::size_t j = 0; j < direct.size(); ++j) {
      CHECK(seg.intervals[j].first == direct[j].first);
      CHECK(seg.intervals[j].second == direct[j].second);
    }
  }
}

TEST_CASE("marginals, sparsity, staircase and containment on random instances") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 120)(rng);
    const std::size_t np = std::uniform_int_distribution<std::size_t>(1, n)(rng);
    const RelevanceProfile p = profile_from_weights(testing::random_weights(rng, n, 0.2));
    const Coupling c = optimal_coupling(p, np);

    CHECK(c.entries.size() <= n + np + 1);

    std::vector<double> rowSum(n, 0.0);
    std::vector<CompensatedSum> colSum(np);
    std::size_t lastSource = 0;
    std::size_t lastTarget = 0;
    bool first = true;
    for (const CouplingEntry& e : c.entries) {
      CHECK(e.mass > 0.0);
      rowSum[e.source] += e.mass;
      colSum[e.target].add(e.mass);
      if (!first) {
        const bool ordered = e.source > lastSource ||
                             (e.source == lastSource && e.target >= lastTarget);
        CHECK(ordered);
        CHECK(e.target >= lastTarget);
      }
      lastSource = e.source;
      lastTarget = e.target;
      first = false;
    }
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(rowSum[i] - p.weights[i]) < 1e-12);
    for (std::size_t j = 0; j < np; ++j) {
      CHECK(std::abs(colSum[j].value() - 1.0 / static_cast<double>(np)) < 1e-12);
    }

    const std::vector<double> xs = testing::random_timestamps(rng, n);
    const Segmentation seg = segmentation_points(c, xs, false);
    for (std::size_t j = 0; j < np; ++j) {
      CHECK(seg.points[j] >= seg.intervals[j].first);
      CHECK(seg.points[j] <= seg.intervals[j].second);
      if (j > 0) CHECK(seg.points[j] >= seg.points[j - 1]);
    }
  }
}

TEST_CASE("optimal against the brute-force oracle on small instances") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 7)(rng);
    const int np = std::uniform_int_distribution<int>(1, std::min(3, n))(rng);
    const int colUnits = std::uniform_int_distribution<int>(2, 4)(rng);
    const int total = np * colUnits;

    std::vector<int> rows(n, 0);
    for (int u = 0; u < total; ++u) rows[std::uniform_int_distribution<int>(0, n - 1)(rng)] += 1;

    std::vector<double> xs = testing::random_timestamps(rng, n, 0.0, 10.0);
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = static_cast<double>(rows[i]) / total;

    const Coupling c = optimal_coupling(profile_from_weights(w), np);
    double algCost = 0.0;
    {
      std::vector<double> colMass(np, 0.0);
      std::vector<double> colMx(np, 0.0);
      for (const CouplingEntry& e : c.entries) {
        colMass[e.target] += e.mass;
        colMx[e.target] += e.mass * xs[e.source];
      }
      for (const CouplingEntry& e : c.entries) {
        const double bary = colMx[e.target] / colMass[e.target];
        algCost += e.mass * (xs[e.source] - bary) * (xs[e.source] - bary);
      }
    }
    testing::TransportOracle oracle(rows, colUnits, np, xs);
    CHECK(algCost <= oracle.best_cost() + 1e-9);
  }
}

TEST_CASE("invalid segment counts are rejected") {
  const RelevanceProfile p = profile_from_weights({0.5, 0.5});
  CHECK_THROWS_AS(optimal_coupling(p, 0), std::invalid_argument);
  CHECK_THROWS_AS(optimal_coupling(p, 3), std::invalid_argument);
}

TEST_CASE("coupling and transform scale subquadratically" * doctest::timeout(300)) {
  std::mt19937_64 rng(24);
  std::vector<double> seconds;
  std::vector<std::size_t> sizes;
  for (std::size_t n = 10000; n <= 1000000; n *= 2) sizes.push_back(n);

  for (const std::size_t n : sizes) {
    std::vector<double> w = testing::random_weights(rng, n, 0.05);
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = static_cast<double>(i + 1);
    const std::size_t np = n / 100;
    // repeat small workloads until a sample is long enough to trust
    const int inner = static_cast<int>(std::max<std::size_t>(1, 400000 / n));
    double best = 1e100;
    std::size_t sink = 0;
    for (int rep = 0; rep < 5; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      for (int it = 0; it < inner; ++it) {
        const Coupling c = optimal_coupling(profile_from_weights(w), np);
        const Segmentation seg = segmentation_points(c, xs, false);
        sink += seg.points.size();
      }
      const double dt =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / inner;
      best = std::min(best, dt);
    }
    CHECK(sink == 5 * static_cast<std::size_t>(inner) * np);
    seconds.push_back(best);
  }
  // per-doubling growth as a geometric mean over the whole range, so a
  // single noisy sample cannot dominate; linear scaling sits near 2,
  // quadratic near 4
  const double doublings = static_cast<double>(seconds.size() - 1);
  const double perDoubling = std::pow(seconds.back() / seconds.front(), 1.0 / doublings);
  CHECK(perDoubling <= 2.5);
}
