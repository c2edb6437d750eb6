#pragma once

// Test-only utilities: random instance generators and an independent
// brute-force transport oracle. Nothing here may call into the coupling
// construction it is used to check.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "relseg/numeric.hpp"
#include "relseg/timeseries.hpp"

namespace relseg::testing {

inline std::vector<double> random_timestamps(std::mt19937_64& rng, std::size_t n, double lo = 0.0,
                                             double hi = 100.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> xs(n);
  for (double& x : xs) x = dist(rng);
  std::sort(xs.begin(), xs.end());
  // separate duplicates so the strict-increase invariant holds
  for (std::size_t i = 1; i < n; ++i) {
    if (xs[i] <= xs[i - 1]) xs[i] = std::nextafter(xs[i - 1], hi + 1.0) + 1e-9;
  }
  return xs;
}

inline TimeSeries random_series(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  TimeSeries s;
  s.timestamps = random_timestamps(rng, n);
  s.values.resize(n);
  for (double& v : s.values) v = dist(rng);
  return s;
}

inline std::vector<double> random_weights(std::mt19937_64& rng, std::size_t n,
                                          double zeroFraction = 0.1) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (double& v : w) {
    v = dist(rng) < zeroFraction ? 0.0 : dist(rng);
    total += v;
  }
  if (total <= 0.0) {
    w[n / 2] = 1.0;
    total = 1.0;
  }
  for (double& v : w) v /= total;
  return w;
}

/// Brute-force minimum of the column-barycenter transport cost over every
/// feasible coupling on an integer mass grid: row sums `rows`, all column
/// sums equal `colUnits` (masses in grid units summing to `total`).
class TransportOracle {
 public:
  TransportOracle(std::vector<int> rows, int colUnits, int targets, std::vector<double> xs)
      : rows_(std::move(rows)),
        colUnits_(colUnits),
        targets_(targets),
        xs_(std::move(xs)),
        remaining_(static_cast<std::size_t>(targets), colUnits),
        cell_(rows_.size() * static_cast<std::size_t>(targets), 0) {}

  double best_cost() {
    best_ = std::numeric_limits<double>::infinity();
    recurse_row(0);
    return best_;
  }

 private:
  int& cell(std::size_t i, std::size_t j) { return cell_[i * static_cast<std::size_t>(targets_) + j]; }

  void recurse_row(std::size_t i) {
    if (i == rows_.size()) {
      bool done = true;
      for (int r : remaining_) done = done && r == 0;
      if (done) best_ = std::min(best_, cost());
      return;
    }
    distribute(i, 0, rows_[i]);
  }

  void distribute(std::size_t i, std::size_t j, int left) {
    if (j == static_cast<std::size_t>(targets_) - 1) {
      if (left <= remaining_[j]) {
        cell(i, j) = left;
        remaining_[j] -= left;
        recurse_row(i + 1);
        remaining_[j] += left;
        cell(i, j) = 0;
      }
      return;
    }
    const int cap = std::min(left, remaining_[j]);
    for (int v = 0; v <= cap; ++v) {
      cell(i, j) = v;
      remaining_[j] -= v;
      distribute(i, j + 1, left - v);
      remaining_[j] += v;
      cell(i, j) = 0;
    }
  }

  double cost() {
    const double total = static_cast<double>(colUnits_) * static_cast<double>(targets_);
    double c = 0.0;
    for (std::size_t j = 0; j < static_cast<std::size_t>(targets_); ++j) {
      double m = 0.0;
      double mx = 0.0;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        m += cell(i, j);
        mx += cell(i, j) * xs_[i];
      }
      if (m == 0.0) continue;
      const double bary = mx / m;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const double d = xs_[i] - bary;
        c += (cell(i, j) / total) * d * d;
      }
    }
    return c;
  }

  std::vector<int> rows_;
  int colUnits_;
  int targets_;
  std::vector<double> xs_;
  std::vector<int> remaining_;
  std::vector<int> cell_;
  double best_ = 0.0;
};

/// Kahan-compensated sum of arbitrary doubles, for marginal checks.
inline double exact_sum(const std::vector<double>& v) {
  CompensatedSum acc;
  for (double x : v) acc.add(x);
  return acc.value();
}

}  // namespace relseg::testing
