#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace relseg {

/// Neumaier-compensated accumulator. Keeps summation error at a few ulps
/// independent of the number of terms; needed to hold the 1e-12 marginal
/// tolerances at n = 1e6.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

  void reset() {
    sum_ = 0.0;
    comp_ = 0.0;
  }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_total(std::span<const double> values) {
  CompensatedSum acc;
  for (double v : values) acc.add(v);
  return acc.value();
}

/// Running prefix sums with compensation; out[i] = sum of values[0..i].
inline std::vector<double> compensated_prefix(std::span<const double> values) {
  std::vector<double> out(values.size());
  CompensatedSum acc;
  for (std::size_t i = 0; i < values.size(); ++i) {
    acc.add(values[i]);
    out[i] = acc.value();
  }
  return out;
}

}  // namespace relseg
