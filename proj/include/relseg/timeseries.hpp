#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace relseg {

/// A univariate series: values y_i observed at strictly increasing
/// timestamps x_i. Timestamps are arbitrary reals (seconds, sample
/// indices, ...); nothing assumes unit spacing.
struct TimeSeries {
  std::vector<double> timestamps;
  std::vector<double> values;

  std::size_t size() const { return timestamps.size(); }
  bool empty() const { return timestamps.empty(); }

  /// Throws std::invalid_argument if the invariants do not hold:
  /// equal lengths, at least one point, strictly increasing timestamps.
  void validate() const {
    if (timestamps.size() != values.size()) {
      throw std::invalid_argument("time series: timestamp/value length mismatch");
    }
    if (timestamps.empty()) {
      throw std::invalid_argument("time series: empty");
    }
    for (std::size_t i = 1; i < timestamps.size(); ++i) {
      if (!(timestamps[i - 1] < timestamps[i])) {
        throw std::invalid_argument("time series: timestamps not strictly increasing");
      }
    }
  }
};

}  // namespace relseg
