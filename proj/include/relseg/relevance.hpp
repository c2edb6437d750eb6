#pragma once

#include <cstddef>
#include <vector>

#include "relseg/timeseries.hpp"

namespace relseg {

enum class RelevanceKind {
  AbsMagnitude,         ///< phi_i = |y_i|^p
  AbsDifference,        ///< phi_i = |y_i - y_{i-1}|^p, y_0 = 0
  ThresholdDifference,  ///< phi_i = H(|y_i - y_{i-1}| - beta)^p, strict exceedance
  QueryShape,           ///< phi_i = ||q - y_window(i)||^(-2p)
};

/// A template shape of odd length m; windows of the series are compared
/// against it with the Euclidean norm. halfWidth() is (m-1)/2.
class QueryShape {
 public:
  QueryShape() = default;
  explicit QueryShape(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  std::size_t length() const { return values_.size(); }
  std::size_t halfWidth() const { return values_.empty() ? 0 : (values_.size() - 1) / 2; }
  bool empty() const { return values_.empty(); }

 private:
  std::vector<double> values_;
};

struct RelevanceSpec {
  RelevanceKind kind = RelevanceKind::AbsMagnitude;
  int exponent = 1;        ///< p >= 1
  double threshold = 0.0;  ///< beta, ThresholdDifference only
  QueryShape query;        ///< QueryShape only
  bool normalizeWindow = false;  ///< rescale the query by each window's mean/std

  void validate() const;
};

/// Distances below this are clamped before inversion so an exact query
/// match yields a large finite score instead of infinity.
inline constexpr double kMinQueryDistance = 1e-8;

/// Per-point scores phi_1..phi_n under the given spec. Always nonnegative.
std::vector<double> score(const TimeSeries& series, const RelevanceSpec& spec);

/// Scores plus their normalization into a weight distribution. When the
/// scores sum to zero the weights fall back to uniform and the flag is set.
struct RelevanceProfile {
  std::vector<double> scores;
  std::vector<double> weights;
  bool uniformFallback = false;

  std::size_t size() const { return scores.size(); }
};

/// w_i = phi_i / sum(phi); uniform 1/n with uniformFallback=true when the
/// total is zero. Throws std::invalid_argument on a negative score.
RelevanceProfile normalize_weights(std::vector<double> scores);

/// Incremental scorer for stream ingestion. Data-driven kinds emit one
/// score per pushed point; QueryShape buffers halfWidth() points of
/// lookahead and emits once the window is complete (finish() flushes the
/// tail with truncated windows, mirroring the batch boundary handling).
class StreamingScorer {
 public:
  explicit StreamingScorer(RelevanceSpec spec);

  struct Scored {
    double timestamp;
    double value;
    double score;
  };

  /// Push the next sample; returns the scores that became available.
  std::vector<Scored> push(double timestamp, double value);

  /// Flush pending lookahead buffers at end of stream.
  std::vector<Scored> finish();

 private:
  double score_at(std::size_t center) const;

  RelevanceSpec spec_;
  std::vector<double> xbuf_;
  std::vector<double> ybuf_;
  std::size_t emitted_ = 0;
  double lastValue_ = 0.0;  // y_{i-1} for the difference kinds, y_0 = 0
};

}  // namespace relseg
