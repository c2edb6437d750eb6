#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "relseg/reconstruct.hpp"
#include "relseg/timeseries.hpp"

namespace relseg {

enum class IntervalKind { Event, NonEvent };

/// A labeled time span [start, end] for per-interval evaluation.
struct IntervalLabel {
  double start = 0.0;
  double end = 0.0;
  IntervalKind kind = IntervalKind::Event;
  std::string name;
};

/// Throws std::invalid_argument unless each label has start < end and no
/// two labels overlap.
void validate_labels(std::span<const IntervalLabel> labels);

/// C_R = pointsIn / pointsStored; +infinity when nothing is stored in
/// scope (flagged by the caller via isinf).
double compression_ratio(std::size_t pointsIn, std::size_t pointsStored);

/// The relative squared reconstruction error over an index set J:
/// (1/|J|) * sum((S-y)^2) / sum(|y|), plus plain MSE as a conventional
/// companion. `undefined` is set (value = +inf) when sum(|y|) = 0.
/// Note the denominator is sum of absolute values, not a mean square, so
/// the metric is scale-dependent; it is reported exactly in this form.
struct RelativeSquaredError {
  double value = 0.0;
  double mse = 0.0;
  std::size_t count = 0;
  bool undefined = false;
};

RelativeSquaredError relative_squared_error(const TimeSeries& series,
                                            std::span<const double> reconstructed,
                                            const IntervalLabel& interval);

struct IntervalMetrics {
  IntervalLabel label;
  std::size_t pointsIn = 0;
  std::size_t pointsStored = 0;
  double compressionRatio = 0.0;
  bool compressionUndefined = false;
  RelativeSquaredError error;
};

/// One margin check of a theoretical bound: pass iff worst <= bound.
struct BoundCheck {
  std::string name;
  double worst = 0.0;
  double bound = 0.0;
  bool pass = false;
  double margin() const { return bound - worst; }
};

struct EvalReport {
  std::size_t totalPoints = 0;
  std::size_t storedPoints = 0;
  double globalCompressionRatio = 0.0;
  std::vector<IntervalMetrics> intervals;
  std::optional<BoundCheck> relevanceBound;  ///< max|phi~-phi| vs sum(phi)/n'
  std::optional<BoundCheck> streamingBound;  ///< |x~S-x~| vs 4*alpha*x_{k_{j+1}}

  nlohmann::json to_json() const;
};

/// Assemble the report: per-interval compression/error rows (segmentation
/// points attributed by snapped timestamp) plus optional bound checks.
EvalReport bound_report(const TimeSeries& series, std::span<const double> reconstructed,
                        std::span<const double> storedTimestamps,
                        std::span<const IntervalLabel> labels,
                        std::optional<BoundCheck> relevanceBound = std::nullopt,
                        std::optional<BoundCheck> streamingBound = std::nullopt);

}  // namespace relseg
