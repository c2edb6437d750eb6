#include "relseg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace relseg {

void validate_labels(std::span<const IntervalLabel> labels) {
  for (const IntervalLabel& label : labels) {
    if (!(label.start < label.end)) {
      throw std::invalid_argument("labels: interval '" + label.name + "' has start >= end");
    }
  }
  std::vector<const IntervalLabel*> sorted;
  sorted.reserve(labels.size());
  for (const IntervalLabel& label : labels) sorted.push_back(&label);
  std::sort(sorted.begin(), sorted.end(),
            [](const IntervalLabel* a, const IntervalLabel* b) { return a->start < b->start; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->start < sorted[i - 1]->end) {
      throw std::invalid_argument("labels: intervals '" + sorted[i - 1]->name + "' and '" +
                                  sorted[i]->name + "' overlap");
    }
  }
}

double compression_ratio(std::size_t pointsIn, std::size_t pointsStored) {
  if (pointsStored == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(pointsIn) / static_cast<double>(pointsStored);
}

RelativeSquaredError relative_squared_error(const TimeSeries& series,
                                            std::span<const double> reconstructed,
                                            const IntervalLabel& interval) {
  if (reconstructed.size() != series.size()) {
    throw std::invalid_argument("relative_squared_error: reconstruction length mismatch");
  }
  RelativeSquaredError out;
  double sq = 0.0;
  double absSum = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double x = series.timestamps[i];
    if (x < interval.start || x > interval.end) continue;
    const double d = reconstructed[i] - series.values[i];
    sq += d * d;
    absSum += std::abs(series.values[i]);
    out.count += 1;
  }
  if (out.count == 0) {
    throw std::invalid_argument("relative_squared_error: interval '" + interval.name +
                                "' contains no samples");
  }
  out.mse = sq / static_cast<double>(out.count);
  if (absSum > 0.0) {
    out.value = out.mse / absSum;
  } else {
    out.value = std::numeric_limits<double>::infinity();
    out.undefined = true;
  }
  return out;
}

namespace {

nlohmann::json bound_to_json(const BoundCheck& b) {
  return {{"name", b.name},
          {"worst", b.worst},
          {"bound", b.bound},
          {"margin", b.margin()},
          {"pass", b.pass}};
}

}  // namespace

nlohmann::json EvalReport::to_json() const {
  nlohmann::json j;
  j["totalPoints"] = totalPoints;
  j["storedPoints"] = storedPoints;
  j["globalCompressionRatio"] = globalCompressionRatio;
  nlohmann::json rows = nlohmann::json::array();
  for (const IntervalMetrics& m : intervals) {
    nlohmann::json row;
    row["name"] = m.label.name;
    row["kind"] = m.label.kind == IntervalKind::Event ? "event" : "nonevent";
    row["start"] = m.label.start;
    row["end"] = m.label.end;
    row["pointsIn"] = m.pointsIn;
    row["pointsStored"] = m.pointsStored;
    if (m.compressionUndefined) {
      row["compressionRatio"] = nullptr;
    } else {
      row["compressionRatio"] = m.compressionRatio;
    }
    row["relativeSquaredError"] = m.error.undefined ? nlohmann::json(nullptr)
                                                    : nlohmann::json(m.error.value);
    row["mse"] = m.error.mse;
    rows.push_back(std::move(row));
  }
  j["intervals"] = std::move(rows);
  if (relevanceBound) j["relevanceBound"] = bound_to_json(*relevanceBound);
  if (streamingBound) j["streamingBound"] = bound_to_json(*streamingBound);
  return j;
}

EvalReport bound_report(const TimeSeries& series, std::span<const double> reconstructed,
                        std::span<const double> storedTimestamps,
                        std::span<const IntervalLabel> labels,
                        std::optional<BoundCheck> relevanceBound,
                        std::optional<BoundCheck> streamingBound) {
  validate_labels(labels);
  EvalReport report;
  report.totalPoints = series.size();
  report.storedPoints = storedTimestamps.size();
  report.globalCompressionRatio = compression_ratio(report.totalPoints, report.storedPoints);
  report.relevanceBound = std::move(relevanceBound);
  report.streamingBound = std::move(streamingBound);

  for (const IntervalLabel& label : labels) {
    IntervalMetrics m;
    m.label = label;
    for (double x : series.timestamps) {
      if (x >= label.start && x <= label.end) ++m.pointsIn;
    }
    for (double x : storedTimestamps) {
      if (x >= label.start && x <= label.end) ++m.pointsStored;
    }
    m.compressionRatio = compression_ratio(m.pointsIn, m.pointsStored);
    m.compressionUndefined = m.pointsStored == 0;
    if (!reconstructed.empty() && m.pointsIn > 0) {
      m.error = relative_squared_error(series, reconstructed, label);
    }
    report.intervals.push_back(std::move(m));
  }
  return report;
}

}  // namespace relseg
