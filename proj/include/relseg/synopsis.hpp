#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace relseg {

/// One synopsis entry: a retained timestamp plus the relevance mass and
/// mass-weighted-timestamp totals of every point merged into it.
struct SynopsisTriple {
  double timestamp;   ///< x^S
  double mass;        ///< accumulated phi^S
  double massTime;    ///< accumulated xi = sum of phi_l * x_l
  bool merged;        ///< formed by combining two or more points
};

/// Approximate segmentation points read off the synopsis, with the
/// retained timestamps bracketing each one.
struct SegmentationEstimate {
  std::vector<double> points;
  std::vector<std::pair<double, double>> intervalEnds;
  std::size_t segmentCount = 0;
};

/// Streaming summary of a scored time series. Supports appending points
/// (with adaptive growth of the segment count), pruning low-relevance
/// runs down to an epsilon of total mass, and querying bounded-error
/// approximations to the batch segmentation points at any time.
///
/// Single-writer: observe/prune must be serialized per stream. Queries
/// are const and safe on a copy or between writes.
class Synopsis {
 public:
  /// Start from an observed prefix: one triple per point.
  /// alpha in [0,1] trades accuracy (0 = exact) for synopsis size.
  /// growthFactor scales the segment-growth threshold; 1 grows whenever
  /// the mass accumulated since the last growth reaches Z/n', larger
  /// values grow proportionally more conservatively.
  Synopsis(std::span<const double> timestamps, std::span<const double> scores,
           std::size_t initialSegments, double alpha, double growthFactor = 1.0);

  /// Append one scored point. Timestamps must be strictly increasing.
  void observe(double timestamp, double score);

  /// Merge interior runs of triples whose mass fits within
  /// epsilon * total; first and last triples are never merged.
  void prune();

  /// Approximations to the batch segmentation points at the current n'.
  SegmentationEstimate query() const;

  std::size_t tripleCount() const { return triples_.size(); }  // L
  std::size_t pointsSeen() const { return pointsSeen_; }       // n
  std::size_t segmentCount() const { return segments_; }       // n'
  double alpha() const { return alpha_; }
  double growthFactor() const { return growthFactor_; }
  double epsilon() const { return alpha_ / static_cast<double>(segments_); }
  double massAtLastGrowth() const { return massAtGrowth_; }    // Z
  double massSinceGrowth() const { return massSinceGrowth_; }  // deltaZ
  double totalMass() const;
  const std::vector<SynopsisTriple>& triples() const { return triples_; }

  /// Versioned snapshot; counters round-trip exactly and floats
  /// bit-faithfully.
  nlohmann::json to_json() const;
  static Synopsis from_json(const nlohmann::json& j);

 private:
  Synopsis() = default;

  std::vector<SynopsisTriple> triples_;
  std::size_t pointsSeen_ = 0;
  std::size_t segments_ = 1;
  double alpha_ = 0.0;
  double growthFactor_ = 1.0;
  double massAtGrowth_ = 0.0;
  double massSinceGrowth_ = 0.0;
};

}  // namespace relseg
