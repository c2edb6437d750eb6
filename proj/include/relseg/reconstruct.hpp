#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "relseg/relevance.hpp"
#include "relseg/timeseries.hpp"
#include "relseg/transport.hpp"

namespace relseg {

enum class ReconstructionKind {
  PiecewiseConstant,    ///< per-segment mean
  PiecewiseLinear,      ///< interpolation between segment endpoint samples
  PiecewiseRegression,  ///< per-segment least-squares line
};

/// A compressed reconstruction sampled back at the original timestamps.
struct Reconstruction {
  ReconstructionKind kind = ReconstructionKind::PiecewiseLinear;
  std::vector<double> sampled;   ///< S(x_i) for i = 1..n
  Segmentation segmentation;     ///< the (sample-aligned) segmentation used
  std::size_t storedPointCount = 0;  ///< distinct anchor samples (n' plus boundary anchors)
};

/// Index of the sample timestamp nearest to `point`; ties go to the
/// later sample.
std::size_t snap_index(std::span<const double> timestamps, double point);

/// Copy of `seg` with every point snapped to the nearest sample
/// timestamp (ties toward the later sample).
Segmentation snap_to_samples(const TimeSeries& series, const Segmentation& seg);

/// Build the reconstruction. Every segmentation point must equal a
/// sample timestamp (snap first); otherwise std::invalid_argument.
/// Boundary anchors x_1 and x_n are added implicitly.
Reconstruction reconstruct(const TimeSeries& series, const Segmentation& seg,
                           ReconstructionKind kind);

struct RelevanceErrorReport {
  std::vector<double> pointwise;  ///< |phi~_i - phi_i|
  double maxAbs = 0.0;
};

/// Pointwise relevance drift between the original profile and the one
/// recomputed on the reconstruction; compare maxAbs against
/// sum(phi)/n' for the preservation bound.
RelevanceErrorReport relevance_error(const RelevanceProfile& original,
                                     const RelevanceProfile& reconstructed);

}  // namespace relseg
