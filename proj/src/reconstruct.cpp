#include "relseg/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relseg {

namespace {

/// Anchor sample indices: x_1, the snapped segmentation points, x_n;
/// consecutive duplicates collapsed.
std::vector<std::size_t> anchor_indices(const TimeSeries& series, const Segmentation& seg) {
  const std::span<const double> xs(series.timestamps);
  std::vector<std::size_t> anchors;
  anchors.reserve(seg.points.size() + 2);
  anchors.push_back(0);
  for (double p : seg.points) {
    const auto it = std::lower_bound(xs.begin(), xs.end(), p);
    if (it == xs.end() || *it != p) {
      throw std::invalid_argument(
          "reconstruct: segmentation point is not aligned to a sample timestamp");
    }
    anchors.push_back(static_cast<std::size_t>(it - xs.begin()));
  }
  anchors.push_back(series.size() - 1);
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
  return anchors;
}

}  // namespace

std::size_t snap_index(std::span<const double> timestamps, double point) {
  if (timestamps.empty()) throw std::invalid_argument("snap_index: empty timestamps");
  const auto it = std::lower_bound(timestamps.begin(), timestamps.end(), point);
  if (it == timestamps.begin()) return 0;
  if (it == timestamps.end()) return timestamps.size() - 1;
  const std::size_t hi = static_cast<std::size_t>(it - timestamps.begin());
  // ties toward the later sample
  return (timestamps[hi] - point) <= (point - timestamps[hi - 1]) ? hi : hi - 1;
}

Segmentation snap_to_samples(const TimeSeries& series, const Segmentation& seg) {
  series.validate();
  Segmentation out = seg;
  for (double& p : out.points) {
    p = series.timestamps[snap_index(series.timestamps, p)];
  }
  return out;
}

Reconstruction reconstruct(const TimeSeries& series, const Segmentation& seg,
                           ReconstructionKind kind) {
  series.validate();
  const std::vector<std::size_t> anchors = anchor_indices(series, seg);
  const std::vector<double>& x = series.timestamps;
  const std::vector<double>& y = series.values;

  Reconstruction recon;
  recon.kind = kind;
  recon.segmentation = seg;
  recon.storedPointCount = anchors.size();
  recon.sampled.resize(series.size());

  for (std::size_t s = 0; s + 1 < anchors.size(); ++s) {
    const std::size_t a = anchors[s];
    const std::size_t b = anchors[s + 1];
    // samples [a, b) belong to this segment; the final segment keeps b
    const std::size_t end = (s + 2 == anchors.size()) ? b + 1 : b;

    switch (kind) {
      case ReconstructionKind::PiecewiseConstant: {
        double sum = 0.0;
        for (std::size_t i = a; i <= b; ++i) sum += y[i];
        const double mean = sum / static_cast<double>(b - a + 1);
        for (std::size_t i = a; i < end; ++i) recon.sampled[i] = mean;
        break;
      }
      case ReconstructionKind::PiecewiseLinear: {
        const double slope = (y[b] - y[a]) / (x[b] - x[a]);
        for (std::size_t i = a; i < end; ++i) {
          recon.sampled[i] = y[a] + (x[i] - x[a]) * slope;
        }
        // endpoints take the sample value exactly, not the rounded
        // interpolation
        if (end == b + 1) recon.sampled[b] = y[b];
        break;
      }
      case ReconstructionKind::PiecewiseRegression: {
        const double count = static_cast<double>(b - a + 1);
        double sx = 0.0, sy = 0.0;
        for (std::size_t i = a; i <= b; ++i) {
          sx += x[i];
          sy += y[i];
        }
        const double mx = sx / count;
        const double my = sy / count;
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = a; i <= b; ++i) {
          sxx += (x[i] - mx) * (x[i] - mx);
          sxy += (x[i] - mx) * (y[i] - my);
        }
        const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
        for (std::size_t i = a; i < end; ++i) {
          recon.sampled[i] = my + slope * (x[i] - mx);
        }
        break;
      }
    }
  }

  if (anchors.size() == 1) {
    recon.sampled[anchors[0]] = y[anchors[0]];
  }
  return recon;
}

RelevanceErrorReport relevance_error(const RelevanceProfile& original,
                                     const RelevanceProfile& reconstructed) {
  if (original.size() != reconstructed.size()) {
    throw std::invalid_argument("relevance_error: profile length mismatch");
  }
  RelevanceErrorReport report;
  report.pointwise.resize(original.size());
  for (std::size_t i = 0; i < original.size(); ++i) {
    const double d = std::abs(reconstructed.scores[i] - original.scores[i]);
    report.pointwise[i] = d;
    report.maxAbs = std::max(report.maxAbs, d);
  }
  return report;
}

}  // namespace relseg
