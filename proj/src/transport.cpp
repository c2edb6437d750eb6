#include "relseg/transport.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "relseg/numeric.hpp"

namespace relseg {

namespace {

void check_sizes(std::size_t n, std::size_t nPrime) {
  if (nPrime < 1 || nPrime > n) {
    throw std::invalid_argument("transport: nPrime must satisfy 1 <= nPrime <= n");
  }
}

}  // namespace

Coupling optimal_coupling(const RelevanceProfile& profile, std::size_t nPrime) {
  const std::size_t n = profile.size();
  check_sizes(n, nPrime);

  const std::vector<double> W = compensated_prefix(profile.weights);
  const auto boundary = [nPrime](std::size_t u) {
    return static_cast<double>(u) / static_cast<double>(nPrime);
  };

  Coupling coupling;
  coupling.pointCount = n;
  coupling.segmentCount = nPrime;
  coupling.entries.reserve(n + nPrime);

  std::size_t j = 0;
  double vLo = 0.0;
  double vHi = boundary(1);
  for (std::size_t i = 0; i < n; ++i) {
    const double wLo = i == 0 ? 0.0 : W[i - 1];
    const double wHi = W[i];
    for (;;) {
      // Last column absorbs any rounding residual above (nPrime-1)/nPrime.
      const double hi = j + 1 == nPrime ? wHi : std::min(wHi, vHi);
      const double mass = hi - std::max(wLo, vLo);
      if (mass > 0.0) coupling.entries.push_back({i, j, mass});
      if (j + 1 == nPrime || wHi <= vHi) break;
      ++j;
      vLo = vHi;
      vHi = boundary(j + 1);
    }
  }
  return coupling;
}

Segmentation segmentation_points(const Coupling& coupling, std::span<const double> timestamps,
                                 bool integerize) {
  const std::size_t n = coupling.pointCount;
  const std::size_t nPrime = coupling.segmentCount;
  if (timestamps.size() != n) {
    throw std::invalid_argument("segmentation_points: timestamp count does not match coupling");
  }

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<CompensatedSum> weighted(nPrime);
  std::vector<CompensatedSum> mass(nPrime);
  std::vector<std::size_t> first(nPrime, kNone);
  std::vector<std::size_t> last(nPrime, kNone);
  for (const CouplingEntry& e : coupling.entries) {
    weighted[e.target].add(e.mass * timestamps[e.source]);
    mass[e.target].add(e.mass);
    if (first[e.target] == kNone) first[e.target] = e.source;
    last[e.target] = e.source;
  }

  Segmentation seg;
  seg.integerized = integerize;
  seg.points.resize(nPrime);
  seg.intervals.resize(nPrime);
  seg.sourceIndices.resize(nPrime);

  std::size_t prevCut = 0;  // k_0 = first sample
  for (std::size_t j = 0; j < nPrime; ++j) {
    double point;
    if (first[j] == kNone) {
      // Degenerate empty column (total weight rounded short); pin to the cut.
      point = timestamps[prevCut];
      last[j] = prevCut;
    } else if (first[j] == last[j]) {
      point = timestamps[first[j]];
    } else {
      point = weighted[j].value() / mass[j].value();
      point = std::clamp(point, timestamps[first[j]], timestamps[last[j]]);
    }
    seg.points[j] = point;
    seg.intervals[j] = {timestamps[prevCut], timestamps[last[j]]};
    seg.sourceIndices[j] = last[j];
    prevCut = last[j];
  }

  if (integerize) {
    for (double& p : seg.points) p = std::ceil(p);
  }
  return seg;
}

std::vector<std::size_t> cut_indices(std::span<const double> weights, std::size_t nPrime) {
  const std::size_t n = weights.size();
  check_sizes(n, nPrime);
  const std::vector<double> W = compensated_prefix(weights);

  const auto boundary = [nPrime](std::size_t u) {
    return static_cast<double>(u) / static_cast<double>(nPrime);
  };
  std::vector<std::size_t> cuts(nPrime + 1);
  cuts[0] = 0;
  std::size_t k = 0;
  for (std::size_t u = 1; u <= nPrime; ++u) {
    // The final prefix may fall an ulp short of u/nPrime; capping the
    // target keeps the scan from running into a zero-weight tail.
    const double target = std::min(boundary(u), W.back());
    while (k + 1 < n && W[k] < target) ++k;
    cuts[u] = k;
  }
  return cuts;
}

std::vector<std::pair<double, double>> guaranteed_intervals(const RelevanceProfile& profile,
                                                            std::span<const double> timestamps,
                                                            std::size_t nPrime) {
  if (timestamps.size() != profile.size()) {
    throw std::invalid_argument("guaranteed_intervals: timestamp count does not match profile");
  }
  const std::vector<std::size_t> cuts = cut_indices(profile.weights, nPrime);
  std::vector<std::pair<double, double>> intervals(nPrime);
  for (std::size_t j = 0; j < nPrime; ++j) {
    intervals[j] = {timestamps[cuts[j]], timestamps[cuts[j + 1]]};
  }
  return intervals;
}

}  // namespace relseg
