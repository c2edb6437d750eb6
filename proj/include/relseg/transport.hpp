#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "relseg/relevance.hpp"

namespace relseg {

/// One nonzero cell of the transport plan: `mass` moved from source
/// point `source` to target slot `target` (both 0-based).
struct CouplingEntry {
  std::size_t source;
  std::size_t target;
  double mass;
};

/// Sparse transport plan between the n weighted points and nPrime
/// equal-mass targets. Entries are sorted by source index and form a
/// monotone staircase in the target index; at most n + nPrime + 1 of
/// them are nonzero.
struct Coupling {
  std::size_t pointCount = 0;    // n
  std::size_t segmentCount = 0;  // n'
  std::vector<CouplingEntry> entries;
};

/// Segmentation points derived from a coupling, one per target slot,
/// each contained in its guaranteed interval (before integerization).
struct Segmentation {
  std::vector<double> points;
  std::vector<std::pair<double, double>> intervals;
  std::vector<std::size_t> sourceIndices;  ///< k_j for j = 1..n' (0-based indices)
  bool integerized = false;
};

/// The minimum-cost coupling between the weight distribution and nPrime
/// uniform targets. Sorted 1-D supports make the monotone plan optimal;
/// it is built in one pass over compensated prefix sums, dropping
/// zero-mass cells. Throws std::invalid_argument unless
/// 1 <= nPrime <= n.
Coupling optimal_coupling(const RelevanceProfile& profile, std::size_t nPrime);

/// Segmentation points from the coupling: each point is the mass-weighted
/// mean timestamp of its target's column (clamped into the column's
/// support so the interval guarantee survives rounding). With
/// `integerize`, points are additionally rounded up with ceil().
Segmentation segmentation_points(const Coupling& coupling, std::span<const double> timestamps,
                                 bool integerize = false);

/// The guaranteed intervals [x_{k_{j-1}}, x_{k_j}] computed directly from
/// cumulative weights, without building the coupling.
std::vector<std::pair<double, double>> guaranteed_intervals(const RelevanceProfile& profile,
                                                            std::span<const double> timestamps,
                                                            std::size_t nPrime);

/// Cut indices k_0..k_nPrime with k_0 = 0 and
/// k_u = min{ l : W_l >= u/nPrime } on the compensated prefix W.
std::vector<std::size_t> cut_indices(std::span<const double> weights, std::size_t nPrime);

}  // namespace relseg
