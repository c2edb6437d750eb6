#include "relseg/synopsis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "relseg/numeric.hpp"

namespace relseg {

namespace {

constexpr int kSnapshotVersion = 1;
constexpr const char* kSnapshotFormat = "relseg-synopsis";

}  // namespace

Synopsis::Synopsis(std::span<const double> timestamps, std::span<const double> scores,
                   std::size_t initialSegments, double alpha, double growthFactor) {
  if (timestamps.size() != scores.size()) {
    throw std::invalid_argument("synopsis: timestamp/score length mismatch");
  }
  if (timestamps.empty()) {
    throw std::invalid_argument("synopsis: empty prefix");
  }
  if (initialSegments < 1 || initialSegments > timestamps.size()) {
    throw std::invalid_argument("synopsis: initial segment count must be in [1, n]");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("synopsis: alpha must be in [0, 1]");
  }
  if (!(growthFactor >= 1.0)) {
    throw std::invalid_argument("synopsis: growth factor must be >= 1");
  }

  triples_.reserve(timestamps.size());
  CompensatedSum total;
  for (std::size_t i = 0; i < timestamps.size(); ++i) {
    if (i > 0 && !(timestamps[i - 1] < timestamps[i])) {
      throw std::invalid_argument("synopsis: timestamps not strictly increasing");
    }
    if (scores[i] < 0.0) throw std::invalid_argument("synopsis: negative score");
    triples_.push_back({timestamps[i], scores[i], scores[i] * timestamps[i], false});
    total.add(scores[i]);
  }
  pointsSeen_ = timestamps.size();
  segments_ = initialSegments;
  alpha_ = alpha;
  growthFactor_ = growthFactor;
  massAtGrowth_ = total.value();
  massSinceGrowth_ = 0.0;
}

double Synopsis::totalMass() const {
  CompensatedSum acc;
  for (const SynopsisTriple& t : triples_) acc.add(t.mass);
  return acc.value();
}

void Synopsis::observe(double timestamp, double score) {
  if (!triples_.empty() && !(timestamp > triples_.back().timestamp)) {
    throw std::invalid_argument("synopsis: non-increasing timestamp");
  }
  if (score < 0.0) throw std::invalid_argument("synopsis: negative score");

  massSinceGrowth_ += score;
  if (massSinceGrowth_ >=
      growthFactor_ * massAtGrowth_ / static_cast<double>(segments_)) {
    segments_ += 1;
    massAtGrowth_ += massSinceGrowth_;
    massSinceGrowth_ = 0.0;
    prune();
  }
  triples_.push_back({timestamp, score, score * timestamp, false});
  pointsSeen_ += 1;
}

void Synopsis::prune() {
  const std::size_t L = triples_.size();
  if (L <= 3) return;

  // Mass is conserved by merging, so the threshold is fixed up front.
  const double threshold = epsilon() * totalMass();

  // Backward scan collecting maximal merge ranges [i, z]; first and last
  // triples are exempt.
  struct Range {
    std::size_t lo, hi;
  };
  std::vector<Range> ranges;
  std::size_t z = L - 2;
  while (z >= 2) {
    if (triples_[z].mass > threshold) {
      --z;
      continue;
    }
    double run = 0.0;
    std::size_t i = z;
    while (i >= 1 && run + triples_[i].mass <= threshold) {
      run += triples_[i].mass;
      --i;
    }
    ++i;
    if (i < z) ranges.push_back({i, z});
    if (i < 2) break;
    z = i - 1;
  }
  if (ranges.empty()) return;

  // Ranges were found back-to-front; rebuild in one forward pass.
  std::reverse(ranges.begin(), ranges.end());
  std::vector<SynopsisTriple> out;
  out.reserve(L);
  std::size_t next = 0;
  for (std::size_t idx = 0; idx < L; ++idx) {
    if (next < ranges.size() && idx == ranges[next].lo) {
      double mass = 0.0;
      double massTime = 0.0;
      for (std::size_t k = ranges[next].lo; k <= ranges[next].hi; ++k) {
        mass += triples_[k].mass;
        massTime += triples_[k].massTime;
      }
      out.push_back({triples_[ranges[next].hi].timestamp, mass, massTime, true});
      idx = ranges[next].hi;
      ++next;
    } else {
      out.push_back(triples_[idx]);
    }
  }
  triples_ = std::move(out);
}

SegmentationEstimate Synopsis::query() const {
  if (triples_.empty()) throw std::logic_error("synopsis: query on empty synopsis");

  const std::size_t L = triples_.size();
  const std::size_t nPrime = segments_;
  const double lowest = triples_.front().timestamp;
  const double highest = triples_.back().timestamp;

  SegmentationEstimate est;
  est.segmentCount = nPrime;
  est.points.resize(nPrime);
  est.intervalEnds.resize(nPrime);

  std::vector<double> masses(L);
  for (std::size_t i = 0; i < L; ++i) masses[i] = triples_[i].mass;
  const std::vector<double> cumMass = compensated_prefix(masses);
  const double total = cumMass.back();

  if (!(total > 0.0)) {
    // No relevance mass at all; fall back to evenly spaced points.
    if (nPrime == 1) {
      est.points[0] = 0.5 * (lowest + highest);
    } else {
      const double step = (highest - lowest) / static_cast<double>(nPrime - 1);
      for (std::size_t j = 0; j < nPrime; ++j) {
        est.points[j] = lowest + static_cast<double>(j) * step;
      }
    }
    for (std::size_t j = 0; j < nPrime; ++j) est.intervalEnds[j] = {lowest, highest};
    return est;
  }

  std::vector<double> weighted(L);
  for (std::size_t i = 0; i < L; ++i) weighted[i] = triples_[i].massTime;
  const std::vector<double> cumWeighted = compensated_prefix(weighted);

  const double columnMass = total / static_cast<double>(nPrime);
  std::size_t lower = 0;
  for (std::size_t j = 1; j <= nPrime; ++j) {
    const double targetLo =
        static_cast<double>(j - 1) * total / static_cast<double>(nPrime);
    const double targetHi = static_cast<double>(j) * total / static_cast<double>(nPrime);
    while (lower + 1 < L && cumMass[lower] < targetLo) ++lower;
    std::size_t upper = lower;
    while (upper + 1 < L && cumMass[upper] < targetHi) ++upper;

    // Interior triples (lower, upper] contribute whole; the boundary
    // triples contribute the partial adjustments e1/e2.
    const double interior = cumWeighted[upper] - cumWeighted[lower];
    const double e1 = triples_[lower].timestamp * (cumMass[lower] - targetLo);
    const double e2 = triples_[upper].timestamp * (cumMass[upper] - targetHi);
    est.points[j - 1] = (interior + e1 - e2) / columnMass;
    est.intervalEnds[j - 1] = {triples_[lower].timestamp, triples_[upper].timestamp};
    lower = upper;
  }

  // Rounding at near-empty columns can nudge points out of range or out
  // of order; restore both before returning.
  for (double& p : est.points) p = std::clamp(p, lowest, highest);
  std::sort(est.points.begin(), est.points.end());
  return est;
}

nlohmann::json Synopsis::to_json() const {
  nlohmann::json j;
  j["format"] = kSnapshotFormat;
  j["version"] = kSnapshotVersion;
  j["alpha"] = alpha_;
  j["growthFactor"] = growthFactor_;
  j["segmentCount"] = segments_;
  j["pointsSeen"] = pointsSeen_;
  j["massAtLastGrowth"] = massAtGrowth_;
  j["massSinceGrowth"] = massSinceGrowth_;
  nlohmann::json triples = nlohmann::json::array();
  for (const SynopsisTriple& t : triples_) {
    triples.push_back({t.timestamp, t.mass, t.massTime, t.merged});
  }
  j["triples"] = std::move(triples);
  return j;
}

Synopsis Synopsis::from_json(const nlohmann::json& j) {
  if (j.value("format", "") != kSnapshotFormat) {
    throw std::invalid_argument("synopsis snapshot: unknown format");
  }
  if (j.value("version", -1) != kSnapshotVersion) {
    throw std::invalid_argument("synopsis snapshot: unsupported version");
  }
  Synopsis s;
  s.alpha_ = j.at("alpha").get<double>();
  s.growthFactor_ = j.at("growthFactor").get<double>();
  s.segments_ = j.at("segmentCount").get<std::size_t>();
  s.pointsSeen_ = j.at("pointsSeen").get<std::size_t>();
  s.massAtGrowth_ = j.at("massAtLastGrowth").get<double>();
  s.massSinceGrowth_ = j.at("massSinceGrowth").get<double>();
  for (const nlohmann::json& t : j.at("triples")) {
    s.triples_.push_back({t.at(0).get<double>(), t.at(1).get<double>(), t.at(2).get<double>(),
                          t.at(3).get<bool>()});
  }
  if (s.triples_.empty()) throw std::invalid_argument("synopsis snapshot: no triples");
  return s;
}

}  // namespace relseg
