#include "relseg/relevance.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

namespace relseg {

namespace {

double ipow(double base, int exp) {
  double out = 1.0;
  for (int k = 0; k < exp; ++k) out *= base;
  return out;
}

/// Distance between a window slice and the matching slice of the query.
/// `qOffset` is the index of the query element aligned with window[0];
/// both are already truncated to the overlapping range.
double window_distance(std::span<const double> window, const QueryShape& q, std::size_t qOffset,
                       bool normalizeWindow) {
  double mean = 0.0;
  double stddev = 1.0;
  if (normalizeWindow) {
    double s = 0.0;
    for (double v : window) s += v;
    mean = s / static_cast<double>(window.size());
    if (window.size() > 1) {
      double ss = 0.0;
      for (double v : window) {
        const double d = v - mean;
        ss += d * d;
      }
      const double var = ss / static_cast<double>(window.size() - 1);
      stddev = var > 0.0 ? std::sqrt(var) : 1.0;
    }
  }
  double d2 = 0.0;
  for (std::size_t k = 0; k < window.size(); ++k) {
    double qv = q.values()[qOffset + k];
    if (normalizeWindow) qv = mean + stddev * qv;
    const double d = qv - window[k];
    d2 += d * d;
  }
  return std::sqrt(d2);
}

/// Query score centered at `center` over y[0..n), boundary windows
/// truncated to the valid range.
double query_score(std::span<const double> y, const RelevanceSpec& spec, std::size_t center) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
  const std::ptrdiff_t gamma = static_cast<std::ptrdiff_t>(spec.query.halfWidth());
  const std::ptrdiff_t c = static_cast<std::ptrdiff_t>(center);
  const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(c - gamma, 0);
  const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(c + gamma, n - 1);
  const double dist = window_distance(y.subspan(static_cast<std::size_t>(lo),
                                                static_cast<std::size_t>(hi - lo + 1)),
                                      spec.query, static_cast<std::size_t>(lo - (c - gamma)),
                                      spec.normalizeWindow);
  const double d = std::max(dist, kMinQueryDistance);
  return std::pow(d, -2.0 * static_cast<double>(spec.exponent));
}

}  // namespace

QueryShape::QueryShape(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty() || values_.size() % 2 == 0) {
    throw std::invalid_argument("query shape: length must be odd and at least 1");
  }
}

void RelevanceSpec::validate() const {
  if (exponent < 1) {
    throw std::invalid_argument("relevance spec: exponent p must be >= 1");
  }
  if (kind == RelevanceKind::ThresholdDifference && !(threshold > 0.0)) {
    throw std::invalid_argument("relevance spec: threshold beta must be > 0");
  }
  if (kind == RelevanceKind::QueryShape && query.empty()) {
    throw std::invalid_argument("relevance spec: query shape missing");
  }
}

std::vector<double> score(const TimeSeries& series, const RelevanceSpec& spec) {
  series.validate();
  spec.validate();
  const std::size_t n = series.size();
  const std::vector<double>& y = series.values;
  std::vector<double> phi(n);

  switch (spec.kind) {
    case RelevanceKind::AbsMagnitude:
      for (std::size_t i = 0; i < n; ++i) phi[i] = ipow(std::abs(y[i]), spec.exponent);
      break;
    case RelevanceKind::AbsDifference:
      for (std::size_t i = 0; i < n; ++i) {
        const double prev = i == 0 ? 0.0 : y[i - 1];
        phi[i] = ipow(std::abs(y[i] - prev), spec.exponent);
      }
      break;
    case RelevanceKind::ThresholdDifference:
      for (std::size_t i = 0; i < n; ++i) {
        const double prev = i == 0 ? 0.0 : y[i - 1];
        phi[i] = std::abs(y[i] - prev) > spec.threshold ? 1.0 : 0.0;
      }
      break;
    case RelevanceKind::QueryShape:
      if (spec.query.length() > n) {
        throw std::invalid_argument("relevance: query shape longer than the series");
      }
      for (std::size_t i = 0; i < n; ++i) phi[i] = query_score(y, spec, i);
      break;
  }
  return phi;
}

RelevanceProfile normalize_weights(std::vector<double> scores) {
  double total = 0.0;
  for (double s : scores) {
    if (s < 0.0) throw std::invalid_argument("normalize_weights: negative score");
    total += s;
  }
  RelevanceProfile profile;
  profile.weights.resize(scores.size());
  if (total > 0.0) {
    for (std::size_t i = 0; i < scores.size(); ++i) profile.weights[i] = scores[i] / total;
  } else {
    const double u = 1.0 / static_cast<double>(scores.size());
    std::fill(profile.weights.begin(), profile.weights.end(), u);
    profile.uniformFallback = true;
  }
  profile.scores = std::move(scores);
  return profile;
}

StreamingScorer::StreamingScorer(RelevanceSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
}

double StreamingScorer::score_at(std::size_t center) const {
  return query_score(ybuf_, spec_, center);
}

std::vector<StreamingScorer::Scored> StreamingScorer::push(double timestamp, double value) {
  std::vector<Scored> out;
  if (spec_.kind != RelevanceKind::QueryShape) {
    double phi = 0.0;
    switch (spec_.kind) {
      case RelevanceKind::AbsMagnitude:
        phi = ipow(std::abs(value), spec_.exponent);
        break;
      case RelevanceKind::AbsDifference:
        phi = ipow(std::abs(value - lastValue_), spec_.exponent);
        break;
      case RelevanceKind::ThresholdDifference:
        phi = std::abs(value - lastValue_) > spec_.threshold ? 1.0 : 0.0;
        break;
      default:
        break;
    }
    lastValue_ = value;
    out.push_back({timestamp, value, phi});
    return out;
  }

  xbuf_.push_back(timestamp);
  ybuf_.push_back(value);
  const std::size_t gamma = spec_.query.halfWidth();
  while (emitted_ + gamma < ybuf_.size()) {
    out.push_back({xbuf_[emitted_], ybuf_[emitted_], score_at(emitted_)});
    ++emitted_;
  }
  // The scorer never looks more than gamma points behind the next center;
  // trim in blocks so stream memory stays O(gamma).
  if (emitted_ > 4 * gamma + 4) {
    const std::size_t drop = emitted_ - gamma;
    xbuf_.erase(xbuf_.begin(), xbuf_.begin() + static_cast<std::ptrdiff_t>(drop));
    ybuf_.erase(ybuf_.begin(), ybuf_.begin() + static_cast<std::ptrdiff_t>(drop));
    emitted_ -= drop;
  }
  return out;
}

std::vector<StreamingScorer::Scored> StreamingScorer::finish() {
  std::vector<Scored> out;
  while (emitted_ < ybuf_.size()) {
    out.push_back({xbuf_[emitted_], ybuf_[emitted_], score_at(emitted_)});
    ++emitted_;
  }
  return out;
}

}  // namespace relseg
