#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "relseg/metrics.hpp"
#include "relseg/relevance.hpp"
#include "relseg/timeseries.hpp"
#include "relseg/transport.hpp"

namespace relseg {

/// Parse failure with the 1-based line number where it happened.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Fixed output float format: 12 significant digits.
std::string format_double(double v);

/// Headerless two-column CSV `timestamp,value`; blank lines and lines
/// starting with `#` are skipped. Timestamps must be strictly
/// increasing.
TimeSeries read_series_csv(std::istream& in, const std::string& sourceName = "<input>");
TimeSeries read_series_csv(const std::filesystem::path& path);

/// `start,end,kind,name` per line, kind in {event, nonevent}.
std::vector<IntervalLabel> read_labels_csv(std::istream& in,
                                           const std::string& sourceName = "<labels>");
std::vector<IntervalLabel> read_labels_csv(const std::filesystem::path& path);

/// One real per line; the count must be odd.
QueryShape read_query_csv(std::istream& in, const std::string& sourceName = "<query>");
QueryShape read_query_csv(const std::filesystem::path& path);

/// Rows `j,point,intervalLower,intervalUpper` (j is 1-based).
void write_segmentation_csv(std::ostream& out, const Segmentation& seg);

/// Rows `timestamp,original,reconstructed`.
void write_reconstruction_csv(std::ostream& out, const TimeSeries& series,
                              std::span<const double> reconstructed);

}  // namespace relseg
