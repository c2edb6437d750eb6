#include "relseg/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace relseg {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool skippable(const std::string& line) {
  const std::string t = trim(line);
  return t.empty() || t[0] == '#';
}

double parse_real(const std::string& field, const std::string& source, std::size_t line,
                  const char* what) {
  const std::string t = trim(field);
  if (t.empty()) throw ParseError(source, line, std::string("missing ") + what);
  std::size_t consumed = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &consumed);
  } catch (const std::exception&) {
    throw ParseError(source, line, std::string("malformed ") + what + " '" + t + "'");
  }
  if (consumed != t.size()) {
    throw ParseError(source, line, std::string("malformed ") + what + " '" + t + "'");
  }
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

TimeSeries read_series_csv(std::istream& in, const std::string& sourceName) {
  TimeSeries series;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (skippable(line)) continue;
    const std::vector<std::string> fields = split_csv(line);
    // extra columns are ignored so reconstruction CSVs re-ingest as series
    if (fields.size() < 2) {
      throw ParseError(sourceName, lineNo, "expected 'timestamp,value'");
    }
    const double x = parse_real(fields[0], sourceName, lineNo, "timestamp");
    const double y = parse_real(fields[1], sourceName, lineNo, "value");
    if (!series.timestamps.empty() && !(x > series.timestamps.back())) {
      throw ParseError(sourceName, lineNo, "timestamps not strictly increasing");
    }
    series.timestamps.push_back(x);
    series.values.push_back(y);
  }
  if (series.empty()) throw ParseError(sourceName, lineNo, "no data rows");
  return series;
}

TimeSeries read_series_csv(const std::filesystem::path& path) {
  std::ifstream in = open_or_throw(path);
  return read_series_csv(in, path.string());
}

std::vector<IntervalLabel> read_labels_csv(std::istream& in, const std::string& sourceName) {
  std::vector<IntervalLabel> labels;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (skippable(line)) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != 4) {
      throw ParseError(sourceName, lineNo, "expected 'start,end,kind,name'");
    }
    IntervalLabel label;
    label.start = parse_real(fields[0], sourceName, lineNo, "start");
    label.end = parse_real(fields[1], sourceName, lineNo, "end");
    std::string kind = trim(fields[2]);
    std::transform(kind.begin(), kind.end(), kind.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (kind == "event") {
      label.kind = IntervalKind::Event;
    } else if (kind == "nonevent" || kind == "non-event") {
      label.kind = IntervalKind::NonEvent;
    } else {
      throw ParseError(sourceName, lineNo, "kind must be 'event' or 'nonevent'");
    }
    label.name = trim(fields[3]);
    if (!(label.start < label.end)) {
      throw ParseError(sourceName, lineNo, "interval start must be < end");
    }
    labels.push_back(std::move(label));
  }
  validate_labels(labels);
  return labels;
}

std::vector<IntervalLabel> read_labels_csv(const std::filesystem::path& path) {
  std::ifstream in = open_or_throw(path);
  return read_labels_csv(in, path.string());
}

QueryShape read_query_csv(std::istream& in, const std::string& sourceName) {
  std::vector<double> values;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (skippable(line)) continue;
    values.push_back(parse_real(line, sourceName, lineNo, "query value"));
  }
  if (values.empty() || values.size() % 2 == 0) {
    throw ParseError(sourceName, lineNo, "query shape must have an odd number of values");
  }
  return QueryShape(std::move(values));
}

QueryShape read_query_csv(const std::filesystem::path& path) {
  std::ifstream in = open_or_throw(path);
  return read_query_csv(in, path.string());
}

void write_segmentation_csv(std::ostream& out, const Segmentation& seg) {
  for (std::size_t j = 0; j < seg.points.size(); ++j) {
    out << (j + 1) << ',' << format_double(seg.points[j]) << ','
        << format_double(seg.intervals[j].first) << ','
        << format_double(seg.intervals[j].second) << '\n';
  }
}

void write_reconstruction_csv(std::ostream& out, const TimeSeries& series,
                              std::span<const double> reconstructed) {
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << format_double(series.timestamps[i]) << ',' << format_double(series.values[i]) << ','
        << format_double(reconstructed[i]) << '\n';
  }
}

}  // namespace relseg
