// relseg: relevance-preserving time-series compression.
//
// Subcommands:
//   compress  batch segmentation + reconstruction of a CSV series
//   stream    streaming synopsis over a file or stdin
//   bench     simulated sin^3 stream comparing synopsis vs batch
//   eval      batch run evaluated against labeled intervals

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "relseg/io.hpp"
#include "relseg/metrics.hpp"
#include "relseg/reconstruct.hpp"
#include "relseg/relevance.hpp"
#include "relseg/synopsis.hpp"
#include "relseg/timeseries.hpp"
#include "relseg/transport.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace relseg;

namespace {

using Clock = std::chrono::steady_clock;

double micros_since(Clock::time_point start) {
  return std::chrono::duration<double, std::micro>(Clock::now() - start).count();
}

struct RelevanceOptions {
  std::string kind = "abs";
  int p = 1;
  double beta = 1.0;
  std::string queryFile;
  bool normalizeWindow = false;

  RelevanceSpec build() const {
    RelevanceSpec spec;
    if (kind == "abs") {
      spec.kind = RelevanceKind::AbsMagnitude;
    } else if (kind == "diff") {
      spec.kind = RelevanceKind::AbsDifference;
    } else if (kind == "thresh") {
      spec.kind = RelevanceKind::ThresholdDifference;
    } else if (kind == "query") {
      spec.kind = RelevanceKind::QueryShape;
      if (queryFile.empty()) {
        throw std::runtime_error("--relevance query requires --query-file");
      }
      spec.query = read_query_csv(fs::path(queryFile));
    } else {
      throw std::runtime_error("unknown relevance kind '" + kind + "'");
    }
    spec.exponent = p;
    spec.threshold = beta;
    spec.normalizeWindow = normalizeWindow;
    return spec;
  }
};

void add_relevance_flags(CLI::App* cmd, RelevanceOptions& opts) {
  cmd->add_option("--relevance", opts.kind, "Relevance score: abs|diff|thresh|query")
      ->check(CLI::IsMember({"abs", "diff", "thresh", "query"}));
  cmd->add_option("--p", opts.p, "Relevance exponent p >= 1");
  cmd->add_option("--beta", opts.beta, "Threshold for --relevance thresh");
  cmd->add_option("--query-file", opts.queryFile, "One-column CSV with an odd-length query shape");
  cmd->add_flag("--normalize-window", opts.normalizeWindow,
                "Rescale the query by each window's mean/std");
}

std::optional<ReconstructionKind> parse_reconstruction(const std::string& name) {
  if (name == "constant") return ReconstructionKind::PiecewiseConstant;
  if (name == "linear") return ReconstructionKind::PiecewiseLinear;
  if (name == "regression") return ReconstructionKind::PiecewiseRegression;
  if (name == "none") return std::nullopt;
  throw std::runtime_error("unknown reconstruction kind '" + name + "'");
}

std::ofstream open_out(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error("cannot write '" + (dir / name).string() + "'");
  return out;
}

void write_report(const fs::path& dir, const json& report) {
  std::ofstream out = open_out(dir, "report.json");
  out << report.dump(2) << '\n';
}

std::size_t resolve_n_points(std::size_t n, std::optional<std::size_t> nPoints,
                             std::optional<double> ratio) {
  if (nPoints.has_value() == ratio.has_value()) {
    throw std::runtime_error("exactly one of --n-points / --ratio must be given");
  }
  if (nPoints) {
    if (*nPoints < 1 || *nPoints > n) {
      throw std::runtime_error("--n-points must be in [1, n]");
    }
    return *nPoints;
  }
  if (!(*ratio >= 1.0)) throw std::runtime_error("--ratio must be >= 1");
  const auto np = static_cast<std::size_t>(static_cast<double>(n) / *ratio);
  return std::max<std::size_t>(np, 1);
}

/// Batch pipeline pieces shared by compress/eval and the stream/bench
/// comparison paths.
struct BatchResult {
  RelevanceProfile profile;
  Segmentation raw;
  Segmentation snapped;
};

BatchResult run_batch(const TimeSeries& series, const RelevanceSpec& spec, std::size_t nPrime,
                      bool integerize) {
  BatchResult out;
  out.profile = normalize_weights(score(series, spec));
  const Coupling coupling = optimal_coupling(out.profile, nPrime);
  out.raw = segmentation_points(coupling, series.timestamps, integerize);
  out.snapped = snap_to_samples(series, out.raw);
  return out;
}

json relevance_bound_json(const TimeSeries& series, const RelevanceSpec& spec,
                          const RelevanceProfile& profile, const Reconstruction& recon) {
  TimeSeries reconSeries{series.timestamps, recon.sampled};
  const RelevanceProfile tilde = normalize_weights(score(reconSeries, spec));
  const RelevanceErrorReport err = relevance_error(profile, tilde);
  double total = 0.0;
  for (double s : profile.scores) total += s;
  const double bound = total / static_cast<double>(recon.segmentation.points.size());
  return {{"maxAbsScoreError", err.maxAbs},
          {"bound", bound},
          {"pass", err.maxAbs < bound}};
}

int cmd_compress(const std::string& input, const fs::path& outDir, const RelevanceOptions& relOpts,
                 std::optional<std::size_t> nPoints, std::optional<double> ratio,
                 const std::string& reconName, bool integerize, std::optional<std::uint64_t> seed,
                 const std::string& labelsFile) {
  const TimeSeries series = read_series_csv(fs::path(input));
  const RelevanceSpec spec = relOpts.build();
  const std::size_t nPrime = resolve_n_points(series.size(), nPoints, ratio);
  const BatchResult batch = run_batch(series, spec, nPrime, integerize);

  {
    std::ofstream out = open_out(outDir, "segmentation.csv");
    write_segmentation_csv(out, batch.raw);
  }

  json report;
  report["input"] = input;
  report["n"] = series.size();
  report["nPrime"] = nPrime;
  report["compressionRatio"] = compression_ratio(series.size(), nPrime);
  report["integerize"] = integerize;
  report["uniformFallback"] = batch.profile.uniformFallback;
  if (seed) report["seed"] = *seed;

  const std::optional<ReconstructionKind> kind = parse_reconstruction(reconName);
  std::optional<Reconstruction> recon;
  if (kind) {
    recon = reconstruct(series, batch.snapped, *kind);
    std::ofstream out = open_out(outDir, "reconstruction.csv");
    write_reconstruction_csv(out, series, recon->sampled);

    IntervalLabel whole{series.timestamps.front(), series.timestamps.back(), IntervalKind::Event,
                        "global"};
    const RelativeSquaredError rse = relative_squared_error(series, recon->sampled, whole);
    report["relativeSquaredError"] = rse.undefined ? json(nullptr) : json(rse.value);
    report["mse"] = rse.mse;
    report["storedPointCount"] = recon->storedPointCount;
    report["relevanceBound"] = relevance_bound_json(series, spec, batch.profile, *recon);
  }

  if (!labelsFile.empty()) {
    const std::vector<IntervalLabel> labels = read_labels_csv(fs::path(labelsFile));
    std::vector<double> stored;
    for (double p : batch.snapped.points) stored.push_back(p);
    const EvalReport ev =
        bound_report(series, recon ? std::span<const double>(recon->sampled)
                                   : std::span<const double>(),
                     stored, labels);
    report["intervals"] = ev.to_json()["intervals"];
  }

  write_report(outDir, report);
  std::cout << report.dump(2) << '\n';
  return 0;
}

struct StreamRecord {
  double x;
  double y;
  double phi;
};

int cmd_stream(const std::string& input, const fs::path& outDir, const RelevanceOptions& relOpts,
               double alpha, std::size_t initN, std::size_t initNPrime,
               std::size_t checkpointEvery, double growthFactor, const std::string& reconName,
               bool emitBatch, std::optional<std::uint64_t> seed) {
  const RelevanceSpec spec = relOpts.build();

  std::ifstream fileIn;
  std::istream* in = &std::cin;
  if (input != "-") {
    fileIn.open(input);
    if (!fileIn) throw std::runtime_error("cannot open '" + input + "'");
    in = &fileIn;
  }

  StreamingScorer scorer(spec);
  std::vector<StreamRecord> history;  // retained for the final artifacts
  std::optional<Synopsis> synopsis;

  const auto handle_checkpoint = [&](json& line) {
    const SegmentationEstimate est = synopsis->query();
    line["n"] = synopsis->pointsSeen();
    line["nPrime"] = synopsis->segmentCount();
    line["L"] = synopsis->tripleCount();
    json pts = json::array();
    for (double p : est.points) pts.push_back(p);
    line["points"] = std::move(pts);
    if (emitBatch) {
      std::vector<double> scores;
      std::vector<double> xs;
      scores.reserve(history.size());
      for (const StreamRecord& r : history) {
        scores.push_back(r.phi);
        xs.push_back(r.x);
      }
      const RelevanceProfile profile = normalize_weights(std::move(scores));
      const Coupling coupling = optimal_coupling(profile, est.segmentCount);
      const Segmentation seg = segmentation_points(coupling, xs, false);
      const std::vector<std::size_t> cuts = cut_indices(profile.weights, est.segmentCount);
      json bpts = json::array();
      double worst = 0.0;
      for (std::size_t j = 0; j < seg.points.size(); ++j) {
        bpts.push_back(seg.points[j]);
        const double nextEnd =
            j + 1 < seg.points.size() ? xs[cuts[j + 2]] : xs.back();
        const double norm = std::abs(est.points[j] - seg.points[j]) / nextEnd;
        worst = std::max(worst, norm);
      }
      line["batchPoints"] = std::move(bpts);
      line["maxNormalizedError"] = worst;
      line["errorBound"] = 4.0 * alpha;
    }
  };

  const auto ingest = [&](const StreamingScorer::Scored& rec) {
    history.push_back({rec.timestamp, rec.value, rec.score});
    if (!synopsis) {
      if (history.size() == initN) {
        std::vector<double> xs, phis;
        xs.reserve(initN);
        phis.reserve(initN);
        for (const StreamRecord& r : history) {
          xs.push_back(r.x);
          phis.push_back(r.phi);
        }
        synopsis.emplace(xs, phis, initNPrime, alpha, growthFactor);
      }
    } else {
      synopsis->observe(rec.timestamp, rec.score);
    }
    if (synopsis && checkpointEvery > 0 && history.size() % checkpointEvery == 0) {
      json line;
      handle_checkpoint(line);
      std::cout << line.dump() << '\n';
    }
  };

  std::string lineBuf;
  std::size_t lineNo = 0;
  double lastX = 0.0;
  bool haveX = false;
  while (std::getline(*in, lineBuf)) {
    ++lineNo;
    std::string trimmed = lineBuf;
    if (trimmed.empty() || trimmed[0] == '#') continue;
    const std::size_t comma = trimmed.find(',');
    if (comma == std::string::npos) {
      throw ParseError(input, lineNo, "expected 'timestamp,value'");
    }
    double x, y;
    try {
      x = std::stod(trimmed.substr(0, comma));
      y = std::stod(trimmed.substr(comma + 1));
    } catch (const std::exception&) {
      throw ParseError(input, lineNo, "malformed record");
    }
    if (haveX && !(x > lastX)) {
      throw ParseError(input, lineNo, "timestamps not strictly increasing");
    }
    lastX = x;
    haveX = true;
    for (const auto& rec : scorer.push(x, y)) ingest(rec);
  }
  for (const auto& rec : scorer.finish()) ingest(rec);

  if (history.empty()) throw std::runtime_error("stream: no records");
  if (!synopsis) {
    throw std::runtime_error("stream: fewer records than --init-n; nothing to summarize");
  }

  const SegmentationEstimate est = synopsis->query();
  Segmentation finalSeg;
  finalSeg.points = est.points;
  finalSeg.intervals = est.intervalEnds;
  finalSeg.sourceIndices.assign(est.points.size(), 0);
  {
    std::ofstream out = open_out(outDir, "segmentation.csv");
    write_segmentation_csv(out, finalSeg);
  }

  TimeSeries series;
  series.timestamps.reserve(history.size());
  series.values.reserve(history.size());
  for (const StreamRecord& r : history) {
    series.timestamps.push_back(r.x);
    series.values.push_back(r.y);
  }

  json report;
  report["input"] = input;
  report["n"] = synopsis->pointsSeen();
  report["nPrime"] = synopsis->segmentCount();
  report["synopsisSize"] = synopsis->tripleCount();
  report["alpha"] = alpha;
  report["growthFactor"] = growthFactor;
  report["compressionRatio"] =
      compression_ratio(synopsis->pointsSeen(), synopsis->segmentCount());
  if (seed) report["seed"] = *seed;

  const std::optional<ReconstructionKind> kind = parse_reconstruction(reconName);
  if (kind) {
    const Segmentation snapped = snap_to_samples(series, finalSeg);
    const Reconstruction recon = reconstruct(series, snapped, *kind);
    std::ofstream out = open_out(outDir, "reconstruction.csv");
    write_reconstruction_csv(out, series, recon.sampled);
    IntervalLabel whole{series.timestamps.front(), series.timestamps.back(), IntervalKind::Event,
                        "global"};
    const RelativeSquaredError rse = relative_squared_error(series, recon.sampled, whole);
    report["relativeSquaredError"] = rse.undefined ? json(nullptr) : json(rse.value);
    report["mse"] = rse.mse;
  }

  if (emitBatch) {
    json line;
    handle_checkpoint(line);
    report["finalMaxNormalizedError"] = line["maxNormalizedError"];
    report["errorBound"] = 4.0 * alpha;
  }

  {
    std::ofstream out = open_out(outDir, "synopsis.json");
    out << synopsis->to_json().dump() << '\n';
  }
  write_report(outDir, report);
  return 0;
}

double bench_signal(std::size_t i) {
  const double s = std::sin(static_cast<double>(i) * M_PI * 200.0 / 5.0e5);
  return s * s * s;
}

int cmd_bench(const fs::path& outDir, std::size_t points, std::size_t initN,
              std::size_t initNPrime, double alpha, std::size_t checkpointEvery,
              double growthFactor, int p, std::optional<std::uint64_t> seed) {
  if (initN >= points) throw std::runtime_error("bench: --points must exceed --init-n");

  RelevanceSpec spec;
  spec.kind = RelevanceKind::AbsMagnitude;
  spec.exponent = p;

  std::vector<double> xs(points);
  std::vector<double> ys(points);
  std::vector<double> phis(points);
  for (std::size_t i = 0; i < points; ++i) {
    xs[i] = static_cast<double>(i + 1);
    ys[i] = bench_signal(i + 1);
    double phi = std::abs(ys[i]);
    for (int k = 1; k < p; ++k) phi *= std::abs(ys[i]);
    phis[i] = phi;
  }
  TimeSeries series{xs, ys};

  Synopsis synopsis(std::span<const double>(xs).first(initN),
                    std::span<const double>(phis).first(initN), initNPrime, alpha, growthFactor);

  std::ofstream bench = open_out(outDir, "bench.csv");
  bench << "# n,nPrime,L,maxAbsError,meanNormalizedError,maxNormalizedError,"
           "synopsisMicros,batchMicros,speedup,mseSynopsis,mseBatch,errorRatio\n";

  double observeMicros = 0.0;
  double worstNormalized = 0.0;
  double worstRatioLow = 1.0;
  double worstRatioHigh = 1.0;
  bool boundViolated = false;

  for (std::size_t i = initN; i < points; ++i) {
    const auto t0 = Clock::now();
    synopsis.observe(xs[i], phis[i]);
    observeMicros += micros_since(t0);

    const std::size_t n = i + 1;
    if (n % checkpointEvery != 0 && n != points) continue;

    const auto tq = Clock::now();
    const SegmentationEstimate est = synopsis.query();
    const double queryMicros = micros_since(tq);
    const double synopsisMicros = observeMicros + queryMicros;
    observeMicros = 0.0;

    // Batch recomputation on the full history at the synopsis's n'.
    const auto tb = Clock::now();
    std::vector<double> scoresCopy(phis.begin(), phis.begin() + static_cast<std::ptrdiff_t>(n));
    const RelevanceProfile profile = normalize_weights(std::move(scoresCopy));
    const Coupling coupling = optimal_coupling(profile, est.segmentCount);
    const Segmentation seg =
        segmentation_points(coupling, std::span(xs).first(n), false);
    const std::vector<std::size_t> cuts = cut_indices(profile.weights, est.segmentCount);
    const double batchMicros = micros_since(tb);

    double maxAbs = 0.0;
    double meanNorm = 0.0;
    double maxNorm = 0.0;
    for (std::size_t j = 0; j < est.points.size(); ++j) {
      const double err = std::abs(est.points[j] - seg.points[j]);
      const double nextEnd = j + 1 < est.points.size() ? xs[cuts[j + 2]] : xs[n - 1];
      const double rel = err / nextEnd;
      maxAbs = std::max(maxAbs, err);
      maxNorm = std::max(maxNorm, rel);
      meanNorm += rel;
    }
    meanNorm /= static_cast<double>(est.points.size());
    worstNormalized = std::max(worstNormalized, maxNorm);
    if (maxNorm > 4.0 * alpha) boundViolated = true;

    TimeSeries prefix{std::vector<double>(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(n)),
                      std::vector<double>(ys.begin(), ys.begin() + static_cast<std::ptrdiff_t>(n))};
    Segmentation synSeg;
    synSeg.points = est.points;
    synSeg.intervals = est.intervalEnds;
    synSeg.sourceIndices.assign(est.points.size(), 0);
    const Reconstruction reconSyn =
        reconstruct(prefix, snap_to_samples(prefix, synSeg), ReconstructionKind::PiecewiseLinear);
    const Reconstruction reconBatch =
        reconstruct(prefix, snap_to_samples(prefix, seg), ReconstructionKind::PiecewiseLinear);
    double mseSyn = 0.0;
    double mseBatch = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double ds = reconSyn.sampled[k] - prefix.values[k];
      const double db = reconBatch.sampled[k] - prefix.values[k];
      mseSyn += ds * ds;
      mseBatch += db * db;
    }
    mseSyn /= static_cast<double>(n);
    mseBatch /= static_cast<double>(n);
    const double ratio = mseBatch > 0.0 ? mseSyn / mseBatch : 1.0;
    worstRatioLow = std::min(worstRatioLow, ratio);
    worstRatioHigh = std::max(worstRatioHigh, ratio);

    bench << n << ',' << est.segmentCount << ',' << synopsis.tripleCount() << ','
          << format_double(maxAbs) << ',' << format_double(meanNorm) << ','
          << format_double(maxNorm) << ',' << format_double(synopsisMicros) << ','
          << format_double(batchMicros) << ','
          << format_double(batchMicros / std::max(synopsisMicros, 1e-9)) << ','
          << format_double(mseSyn) << ',' << format_double(mseBatch) << ','
          << format_double(ratio) << '\n';
  }

  json report;
  report["points"] = points;
  report["initN"] = initN;
  report["initNPrime"] = initNPrime;
  report["alpha"] = alpha;
  report["growthFactor"] = growthFactor;
  report["relevanceExponent"] = p;
  report["finalNPrime"] = synopsis.segmentCount();
  report["finalSynopsisSize"] = synopsis.tripleCount();
  report["worstNormalizedError"] = worstNormalized;
  report["errorBound"] = 4.0 * alpha;
  report["boundViolated"] = boundViolated;
  report["reconstructionErrorRatioRange"] = {worstRatioLow, worstRatioHigh};
  report["seed"] = seed ? json(*seed) : json(nullptr);
  write_report(outDir, report);
  std::cout << report.dump(2) << '\n';
  return 0;
}

int cmd_eval(const std::string& input, const fs::path& outDir, const RelevanceOptions& relOpts,
             std::optional<std::size_t> nPoints, std::optional<double> ratio,
             const std::string& reconName, bool integerize, const std::string& labelsFile,
             std::optional<std::uint64_t> seed) {
  const TimeSeries series = read_series_csv(fs::path(input));
  const RelevanceSpec spec = relOpts.build();
  const std::size_t nPrime = resolve_n_points(series.size(), nPoints, ratio);
  const BatchResult batch = run_batch(series, spec, nPrime, integerize);

  std::vector<IntervalLabel> labels;
  if (!labelsFile.empty()) labels = read_labels_csv(fs::path(labelsFile));

  // Drop labels outside the observed range with a warning.
  std::vector<IntervalLabel> kept;
  for (const IntervalLabel& label : labels) {
    if (label.end < series.timestamps.front() || label.start > series.timestamps.back()) {
      std::cerr << "warning: label '" << label.name << "' lies outside the series range; skipped\n";
      continue;
    }
    kept.push_back(label);
  }

  const std::optional<ReconstructionKind> kind = parse_reconstruction(reconName);
  std::optional<Reconstruction> recon;
  if (kind) {
    recon = reconstruct(series, batch.snapped, *kind);
    std::ofstream out = open_out(outDir, "reconstruction.csv");
    write_reconstruction_csv(out, series, recon->sampled);
  }
  {
    std::ofstream out = open_out(outDir, "segmentation.csv");
    write_segmentation_csv(out, batch.raw);
  }

  std::optional<BoundCheck> relBound;
  if (recon) {
    TimeSeries reconSeries{series.timestamps, recon->sampled};
    const RelevanceProfile tilde = normalize_weights(score(reconSeries, spec));
    const RelevanceErrorReport err = relevance_error(batch.profile, tilde);
    double total = 0.0;
    for (double s : batch.profile.scores) total += s;
    BoundCheck check;
    check.name = "relevance-preservation";
    check.worst = err.maxAbs;
    check.bound = total / static_cast<double>(nPrime);
    check.pass = check.worst < check.bound;
    relBound = check;
  }

  const EvalReport ev = bound_report(
      series, recon ? std::span<const double>(recon->sampled) : std::span<const double>(),
      batch.snapped.points, kept, relBound);
  json report = ev.to_json();
  report["input"] = input;
  report["nPrime"] = nPrime;
  if (seed) report["seed"] = *seed;
  write_report(outDir, report);
  std::cout << report.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relevance-preserving time-series compression"};
  app.require_subcommand(1);

  std::string input;
  std::string outDir = "out";
  RelevanceOptions relOpts;
  std::optional<std::size_t> nPoints;
  std::optional<double> ratio;
  std::string reconName = "linear";
  bool integerize = false;
  std::string labelsFile;
  std::optional<std::uint64_t> seed;

  double alpha = 0.2;
  std::size_t initN = 100;
  std::size_t initNPrime = 10;
  std::size_t checkpointEvery = 0;
  double growthFactor = 1.0;
  bool emitBatch = false;

  std::size_t benchPoints = 500000;
  std::size_t benchInitN = 1000;
  std::size_t benchInitNPrime = 500;
  double benchAlpha = 0.2;
  std::size_t benchEvery = 5000;
  double benchGrowth = 10.0;
  int benchP = 2;

  CLI::App* compress = app.add_subcommand("compress", "batch compression of a CSV series");
  compress->add_option("input", input, "input CSV (timestamp,value)")->required();
  compress->add_option("--out-dir", outDir, "artifact directory");
  add_relevance_flags(compress, relOpts);
  compress->add_option("--n-points", nPoints, "number of segmentation points");
  compress->add_option("--ratio", ratio, "target compression ratio n/n'");
  compress->add_option("--reconstruction", reconName, "constant|linear|regression|none");
  compress->add_flag("--integerize", integerize, "round segmentation points up with ceil");
  compress->add_option("--labels", labelsFile, "labels CSV for per-interval metrics");
  compress->add_option("--seed", seed, "echoed into the report");

  CLI::App* stream = app.add_subcommand("stream", "streaming synopsis over a file or '-' (stdin)");
  stream->add_option("input", input, "input CSV or '-'")->required();
  stream->add_option("--out-dir", outDir, "artifact directory");
  add_relevance_flags(stream, relOpts);
  stream->add_option("--alpha", alpha, "accuracy parameter in [0,1]")
      ->check(CLI::Range(0.0, 1.0));
  stream->add_option("--init-n", initN, "observed prefix length used to initialize");
  stream->add_option("--init-nprime", initNPrime, "initial segmentation point count");
  stream->add_option("--checkpoint-every", checkpointEvery,
                     "emit a JSON line every this many points (0 = none)");
  stream->add_option("--growth-factor", growthFactor,
                     "conservativeness of segment growth (1 = grow at deltaZ >= Z/n')");
  stream->add_option("--reconstruction", reconName, "constant|linear|regression|none");
  stream->add_flag("--emit-batch", emitBatch,
                   "recompute batch points at checkpoints for error comparison");
  stream->add_option("--seed", seed, "echoed into the report");

  CLI::App* bench = app.add_subcommand("bench", "simulated sin^3 stream benchmark");
  bench->add_option("--out-dir", outDir, "artifact directory");
  bench->add_option("--points", benchPoints, "stream length");
  bench->add_option("--init-n", benchInitN, "observed prefix length");
  bench->add_option("--init-nprime", benchInitNPrime, "initial segmentation point count");
  bench->add_option("--alpha", benchAlpha, "accuracy parameter")->check(CLI::Range(0.0, 1.0));
  bench->add_option("--checkpoint-every", benchEvery, "checkpoint cadence");
  bench->add_option("--growth-factor", benchGrowth,
                    "conservativeness of segment growth (10 reproduces the published run)");
  bench->add_option("--p", benchP, "relevance exponent for |y|^p");
  bench->add_option("--seed", seed, "echoed into the report");

  CLI::App* eval = app.add_subcommand("eval", "batch run evaluated against labeled intervals");
  eval->add_option("input", input, "input CSV (timestamp,value)")->required();
  eval->add_option("--out-dir", outDir, "artifact directory");
  add_relevance_flags(eval, relOpts);
  eval->add_option("--n-points", nPoints, "number of segmentation points");
  eval->add_option("--ratio", ratio, "target compression ratio n/n'");
  eval->add_option("--reconstruction", reconName, "constant|linear|regression|none");
  eval->add_flag("--integerize", integerize, "round segmentation points up with ceil");
  eval->add_option("--labels", labelsFile, "labels CSV: start,end,kind,name");
  eval->add_option("--seed", seed, "echoed into the report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compress->parsed()) {
      return cmd_compress(input, outDir, relOpts, nPoints, ratio, reconName, integerize, seed,
                          labelsFile);
    }
    if (stream->parsed()) {
      return cmd_stream(input, outDir, relOpts, alpha, initN, initNPrime, checkpointEvery,
                        growthFactor, reconName, emitBatch, seed);
    }
    if (bench->parsed()) {
      return cmd_bench(outDir, benchPoints, benchInitN, benchInitNPrime, benchAlpha, benchEvery,
                       benchGrowth, benchP, seed);
    }
    if (eval->parsed()) {
      return cmd_eval(input, outDir, relOpts, nPoints, ratio, reconName, integerize, labelsFile,
                      seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
