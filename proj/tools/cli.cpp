// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string_view>
#include <thread>

#include "CLI11.hpp"

namespace rfturbo::cli {

namespace {

constexpr std::string_view kSimulateColumns =
    "N,M,L,perm,seed,start,pairs,recoverable,trace_inv,predicted_mse,empirical_mse,trials";
constexpr std::string_view kSweepColumns =
    "N,M,L,perm_seed,cycles,longest_cycle,fixed_points,pairs,patterns,recoverable,trace_min,trace_mean,trace_max";

// Flags as typed on the command line; unset ones leave the config alone.
struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> filter;
  std::optional<std::string> filter_file;
  std::optional<std::size_t> n;
  std::optional<std::size_t> m;
  std::optional<std::string> perm;
  std::optional<std::uint64_t> perm_seed;
  std::optional<std::string> boundary;
  std::optional<std::string> pattern_file;
  std::optional<std::string> burst_start;
  std::optional<std::string> burst_pairs;
  std::optional<double> delta;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> seeds;
  std::optional<std::string> in;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> ordering;
  std::optional<std::string> method;
  std::optional<std::string> noise;
  std::optional<int> theorem;
  std::optional<std::size_t> threads;
  bool quantize = false;
  bool corollary1 = false;
  bool all_starts = false;
};

void add_code_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON experiment config; flags override its fields");
  sub->add_option("--filter", f.filter, "Built-in filter family: haar, block_dct, lapped");
  sub->add_option("--filter-file", f.filter_file, "JSON filter file (overrides --filter)");
  sub->add_option("--N", f.n, "Block / interleaver size");
  sub->add_option("--M", f.m, "Channel count for block_dct / lapped");
  sub->add_option("--perm", f.perm, "Interleaver: half_shift, random, identity");
  sub->add_option("--perm-seed", f.perm_seed, "Seed for --perm random");
  sub->add_option("--boundary", f.boundary, "Boundary handling: circulant, zero_tail");
  sub->add_option("--out", f.out, "Output file (default: stdout)");
  sub->add_option("--threads", f.threads, "Worker threads (capped by RFTURBO_THREADS)");
}

void add_channel_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--pattern-file", f.pattern_file, "JSON erasure pattern, row-order indices");
  sub->add_option("--burst-start", f.burst_start, "Burst start: s, a:b or all");
  sub->add_option("--burst-pairs", f.burst_pairs, "Burst length in pairs: p or a:b");
}

void apply(const Flags& f, ExperimentConfig& c) {
  if (f.filter) c.filter = *f.filter;
  if (f.filter_file) c.filter_file = *f.filter_file;
  if (f.n) {
    c.n = *f.n;
    c.n_explicit = true;
  }
  if (f.m) c.m = *f.m;
  if (f.perm) c.perm = *f.perm;
  if (f.perm_seed) c.perm_seed = *f.perm_seed;
  if (f.boundary) c.boundary = *f.boundary;
  if (f.pattern_file) c.pattern_file = *f.pattern_file;
  if (f.burst_start) c.burst_start = *f.burst_start;
  if (f.burst_pairs) c.burst_pairs = *f.burst_pairs;
  if (f.delta) c.delta = *f.delta;
  if (f.trials) c.trials = *f.trials;
  if (f.seed) c.seed = *f.seed;
  if (f.seeds) c.seeds = *f.seeds;
  if (f.in) c.in = *f.in;
  if (f.out) c.out = *f.out;
  if (f.format) c.format = *f.format;
  if (f.ordering) c.ordering = *f.ordering;
  if (f.method) c.method = *f.method;
  if (f.noise) c.noise = *f.noise;
  if (f.theorem) c.theorem = *f.theorem;
  if (f.threads) c.threads = *f.threads;
  if (f.quantize) c.quantize = true;
  if (f.corollary1) c.corollary1 = true;
  if (f.all_starts) c.all_starts = true;
}

void validate(const ExperimentConfig& c) {
  if (c.n == 0) fail(ErrorKind::kInvalidArgument, "N must be positive");
  if (c.trials < 1) fail(ErrorKind::kInvalidArgument, "trials must be >= 1");
  if (c.seeds < 1) fail(ErrorKind::kInvalidArgument, "seeds must be >= 1");
  if (!(c.delta > 0.0)) fail(ErrorKind::kInvalidArgument, "delta must be > 0");
  if (c.format != "csv" && c.format != "json") fail(ErrorKind::kInvalidArgument, "format must be csv or json");
  parse_boundary_mode(c.boundary);
  parse_perm_kind(c.perm);
  parse_ordering(c.ordering);
  parse_decode_method(c.method);
  parse_noise_model(c.noise);
}

FilterSpec resolve_filter(const ExperimentConfig& c) {
  if (c.filter_file) return load_filter_file(*c.filter_file).spec;
  return builtin_family(parse_filter_family(c.filter), c.m);
}

CodeSpec resolve_code(const ExperimentConfig& c) {
  CodeSpec spec;
  spec.filter = resolve_filter(c);
  spec.n = c.n;
  spec.perm = make_permutation(parse_perm_kind(c.perm), c.n, c.perm_seed);
  spec.mode = parse_boundary_mode(c.boundary);
  return spec;
}

std::string perm_label(const ExperimentConfig& c) {
  if (parse_perm_kind(c.perm) == PermKind::kRandom) return "random:" + std::to_string(c.perm_seed);
  return c.perm;
}

// Pattern for encode / decode: a pattern file, or a single paired burst.
std::optional<ErasurePattern> resolve_single_pattern(const ExperimentConfig& c) {
  if (c.pattern_file) {
    auto p = load_pattern_file(*c.pattern_file);
    if (p.block_size() != c.n) fail(ErrorKind::kInvalidArgument, "pattern N does not match --N");
    return p;
  }
  if (!c.burst_pairs) return std::nullopt;
  const auto starts = parse_range(c.burst_start, 0, c.n - 1);
  const auto pairs = parse_range(*c.burst_pairs, 0, c.n);
  if (starts.size() != 1 || pairs.size() != 1) {
    fail(ErrorKind::kInvalidArgument, "encode/decode take a single burst start and length");
  }
  if (pairs.front() == 0) return ErasurePattern::none(c.n);
  return paired_burst(c.n, starts.front(), pairs.front());
}

class Output {
 public:
  Output(const ExperimentConfig& c, std::ostream& fallback) : stream_(&fallback) {
    if (c.out) {
      file_.open(*c.out);
      if (!file_) fail(ErrorKind::kParse, "cannot write " + *c.out);
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string opt_real(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

// ---------------------------------------------------------------- simulate

struct SimJob {
  std::optional<Index> start;
  std::optional<std::size_t> pairs;
  ErasurePattern pattern;
  std::uint64_t seed = 0;
};

struct SimRow {
  bool recoverable = false;
  std::optional<double> trace;
  std::optional<double> predicted;
  std::optional<double> empirical;
};

int cmd_simulate(const ExperimentConfig& c, std::ostream& out) {
  const CodeSpec spec = resolve_code(c);
  const EncodingMatrix em = build_code(spec);
  const QuantizerSpec q(c.delta);
  const NoiseModel noise = parse_noise_model(c.noise);

  std::vector<SimJob> jobs;
  std::vector<std::uint64_t> seeds;
  for (std::size_t s = 0; s < c.seeds; ++s) seeds.push_back(c.seed + s);
  if (c.pattern_file) {
    const auto p = *resolve_single_pattern(c);
    for (auto seed : seeds) jobs.push_back({std::nullopt, std::nullopt, p, seed});
  } else {
    const auto starts = parse_range(c.burst_start, 0, c.n - 1);
    const auto pairs = parse_range(c.burst_pairs.value_or("1"), 0, c.n);
    for (auto start : starts) {
      for (auto p : pairs) {
        const auto pattern = p == 0 ? ErasurePattern::none(c.n) : paired_burst(c.n, start, p);
        for (auto seed : seeds) jobs.push_back({start, p, pattern, seed});
      }
    }
  }

  const auto rows = parallel_map(jobs.size(), resolve_workers(c.threads), [&](std::size_t i) {
    const SimJob& job = jobs[i];
    SimRow row;
    row.trace = trace_if_recoverable(em, job.pattern);
    row.recoverable = row.trace.has_value();
    if (row.recoverable) {
      const auto mse = empirical_mse(em, job.pattern, q, c.trials, job.seed, noise);
      row.predicted = mse.predicted;
      row.empirical = mse.empirical;
    }
    return row;
  });

  Output sink(c, out);
  std::ostream& os = sink.stream();
  const std::string perm = perm_label(c);
  auto opt_index = [](const auto& v) { return v ? std::to_string(*v) : std::string(); };
  if (c.format == "csv") {
    os << "# rfturbo simulate config=" << c.to_json().dump() << '\n' << kSimulateColumns << '\n';
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const auto& j = jobs[i];
      const auto& r = rows[i];
      os << c.n << ',' << spec.filter.channels << ',' << spec.filter.length << ',' << perm << ',' << j.seed << ','
         << opt_index(j.start) << ',' << opt_index(j.pairs) << ',' << (r.recoverable ? "true" : "false") << ','
         << opt_real(r.trace) << ',' << opt_real(r.predicted) << ',' << opt_real(r.empirical) << ',' << c.trials
         << '\n';
    }
  } else {
    Json doc = {{"command", "simulate"}, {"config", c.to_json()}, {"rows", Json::array()}};
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const auto& j = jobs[i];
      const auto& r = rows[i];
      auto nullable = [](const auto& v) -> Json { return v ? Json(*v) : Json(nullptr); };
      doc["rows"].push_back({{"N", c.n},
                             {"M", spec.filter.channels},
                             {"L", spec.filter.length},
                             {"perm", perm},
                             {"seed", j.seed},
                             {"start", nullable(j.start)},
                             {"pairs", nullable(j.pairs)},
                             {"pattern", pattern_to_json(j.pattern)},
                             {"recoverable", r.recoverable},
                             {"trace_inv", nullable(r.trace)},
                             {"predicted_mse", nullable(r.predicted)},
                             {"empirical_mse", nullable(r.empirical)},
                             {"trials", c.trials}});
    }
    os << doc.dump(2) << '\n';
  }
  return kExitOk;
}

// ------------------------------------------------------------------- sweep

struct SweepRow {
  std::uint64_t perm_seed = 0;
  std::vector<std::size_t> cycles;
  std::size_t fixed_points = 0;
  std::size_t patterns = 0;
  std::size_t recoverable = 0;
  std::optional<double> trace_min;
  std::optional<double> trace_mean;
  std::optional<double> trace_max;
};

int cmd_sweep(const ExperimentConfig& c, std::ostream& out) {
  const FilterSpec filter = resolve_filter(c);
  const auto pairs_list = parse_range(c.burst_pairs.value_or("1"), 1, c.n);
  if (pairs_list.size() != 1) fail(ErrorKind::kInvalidArgument, "sweep takes a single --burst-pairs value");
  const std::size_t pairs = pairs_list.front();
  const auto starts = parse_range(c.burst_start == "0" ? std::string("all") : c.burst_start, 0, c.n - 1);
  const auto mode = parse_boundary_mode(c.boundary);

  const auto rows = parallel_map(c.seeds, resolve_workers(c.threads), [&](std::size_t i) {
    SweepRow row;
    row.perm_seed = c.perm_seed + i;
    const auto perm = random_perm(c.n, row.perm_seed);
    row.cycles = cycle_lengths(perm);
    row.fixed_points = perm.fixed_points();
    const auto em = build_code({filter, c.n, perm, mode});
    double sum = 0.0;
    for (auto s : starts) {
      const auto pattern = paired_burst(c.n, s, pairs);
      ++row.patterns;
      const auto trace = trace_if_recoverable(em, pattern);
      if (!trace) continue;
      ++row.recoverable;
      const double t = *trace;
      sum += t;
      row.trace_min = std::min(row.trace_min.value_or(t), t);
      row.trace_max = std::max(row.trace_max.value_or(t), t);
    }
    if (row.recoverable > 0) row.trace_mean = sum / static_cast<double>(row.recoverable);
    return row;
  });

  Output sink(c, out);
  std::ostream& os = sink.stream();
  if (c.format == "csv") {
    os << "# rfturbo sweep config=" << c.to_json().dump() << '\n' << kSweepColumns << '\n';
    for (const auto& r : rows) {
      os << c.n << ',' << filter.channels << ',' << filter.length << ',' << r.perm_seed << ',' << r.cycles.size()
         << ',' << r.cycles.back() << ',' << r.fixed_points << ',' << pairs << ',' << r.patterns << ','
         << r.recoverable << ',' << opt_real(r.trace_min) << ',' << opt_real(r.trace_mean) << ','
         << opt_real(r.trace_max) << '\n';
    }
  } else {
    Json doc = {{"command", "sweep"}, {"config", c.to_json()}, {"rows", Json::array()}};
    for (const auto& r : rows) {
      auto nullable = [](const auto& v) -> Json { return v ? Json(*v) : Json(nullptr); };
      doc["rows"].push_back({{"perm_seed", r.perm_seed},
                             {"cycle_lengths", r.cycles},
                             {"fixed_points", r.fixed_points},
                             {"pairs", pairs},
                             {"patterns", r.patterns},
                             {"recoverable", r.recoverable},
                             {"trace_min", nullable(r.trace_min)},
                             {"trace_mean", nullable(r.trace_mean)},
                             {"trace_max", nullable(r.trace_max)}});
    }
    os << doc.dump(2) << '\n';
  }
  return kExitOk;
}

// ------------------------------------------------------------------ verify

std::string describe(const std::optional<BurstWitness>& w) {
  if (!w) return "none";
  // 1-based, matching y_1 ... y_2N.
  return "start y_" + std::to_string(w->start + 1) + ", " + std::to_string(w->pairs) + " pairs";
}

int cmd_verify(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const Tolerance tol;
  Json doc = {{"command", "verify"}, {"config", c.to_json()}};
  std::ostringstream summary;
  int code = kExitOk;

  if (c.corollary1) {
    const std::size_t n = c.n_explicit ? c.n : 150;
    const auto rows = corollary1_table(n, {4, 8, 16, 32}, tol);
    doc["corollary1"] = corollary_to_json(rows);
    doc["N"] = n;
    for (const auto& r : rows) {
      summary << "corollary1 N=" << n << " M=" << r.channels << " k=" << r.k << " formula=" << r.formula_symbols
              << " oracle=" << r.oracle_symbols << " of " << 2 * n << (r.agree ? " agree" : " DISAGREE") << '\n';
      if (!r.agree) code = kExitDomain;
    }
  } else {
    RecoverabilityReport report;
    try {
      switch (c.theorem) {
        case 1: {
          const FilterSpec filter = resolve_filter(c);
          report = verify_theorem1(filter, c.n, make_permutation(parse_perm_kind(c.perm), c.n, c.perm_seed), tol);
          break;
        }
        case 2: report = verify_theorem2(c.m, c.n, tol, {c.all_starts}); break;
        case 3: report = verify_theorem3(c.m, c.n, tol, {c.all_starts}); break;
        default: fail(ErrorKind::kInvalidArgument, "verify needs --theorem 1|2|3 or --corollary1");
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kBoundaryCase) throw;
      err << "warning: " << e.what() << '\n';
      doc["boundary_case"] = true;
      doc["message"] = e.what();
      Output sink(c, out);
      sink.stream() << doc.dump(2) << '\n';
      return kExitOk;
    }
    doc["report"] = report_to_json(report);
    summary << report.check << ' ' << report.filter << " M=" << report.channels << " L=" << report.length
            << " N=" << report.n << " perm=" << report.perm << ": oracle max " << report.max_pairs_recoverable
            << " pairs, claimed " << report.claimed_bound << " pairs, " << (report.agree ? "agree" : "DISAGREE")
            << '\n';
    summary << "  last success: " << describe(report.last_success)
            << "; first failure: " << describe(report.first_failure) << '\n';
    for (const auto& w : report.contradictions) {
      summary << "  contradiction: " << describe(w) << (w.recoverable ? " recoverable" : " unrecoverable") << '\n';
    }
    if (!report.agree) code = kExitDomain;
  }

  if (c.out) {
    Output sink(c, out);
    sink.stream() << doc.dump(2) << '\n';
    out << summary.str();
  } else {
    out << doc.dump(2) << '\n';
    err << summary.str();
  }
  return code;
}

// ---------------------------------------------------------- encode / decode

int cmd_encode(const ExperimentConfig& c, std::ostream& out) {
  if (!c.in) fail(ErrorKind::kInvalidArgument, "encode needs --in <vector file>");
  const CodeSpec spec = resolve_code(c);
  const EncodingMatrix em = build_code(spec);
  const DataFile input = load_data_file(*c.in);
  if (input.kind != "vector" || input.length != c.n) {
    fail(ErrorKind::kInvalidArgument, "encode input must be a vector file of length N = " + std::to_string(c.n));
  }
  Codeword cw = encode(em, input.values);
  if (c.quantize) cw.y = quantize(cw.y, QuantizerSpec(c.delta));

  const Ordering ordering = parse_ordering(c.ordering);
  DataFile file;
  file.length = 2 * c.n;
  file.ordering = ordering;
  file.config = c.to_json();
  const auto pattern = resolve_single_pattern(c);
  if (!pattern) {
    file.values = serialize(cw, spec.filter.channels, ordering);
  } else {
    // Survivors listed by serialized position.
    const auto map = serialization_map(c.n, spec.filter.channels, ordering);
    const Vector serialized = serialize(cw, spec.filter.channels, ordering);
    std::vector<double> vals;
    file.kind = "survivors";
    for (Index p = 0; p < map.size(); ++p) {
      if (pattern->is_lost(map[p])) continue;
      file.indices.push_back(p);
      vals.push_back(serialized(static_cast<Eigen::Index>(p)));
    }
    file.values = Eigen::Map<Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
    file.config["pattern"] = pattern_to_json(*pattern);
  }
  Output sink(c, out);
  write_data_file(sink.stream(), file);
  return kExitOk;
}

int cmd_decode(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  if (!c.in) fail(ErrorKind::kInvalidArgument, "decode needs --in <codeword or survivors file>");
  const CodeSpec spec = resolve_code(c);
  const EncodingMatrix em = build_code(spec);
  const DataFile input = load_data_file(*c.in);
  if (input.length != 2 * c.n) {
    fail(ErrorKind::kInvalidArgument, "input length " + std::to_string(input.length) + " != 2N = " +
                                          std::to_string(2 * c.n));
  }
  const auto map = serialization_map(c.n, spec.filter.channels, input.ordering);

  Survivors survivors;
  if (input.kind == "vector") {
    const Codeword cw = deserialize(input.values, spec.filter.channels, input.ordering);
    const auto pattern = resolve_single_pattern(c).value_or(ErasurePattern::none(c.n));
    survivors = apply_erasure(cw.y, pattern);
  } else {
    std::vector<std::pair<Index, double>> rows;
    for (std::size_t j = 0; j < input.indices.size(); ++j) {
      rows.emplace_back(map[input.indices[j]], input.values(static_cast<Eigen::Index>(j)));
    }
    std::sort(rows.begin(), rows.end());
    survivors.values.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j) {
      survivors.indices.push_back(rows[j].first);
      survivors.values(static_cast<Eigen::Index>(j)) = rows[j].second;
    }
  }

  const auto method = parse_decode_method(c.method);
  const auto result = decode(em, survivors, method);
  if (!result.reconstructible) {
    err << "not reconstructible: surviving rows have rank " << result.rank_used << " < N = " << c.n << '\n';
    return kExitDomain;
  }
  DataFile file;
  file.length = c.n;
  file.values = result.x_hat;
  file.config = c.to_json();
  file.config["result"] = {{"method", to_string(result.method)},
                           {"residual", result.residual},
                           {"rank_used", result.rank_used},
                           {"reconstructible", result.reconstructible},
                           {"iterations", result.iterations},
                           {"survivors", survivors.indices.size()}};
  Output sink(c, out);
  write_data_file(sink.stream(), file);
  return kExitOk;
}

int exit_code_for(const Error& e) {
  return e.kind() == ErrorKind::kNotReconstructible ? kExitDomain : kExitUsage;
}

}  // namespace

Json ExperimentConfig::to_json() const {
  Json j = {{"filter", filter},
            {"N", n},
            {"M", m},
            {"perm", perm},
            {"perm_seed", perm_seed},
            {"boundary", boundary},
            {"burst_start", burst_start},
            {"delta", delta},
            {"quantize", quantize},
            {"trials", trials},
            {"seed", seed},
            {"seeds", seeds},
            {"format", format},
            {"ordering", ordering},
            {"method", method},
            {"noise", noise}};
  if (filter_file) j["filter_file"] = *filter_file;
  if (pattern_file) j["pattern_file"] = *pattern_file;
  if (burst_pairs) j["burst_pairs"] = *burst_pairs;
  if (theorem != 0) j["theorem"] = theorem;
  if (corollary1) j["corollary1"] = true;
  if (all_starts) j["all_starts"] = true;
  return j;
}

void ExperimentConfig::merge_json(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::kParse, "config must be a JSON object");
  try {
    auto take = [&j](const char* key, auto& dst) {
      if (j.contains(key)) dst = j.at(key).get<std::decay_t<decltype(dst)>>();
    };
    auto take_opt = [&j](const char* key, std::optional<std::string>& dst) {
      if (j.contains(key)) dst = j.at(key).get<std::string>();
    };
    take("filter", filter);
    take_opt("filter_file", filter_file);
    if (j.contains("N")) {
      n = j.at("N").get<std::size_t>();
      n_explicit = true;
    }
    take("M", m);
    take("perm", perm);
    take("perm_seed", perm_seed);
    take("boundary", boundary);
    take_opt("pattern_file", pattern_file);
    if (j.contains("burst_start")) {
      const auto& v = j.at("burst_start");
      burst_start = v.is_string() ? v.get<std::string>() : std::to_string(v.get<std::size_t>());
    }
    if (j.contains("burst_pairs")) {
      const auto& v = j.at("burst_pairs");
      burst_pairs = v.is_string() ? v.get<std::string>() : std::to_string(v.get<std::size_t>());
    }
    take("delta", delta);
    take("quantize", quantize);
    take("trials", trials);
    take("seed", seed);
    take("seeds", seeds);
    take_opt("in", in);
    take_opt("out", out);
    take("format", format);
    take("ordering", ordering);
    take("method", method);
    take("noise", noise);
    take("theorem", theorem);
    take("corollary1", corollary1);
    take("all_starts", all_starts);
    take("threads", threads);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kParse, std::string("config: ") + e.what());
  }
}

std::size_t resolve_workers(std::size_t requested) {
  std::size_t workers = requested > 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("RFTURBO_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(cap, &end, 10);
    if (end != cap && v > 0) workers = std::min<std::size_t>(workers, v);
  }
  return workers;
}

std::vector<std::size_t> parse_range(const std::string& text, std::size_t lo, std::size_t hi) {
  auto number = [&text](const std::string& s) -> std::size_t {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size()) fail(ErrorKind::kParse, "bad range '" + text + "'");
    return static_cast<std::size_t>(v);
  };
  std::size_t a = lo;
  std::size_t b = hi;
  if (text != "all") {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
      a = b = number(text);
    } else {
      a = number(text.substr(0, colon));
      b = number(text.substr(colon + 1));
    }
  }
  if (a > b || a < lo || b > hi) {
    fail(ErrorKind::kBadRange, "range '" + text + "' outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  std::vector<std::size_t> out;
  for (std::size_t v = a; v <= b; ++v) out.push_back(v);
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"rfturbo: rate-1/2 real-field turbo codes built from filter banks"};
  app.require_subcommand(1);
  Flags f;

  auto* encode_cmd = app.add_subcommand("encode", "Encode a length-N vector file into a codeword");
  auto* decode_cmd = app.add_subcommand("decode", "Reconstruct x from a codeword or survivors file");
  auto* simulate_cmd = app.add_subcommand("simulate", "Burst-erasure MSE experiments, one CSV row per pattern and seed");
  auto* verify_cmd = app.add_subcommand("verify", "Rank-oracle checks of the recoverability bounds");
  auto* sweep_cmd = app.add_subcommand("sweep", "Random-interleaver seed sweep");

  for (auto* sub : {encode_cmd, decode_cmd, simulate_cmd, verify_cmd, sweep_cmd}) add_code_flags(sub, f);
  for (auto* sub : {encode_cmd, decode_cmd, simulate_cmd, sweep_cmd}) add_channel_flags(sub, f);
  for (auto* sub : {encode_cmd, decode_cmd}) {
    sub->add_option("--in", f.in, "Input data file");
    sub->add_option("--ordering", f.ordering, "Codeword ordering: row_order, paper_interleaved");
  }
  encode_cmd->add_flag("--quantize", f.quantize, "Quantize the codeword with step --delta");
  encode_cmd->add_option("--delta", f.delta, "Quantizer step");
  decode_cmd->add_option("--method", f.method, "Decoder: least_squares, projection, youla");
  for (auto* sub : {simulate_cmd, sweep_cmd}) {
    sub->add_option("--format", f.format, "Output format: csv, json");
    sub->add_option("--seeds", f.seeds, "Number of consecutive seeds from --seed (--perm-seed for sweep)");
  }
  simulate_cmd->add_option("--delta", f.delta, "Quantizer step (default 2^-8)");
  simulate_cmd->add_option("--trials", f.trials, "Monte-Carlo trials per row");
  simulate_cmd->add_option("--seed", f.seed, "Monte-Carlo seed");
  simulate_cmd->add_option("--noise", f.noise, "Quantization noise model: rounding, subtractive_dither");
  verify_cmd->add_option("--theorem", f.theorem, "1, 2 or 3");
  verify_cmd->add_flag("--corollary1", f.corollary1, "Tabulate burst recoverability for M = 4, 8, 16, 32");
  verify_cmd->add_flag("--all-starts", f.all_starts, "Scan bursts from every start (theorems 2 and 3)");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    ExperimentConfig cfg;
    if (f.config) cfg.merge_json(read_json_file(*f.config));
    apply(f, cfg);
    validate(cfg);
    if (encode_cmd->parsed()) return cmd_encode(cfg, out);
    if (decode_cmd->parsed()) return cmd_decode(cfg, out, err);
    if (simulate_cmd->parsed()) return cmd_simulate(cfg, out);
    if (verify_cmd->parsed()) return cmd_verify(cfg, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace rfturbo::cli
