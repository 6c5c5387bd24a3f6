// SPDX-License-Identifier: Apache-2.0

#include "rfturbo/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "rfturbo/error.hpp"

namespace rfturbo {

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::kParse, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kParse, std::string("field '") + key + "': " + e.what());
  }
}

Json witness_json(const std::optional<BurstWitness>& w) {
  if (!w) return nullptr;
  return {{"start", w->start}, {"pairs", w->pairs}, {"symbols", 2 * w->pairs}, {"recoverable", w->recoverable}};
}

}  // namespace

Json filter_to_json(const FilterSpec& f) {
  return {{"name", f.name}, {"channels", f.channels}, {"length", f.length}, {"coeffs", f.coeffs}};
}

FilterSpec filter_from_json(const Json& j) {
  FilterSpec f;
  f.name = j.value("name", std::string("custom"));
  f.channels = field<std::size_t>(j, "channels");
  f.length = field<std::size_t>(j, "length");
  f.coeffs = field<std::vector<std::vector<double>>>(j, "coeffs");
  f.validate();
  return f;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kParse, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kParse, path.string() + ": " + e.what());
  }
}

LoadedFilter load_filter_file(const std::filesystem::path& path, const Tolerance& tol) {
  LoadedFilter out;
  out.spec = filter_from_json(read_json_file(path));
  out.orthonormal = validate_orthonormal(out.spec, tol);
  return out;
}

Json permutation_to_json(const Permutation& p) { return p.map(); }

Permutation permutation_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorKind::kParse, "permutation must be a JSON array");
  try {
    return Permutation(j.get<std::vector<Index>>());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kParse, std::string("permutation: ") + e.what());
  }
}

Json pattern_to_json(const ErasurePattern& p) {
  return {{"N", p.block_size()}, {"lost", p.lost()}, {"paired", p.paired()}};
}

ErasurePattern pattern_from_json(const Json& j) {
  return ErasurePattern(field<std::size_t>(j, "N"), field<std::vector<Index>>(j, "lost"),
                        j.value("paired", false));
}

ErasurePattern load_pattern_file(const std::filesystem::path& path) {
  return pattern_from_json(read_json_file(path));
}

Json report_to_json(const RecoverabilityReport& r) {
  Json contradictions = Json::array();
  for (const auto& w : r.contradictions) contradictions.push_back(witness_json(w));
  Json j = {{"check", r.check},
            {"filter", r.filter},
            {"M", r.channels},
            {"L", r.length},
            {"N", r.n},
            {"perm", r.perm},
            {"max_pairs_recoverable", r.max_pairs_recoverable},
            {"max_symbols_recoverable", 2 * r.max_pairs_recoverable},
            {"claimed_bound_pairs", r.claimed_bound},
            {"claimed_bound_symbols", 2 * r.claimed_bound},
            {"patterns_tested", r.patterns_tested},
            {"agree", r.agree},
            {"per_start_max_pairs", r.per_start_max},
            {"last_success", witness_json(r.last_success)},
            {"first_failure", witness_json(r.first_failure)},
            {"contradictions", contradictions}};
  if (r.k > 0) j["k"] = r.k;
  if (r.check == "theorem3") j["margin"] = r.margin;
  return j;
}

Json mse_report_to_json(const MseReport& r) {
  return {{"predicted", r.predicted}, {"empirical", r.empirical}, {"trials", r.trials},
          {"sigma2", r.sigma2},       {"seed", r.seed},           {"noise", to_string(r.noise)},
          {"pattern", pattern_to_json(r.pattern)}};
}

Json corollary_to_json(const std::vector<CorollaryRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back({{"M", r.channels},
                   {"k", r.k},
                   {"formula_symbols", r.formula_symbols},
                   {"oracle_symbols", r.oracle_symbols},
                   {"remainder_block", r.remainder_block},
                   {"agree", r.agree}});
  }
  return out;
}

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_data_file(std::ostream& out, const DataFile& file) {
  out << "# rfturbo " << file.kind << " length=" << file.length << " ordering=" << to_string(file.ordering);
  if (!file.config.empty()) out << " config=" << file.config.dump();
  out << '\n';
  for (Eigen::Index i = 0; i < file.values.size(); ++i) {
    if (file.kind == "survivors") out << file.indices[static_cast<std::size_t>(i)] << ' ';
    out << format_real(file.values(i)) << '\n';
  }
}

namespace {

double parse_real(const std::string& token, std::size_t line_no) {
  double v = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size() || !std::isfinite(v)) {
    fail(ErrorKind::kParse, "line " + std::to_string(line_no) + ": bad number '" + token + "'");
  }
  return v;
}

}  // namespace

DataFile read_data_file(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.rfind("# rfturbo ", 0) != 0) {
    fail(ErrorKind::kParse, "missing '# rfturbo' header line");
  }
  DataFile file;
  bool have_length = false;
  std::istringstream hs(header.substr(10));
  hs >> file.kind;
  if (file.kind != "vector" && file.kind != "survivors") fail(ErrorKind::kParse, "unknown data kind '" + file.kind + "'");
  std::string token;
  while (hs >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) fail(ErrorKind::kParse, "bad header token '" + token + "'");
    const std::string key = token.substr(0, eq);
    std::string value = token.substr(eq + 1);
    if (key == "config") {
      std::string rest;
      std::getline(hs, rest);
      try {
        file.config = Json::parse(value + rest);
      } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::kParse, std::string("header config: ") + e.what());
      }
      break;
    }
    if (key == "length") {
      file.length = static_cast<std::size_t>(parse_real(value, 1));
      have_length = true;
    } else if (key == "ordering") {
      file.ordering = parse_ordering(value);
    }
  }
  if (!have_length) fail(ErrorKind::kParse, "header lacks length=");

  std::vector<double> values;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string a;
    std::string b;
    ls >> a >> b;
    if (file.kind == "survivors") {
      if (b.empty()) fail(ErrorKind::kParse, "line " + std::to_string(line_no) + ": expected 'index value'");
      const double idx = parse_real(a, line_no);
      if (idx < 0 || idx != std::floor(idx) || idx >= static_cast<double>(file.length)) {
        fail(ErrorKind::kParse, "line " + std::to_string(line_no) + ": bad index '" + a + "'");
      }
      file.indices.push_back(static_cast<Index>(idx));
      values.push_back(parse_real(b, line_no));
    } else {
      if (!b.empty()) fail(ErrorKind::kParse, "line " + std::to_string(line_no) + ": expected one value");
      values.push_back(parse_real(a, line_no));
    }
  }
  file.values = Eigen::Map<Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
  if (file.kind == "vector" && values.size() != file.length) {
    fail(ErrorKind::kParse, "header says length " + std::to_string(file.length) + " but file has " +
                                std::to_string(values.size()) + " values");
  }
  return file;
}

void save_data_file(const std::filesystem::path& path, const DataFile& file) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::kParse, "cannot write " + path.string());
  write_data_file(out, file);
}

DataFile load_data_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kParse, "cannot open " + path.string());
  return read_data_file(in);
}

}  // namespace rfturbo
