// SPDX-License-Identifier: Apache-2.0

// JSON documents (filters, permutations, erasure patterns, reports) and the
// plain-text vector files used by the CLI.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rfturbo/analysis.hpp"
#include "rfturbo/channel.hpp"
#include "rfturbo/codec.hpp"
#include "rfturbo/filterbank.hpp"
#include "rfturbo/interleaver.hpp"

namespace rfturbo {

using Json = nlohmann::json;

// {"name": ..., "channels": M, "length": L, "coeffs": [[...], ...]}
Json filter_to_json(const FilterSpec& f);
FilterSpec filter_from_json(const Json& j);

struct LoadedFilter {
  FilterSpec spec;
  bool orthonormal = false;
};

LoadedFilter load_filter_file(const std::filesystem::path& path, const Tolerance& tol = {});

// JSON array of 0-based targets.
Json permutation_to_json(const Permutation& p);
Permutation permutation_from_json(const Json& j);

// {"N": n, "lost": [...], "paired": bool}
Json pattern_to_json(const ErasurePattern& p);
ErasurePattern pattern_from_json(const Json& j);
ErasurePattern load_pattern_file(const std::filesystem::path& path);

Json report_to_json(const RecoverabilityReport& r);
Json mse_report_to_json(const MseReport& r);
Json corollary_to_json(const std::vector<CorollaryRow>& rows);

Json read_json_file(const std::filesystem::path& path);

// Text data files. First line is a header,
//   # rfturbo <kind> length=<n> ordering=<order> [config=<json>]
// followed by one value per line ("vector") or "index value" per line
// ("survivors"). Values are written with round-trip precision.
struct DataFile {
  std::string kind = "vector";  // "vector" or "survivors"
  std::size_t length = 0;       // logical vector length (2N for a codeword)
  Ordering ordering = Ordering::kRowOrder;
  Json config = Json::object();
  std::vector<Index> indices;  // survivors only
  Vector values;
};

void write_data_file(std::ostream& out, const DataFile& file);
DataFile read_data_file(std::istream& in);
void save_data_file(const std::filesystem::path& path, const DataFile& file);
DataFile load_data_file(const std::filesystem::path& path);

// Shortest decimal that round-trips the double.
std::string format_real(double v);

}  // namespace rfturbo
