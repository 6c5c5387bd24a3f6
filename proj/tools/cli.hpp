// SPDX-License-Identifier: Apache-2.0

// Command-line driver for rfturbo. Kept as a library so tests can run the
// subcommands in-process and compare their output byte for byte.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rfturbo/rfturbo.hpp"

namespace rfturbo::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;  // unreconstructible input or theorem disagreement
inline constexpr int kExitUsage = 2;   // bad flags, config or input files

// Fully resolved experiment parameters. Loaded from a JSON config file and
// then overridden by any flag given on the command line.
struct ExperimentConfig {
  std::string filter = "haar";
  std::optional<std::string> filter_file;
  std::size_t n = 8;
  bool n_explicit = false;
  std::size_t m = 2;
  std::string perm = "half_shift";
  std::uint64_t perm_seed = 1;
  std::string boundary = "circulant";
  std::optional<std::string> pattern_file;
  std::string burst_start = "0";           // "s", "a:b" or "all"
  std::optional<std::string> burst_pairs;  // "p" or "a:b"
  double delta = 1.0 / 256.0;
  bool quantize = false;
  std::string noise = "rounding";  // rounding | subtractive_dither
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::size_t seeds = 1;
  std::optional<std::string> in;
  std::optional<std::string> out;
  std::string format = "csv";
  std::string ordering = "row_order";
  std::string method = "least_squares";
  int theorem = 0;
  bool corollary1 = false;
  bool all_starts = false;
  std::size_t threads = 0;  // 0 = hardware concurrency, capped by RFTURBO_THREADS

  Json to_json() const;
  // Fields absent from `j` keep their current value.
  void merge_json(const Json& j);
};

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Worker count after applying the RFTURBO_THREADS cap.
std::size_t resolve_workers(std::size_t requested);

// Parses "a", "a:b" (inclusive) or "all" into a list of values in [lo, hi].
std::vector<std::size_t> parse_range(const std::string& text, std::size_t lo, std::size_t hi);

}  // namespace rfturbo::cli
