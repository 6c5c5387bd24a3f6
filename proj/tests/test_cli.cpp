// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace rfturbo::cli {
namespace {

namespace fs = std::filesystem;
const fs::path kData = RFTURBO_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("rfturbo_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(CliVerify, Theorem1Agrees) {
  const auto r = run_cli({"verify", "--theorem", "1", "--filter", "haar", "--N", "8"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("report").at("agree"), true);
  EXPECT_EQ(j.at("report").at("max_pairs_recoverable"), 4);
  EXPECT_EQ(j.at("config").at("N"), 8);
  // Printed witnesses are 1-based.
  EXPECT_NE(r.err.find("start y_1, 5 pairs"), std::string::npos) << r.err;
}

TEST(CliVerify, Theorem2BoundaryCaseWarns) {
  const auto r = run_cli({"verify", "--theorem", "2", "--M", "2", "--N", "8"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  EXPECT_EQ(Json::parse(r.out).at("boundary_case"), true);
}

TEST(CliVerify, DisagreementExitsOne) {
  const auto r = run_cli({"verify", "--theorem", "3", "--M", "2", "--N", "8"});
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_EQ(Json::parse(r.out).at("report").at("agree"), false);
}

TEST(CliVerify, Corollary1Table) {
  TempDir tmp;
  const auto r = run_cli({"verify", "--corollary1", "--out", tmp.file("c.json")});
  const Json j = Json::parse(slurp(tmp.file("c.json")));
  ASSERT_EQ(j.at("corollary1").size(), 4u);
  const int formula[] = {150, 158, 158, 190};
  for (int i = 0; i < 4; ++i) EXPECT_EQ(j["corollary1"][i]["formula_symbols"], formula[i]);
  EXPECT_EQ(j.at("N"), 150);
  // Summary goes to stdout when the report has a file.
  EXPECT_NE(r.out.find("M=32 k=3 formula=190"), std::string::npos);
  EXPECT_EQ(r.code, kExitDomain);  // oracle gives 150 for M >= 8
}

TEST(CliVerify, NeedsAMode) { EXPECT_EQ(run_cli({"verify"}).code, kExitUsage); }

TEST(CliSimulate, HalfShiftN150AllRecoverable) {
  const auto r = run_cli({"simulate", "--N", "150", "--burst-pairs", "1:75", "--trials", "4"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 77u);
  EXPECT_EQ(ls[0].rfind("# rfturbo simulate config={", 0), 0u);
  EXPECT_EQ(ls[1], "N,M,L,perm,seed,start,pairs,recoverable,trace_inv,predicted_mse,empirical_mse,trials");
  for (std::size_t i = 2; i < ls.size(); ++i) {
    const auto f = split(ls[i]);
    ASSERT_EQ(f.size(), 12u) << ls[i];
    EXPECT_EQ(f[7], "true");
    EXPECT_TRUE(std::isfinite(std::stod(f[8])));
    EXPECT_EQ(f[6], std::to_string(i - 1));
  }
}

TEST(CliSimulate, IdentityLeavesEmptyFields) {
  const auto r = run_cli({"simulate", "--N", "8", "--perm", "identity", "--burst-pairs", "1"});
  ASSERT_EQ(r.code, kExitOk);
  const auto f = split(lines(r.out).at(2));
  ASSERT_EQ(f.size(), 12u);
  EXPECT_EQ(f[3], "identity");
  EXPECT_EQ(f[7], "false");
  EXPECT_EQ(f[8], "");
  EXPECT_EQ(f[9], "");
  EXPECT_EQ(f[10], "");
}

TEST(CliSimulate, RandomPermLabelAndSeeds) {
  const auto r = run_cli({"simulate", "--N", "12", "--perm", "random", "--perm-seed", "9", "--seeds", "3",
                          "--burst-start", "0:1", "--trials", "5"});
  ASSERT_EQ(r.code, kExitOk);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u + 2 * 3);
  EXPECT_EQ(split(ls[2])[3], "random:9");
  // start -> pairs -> seed ordering
  EXPECT_EQ(split(ls[2])[4], "1");
  EXPECT_EQ(split(ls[3])[4], "2");
  EXPECT_EQ(split(ls[5])[5], "1");
}

TEST(CliSimulate, DeterministicAcrossThreadCounts) {
  const std::vector<std::string> base{"simulate", "--N", "16", "--filter", "lapped", "--burst-start", "all",
                                      "--burst-pairs", "1:8", "--trials", "30", "--seeds", "2"};
  auto with = [&](const std::string& t) {
    auto a = base;
    a.insert(a.end(), {"--threads", t});
    return run_cli(a).out;
  };
  const auto one = with("1");
  EXPECT_EQ(one, with("1"));
  EXPECT_EQ(one, with("4"));
  EXPECT_EQ(one, with("7"));
}

TEST(CliSimulate, JsonFormatAndPatternFile) {
  const auto r = run_cli({"simulate", "--N", "8", "--pattern-file", (kData / "burst_n8.json").string(), "--format",
                          "json", "--trials", "10"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  ASSERT_EQ(j.at("rows").size(), 1u);
  EXPECT_TRUE(j["rows"][0]["start"].is_null());
  EXPECT_EQ(j["rows"][0]["recoverable"], true);
  EXPECT_EQ(j.at("config").at("pattern_file"), (kData / "burst_n8.json").string());
}

TEST(CliSimulate, DitherFlag) {
  const auto r = run_cli({"simulate", "--N", "8", "--noise", "subtractive_dither", "--trials", "10"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(lines(r.out)[0].find("\"noise\":\"subtractive_dither\""), std::string::npos);
  EXPECT_EQ(run_cli({"simulate", "--noise", "gauss"}).code, kExitUsage);
}

TEST(CliSimulate, ConfigFileWithOverrides) {
  TempDir tmp;
  std::ofstream(tmp.file("cfg.json")) << R"({"N": 6, "burst_pairs": 2, "trials": 3, "seed": 4})";
  auto r = run_cli({"simulate", "--config", tmp.file("cfg.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(split(lines(r.out)[2])[0], "6");
  EXPECT_EQ(split(lines(r.out)[2])[4], "4");
  r = run_cli({"simulate", "--config", tmp.file("cfg.json"), "--N", "8", "--out", tmp.file("o.csv")});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(split(lines(slurp(tmp.file("o.csv")))[2])[0], "8");

  const auto shipped = run_cli({"simulate", "--config", (kData / "simulate_n150.json").string(), "--trials", "2"});
  EXPECT_EQ(shipped.code, kExitOk);
  EXPECT_EQ(lines(shipped.out).size(), 77u);
}

TEST(CliSimulate, UsageErrors) {
  TempDir tmp;
  std::ofstream(tmp.file("bad.json")) << "{not json";
  std::ofstream(tmp.file("wrong.json")) << R"({"N": "eight"})";
  EXPECT_EQ(run_cli({"simulate", "--config", tmp.file("bad.json")}).code, kExitUsage);
  EXPECT_EQ(run_cli({"simulate", "--config", tmp.file("wrong.json")}).code, kExitUsage);
  EXPECT_EQ(run_cli({"simulate", "--config", tmp.file("absent.json")}).code, kExitUsage);
  EXPECT_EQ(run_cli({"simulate", "--trials", "0"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"simulate", "--delta", "-1"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"simulate", "--filter", "db9"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"simulate", "--perm", "bitrev"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"simulate", "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"simulate", "--N", "7"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"simulate", "--burst-start", "9"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"simulate", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(run_cli({}).code, kExitUsage);
  EXPECT_EQ(run_cli({"--help"}).code, kExitOk);
}

TEST(CliSweep, ColumnsAndRows) {
  const auto r = run_cli({"sweep", "--N", "150", "--seeds", "5", "--burst-pairs", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 7u);
  EXPECT_EQ(ls[1], "N,M,L,perm_seed,cycles,longest_cycle,fixed_points,pairs,patterns,recoverable,trace_min,trace_mean,trace_max");
  for (std::size_t i = 2; i < ls.size(); ++i) {
    const auto f = split(ls[i]);
    ASSERT_EQ(f.size(), 13u);
    EXPECT_EQ(f[8], "150");
    // Single-pair loss fails exactly at fixed points of the interleaver.
    EXPECT_EQ(std::stoul(f[9]), 150u - std::stoul(f[6])) << ls[i];
  }
}

TEST(CliEncodeDecode, HaarExample) {
  TempDir tmp;
  std::ofstream(tmp.file("x.txt")) << "# rfturbo vector length=4 ordering=row_order\n1\n1\n0\n0\n";
  const auto r = run_cli({"encode", "--N", "4", "--in", tmp.file("x.txt")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 9u);
  EXPECT_EQ(ls[0].rfind("# rfturbo vector length=8 ordering=row_order config=", 0), 0u);
  const std::vector<std::string> expected{"1.414213562373095", "0", "0", "0", "0", "0", "1.414213562373095", "0"};
  EXPECT_EQ(std::vector<std::string>(ls.begin() + 1, ls.end()), expected);
}

TEST(CliEncodeDecode, RoundTripEveryMethodAndOrdering) {
  TempDir tmp;
  const auto x = load_data_file(kData / "x_n8.txt").values;
  for (std::string ordering : {"row_order", "paper_interleaved"}) {
    for (std::string filter : {"haar", "lapped"}) {
      ASSERT_EQ(run_cli({"encode", "--N", "8", "--filter", filter, "--in", (kData / "x_n8.txt").string(),
                         "--ordering", ordering, "--out", tmp.file("y.txt")})
                    .code,
                kExitOk);
      for (std::string method : {"least_squares", "projection", "youla"}) {
        const auto r = run_cli({"decode", "--N", "8", "--filter", filter, "--in", tmp.file("y.txt"), "--method", method,
                                "--out", tmp.file("xh.txt")});
        ASSERT_EQ(r.code, kExitOk) << r.err;
        const auto xh = load_data_file(tmp.file("xh.txt"));
        EXPECT_LE((xh.values - x).norm(), 1e-9 * x.norm()) << ordering << " " << filter << " " << method;
        EXPECT_EQ(xh.config.at("result").at("method"), method);
        EXPECT_EQ(xh.config.at("result").at("rank_used"), 8);
      }
    }
  }
}

TEST(CliEncodeDecode, SurvivorsFileAndErasureOnDecode) {
  TempDir tmp;
  const auto x = load_data_file(kData / "x_n8.txt").values;
  for (std::string ordering : {"row_order", "paper_interleaved"}) {
    ASSERT_EQ(run_cli({"encode", "--N", "8", "--in", (kData / "x_n8.txt").string(), "--ordering", ordering,
                       "--burst-start", "5", "--burst-pairs", "4", "--out", tmp.file("s.txt")})
                  .code,
              kExitOk);
    const auto s = load_data_file(tmp.file("s.txt"));
    EXPECT_EQ(s.kind, "survivors");
    EXPECT_EQ(s.indices.size(), 8u);
    const auto r = run_cli({"decode", "--N", "8", "--in", tmp.file("s.txt"), "--method", "projection"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::istringstream in(r.out);
    EXPECT_LE((read_data_file(in).values - x).norm(), 1e-9 * x.norm()) << ordering;
  }
  // Full codeword, erasure applied at decode time.
  ASSERT_EQ(run_cli({"encode", "--N", "8", "--in", (kData / "x_n8.txt").string(), "--out", tmp.file("y.txt")}).code,
            kExitOk);
  const auto r = run_cli({"decode", "--N", "8", "--in", tmp.file("y.txt"), "--pattern-file",
                          (kData / "burst_n8.json").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
}

TEST(CliEncodeDecode, FatalPatternExitsOne) {
  TempDir tmp;
  ASSERT_EQ(run_cli({"encode", "--N", "8", "--in", (kData / "x_n8.txt").string(), "--burst-pairs", "5", "--out",
                     tmp.file("s.txt")})
                .code,
            kExitOk);
  auto r = run_cli({"decode", "--N", "8", "--in", tmp.file("s.txt")});
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_NE(r.err.find("rank 6 < N = 8"), std::string::npos) << r.err;
  r = run_cli({"decode", "--N", "8", "--in", tmp.file("s.txt"), "--method", "projection"});
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_NE(r.err.find("rank"), std::string::npos) << r.err;
}

TEST(CliEncodeDecode, QuantizedEncode) {
  TempDir tmp;
  const auto r = run_cli({"encode", "--N", "8", "--in", (kData / "x_n8.txt").string(), "--quantize", "--delta",
                          "0.125", "--out", tmp.file("q.txt")});
  ASSERT_EQ(r.code, kExitOk);
  const auto q = load_data_file(tmp.file("q.txt"));
  for (Eigen::Index i = 0; i < q.values.size(); ++i) {
    EXPECT_DOUBLE_EQ(q.values(i) / 0.125, std::round(q.values(i) / 0.125));
  }
}

TEST(CliEncodeDecode, MalformedInputs) {
  TempDir tmp;
  std::ofstream(tmp.file("bad.txt")) << "no header\n1\n";
  EXPECT_EQ(run_cli({"encode", "--N", "8", "--in", tmp.file("bad.txt")}).code, kExitUsage);
  EXPECT_EQ(run_cli({"encode", "--N", "4", "--in", (kData / "x_n8.txt").string()}).code, kExitUsage);
  EXPECT_EQ(run_cli({"encode", "--N", "8"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"decode", "--N", "8", "--in", (kData / "x_n8.txt").string()}).code, kExitUsage);
  EXPECT_EQ(run_cli({"encode", "--N", "8", "--filter-file", (kData / "nope.json").string(), "--in",
                     (kData / "x_n8.txt").string()})
                .code,
            kExitUsage);
}

TEST(CliEncodeDecode, FilterFile) {
  const auto r = run_cli({"verify", "--theorem", "1", "--filter-file", (kData / "db2.json").string(), "--N", "12"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(Json::parse(r.out).at("report").at("filter"), "daubechies4");
}

TEST(CliHelpers, ParseRange) {
  EXPECT_EQ(parse_range("3", 0, 9), (std::vector<std::size_t>{3}));
  EXPECT_EQ(parse_range("2:4", 0, 9), (std::vector<std::size_t>{2, 3, 4}));
  EXPECT_EQ(parse_range("all", 1, 3), (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_THROW(parse_range("4:2", 0, 9), Error);
  EXPECT_THROW(parse_range("10", 0, 9), Error);
  EXPECT_THROW(parse_range("x", 0, 9), Error);
  EXPECT_THROW(parse_range("1:", 0, 9), Error);
}

TEST(CliHelpers, ResolveWorkersHonorsCap) {
  ::setenv("RFTURBO_THREADS", "2", 1);
  EXPECT_EQ(resolve_workers(8), 2u);
  EXPECT_EQ(resolve_workers(1), 1u);
  ::unsetenv("RFTURBO_THREADS");
  EXPECT_EQ(resolve_workers(5), 5u);
  EXPECT_GE(resolve_workers(0), 1u);
}

TEST(CliHelpers, ConfigJsonRoundTrip) {
  ExperimentConfig c;
  c.n = 12;
  c.perm = "random";
  c.perm_seed = 77;
  c.burst_pairs = "1:3";
  c.noise = "subtractive_dither";
  ExperimentConfig back;
  back.merge_json(c.to_json());
  EXPECT_EQ(back.to_json(), c.to_json());
  EXPECT_TRUE(back.n_explicit);
  EXPECT_THROW(back.merge_json(Json::array()), Error);
}

}  // namespace
}  // namespace rfturbo::cli
