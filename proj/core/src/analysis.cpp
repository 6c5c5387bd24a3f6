// SPDX-License-Identifier: Apache-2.0

#include "rfturbo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "rfturbo/error.hpp"

namespace rfturbo {

Matrix surviving_rows(const EncodingMatrix& em, const ErasurePattern& pattern) {
  if (pattern.block_size() != em.block_size()) {
    fail(ErrorKind::kSizeMismatch, "pattern N = " + std::to_string(pattern.block_size()) +
                                       " but code N = " + std::to_string(em.block_size()));
  }
  const auto rows = pattern.survivors();
  return select_rows(em.stacked, rows);
}

double predicted_mse(const EncodingMatrix& em, const ErasurePattern& pattern, double sigma2,
                     const Tolerance& tol) {
  const Matrix tr = surviving_rows(em, pattern);
  if (tr.rows() == 0) fail(ErrorKind::kNotReconstructible, "no surviving rows");
  try {
    return sigma2 * gram_trace_inverse(tr, tol);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kSingularGram) throw;
    fail(ErrorKind::kNotReconstructible, std::string("surviving rows do not span R^N (") + e.what() + ")");
  }
}

namespace {

// 53-bit uniform in [0, 1); fixed so trial streams match across toolchains.
double unit_uniform(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

}  // namespace

MseReport empirical_mse(const EncodingMatrix& em, const ErasurePattern& pattern, const QuantizerSpec& q,
                        std::size_t trials, std::uint64_t seed, NoiseModel noise, const Tolerance& tol) {
  if (trials < 1) fail(ErrorKind::kInvalidArgument, "trials must be >= 1");
  MseReport report;
  report.sigma2 = q.variance();
  report.trials = trials;
  report.seed = seed;
  report.noise = noise;
  report.pattern = pattern;
  report.predicted = predicted_mse(em, pattern, report.sigma2, tol);

  const Matrix tr = surviving_rows(em, pattern);
  const LeastSquaresSolver solver(tr, tol);
  const auto n = static_cast<Eigen::Index>(em.block_size());
  std::mt19937_64 gen(seed);
  std::mt19937_64 dither_gen(seed ^ 0x9e3779b97f4a7c15ULL);

  // Batches keep memory flat for large trial counts without changing the
  // sequence of draws.
  constexpr std::size_t kBatch = 512;
  double total = 0.0;
  for (std::size_t done = 0; done < trials; done += kBatch) {
    const auto cols = static_cast<Eigen::Index>(std::min(kBatch, trials - done));
    Matrix x(n, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
      for (Eigen::Index r = 0; r < n; ++r) x(r, c) = 2.0 * unit_uniform(gen) - 1.0;
    }
    const double step = q.step();
    Matrix y = tr * x;
    if (noise == NoiseModel::kSubtractiveDither) {
      Matrix d(y.rows(), y.cols());
      for (Eigen::Index c = 0; c < d.cols(); ++c) {
        for (Eigen::Index r = 0; r < d.rows(); ++r) d(r, c) = (unit_uniform(dither_gen) - 0.5) * step;
      }
      y = (y + d).unaryExpr([step](double v) { return step * std::round(v / step); }) - d;
    } else {
      y = y.unaryExpr([step](double v) { return step * std::round(v / step); });
    }
    total += (solver.solve(y) - x).colwise().squaredNorm().sum();
  }
  report.empirical = total / static_cast<double>(trials);
  return report;
}

MseReport empirical_mse(const CodeSpec& spec, const ErasurePattern& pattern, const QuantizerSpec& q,
                        std::size_t trials, std::uint64_t seed, NoiseModel noise, const Tolerance& tol) {
  return empirical_mse(build_code(spec), pattern, q, trials, seed, noise, tol);
}

EigenSpread eigen_spread(const EncodingMatrix& em, const ErasurePattern& pattern, const Tolerance& tol) {
  const Matrix tr = surviving_rows(em, pattern);
  EigenSpread out;
  if (tr.rows() == 0) {
    out.ratio = std::numeric_limits<double>::infinity();
    return out;
  }
  const Matrix gram = tr.transpose() * tr;
  const auto ext = sym_eig_extremes(0.5 * (gram + gram.transpose()), tol);
  out.lambda_max = ext.max;
  if (numerical_rank(tr, tol) < em.block_size()) {
    out.lambda_min = 0.0;
    out.ratio = std::numeric_limits<double>::infinity();
  } else {
    out.lambda_min = ext.min;
    out.ratio = ext.max / ext.min;
  }
  return out;
}

bool recoverable(const EncodingMatrix& em, const ErasurePattern& pattern, const Tolerance& tol) {
  const Matrix tr = surviving_rows(em, pattern);
  return tr.rows() > 0 && numerical_rank(tr, tol) == em.block_size();
}

std::optional<double> trace_if_recoverable(const EncodingMatrix& em, const ErasurePattern& pattern,
                                           const Tolerance& tol) {
  const Matrix tr = surviving_rows(em, pattern);
  const auto n = static_cast<Eigen::Index>(em.block_size());
  if (tr.rows() < n) return std::nullopt;
  const Matrix gram = tr.transpose() * tr;
  const Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  const Vector& ev = es.eigenvalues();
  const double screen = std::max(1e-8, 4.0 * tol.rank_eps * tol.rank_eps);
  if (ev(n - 1) > 0.0 && ev(0) > screen * ev(n - 1)) return ev.cwiseInverse().sum();
  if (numerical_rank(tr, tol) < em.block_size()) return std::nullopt;
  return gram_trace_inverse(tr, tol);
}

BurstScan scan_paired_bursts(const EncodingMatrix& em, Index start, const Tolerance& tol) {
  BurstScan scan;
  const std::size_t n = em.block_size();
  for (std::size_t p = 1; p <= n; ++p) {
    ++scan.tested;
    if (!recoverable(em, paired_burst(n, start, p), tol)) break;
    scan.max_pairs = p;
  }
  return scan;
}

std::optional<std::size_t> strict_k(std::size_t m, std::size_t n) {
  if (m == 0 || n % 2 != 0) return std::nullopt;
  const std::size_t half = n / 2;
  if (half % m == 0) return std::nullopt;
  return half / m + 1;
}

namespace {

std::string perm_label(const Permutation& p) {
  if (p.is_identity()) return "identity";
  if (p.size() % 2 == 0 && p == half_shift(p.size())) return "half_shift";
  return "custom";
}

// Shared tail of the theorem 2/3 oracles: scan bursts, compare the
// maximum with the claimed bound, record witnesses.
void run_burst_oracle(const EncodingMatrix& em, RecoverabilityReport& report, const OracleOptions& options,
                      const Tolerance& tol) {
  const std::size_t n = em.block_size();
  const std::size_t starts = options.all_starts ? n : 1;
  report.max_pairs_recoverable = n;
  for (Index s = 0; s < starts; ++s) {
    const auto scan = scan_paired_bursts(em, s, tol);
    report.per_start_max.push_back(scan.max_pairs);
    report.patterns_tested += scan.tested;
    report.max_pairs_recoverable = std::min(report.max_pairs_recoverable, scan.max_pairs);
  }
  const std::size_t found = report.per_start_max.front();
  if (found > 0) report.last_success = BurstWitness{0, found, true};
  if (found < n) report.first_failure = BurstWitness{0, found + 1, false};

  for (Index s = 0; s < starts; ++s) {
    const std::size_t observed = report.per_start_max[s];
    if (observed < report.claimed_bound) {
      report.contradictions.push_back({s, std::min(observed + 1, n), false});
    } else if (observed > report.claimed_bound) {
      report.contradictions.push_back({s, report.claimed_bound + 1, true});
    }
  }
  report.agree = report.contradictions.empty();
}

}  // namespace

RecoverabilityReport verify_theorem1(const FilterSpec& filter, std::size_t n, const Tolerance& tol) {
  if (n % 2 != 0) fail(ErrorKind::kOddSize, "theorem 1 oracle needs even N");
  return verify_theorem1(filter, n, half_shift(n), tol);
}

RecoverabilityReport verify_theorem1(const FilterSpec& filter, std::size_t n, const Permutation& perm,
                                     const Tolerance& tol) {
  if (filter.channels != 2) fail(ErrorKind::kUnsupportedM, "theorem 1 oracle needs a two-channel bank");
  if (n % 2 != 0) fail(ErrorKind::kOddSize, "theorem 1 oracle needs even N");
  const auto em = build_code({filter, n, perm, BoundaryMode::kCirculant});

  RecoverabilityReport report;
  report.check = "theorem1";
  report.filter = filter.name;
  report.channels = filter.channels;
  report.length = filter.length;
  report.n = n;
  report.perm = perm_label(perm);
  report.claimed_bound = n / 2;
  report.max_pairs_recoverable = n;

  for (Index s = 0; s < n; ++s) {
    const auto scan = scan_paired_bursts(em, s, tol);
    report.per_start_max.push_back(scan.max_pairs);
    report.patterns_tested += scan.tested;
    report.max_pairs_recoverable = std::min(report.max_pairs_recoverable, scan.max_pairs);

    const bool at_bound = recoverable(em, paired_burst(n, s, n / 2), tol);
    const bool past_bound = recoverable(em, paired_burst(n, s, n / 2 + 1), tol);
    report.patterns_tested += 2;
    if (!at_bound) report.contradictions.push_back({s, n / 2, false});
    if (past_bound) report.contradictions.push_back({s, n / 2 + 1, true});
  }
  const std::size_t found = report.per_start_max.front();
  if (found > 0) report.last_success = BurstWitness{0, found, true};
  if (found < n) report.first_failure = BurstWitness{0, found + 1, false};
  report.agree = report.contradictions.empty();
  return report;
}

RecoverabilityReport verify_theorem2(std::size_t m, std::size_t n, const Tolerance& tol,
                                     const OracleOptions& options) {
  if (m < 2) fail(ErrorKind::kUnsupportedM, "theorem 2 oracle needs M >= 2");
  if (n % m != 0 || n % 2 != 0) {
    fail(ErrorKind::kBadBlockSize, "theorem 2 oracle needs N = rM with N even");
  }
  const auto k = strict_k(m, n);
  if (!k) {
    fail(ErrorKind::kBoundaryCase, "M = " + std::to_string(m) + " divides N/2 = " + std::to_string(n / 2) +
                                       "; (k-1)M < N/2 < kM has no solution");
  }
  const FilterSpec filter = builtin_family(FilterFamily::kBlockDct, m);
  const auto em = build_code({filter, n, half_shift(n), BoundaryMode::kCirculant});

  RecoverabilityReport report;
  report.check = "theorem2";
  report.filter = filter.name;
  report.channels = m;
  report.length = filter.length;
  report.n = n;
  report.perm = "half_shift";
  report.k = *k;
  report.claimed_bound = *k * m - 1;
  run_burst_oracle(em, report, options, tol);
  return report;
}

RecoverabilityReport verify_theorem3(std::size_t m, std::size_t n, const Tolerance& tol,
                                     const OracleOptions& options) {
  if (m < 2) fail(ErrorKind::kUnsupportedM, "theorem 3 oracle needs M >= 2");
  if (n % m != 0 || n % 2 != 0) {
    fail(ErrorKind::kBadBlockSize, "theorem 3 oracle needs N = rM with N even");
  }
  const FilterSpec filter = builtin_family(FilterFamily::kLapped, m);
  const auto em = build_code({filter, n, half_shift(n), BoundaryMode::kCirculant});

  RecoverabilityReport report;
  report.check = "theorem3";
  report.filter = filter.name;
  report.channels = m;
  report.length = filter.length;
  report.n = n;
  report.perm = "half_shift";
  // k is only defined through the strict inequality; when M | N/2 use the
  // largest k with (k-1)M <= N/2 so the margin stays well defined.
  report.k = strict_k(m, n).value_or(n / 2 / m + 1);
  report.margin = n / 2 - (report.k - 1) * m;
  report.claimed_bound = m + n / 2;
  run_burst_oracle(em, report, options, tol);
  return report;
}

EncodingMatrix block_dct_code(std::size_t m, std::size_t n) {
  if (m < 2) fail(ErrorKind::kUnsupportedM, "block DCT needs M >= 2");
  if (n < m || n % 2 != 0) fail(ErrorKind::kBadBlockSize, "block DCT code needs even N >= M");
  const std::size_t full_blocks = n / m;
  const std::size_t rem = n % m;
  Matrix ts = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const Matrix block = build_analysis_matrix(builtin_family(FilterFamily::kBlockDct, m), m);
  for (std::size_t b = 0; b < full_blocks; ++b) {
    const auto at = static_cast<Eigen::Index>(b * m);
    ts.block(at, at, block.rows(), block.cols()) = block;
  }
  if (rem > 0) {
    const auto at = static_cast<Eigen::Index>(full_blocks * m);
    const auto r = static_cast<Eigen::Index>(rem);
    if (rem == 1) {
      ts(at, at) = 1.0;
    } else {
      ts.block(at, at, r, r) = build_analysis_matrix(builtin_family(FilterFamily::kBlockDct, rem), rem);
    }
  }
  EncodingMatrix em;
  em.channels = m;
  em.systematic = ts;
  em.interleaved = permute_rows(ts, half_shift(n));
  em.stacked.resize(2 * ts.rows(), ts.cols());
  em.stacked << em.systematic, em.interleaved;
  return em;
}

std::vector<CorollaryRow> corollary1_table(std::size_t n, const std::vector<std::size_t>& channels,
                                           const Tolerance& tol) {
  std::vector<CorollaryRow> rows;
  for (std::size_t m : channels) {
    CorollaryRow row;
    row.channels = m;
    row.remainder_block = n % m;
    const auto k = strict_k(m, n);
    if (!k) fail(ErrorKind::kBoundaryCase, "M = " + std::to_string(m) + " divides N/2");
    row.k = *k;
    row.formula_symbols = 2 * (*k * m - 1);
    const auto em = block_dct_code(m, n);
    row.oracle_symbols = 2 * scan_paired_bursts(em, 0, tol).max_pairs;
    row.agree = row.formula_symbols == row.oracle_symbols;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rfturbo
