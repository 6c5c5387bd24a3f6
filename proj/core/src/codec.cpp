// SPDX-License-Identifier: Apache-2.0

#include "rfturbo/codec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rfturbo/error.hpp"

namespace rfturbo {

void CodeSpec::validate() const {
  filter.validate();
  if (perm.size() != n) {
    fail(ErrorKind::kSizeMismatch, "permutation size " + std::to_string(perm.size()) +
                                       " does not match N = " + std::to_string(n));
  }
  if (n % filter.channels != 0) {
    fail(ErrorKind::kBadBlockSize, "N = " + std::to_string(n) + " is not a multiple of M = " +
                                       std::to_string(filter.channels));
  }
}

EncodingMatrix build_code(const CodeSpec& spec) {
  spec.validate();
  EncodingMatrix em;
  em.channels = spec.filter.channels;
  em.systematic = build_analysis_matrix(spec.filter, spec.n, spec.mode);
  em.interleaved = permute_rows(em.systematic, spec.perm);
  em.stacked.resize(2 * em.systematic.rows(), em.systematic.cols());
  em.stacked << em.systematic, em.interleaved;
  return em;
}

Codeword encode(const EncodingMatrix& em, const Vector& x) {
  if (static_cast<std::size_t>(x.size()) != em.block_size()) {
    fail(ErrorKind::kDimensionMismatch, "encode: input length " + std::to_string(x.size()) +
                                            ", block size " + std::to_string(em.block_size()));
  }
  return {em.stacked * x};
}

std::string_view to_string(Ordering ordering) {
  return ordering == Ordering::kRowOrder ? "row_order" : "paper_interleaved";
}

Ordering parse_ordering(std::string_view text) {
  if (text == "row_order") return Ordering::kRowOrder;
  if (text == "paper_interleaved") return Ordering::kPaperInterleaved;
  fail(ErrorKind::kParse, "unknown ordering '" + std::string(text) + "'");
}

std::vector<Index> serialization_map(std::size_t n, std::size_t channels, Ordering ordering) {
  std::vector<Index> map;
  map.reserve(2 * n);
  if (ordering == Ordering::kRowOrder) {
    for (Index i = 0; i < 2 * n; ++i) map.push_back(i);
    return map;
  }
  if (channels == 0 || n % channels != 0) {
    fail(ErrorKind::kBadBlockSize, "interleaved ordering needs M | N");
  }
  const std::size_t samples = n / channels;
  for (std::size_t half = 0; half < 2; ++half) {
    for (std::size_t s0 = 0; s0 < samples; s0 += 2) {
      for (std::size_t c = 0; c < channels; ++c) {
        for (std::size_t s = s0; s < std::min(s0 + 2, samples); ++s) {
          map.push_back(half * n + s * channels + c);
        }
      }
    }
  }
  return map;
}

Vector serialize(const Codeword& cw, std::size_t channels, Ordering ordering) {
  const auto n = static_cast<std::size_t>(cw.y.size()) / 2;
  const auto map = serialization_map(n, channels, ordering);
  Vector out(cw.y.size());
  for (std::size_t p = 0; p < map.size(); ++p) {
    out(static_cast<Eigen::Index>(p)) = cw.y(static_cast<Eigen::Index>(map[p]));
  }
  return out;
}

Codeword deserialize(const Vector& serialized, std::size_t channels, Ordering ordering) {
  if (serialized.size() % 2 != 0) fail(ErrorKind::kSizeMismatch, "codeword length must be even");
  const auto n = static_cast<std::size_t>(serialized.size()) / 2;
  const auto map = serialization_map(n, channels, ordering);
  Codeword cw{Vector(serialized.size())};
  for (std::size_t p = 0; p < map.size(); ++p) {
    cw.y(static_cast<Eigen::Index>(map[p])) = serialized(static_cast<Eigen::Index>(p));
  }
  return cw;
}

std::string_view to_string(DecodeMethod method) {
  switch (method) {
    case DecodeMethod::kLeastSquares: return "least_squares";
    case DecodeMethod::kProjection: return "projection";
    case DecodeMethod::kYoula: return "youla";
  }
  return "unknown";
}

DecodeMethod parse_decode_method(std::string_view text) {
  if (text == "least_squares") return DecodeMethod::kLeastSquares;
  if (text == "projection") return DecodeMethod::kProjection;
  if (text == "youla") return DecodeMethod::kYoula;
  fail(ErrorKind::kParse, "unknown decode method '" + std::string(text) + "'");
}

namespace {

void check_survivors(const EncodingMatrix& em, const Survivors& s) {
  if (s.indices.empty()) fail(ErrorKind::kEmptySurvivorSet, "every codeword position was erased");
  if (static_cast<std::size_t>(s.values.size()) != s.indices.size()) {
    fail(ErrorKind::kSizeMismatch, "survivor indices and values differ in length");
  }
  std::vector<Index> sorted = s.indices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    fail(ErrorKind::kBadRange, "survivor indices must be distinct");
  }
  if (sorted.back() >= 2 * em.block_size()) fail(ErrorKind::kBadRange, "survivor index out of range");
}

double residual_norm(const EncodingMatrix& em, const Survivors& s, const Vector& x_hat) {
  return (select_rows(em.stacked, s.indices) * x_hat - s.values).norm();
}

// One half of the stacked code as seen by the receiver: the span of the
// surviving rows (orthonormal basis) and the observed signal's coordinates in
// that basis, fitted by least squares so noisy observations stay consistent.
struct HalfView {
  RowBasis rows;
  Vector coords;
  Vector projection() const { return rows.basis.transpose() * coords; }
};

struct SplitView {
  HalfView a;  // systematic T_s rows
  HalfView b;  // interleaved T_pi rows
};

SplitView split_observations(const EncodingMatrix& em, const Survivors& s, const Tolerance& tol) {
  const std::size_t n = em.block_size();
  std::vector<Index> rows_a;
  std::vector<Index> rows_b;
  std::vector<double> vals_a;
  std::vector<double> vals_b;
  for (std::size_t j = 0; j < s.indices.size(); ++j) {
    const Index i = s.indices[j];
    if (i < n) {
      rows_a.push_back(i);
      vals_a.push_back(s.values(static_cast<Eigen::Index>(j)));
    } else {
      rows_b.push_back(i - n);
      vals_b.push_back(s.values(static_cast<Eigen::Index>(j)));
    }
  }
  auto make_half = [&tol](const Matrix& full, const std::vector<Index>& rows, const std::vector<double>& vals) {
    HalfView h;
    h.rows = orthonormal_row_basis(select_rows(full, rows), tol);
    const Vector obs = Eigen::Map<const Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
    h.coords = min_norm_least_squares(h.rows.coeff_map, obs, tol);
    return h;
  };
  return {make_half(em.systematic, rows_a, vals_a), make_half(em.interleaved, rows_b, vals_b)};
}

// Is span(rows of `sub`) contained in span(rows of `basis`)? Both orthonormal.
bool contained_in(const Matrix& sub, const Matrix& basis, const Tolerance& tol) {
  if (sub.rows() == 0) return true;
  const Matrix residual = sub - (sub * basis.transpose()) * basis;
  return residual.norm() <= std::sqrt(tol.rank_eps);
}

}  // namespace

ReconstructionResult decode_least_squares(const EncodingMatrix& em, const Survivors& survivors,
                                          const Tolerance& tol) {
  check_survivors(em, survivors);
  const Matrix tr = select_rows(em.stacked, survivors.indices);
  ReconstructionResult out;
  out.method = DecodeMethod::kLeastSquares;
  out.rank_used = numerical_rank(tr, tol);
  out.reconstructible = out.rank_used == em.block_size();
  out.x_hat = min_norm_least_squares(tr, survivors.values, tol);
  out.residual = (tr * out.x_hat - survivors.values).norm();
  return out;
}

SubsetConditions subset_conditions(const EncodingMatrix& em, const std::vector<Index>& surviving,
                                   const Tolerance& tol) {
  Survivors s{surviving, Vector::Zero(static_cast<Eigen::Index>(surviving.size()))};
  check_survivors(em, s);
  const auto view = split_observations(em, s, tol);
  const std::size_t n = em.block_size();
  SubsetConditions c;
  c.a_perp_in_b = contained_in(complement_basis(view.a.rows.basis, n, tol), view.b.rows.basis, tol);
  c.b_perp_in_a = contained_in(complement_basis(view.b.rows.basis, n, tol), view.a.rows.basis, tol);
  return c;
}

ReconstructionResult decode_projection(const EncodingMatrix& em, const Survivors& survivors,
                                       const Tolerance& tol) {
  check_survivors(em, survivors);
  const std::size_t n = em.block_size();
  const auto view = split_observations(em, survivors, tol);

  auto one_shot = [n, &tol](const HalfView& primary, const HalfView& other, Vector& x_hat) {
    const Matrix lost = complement_basis(primary.rows.basis, n, tol);  // rows b_j
    if (!contained_in(lost, other.rows.basis, tol)) return false;
    // [P^perp P_other x]_j = sum_i <x, e_i> <b_j, e_i>
    const Vector coeff = (lost * other.rows.basis.transpose()) * other.coords;
    x_hat = primary.projection() + lost.transpose() * coeff;
    return true;
  };

  ReconstructionResult out;
  out.method = DecodeMethod::kProjection;
  if (!one_shot(view.a, view.b, out.x_hat) && !one_shot(view.b, view.a, out.x_hat)) {
    fail(ErrorKind::kNotReconstructible,
         "neither subspace inclusion holds for the surviving rows (systematic rank " +
             std::to_string(view.a.rows.basis.rows()) + ", interleaved rank " +
             std::to_string(view.b.rows.basis.rows()) + ", N = " + std::to_string(n) + ")");
  }
  out.reconstructible = true;
  out.rank_used = n;
  out.residual = residual_norm(em, survivors, out.x_hat);
  return out;
}

YoulaResult youla_iterate(const Vector& g, const Vector& h, const Matrix& basis_a, const Matrix& basis_b,
                          std::size_t max_iters, double tol) {
  const Eigen::Index n = g.size();
  if (h.size() != n || (basis_a.rows() > 0 && basis_a.cols() != n) ||
      (basis_b.rows() > 0 && basis_b.cols() != n)) {
    fail(ErrorKind::kDimensionMismatch, "youla_iterate: inconsistent dimensions");
  }
  auto proj = [](const Matrix& basis, const Vector& v) -> Vector {
    if (basis.rows() == 0) return Vector::Zero(v.size());
    return basis.transpose() * (basis * v);
  };

  YoulaResult out;
  out.f = g;
  for (std::size_t k = 1; k <= max_iters; ++k) {
    const Vector consistent = h + (out.f - proj(basis_b, out.f));
    const Vector next = g + (consistent - proj(basis_a, consistent));
    const double step = (next - out.f).norm();
    out.f = next;
    out.iterations = k;
    if (step <= tol * std::max(next.norm(), std::numeric_limits<double>::min())) {
      out.converged = true;
      break;
    }
  }
  return out;
}

ReconstructionResult decode_youla(const EncodingMatrix& em, const Survivors& survivors, std::size_t max_iters,
                                  double rel_tol, const Tolerance& tol) {
  check_survivors(em, survivors);
  const auto view = split_observations(em, survivors, tol);
  const auto it = youla_iterate(view.a.projection(), view.b.projection(), view.a.rows.basis, view.b.rows.basis,
                                max_iters, rel_tol);
  ReconstructionResult out;
  out.method = DecodeMethod::kYoula;
  out.x_hat = it.f;
  out.iterations = it.iterations;
  out.rank_used = numerical_rank(select_rows(em.stacked, survivors.indices), tol);
  out.reconstructible = it.converged && out.rank_used == em.block_size();
  out.residual = residual_norm(em, survivors, out.x_hat);
  return out;
}

ReconstructionResult decode(const EncodingMatrix& em, const Survivors& survivors, DecodeMethod method,
                            const Tolerance& tol) {
  switch (method) {
    case DecodeMethod::kLeastSquares: return decode_least_squares(em, survivors, tol);
    case DecodeMethod::kProjection: return decode_projection(em, survivors, tol);
    case DecodeMethod::kYoula: return decode_youla(em, survivors, 200, 1e-12, tol);
  }
  fail(ErrorKind::kInvalidArgument, "unknown decode method");
}

}  // namespace rfturbo
