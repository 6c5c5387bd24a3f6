// SPDX-License-Identifier: Apache-2.0

#include "rfturbo/filterbank.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "rfturbo/error.hpp"

namespace rfturbo {

void FilterSpec::validate() const {
  if (channels < 1) fail(ErrorKind::kInvalidArgument, "filter bank needs at least one channel");
  if (length < channels || length % channels != 0) {
    fail(ErrorKind::kInvalidArgument, "filter length " + std::to_string(length) +
                                          " must be a positive multiple of M = " + std::to_string(channels));
  }
  if (coeffs.size() != channels) {
    fail(ErrorKind::kInvalidArgument, "expected " + std::to_string(channels) + " filters, got " +
                                          std::to_string(coeffs.size()));
  }
  for (const auto& h : coeffs) {
    if (h.size() != length) {
      fail(ErrorKind::kInvalidArgument, "every filter must have " + std::to_string(length) + " taps");
    }
    for (double v : h) {
      if (!std::isfinite(v)) fail(ErrorKind::kInvalidArgument, "non-finite filter tap");
    }
  }
}

PolyphaseMatrix::PolyphaseMatrix(std::size_t channels, std::size_t terms)
    : channels_(channels), terms_(terms), entries_(channels * channels, std::vector<double>(terms, 0.0)) {}

PolyphaseMatrix polyphase_decompose(const FilterSpec& f) {
  f.validate();
  const std::size_t m_ch = f.channels;
  // mM - n < L with n < M means m <= (L + M - 2) / M.
  const std::size_t terms = (f.length + m_ch - 2) / m_ch + 1;
  PolyphaseMatrix e(m_ch, terms);
  for (std::size_t k = 0; k < m_ch; ++k) {
    for (std::size_t n = 0; n < m_ch; ++n) {
      for (std::size_t m = 0; m < terms; ++m) {
        if (m * m_ch < n) continue;
        const std::size_t tap = m * m_ch - n;
        if (tap < f.length) e.entry(k, n)[m] = f.coeffs[k][tap];
      }
    }
  }
  return e;
}

std::vector<std::vector<double>> polyphase_reassemble(const PolyphaseMatrix& e, std::size_t length) {
  const std::size_t m_ch = e.channels();
  std::vector<std::vector<double>> h(m_ch, std::vector<double>(length, 0.0));
  for (std::size_t k = 0; k < m_ch; ++k) {
    for (std::size_t n = 0; n < m_ch; ++n) {
      for (std::size_t m = 0; m < e.terms(); ++m) {
        if (m * m_ch < n) continue;
        const std::size_t tap = m * m_ch - n;
        if (tap < length) h[k][tap] = e.entry(k, n)[m];
      }
    }
  }
  return h;
}

std::string_view to_string(BoundaryMode mode) {
  return mode == BoundaryMode::kCirculant ? "circulant" : "zero_tail";
}

BoundaryMode parse_boundary_mode(std::string_view text) {
  if (text == "circulant") return BoundaryMode::kCirculant;
  if (text == "zero_tail") return BoundaryMode::kZeroTail;
  fail(ErrorKind::kParse, "unknown boundary mode '" + std::string(text) + "'");
}

Matrix build_analysis_matrix(const FilterSpec& f, std::size_t n, BoundaryMode mode) {
  f.validate();
  const std::size_t m_ch = f.channels;
  const std::size_t len = f.length;
  if (n % m_ch != 0 || n < len) {
    fail(ErrorKind::kBadBlockSize, "N = " + std::to_string(n) + " must be a multiple of M = " +
                                       std::to_string(m_ch) + " and at least L = " + std::to_string(len));
  }
  Matrix t = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t block = 0; block < n / m_ch; ++block) {
    for (std::size_t k = 0; k < m_ch; ++k) {
      const auto row = static_cast<Eigen::Index>(block * m_ch + k);
      for (std::size_t tap = 0; tap < len; ++tap) {
        std::size_t col = block * m_ch + tap;
        if (col >= n) {
          if (mode == BoundaryMode::kZeroTail) break;
          col -= n;
        }
        t(row, static_cast<Eigen::Index>(col)) += f.coeffs[k][len - 1 - tap];
      }
    }
  }
  return t;
}

bool validate_orthonormal(const FilterSpec& f, const Tolerance& tol) {
  f.validate();
  const Matrix t = build_analysis_matrix(f, 2 * f.length, BoundaryMode::kCirculant);
  const Matrix gram = t * t.transpose();
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <= tol.eq_eps;
}

std::string_view to_string(FilterFamily family) {
  switch (family) {
    case FilterFamily::kHaar: return "haar";
    case FilterFamily::kBlockDct: return "block_dct";
    case FilterFamily::kLapped: return "lapped";
  }
  return "unknown";
}

FilterFamily parse_filter_family(std::string_view text) {
  if (text == "haar") return FilterFamily::kHaar;
  if (text == "block_dct" || text == "dct") return FilterFamily::kBlockDct;
  if (text == "lapped" || text == "mlt") return FilterFamily::kLapped;
  fail(ErrorKind::kParse, "unknown filter family '" + std::string(text) + "'");
}

namespace {

// Builders below describe the T_s row (time-reversed filter); this stores it
// back as h_k[n] = row[L - 1 - n].
template <typename RowFn>
FilterSpec from_rows(std::string name, std::size_t channels, std::size_t length, RowFn row_value) {
  FilterSpec f;
  f.name = std::move(name);
  f.channels = channels;
  f.length = length;
  f.coeffs.assign(channels, std::vector<double>(length, 0.0));
  for (std::size_t k = 0; k < channels; ++k) {
    for (std::size_t t = 0; t < length; ++t) f.coeffs[k][length - 1 - t] = row_value(k, t);
  }
  return f;
}

}  // namespace

FilterSpec builtin_family(FilterFamily family, std::size_t channels) {
  using std::numbers::pi;
  switch (family) {
    case FilterFamily::kHaar: {
      const double a = 1.0 / std::numbers::sqrt2;
      return from_rows("haar", 2, 2, [a](std::size_t k, std::size_t t) {
        return (k == 1 && t == 1) ? -a : a;
      });
    }
    case FilterFamily::kBlockDct: {
      if (channels < 2) fail(ErrorKind::kUnsupportedM, "block_dct needs M >= 2");
      const double em = static_cast<double>(channels);
      return from_rows("block_dct(" + std::to_string(channels) + ")", channels, channels,
                       [em](std::size_t k, std::size_t t) {
                         const double c = k == 0 ? std::sqrt(1.0 / em) : std::sqrt(2.0 / em);
                         return c * std::cos(pi * (static_cast<double>(t) + 0.5) * static_cast<double>(k) / em);
                       });
    }
    case FilterFamily::kLapped: {
      if (channels < 2) fail(ErrorKind::kUnsupportedM, "lapped needs M >= 2");
      const double em = static_cast<double>(channels);
      return from_rows("lapped(" + std::to_string(channels) + ")", channels, 2 * channels,
                       [em](std::size_t k, std::size_t t) {
                         const double tt = static_cast<double>(t);
                         const double window = std::sin((tt + 0.5) * pi / (2.0 * em));
                         return std::sqrt(2.0 / em) * window *
                                std::cos((tt + (em + 1.0) / 2.0) * (static_cast<double>(k) + 0.5) * pi / em);
                       });
    }
  }
  fail(ErrorKind::kInvalidArgument, "unknown filter family");
}

FrameBounds fb_frame_bounds(const FilterSpec& f, std::size_t n, RowScaling scaling, const Tolerance& tol) {
  Matrix t = build_analysis_matrix(f, n, BoundaryMode::kCirculant);
  if (scaling == RowScaling::kUnitNorm) {
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      const double norm = t.row(i).norm();
      if (norm > 0.0) t.row(i) /= norm;
    }
  }
  return bounds_of_rows(t, tol);
}

}  // namespace rfturbo
