#include "kldiv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kldiv/errors.hpp"

namespace kldiv {

namespace {

constexpr double kSymmetryTol = 1e-10;

std::string at(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

}  // namespace

SpdMatrix::SpdMatrix(std::size_t dim, std::vector<double> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim_ == 0) {
    throw InvalidArgument("SpdMatrix: dimension must be positive");
  }
  if (entries_.size() != dim_ * dim_) {
    throw DimensionMismatch("SpdMatrix: expected " + std::to_string(dim_ * dim_) +
                            " entries, got " + std::to_string(entries_.size()));
  }
  for (double v : entries_) {
    if (!std::isfinite(v)) {
      throw NonFinite("SpdMatrix: entries must be finite");
    }
  }
  const double scale = std::max(1.0, max_abs());
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i + 1; j < dim_; ++j) {
      const double asym = std::abs((*this)(i, j) - (*this)(j, i));
      if (asym > kSymmetryTol * scale) {
        throw NotSymmetric("SpdMatrix: entries " + at(i, j) + " and " + at(j, i) +
                           " differ by " + std::to_string(asym));
      }
    }
  }
}

SpdMatrix SpdMatrix::identity(std::size_t dim) {
  std::vector<double> e(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1.0;
  return SpdMatrix(dim, std::move(e));
}

SpdMatrix SpdMatrix::from_diagonal(std::span<const double> diag) {
  const std::size_t k = diag.size();
  std::vector<double> e(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) e[i * k + i] = diag[i];
  return SpdMatrix(k, std::move(e));
}

SpdMatrix SpdMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t k = rows.size();
  std::vector<double> e;
  e.reserve(k * k);
  for (const auto& row : rows) {
    if (row.size() != k) {
      throw DimensionMismatch("SpdMatrix: ragged row in from_rows");
    }
    e.insert(e.end(), row.begin(), row.end());
  }
  return SpdMatrix(k, std::move(e));
}

double SpdMatrix::max_abs() const {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

CholeskyFactor::CholeskyFactor(std::size_t dim, std::vector<double> lower)
    : dim_(dim), lower_(std::move(lower)) {}

double CholeskyFactor::log_det() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) s += std::log(lower_[i * dim_ + i]);
  return 2.0 * s;
}

CholeskyFactor cholesky(const SpdMatrix& a) {
  const std::size_t k = a.dim();
  std::vector<double> l(k * k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    double pivot = a(j, j);
    for (std::size_t m = 0; m < j; ++m) pivot -= l[j * k + m] * l[j * k + m];
    if (!(pivot >= kDegeneratePivot)) {
      throw NotPositiveDefinite("cholesky: pivot " + std::to_string(pivot) +
                                " at column " + std::to_string(j) +
                                " (matrix is singular or indefinite)");
    }
    const double diag = std::sqrt(pivot);
    l[j * k + j] = diag;
    for (std::size_t i = j + 1; i < k; ++i) {
      double s = a(i, j);
      for (std::size_t m = 0; m < j; ++m) s -= l[i * k + m] * l[j * k + m];
      l[i * k + j] = s / diag;
    }
  }
  return CholeskyFactor(k, std::move(l));
}

std::vector<double> solve_lower(const CholeskyFactor& l, std::span<const double> b) {
  const std::size_t k = l.dim();
  if (b.size() != k) {
    throw DimensionMismatch("solve_lower: factor dim " + std::to_string(k) +
                            ", rhs length " + std::to_string(b.size()));
  }
  std::vector<double> y(k);
  for (std::size_t i = 0; i < k; ++i) {
    double s = b[i];
    for (std::size_t j = 0; j < i; ++j) s -= l(i, j) * y[j];
    y[i] = s / l(i, i);
  }
  return y;
}

double quadratic_form(const CholeskyFactor& l_q, std::span<const double> d) {
  const std::vector<double> y = solve_lower(l_q, d);
  double s = 0.0;
  for (double v : y) s += v * v;
  return s;
}

double trace_solve_product(const CholeskyFactor& l_q, const SpdMatrix& sigma_p) {
  const std::size_t k = l_q.dim();
  if (sigma_p.dim() != k) {
    throw DimensionMismatch("trace_solve_product: factor dim " + std::to_string(k) +
                            ", matrix dim " + std::to_string(sigma_p.dim()));
  }
  const CholeskyFactor l_p = cholesky(sigma_p);
  // tr(Q^{-1} P) = ||L_q^{-1} L_p||_F^2; solve one column of L_p at a time.
  double total = 0.0;
  std::vector<double> col(k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < k; ++i) col[i] = l_p(i, j);
    total += quadratic_form(l_q, col);
  }
  return total;
}

}  // namespace kldiv
