#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace kldiv {

// Dense symmetric positive-definite matrix, row-major.
//
// Symmetry is validated at construction (max |A(i,j) - A(j,i)| must not
// exceed 1e-10 * max(1, max |A|)); it is never silently repaired.  Positive
// definiteness is established when the matrix is factored: cholesky() throws
// NotPositiveDefinite on the first bad pivot.
class SpdMatrix {
 public:
  SpdMatrix(std::size_t dim, std::vector<double> entries);

  static SpdMatrix identity(std::size_t dim);
  static SpdMatrix from_diagonal(std::span<const double> diag);
  static SpdMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t dim() const { return dim_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  std::span<const double> data() const { return entries_; }

  // Largest absolute entry; 0 for the (disallowed) empty matrix.
  double max_abs() const;

 private:
  std::size_t dim_;
  std::vector<double> entries_;
};

// Lower-triangular Cholesky factor L with L L^T equal to the source SPD
// matrix.  Only cholesky() creates instances, so the strictly positive
// diagonal is guaranteed by construction.
class CholeskyFactor {
 public:
  std::size_t dim() const { return dim_; }
  double operator()(std::size_t i, std::size_t j) const { return lower_[i * dim_ + j]; }
  std::span<const double> data() const { return lower_; }

  // log |A| of the factored matrix, computed as 2 * sum_i log L(i,i).
  // Never overflows for dimensions where the entries themselves are finite.
  double log_det() const;

 private:
  friend CholeskyFactor cholesky(const SpdMatrix& a);
  CholeskyFactor(std::size_t dim, std::vector<double> lower);

  std::size_t dim_;
  std::vector<double> lower_;
};

// Pivots below this threshold are treated as a degenerate covariance.
inline constexpr double kDegeneratePivot = 1e-300;

// Standard lower Cholesky factorization.  Throws NotPositiveDefinite when a
// pivot is <= 0 or below kDegeneratePivot.
CholeskyFactor cholesky(const SpdMatrix& a);

// Forward substitution: returns y with L y = b.
std::vector<double> solve_lower(const CholeskyFactor& l, std::span<const double> b);

// d^T A^{-1} d for the matrix factored by l_q, computed as the squared
// Euclidean norm of L^{-1} d.  Nonnegative by construction.
double quadratic_form(const CholeskyFactor& l_q, std::span<const double> d);

// tr(A^{-1} B) where l_q factors A.  Factors sigma_p internally and returns
// the squared Frobenius norm of L_q^{-1} L_p, which is nonnegative by
// construction.
double trace_solve_product(const CholeskyFactor& l_q, const SpdMatrix& sigma_p);

}  // namespace kldiv
