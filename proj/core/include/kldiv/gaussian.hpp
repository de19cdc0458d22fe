#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "kldiv/linalg.hpp"

namespace kldiv {

// Covariance of a multivariate Gaussian: either a full SPD matrix or a
// vector of positive per-coordinate variances.  There is no silent
// promotion between the two; callers pick the representation and the
// divergence code dispatches on it explicitly.
class Covariance {
 public:
  static Covariance full(SpdMatrix matrix);
  static Covariance diagonal(std::vector<double> variances);

  bool is_diagonal() const { return std::holds_alternative<std::vector<double>>(repr_); }
  std::size_t dim() const;

  // Only valid for the matching representation.
  const SpdMatrix& full_matrix() const { return std::get<SpdMatrix>(repr_); }
  std::span<const double> variances() const { return std::get<std::vector<double>>(repr_); }

  // Explicit promotion to a dense SPD matrix (copy when already full).
  SpdMatrix to_full() const;

  // Largest diagonal entry (largest per-coordinate variance).
  double max_variance() const;

 private:
  explicit Covariance(std::variant<SpdMatrix, std::vector<double>> repr)
      : repr_(std::move(repr)) {}
  std::variant<SpdMatrix, std::vector<double>> repr_;
};

class Gaussian {
 public:
  Gaussian(std::vector<double> mean, Covariance covariance);

  // N(0, I_k).
  static Gaussian standard(std::size_t dim);

  std::size_t dim() const { return mean_.size(); }
  std::span<const double> mean() const { return mean_; }
  const Covariance& covariance() const { return covariance_; }

 private:
  std::vector<double> mean_;
  Covariance covariance_;
};

// Deterministic batch of draws; rows is n x dim, row-major.  Identical
// (distribution, seed, n) always reproduce the same rows bit for bit.
struct SampleBatch {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<double> rows;
  std::uint64_t seed = 0;

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(rows).subspan(i * dim, dim);
  }
};

struct SecondMomentReport {
  double max_abs_deviation = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

// Gaussian log-density
//   -(k/2) log(2 pi) - (1/2) log |Sigma| - (1/2) (x - mu)^T Sigma^{-1} (x - mu)
// with the quadratic form evaluated through the Cholesky factor.
double log_density(const Gaussian& g, std::span<const double> x);

// Prepares the factorization once so the density can be evaluated for many
// points.  This is what the Monte Carlo estimator uses.
class LogDensityEvaluator {
 public:
  explicit LogDensityEvaluator(const Gaussian& g);
  double operator()(std::span<const double> x) const;
  std::size_t dim() const { return mean_.size(); }

 private:
  std::vector<double> mean_;
  std::vector<double> variances_;            // diagonal case
  std::optional<CholeskyFactor> factor_;     // full case
  double log_det_ = 0.0;
  mutable std::vector<double> centered_;     // scratch, size k
};

// Draw n rows x_i = mu + L eps_i, where L is the Cholesky factor of Sigma
// (elementwise sqrt(variance) scaling in the diagonal case) and the eps_i
// are standard-normal deviates from the counter stream in rng.hpp: row i,
// coordinate c consumes deviate index i * k + c of the given seed.
SampleBatch sample(const Gaussian& g, std::uint64_t seed, std::size_t n);

// Compares the sampled second moment E[x x^T] against Sigma + mu mu^T.
// Passes when the max elementwise deviation is below
// 5 * max(1, max_i Sigma_ii) / sqrt(n).  Requires n >= 1000.
SecondMomentReport second_moment_check(const Gaussian& g, std::uint64_t seed, std::size_t n);

}  // namespace kldiv
