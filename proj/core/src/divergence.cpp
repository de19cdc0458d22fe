#include "kldiv/divergence.hpp"

#include <cmath>
#include <string>

#include "kldiv/errors.hpp"
#include "kldiv/linalg.hpp"

namespace kldiv {

namespace {

void check_variance(double v) {
  if (!std::isfinite(v) || !(v >= kDegeneratePivot)) {
    throw NonPositiveVariance("kl: variance " + std::to_string(v) +
                              " is not a positive finite value above 1e-300");
  }
}

// Per-coordinate pieces of the diagonal formula.  (vp - vq)/vq and
// log1p((vq - vp)/vp) are the cancellation-free forms of vp/vq - 1 and
// log(vq) - log(vp); both are exactly 0 when vp == vq.
double ratio_minus_one(double vp, double vq) { return (vp - vq) / vq; }
double log_ratio(double vp, double vq) { return std::log1p((vq - vp) / vp); }

KlBreakdown kl_diagonal_breakdown(std::span<const double> mean_p, std::span<const double> var_p,
                                  std::span<const double> mean_q, std::span<const double> var_q) {
  const std::size_t k = mean_p.size();
  double log_det_sum = 0.0;
  double trace_plus_quad = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double d = mean_p[i] - mean_q[i];
    log_det_sum += log_ratio(var_p[i], var_q[i]);
    trace_plus_quad += var_p[i] / var_q[i] + d * d / var_q[i];
  }
  KlBreakdown b;
  b.h1 = 0.5 * log_det_sum;
  b.h2 = 0.5 * trace_plus_quad;
  b.h3 = 0.5 * static_cast<double>(k);
  b.total = (b.h1 + b.h2) - b.h3;
  return b;
}

KlBreakdown kl_full(std::span<const double> mean_p, const SpdMatrix& sigma_p,
                    std::span<const double> mean_q, const SpdMatrix& sigma_q) {
  const std::size_t k = mean_p.size();
  const CholeskyFactor l_q = cholesky(sigma_q);
  const CholeskyFactor l_p = cholesky(sigma_p);

  std::vector<double> diff(k);
  for (std::size_t i = 0; i < k; ++i) diff[i] = mean_p[i] - mean_q[i];

  KlBreakdown b;
  b.h1 = 0.5 * (l_q.log_det() - l_p.log_det());
  b.h2 = 0.5 * (trace_solve_product(l_q, sigma_p) + quadratic_form(l_q, diff));
  b.h3 = 0.5 * static_cast<double>(k);
  b.total = (b.h1 + b.h2) - b.h3;
  return b;
}

}  // namespace

KlBreakdown kl(const Gaussian& p, const Gaussian& q) {
  if (p.dim() != q.dim()) {
    throw DimensionMismatch("kl: P has dimension " + std::to_string(p.dim()) +
                            ", Q has dimension " + std::to_string(q.dim()));
  }
  if (p.covariance().is_diagonal() && q.covariance().is_diagonal()) {
    return kl_diagonal_breakdown(p.mean(), p.covariance().variances(),
                                 q.mean(), q.covariance().variances());
  }
  return kl_full(p.mean(), p.covariance().to_full(), q.mean(), q.covariance().to_full());
}

double kl_diagonal(std::span<const double> mean_p, std::span<const double> var_p,
                   std::span<const double> mean_q, std::span<const double> var_q) {
  const std::size_t k = mean_p.size();
  if (var_p.size() != k || mean_q.size() != k || var_q.size() != k) {
    throw DimensionMismatch("kl_diagonal: all four vectors must share one length");
  }
  if (k == 0) throw InvalidArgument("kl_diagonal: dimension must be positive");
  for (std::size_t i = 0; i < k; ++i) {
    check_variance(var_p[i]);
    check_variance(var_q[i]);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double d = mean_p[i] - mean_q[i];
    sum += ratio_minus_one(var_p[i], var_q[i]) + d * d / var_q[i] +
           log_ratio(var_p[i], var_q[i]);
  }
  return 0.5 * sum;
}

double kl_univariate(double mean_p, double var_p, double mean_q, double var_q) {
  check_variance(var_p);
  check_variance(var_q);
  const double d = mean_p - mean_q;
  return 0.5 * (ratio_minus_one(var_p, var_q) + d * d / var_q + log_ratio(var_p, var_q));
}

}  // namespace kldiv
