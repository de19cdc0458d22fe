#pragma once

#include <span>

#include "kldiv/gaussian.hpp"

namespace kldiv {

// Three-term decomposition of the closed-form KL divergence between
// Gaussians P = N(mu1, Sigma1) and Q = N(mu2, Sigma2):
//
//   h1 = (1/2) (log |Sigma2| - log |Sigma1|)
//   h2 = (1/2) (tr(Sigma2^{-1} Sigma1)
//               + (mu1 - mu2)^T Sigma2^{-1} (mu1 - mu2))
//   h3 = k / 2
//
// The 1/2 of the trace-plus-quadratic term is folded into h2, so that
// total = h1 + h2 - h3 holds with no extra arithmetic; total is stored as
// exactly that sum, evaluated as (h1 + h2) - h3, never recomputed another
// way.  h2 >= 0 by construction and h3 is exactly k/2.
struct KlBreakdown {
  double h1 = 0.0;
  double h2 = 0.0;
  double h3 = 0.0;
  double total = 0.0;

  // Round-off can leave a tiny negative total for near-identical inputs
  // even though the divergence is nonnegative; totals within -1e-10 of
  // zero are reported as 0.  The raw value stays in `total`.
  double clamped_total() const {
    return (total < 0.0 && total >= -1e-10) ? 0.0 : total;
  }
};

// Closed-form KL divergence D(P || Q) with breakdown,
//
//   total = (1/2) (tr(Sigma2^{-1} Sigma1)
//                  + (mu1 - mu2)^T Sigma2^{-1} (mu1 - mu2)
//                  - k + log |Sigma2| - log |Sigma1|).
//
// When both covariances are diagonal the terms are accumulated elementwise
// without forming matrices; a mixed pair promotes the diagonal operand to a
// full matrix.  Log-determinants always come from Cholesky factors (or
// elementwise logs), never from a determinant ratio.
KlBreakdown kl(const Gaussian& p, const Gaussian& q);

// Diagonal-covariance fast path:
//   (1/2) sum_i [ vp_i/vq_i + (mp_i - mq_i)^2/vq_i - 1 + log vq_i - log vp_i ]
// accumulated per coordinate in index order.  Identical inputs give exactly 0.
double kl_diagonal(std::span<const double> mean_p, std::span<const double> var_p,
                   std::span<const double> mean_q, std::span<const double> var_q);

// k = 1 specialization:
//   (1/2) ( vp/vq + (mp - mq)^2/vq - 1 + log(vq/vp) ).
double kl_univariate(double mean_p, double var_p, double mean_q, double var_q);

}  // namespace kldiv
