#pragma once

#include <span>
#include <vector>

namespace kldiv {

// Encoder output for one example: mean mu and elementwise log-variance of a
// diagonal Gaussian over the latent space.  The log-variance convention
// keeps variances positive under unconstrained optimization; entries must
// be finite and log_var must stay in [-80, 80] so exp() is finite and
// nonzero.  Full-covariance posteriors are out of scope here; route them
// through kl() against an explicit N(0, I).
class VaeKlParams {
 public:
  VaeKlParams(std::vector<double> mu, std::vector<double> log_var);

  std::size_t dim() const { return mu_.size(); }
  std::span<const double> mu() const { return mu_; }
  std::span<const double> log_var() const { return log_var_; }

 private:
  std::vector<double> mu_;
  std::vector<double> log_var_;
};

struct VaeKlGradient {
  std::vector<double> d_mu;
  std::vector<double> d_log_var;
};

struct VaeKlBatchResult {
  std::vector<double> values;
  double mean = 0.0;
};

// KL of N(mu, diag(exp(log_var))) against the standard-normal prior:
//   (1/2) sum_i ( exp(log_var_i) + mu_i^2 - 1 - log_var_i ).
// Zero exactly at mu = 0, log_var = 0.
double vae_kl(const VaeKlParams& params);

// Analytic gradient:  d/d mu_i = mu_i,   d/d log_var_i = (exp(log_var_i) - 1) / 2.
VaeKlGradient vae_kl_gradient(const VaeKlParams& params);

// Central finite differences of vae_kl against the analytic gradient.
// Returns max_i |analytic_i - numeric_i| / max(1, |analytic_i|) over all 2k
// coordinates.  step must lie in (1e-9, 1e-2).
double finite_difference_check(const VaeKlParams& params, double step);

// Row-wise vae_kl over a batch plus the arithmetic mean, accumulated in row
// order.  All rows must share one dimension; the batch must be non-empty.
VaeKlBatchResult vae_kl_batch(std::span<const VaeKlParams> rows);

}  // namespace kldiv
