#include "kldiv/vae_kl.hpp"

#include <cmath>
#include <string>

#include "kldiv/errors.hpp"

namespace kldiv {

namespace {

constexpr double kLogVarBound = 80.0;

double term(double mu, double log_var) {
  return std::exp(log_var) + mu * mu - 1.0 - log_var;
}

double value(std::span<const double> mu, std::span<const double> log_var) {
  double s = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) s += term(mu[i], log_var[i]);
  return 0.5 * s;
}

}  // namespace

VaeKlParams::VaeKlParams(std::vector<double> mu, std::vector<double> log_var)
    : mu_(std::move(mu)), log_var_(std::move(log_var)) {
  if (mu_.empty()) throw InvalidArgument("VaeKlParams: dimension must be positive");
  if (mu_.size() != log_var_.size()) {
    throw DimensionMismatch("VaeKlParams: mu has length " + std::to_string(mu_.size()) +
                            ", log_var has length " + std::to_string(log_var_.size()));
  }
  for (double v : mu_) {
    if (!std::isfinite(v)) throw NonFinite("VaeKlParams: mu entries must be finite");
  }
  for (double v : log_var_) {
    if (!std::isfinite(v)) throw NonFinite("VaeKlParams: log_var entries must be finite");
    if (std::abs(v) > kLogVarBound) {
      throw InvalidArgument("VaeKlParams: log_var entry " + std::to_string(v) +
                            " outside [-80, 80]");
    }
  }
}

double vae_kl(const VaeKlParams& params) {
  return value(params.mu(), params.log_var());
}

VaeKlGradient vae_kl_gradient(const VaeKlParams& params) {
  const std::size_t k = params.dim();
  VaeKlGradient g;
  g.d_mu.assign(params.mu().begin(), params.mu().end());
  g.d_log_var.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    g.d_log_var[i] = 0.5 * (std::exp(params.log_var()[i]) - 1.0);
  }
  return g;
}

double finite_difference_check(const VaeKlParams& params, double step) {
  if (!(step > 1e-9 && step < 1e-2)) {
    throw InvalidArgument("finite_difference_check: step must lie in (1e-9, 1e-2)");
  }
  const std::size_t k = params.dim();
  const VaeKlGradient analytic = vae_kl_gradient(params);

  std::vector<double> mu(params.mu().begin(), params.mu().end());
  std::vector<double> lv(params.log_var().begin(), params.log_var().end());

  double worst = 0.0;
  auto probe = [&](std::vector<double>& coords, std::size_t i, double analytic_i) {
    const double saved = coords[i];
    coords[i] = saved + step;
    const double up = value(mu, lv);
    coords[i] = saved - step;
    const double down = value(mu, lv);
    coords[i] = saved;
    const double numeric = (up - down) / (2.0 * step);
    const double err = std::abs(analytic_i - numeric) / std::max(1.0, std::abs(analytic_i));
    worst = std::max(worst, err);
  };
  for (std::size_t i = 0; i < k; ++i) probe(mu, i, analytic.d_mu[i]);
  for (std::size_t i = 0; i < k; ++i) probe(lv, i, analytic.d_log_var[i]);
  return worst;
}

VaeKlBatchResult vae_kl_batch(std::span<const VaeKlParams> rows) {
  if (rows.empty()) throw InvalidArgument("vae_kl_batch: batch must be non-empty");
  const std::size_t k = rows.front().dim();
  VaeKlBatchResult result;
  result.values.reserve(rows.size());
  double sum = 0.0;
  for (const VaeKlParams& row : rows) {
    if (row.dim() != k) {
      throw RaggedBatch("vae_kl_batch: row dimension " + std::to_string(row.dim()) +
                        " differs from " + std::to_string(k));
    }
    const double v = vae_kl(row);
    result.values.push_back(v);
    sum += v;
  }
  result.mean = sum / static_cast<double>(rows.size());
  return result;
}

}  // namespace kldiv
