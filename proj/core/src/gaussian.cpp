#include "kldiv/gaussian.hpp"

#include <cmath>
#include <string>

#include "kldiv/errors.hpp"
#include "kldiv/rng.hpp"

namespace kldiv {

namespace {

constexpr double kLog2Pi = 0x1.d67f1c864beb4p+0;  // log(2 pi)

void check_dim(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw DimensionMismatch(std::string(what) + ": expected length " +
                            std::to_string(expected) + ", got " + std::to_string(got));
  }
}

}  // namespace

Covariance Covariance::full(SpdMatrix matrix) {
  return Covariance(std::variant<SpdMatrix, std::vector<double>>(std::move(matrix)));
}

Covariance Covariance::diagonal(std::vector<double> variances) {
  if (variances.empty()) {
    throw InvalidArgument("Covariance::diagonal: dimension must be positive");
  }
  for (double v : variances) {
    if (!std::isfinite(v) || !(v >= kDegeneratePivot)) {
      throw NonPositiveVariance("Covariance::diagonal: variance " + std::to_string(v) +
                                " is not a positive finite value above 1e-300");
    }
  }
  return Covariance(std::variant<SpdMatrix, std::vector<double>>(std::move(variances)));
}

std::size_t Covariance::dim() const {
  if (is_diagonal()) return std::get<std::vector<double>>(repr_).size();
  return std::get<SpdMatrix>(repr_).dim();
}

SpdMatrix Covariance::to_full() const {
  if (is_diagonal()) return SpdMatrix::from_diagonal(variances());
  return full_matrix();
}

double Covariance::max_variance() const {
  double m = 0.0;
  if (is_diagonal()) {
    for (double v : variances()) m = std::max(m, v);
  } else {
    const SpdMatrix& s = full_matrix();
    for (std::size_t i = 0; i < s.dim(); ++i) m = std::max(m, s(i, i));
  }
  return m;
}

Gaussian::Gaussian(std::vector<double> mean, Covariance covariance)
    : mean_(std::move(mean)), covariance_(std::move(covariance)) {
  if (mean_.empty()) {
    throw InvalidArgument("Gaussian: dimension must be positive");
  }
  check_dim(covariance_.dim(), mean_.size(), "Gaussian mean");
  for (double v : mean_) {
    if (!std::isfinite(v)) throw NonFinite("Gaussian: mean entries must be finite");
  }
}

Gaussian Gaussian::standard(std::size_t dim) {
  return Gaussian(std::vector<double>(dim, 0.0),
                  Covariance::diagonal(std::vector<double>(dim, 1.0)));
}

LogDensityEvaluator::LogDensityEvaluator(const Gaussian& g)
    : mean_(g.mean().begin(), g.mean().end()), centered_(g.dim()) {
  if (g.covariance().is_diagonal()) {
    variances_.assign(g.covariance().variances().begin(), g.covariance().variances().end());
    double s = 0.0;
    for (double v : variances_) s += std::log(v);
    log_det_ = s;
  } else {
    factor_.emplace(cholesky(g.covariance().full_matrix()));
    log_det_ = factor_->log_det();
  }
}

double LogDensityEvaluator::operator()(std::span<const double> x) const {
  const std::size_t k = mean_.size();
  check_dim(k, x.size(), "log_density point");
  double quad = 0.0;
  if (factor_.has_value()) {
    for (std::size_t i = 0; i < k; ++i) centered_[i] = x[i] - mean_[i];
    quad = quadratic_form(*factor_, centered_);
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      const double d = x[i] - mean_[i];
      quad += d * d / variances_[i];
    }
  }
  return -0.5 * (static_cast<double>(k) * kLog2Pi + log_det_ + quad);
}

double log_density(const Gaussian& g, std::span<const double> x) {
  return LogDensityEvaluator(g)(x);
}

SampleBatch sample(const Gaussian& g, std::uint64_t seed, std::size_t n) {
  if (n < 1) throw InvalidArgument("sample: n must be >= 1");
  const std::size_t k = g.dim();

  SampleBatch batch;
  batch.n = n;
  batch.dim = k;
  batch.seed = seed;
  batch.rows.resize(n * k);

  std::span<const double> mean = g.mean();
  std::vector<double> eps(k);
  if (g.covariance().is_diagonal()) {
    std::vector<double> sd(k);
    std::span<const double> var = g.covariance().variances();
    for (std::size_t c = 0; c < k; ++c) sd[c] = std::sqrt(var[c]);
    for (std::size_t i = 0; i < n; ++i) {
      double* row = batch.rows.data() + i * k;
      for (std::size_t c = 0; c < k; ++c) {
        row[c] = mean[c] + sd[c] * rng::normal(seed, static_cast<std::uint64_t>(i) * k + c);
      }
    }
  } else {
    const CholeskyFactor l = cholesky(g.covariance().full_matrix());
    for (std::size_t i = 0; i < n; ++i) {
      double* row = batch.rows.data() + i * k;
      for (std::size_t c = 0; c < k; ++c) {
        eps[c] = rng::normal(seed, static_cast<std::uint64_t>(i) * k + c);
      }
      for (std::size_t r = 0; r < k; ++r) {
        double s = mean[r];
        for (std::size_t c = 0; c <= r; ++c) s += l(r, c) * eps[c];
        row[r] = s;
      }
    }
  }
  return batch;
}

SecondMomentReport second_moment_check(const Gaussian& g, std::uint64_t seed, std::size_t n) {
  if (n < 1000) throw InvalidArgument("second_moment_check: n must be >= 1000");
  const std::size_t k = g.dim();
  const SampleBatch batch = sample(g, seed, n);

  // Sampled E[x x^T], accumulated in row index order.
  std::vector<double> moment(k * k, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::span<const double> x = batch.row(i);
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) moment[r * k + c] += x[r] * x[c];
    }
  }
  const double inv_n = 1.0 / static_cast<double>(n);

  const SpdMatrix sigma = g.covariance().to_full();
  std::span<const double> mean = g.mean();
  double max_dev = 0.0;
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      const double expected = sigma(r, c) + mean[r] * mean[c];
      max_dev = std::max(max_dev, std::abs(moment[r * k + c] * inv_n - expected));
    }
  }

  SecondMomentReport report;
  report.max_abs_deviation = max_dev;
  report.threshold =
      5.0 * std::max(1.0, g.covariance().max_variance()) / std::sqrt(static_cast<double>(n));
  report.pass = max_dev <= report.threshold;
  return report;
}

}  // namespace kldiv
