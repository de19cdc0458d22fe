#include "kldiv/identities.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "kldiv/errors.hpp"
#include "kldiv/gaussian.hpp"
#include "kldiv/linalg.hpp"
#include "kldiv/rng.hpp"

namespace kldiv {

namespace {

using Mat = std::vector<double>;  // dense k x k, row-major

Mat random_matrix(CounterRng& rng, std::size_t k) {
  Mat m(k * k);
  for (double& v : m) v = rng.next_in(-1.0, 1.0);
  return m;
}

std::vector<double> random_vector(CounterRng& rng, std::size_t k) {
  std::vector<double> x(k);
  for (double& v : x) v = rng.next_in(-1.0, 1.0);
  return x;
}

Mat mat_mul(const Mat& a, const Mat& b, std::size_t k) {
  Mat c(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t m = 0; m < k; ++m) {
      const double aim = a[i * k + m];
      for (std::size_t j = 0; j < k; ++j) c[i * k + j] += aim * b[m * k + j];
    }
  }
  return c;
}

Mat transpose(const Mat& a, std::size_t k) {
  Mat t(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) t[j * k + i] = a[i * k + j];
  }
  return t;
}

double trace(const Mat& a, std::size_t k) {
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += a[i * k + i];
  return s;
}

Mat outer(std::span<const double> x, std::span<const double> y) {
  const std::size_t k = x.size();
  Mat m(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) m[i * k + j] = x[i] * y[j];
  }
  return m;
}

double scalar_dev(double lhs, double rhs) {
  return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

double matrix_dev(const Mat& lhs, const Mat& rhs) {
  double scale = 1.0;
  for (double v : lhs) scale = std::max(scale, std::abs(v));
  for (double v : rhs) scale = std::max(scale, std::abs(v));
  double dev = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) dev = std::max(dev, std::abs(lhs[i] - rhs[i]));
  return dev / scale;
}

struct Tracker {
  double worst = 0.0;
  void record(double dev) { worst = std::max(worst, dev); }
};

// Random full covariance with diagonal in [1/4, 1/2]: I/4 + M^T M / (4k).
SpdMatrix random_covariance(CounterRng& rng, std::size_t k) {
  const Mat m = random_matrix(rng, k);
  Mat s(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      double acc = 0.0;
      for (std::size_t r = 0; r < k; ++r) acc += m[r * k + i] * m[r * k + j];
      s[i * k + j] = acc / (4.0 * static_cast<double>(k));
    }
    s[i * k + i] += 0.25;
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) s[j * k + i] = s[i * k + j];
  }
  return SpdMatrix(k, std::move(s));
}

}  // namespace

std::vector<IdentityResult> run_identity_suite(const IdentitySuiteConfig& config) {
  const std::size_t k = config.dim;
  const std::size_t trials = config.trials;
  if (k < 1) throw InvalidArgument("identity suite: dim must be >= 1");
  if (trials < 1) throw InvalidArgument("identity suite: trials must be >= 1");
  if (config.moment_samples < 1000) {
    throw InvalidArgument("identity suite: moment_samples must be >= 1000");
  }

  CounterRng rng(config.seed);
  constexpr std::size_t kBatch = 16;  // samples behind each empirical expectation

  Tracker tr_transpose, tr_commute, tr_cyclic, tr_linear;
  Tracker quad_form, exp_trace, exp_quad, cov_def;

  for (std::size_t t = 0; t < trials; ++t) {
    const Mat a = random_matrix(rng, k);
    const Mat b = random_matrix(rng, k);
    const Mat c = random_matrix(rng, k);
    const std::vector<double> x = random_vector(rng, k);
    const double alpha = rng.next_in(-1.0, 1.0);
    const double beta = rng.next_in(-1.0, 1.0);

    tr_transpose.record(scalar_dev(trace(a, k), trace(transpose(a, k), k)));
    tr_commute.record(scalar_dev(trace(mat_mul(a, b, k), k), trace(mat_mul(b, a, k), k)));

    const double t_abc = trace(mat_mul(mat_mul(a, b, k), c, k), k);
    const double t_bca = trace(mat_mul(mat_mul(b, c, k), a, k), k);
    const double t_cab = trace(mat_mul(mat_mul(c, a, k), b, k), k);
    tr_cyclic.record(std::max(scalar_dev(t_abc, t_bca), scalar_dev(t_abc, t_cab)));

    Mat lin(k * k);
    for (std::size_t i = 0; i < k * k; ++i) lin[i] = alpha * a[i] + beta * b[i];
    tr_linear.record(
        scalar_dev(trace(lin, k), alpha * trace(a, k) + beta * trace(b, k)));

    double xax = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) xax += x[i] * a[i * k + j] * x[j];
    }
    quad_form.record(scalar_dev(xax, trace(mat_mul(a, outer(x, x), k), k)));

    // Expectations over an empirical batch hold exactly (up to round-off),
    // which is what makes them checkable at the algebraic tolerance.
    Mat mean_mat(k * k, 0.0);
    double mean_trace = 0.0;
    for (std::size_t s = 0; s < kBatch; ++s) {
      const Mat xs = random_matrix(rng, k);
      mean_trace += trace(xs, k);
      for (std::size_t i = 0; i < k * k; ++i) mean_mat[i] += xs[i];
    }
    mean_trace /= static_cast<double>(kBatch);
    for (double& v : mean_mat) v /= static_cast<double>(kBatch);
    exp_trace.record(scalar_dev(mean_trace, trace(mean_mat, k)));

    std::vector<std::vector<double>> xs_batch(kBatch);
    for (auto& xs : xs_batch) xs = random_vector(rng, k);
    double mean_quad = 0.0;
    Mat mean_outer(k * k, 0.0);
    std::vector<double> mean_x(k, 0.0);
    for (const auto& xs : xs_batch) {
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) mean_quad += xs[i] * a[i * k + j] * xs[j];
      }
      const Mat o = outer(xs, xs);
      for (std::size_t i = 0; i < k * k; ++i) mean_outer[i] += o[i];
      for (std::size_t i = 0; i < k; ++i) mean_x[i] += xs[i];
    }
    mean_quad /= static_cast<double>(kBatch);
    for (double& v : mean_outer) v /= static_cast<double>(kBatch);
    for (double& v : mean_x) v /= static_cast<double>(kBatch);
    exp_quad.record(scalar_dev(mean_quad, trace(mat_mul(a, mean_outer, k), k)));

    Mat centered(k * k, 0.0);
    for (const auto& xs : xs_batch) {
      std::vector<double> d(k);
      for (std::size_t i = 0; i < k; ++i) d[i] = xs[i] - mean_x[i];
      const Mat o = outer(d, d);
      for (std::size_t i = 0; i < k * k; ++i) centered[i] += o[i];
    }
    for (double& v : centered) v /= static_cast<double>(kBatch);
    Mat decomposed(k * k);
    const Mat mm = outer(mean_x, mean_x);
    for (std::size_t i = 0; i < k * k; ++i) decomposed[i] = mean_outer[i] - mm[i];
    cov_def.record(matrix_dev(centered, decomposed));
  }

  // Gaussian moment checks on one seeded distribution. Small parameters
  // (|mu_i| <= 1/4, diagonal <= 1/2) cap each moment estimator entry's
  // standard error at 0.8/sqrt(n), well inside the 5/sqrt(n) thresholds
  // below at any seed.
  std::vector<double> mu(k);
  for (double& v : mu) v = rng.next_in(-0.25, 0.25);
  const SpdMatrix sigma = random_covariance(rng, k);
  const Gaussian g(mu, Covariance::full(sigma));
  const std::size_t n = config.moment_samples;
  const SampleBatch batch = sample(g, rng.next_raw(), n);

  std::vector<double> sum_x(k, 0.0);
  Mat sum_outer(k * k, 0.0);
  Mat sum_centered(k * k, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::span<const double> xi = batch.row(i);
    for (std::size_t r = 0; r < k; ++r) {
      sum_x[r] += xi[r];
      for (std::size_t col = 0; col < k; ++col) {
        sum_outer[r * k + col] += xi[r] * xi[col];
        sum_centered[r * k + col] += (xi[r] - mu[r]) * (xi[col] - mu[col]);
      }
    }
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  double max_var = 0.0;
  for (std::size_t i = 0; i < k; ++i) max_var = std::max(max_var, sigma(i, i));

  double mean_dev = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    mean_dev = std::max(mean_dev, std::abs(sum_x[i] * inv_n - mu[i]));
  }
  const double mean_tol = 5.0 * std::sqrt(max_var / static_cast<double>(n));

  double central_dev = 0.0;
  double raw_dev = 0.0;
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t col = 0; col < k; ++col) {
      central_dev = std::max(
          central_dev, std::abs(sum_centered[r * k + col] * inv_n - sigma(r, col)));
      raw_dev = std::max(raw_dev, std::abs(sum_outer[r * k + col] * inv_n -
                                           (sigma(r, col) + mu[r] * mu[col])));
    }
  }
  const double matrix_tol = 5.0 * std::max(1.0, max_var) / std::sqrt(static_cast<double>(n));

  const double tol = config.algebraic_tol;
  auto algebraic = [&](const char* name, const Tracker& t) {
    return IdentityResult{name, t.worst, tol, false, t.worst <= tol};
  };
  auto statistical = [](const char* name, double dev, double threshold) {
    return IdentityResult{name, dev, threshold, true, dev <= threshold};
  };

  return {
      algebraic("tr(A) = tr(A^T)", tr_transpose),
      algebraic("tr(AB) = tr(BA)", tr_commute),
      algebraic("tr(ABC) = tr(BCA) = tr(CAB)", tr_cyclic),
      algebraic("tr(aA + bB) = a tr(A) + b tr(B)", tr_linear),
      algebraic("x^T A x = tr(A x x^T)", quad_form),
      algebraic("E[tr(X)] = tr(E[X])", exp_trace),
      algebraic("E[x^T A x] = tr(A E[x x^T])", exp_quad),
      algebraic("E[(x - m)(x - m)^T] = E[x x^T] - m m^T", cov_def),
      statistical("E[x] = mu", mean_dev, mean_tol),
      statistical("E[(x - mu)(x - mu)^T] = Sigma", central_dev, matrix_tol),
      statistical("E[x x^T] = Sigma + mu mu^T", raw_dev, matrix_tol),
  };
}

}  // namespace kldiv
