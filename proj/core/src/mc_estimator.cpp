#include "kldiv/mc_estimator.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "kldiv/errors.hpp"

namespace kldiv {

namespace {

// Neumaier variant of Kahan summation, in index order.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double get() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

McEstimate mc_kl(const Gaussian& p, const Gaussian& q, std::size_t n, std::uint64_t seed) {
  if (p.dim() != q.dim()) {
    throw DimensionMismatch("mc_kl: P has dimension " + std::to_string(p.dim()) +
                            ", Q has dimension " + std::to_string(q.dim()));
  }
  if (n < 2) throw InvalidArgument("mc_kl: n must be >= 2");

  const LogDensityEvaluator log_p(p);
  const LogDensityEvaluator log_q(q);
  const SampleBatch batch = sample(p, seed, n);

  std::vector<double> terms(n);
  CompensatedSum sum;
  for (std::size_t i = 0; i < n; ++i) {
    const std::span<const double> x = batch.row(i);
    terms[i] = log_p(x) - log_q(x);
    sum.add(terms[i]);
  }
  const double mean = sum.get() / static_cast<double>(n);

  CompensatedSum squares;
  for (double t : terms) {
    const double d = t - mean;
    squares.add(d * d);
  }
  const double variance = squares.get() / static_cast<double>(n - 1);

  McEstimate estimate;
  estimate.mean = mean;
  estimate.std_error = std::sqrt(variance / static_cast<double>(n));
  estimate.n = n;
  estimate.seed = seed;
  return estimate;
}

}  // namespace kldiv
