#pragma once

#include <cstdint>

#include "kldiv/gaussian.hpp"

namespace kldiv {

// Monte Carlo estimate of a KL divergence, with the sampling configuration
// that produced it.  Fully determined by (P, Q, n, seed); negative means
// are reported as-is, since sampling noise around a small true value can
// dip below zero.
struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

// Sample estimate of D(P || Q) straight from its definition as an
// expectation under P:
//
//   mean = (1/n) sum_i [ log p(x_i) - log q(x_i) ],   x_i ~ P
//
// with x_i = sample(p, seed, n).row(i).  Sampling is always from P, never Q.
// Per-sample terms are accumulated in index order with Neumaier compensated
// summation, and std_error comes from the unbiased sample variance.
// Requires n >= 2 and matching dimensions.
McEstimate mc_kl(const Gaussian& p, const Gaussian& q, std::size_t n, std::uint64_t seed);

}  // namespace kldiv
