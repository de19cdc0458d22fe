#pragma once

#include <cstddef>
#include <vector>

#include "kldiv/gaussian.hpp"
#include "kldiv/linalg.hpp"
#include "kldiv/rng.hpp"

namespace testsupport {

// M^T M + k I with M uniform in [-1, 1]; always comfortably SPD.
kldiv::SpdMatrix random_spd(kldiv::CounterRng& gen, std::size_t dim);

std::vector<double> random_vector(kldiv::CounterRng& gen, std::size_t dim,
                                  double lo, double hi);

// Means in [-2, 2], full covariance from random_spd.
kldiv::Gaussian random_full_gaussian(kldiv::CounterRng& gen, std::size_t dim);

// Means in [-2, 2], variances in [0.2, 3].
kldiv::Gaussian random_diagonal_gaussian(kldiv::CounterRng& gen, std::size_t dim);

// Invertible matrix Q1 D Q2^T (row-major) with singular values log-uniform
// in [1/sqrt(max_cond), sqrt(max_cond)], so cond <= max_cond.
std::vector<double> random_conditioned_matrix(kldiv::CounterRng& gen, std::size_t dim,
                                              double max_cond);

// Row-major square-matrix helpers for building test inputs.
std::vector<double> mat_mul(const std::vector<double>& a, const std::vector<double>& b,
                            std::size_t dim);
std::vector<double> transpose(const std::vector<double>& a, std::size_t dim);

// |a - b| / max(|a|, |b|); 0 when both are 0.
double rel_diff(double a, double b);

}  // namespace testsupport
