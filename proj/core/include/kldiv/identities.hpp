#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kldiv {

struct IdentityResult {
  std::string name;
  double max_deviation = 0.0;  // worst scaled deviation over all trials
  double tolerance = 0.0;
  bool statistical = false;    // moment checks vs. exact algebra
  bool pass = false;
};

struct IdentitySuiteConfig {
  std::size_t dim = 4;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  double algebraic_tol = 1e-10;         // relative to max(1, operand scale)
  std::size_t moment_samples = 100000;  // n for the Gaussian moment checks
};

// Randomized verification of the algebraic identities behind the
// closed-form derivation, plus the Gaussian moment identities:
//
//   trace:        tr(A) = tr(A^T); tr(AB) = tr(BA);
//                 tr(ABC) = tr(BCA) = tr(CAB);
//                 tr(aA + bB) = a tr(A) + b tr(B)
//   quadratic:    x^T A x = tr(A x x^T)
//   expectation:  E[tr(X)] = tr(E[X]); E[x^T A x] = tr(A E[x x^T]);
//                 E[(x - m)(x - m)^T] = E[x x^T] - m m^T
//                 (checked exactly on empirical averages)
//   moments:      E[x] = mu; E[(x - mu)(x - mu)^T] = Sigma;
//                 E[x x^T] = Sigma + mu mu^T
//                 (checked on moment_samples Gaussian draws; the mean at
//                 threshold 5 sqrt(max_i Sigma_ii / n), the matrix moments
//                 at 5 max(1, max_i Sigma_ii) / sqrt(n))
//
// Returns one result per identity, in a fixed order.  Deterministic in the
// config.  Requires dim >= 1 and trials >= 1.
std::vector<IdentityResult> run_identity_suite(const IdentitySuiteConfig& config);

}  // namespace kldiv
