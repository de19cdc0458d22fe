#include <string>
#include <vector>

#include <doctest.h>

#include "kldiv/errors.hpp"
#include "kldiv/identities.hpp"

using kldiv::IdentitySuiteConfig;
using kldiv::run_identity_suite;

namespace {

const std::vector<std::string> kExpectedNames = {
    "tr(A) = tr(A^T)",
    "tr(AB) = tr(BA)",
    "tr(ABC) = tr(BCA) = tr(CAB)",
    "tr(aA + bB) = a tr(A) + b tr(B)",
    "x^T A x = tr(A x x^T)",
    "E[tr(X)] = tr(E[X])",
    "E[x^T A x] = tr(A E[x x^T])",
    "E[(x - m)(x - m)^T] = E[x x^T] - m m^T",
    "E[x] = mu",
    "E[(x - mu)(x - mu)^T] = Sigma",
    "E[x x^T] = Sigma + mu mu^T",
};

}  // namespace

TEST_CASE("suite reports every identity in a fixed order") {
  IdentitySuiteConfig config;
  config.dim = 3;
  config.trials = 10;
  config.moment_samples = 2000;
  auto results = run_identity_suite(config);
  REQUIRE(results.size() == kExpectedNames.size());
  for (std::size_t i = 0; i < results.size(); ++i) CHECK(results[i].name == kExpectedNames[i]);

  for (std::size_t i = 0; i < 8; ++i) CHECK_FALSE(results[i].statistical);
  for (std::size_t i = 8; i < 11; ++i) CHECK(results[i].statistical);
}

TEST_CASE("all identities pass across dimensions") {
  for (std::size_t dim = 1; dim <= 6; ++dim) {
    IdentitySuiteConfig config;
    config.dim = dim;
    config.trials = 100;
    config.seed = 7;
    auto results = run_identity_suite(config);
    for (const auto& r : results) {
      INFO(r.name << " at dim " << dim << ": deviation " << r.max_deviation
                  << " vs " << r.tolerance);
      CHECK(r.pass);
      CHECK(r.max_deviation <= r.tolerance);
    }
  }
}

TEST_CASE("algebraic deviations sit far below the tolerance") {
  IdentitySuiteConfig config;
  config.dim = 5;
  config.trials = 100;
  auto results = run_identity_suite(config);
  for (std::size_t i = 0; i < 8; ++i) CHECK(results[i].max_deviation <= 1e-12);
}

TEST_CASE("the suite is deterministic in its config") {
  IdentitySuiteConfig config;
  config.dim = 4;
  config.trials = 20;
  config.moment_samples = 5000;
  auto a = run_identity_suite(config);
  auto b = run_identity_suite(config);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].max_deviation == b[i].max_deviation);
}

TEST_CASE("an impossible tolerance fails only the algebraic rows") {
  IdentitySuiteConfig config;
  config.dim = 3;
  config.trials = 10;
  config.algebraic_tol = 1e-30;
  config.moment_samples = 2000;
  auto results = run_identity_suite(config);
  bool any_fail = false;
  for (std::size_t i = 0; i < 8; ++i) any_fail = any_fail || !results[i].pass;
  CHECK(any_fail);
  for (std::size_t i = 8; i < 11; ++i) CHECK(results[i].pass);
}

TEST_CASE("scalar matrices trivially satisfy everything") {
  IdentitySuiteConfig config;
  config.dim = 1;
  config.trials = 1;
  config.moment_samples = 2000;
  for (const auto& r : run_identity_suite(config)) CHECK(r.pass);
}

TEST_CASE("degenerate configs are rejected") {
  IdentitySuiteConfig zero_dim;
  zero_dim.dim = 0;
  CHECK_THROWS_AS(run_identity_suite(zero_dim), kldiv::InvalidArgument);

  IdentitySuiteConfig zero_trials;
  zero_trials.trials = 0;
  CHECK_THROWS_AS(run_identity_suite(zero_trials), kldiv::InvalidArgument);
}
