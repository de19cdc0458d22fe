// Acceptance gate: exercises every top-level requirement and prints one
// PASS/FAIL line per criterion.  Exit code 0 only when all criteria pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "kldiv/kldiv.hpp"
#include "support/generators.hpp"
#include "support/subprocess.hpp"

namespace {

using kldiv::Covariance;
using kldiv::Gaussian;
using kldiv::SpdMatrix;

struct Check {
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool condition, const std::string& note) {
    if (!condition) {
      ok = false;
      notes.push_back(note);
    }
  }
};

Gaussian univariate(double mean, double var) {
  return Gaussian({mean}, Covariance::diagonal(std::vector<double>{var}));
}

// 1. Hand-derivable golden values, matched to 1e-12 absolute.
void golden_values(Check& check) {
  double unit_shift = kldiv::kl(univariate(1.0, 1.0), univariate(0.0, 1.0)).total;
  check.require(std::fabs(unit_shift - 0.5) <= 1e-12,
                "unit mean shift should cost exactly 0.5 nats");

  double doubled = kldiv::kl(univariate(0.0, 2.0), univariate(0.0, 1.0)).total;
  check.require(std::fabs(doubled - 0.5 * (1.0 - std::log(2.0))) <= 1e-12,
                "doubled univariate variance should cost (1 - log 2)/2 nats");

  Gaussian p({0.0, 0.0}, Covariance::diagonal(std::vector<double>{2.0, 2.0}));
  double iso = kldiv::kl(p, Gaussian::standard(2)).total;
  check.require(std::fabs(iso - (1.0 - std::log(2.0))) <= 1e-12,
                "doubled isotropic variance in 2-d should cost 1 - log 2 nats");
}

// 2. Closed form within 4 standard errors of the Monte Carlo estimate at
// n = 2e5 for at least 19 of 20 seeded pairs, dims 1-5.
void oracle_agreement(Check& check) {
  kldiv::CounterRng gen(20260401);
  int agreeing = 0;
  for (int pair = 0; pair < 20; ++pair) {
    std::size_t k = 1 + static_cast<std::size_t>(pair % 5);
    auto p = (pair % 2 == 0) ? testsupport::random_full_gaussian(gen, k)
                             : testsupport::random_diagonal_gaussian(gen, k);
    auto q = (pair % 2 == 0) ? testsupport::random_full_gaussian(gen, k)
                             : testsupport::random_diagonal_gaussian(gen, k);
    double closed = kldiv::kl(p, q).total;
    auto est = kldiv::mc_kl(p, q, 200000, 1000 + static_cast<std::uint64_t>(pair));
    if (std::fabs(closed - est.mean) <= 4.0 * est.std_error) ++agreeing;
  }
  check.require(agreeing >= 19, "only " + std::to_string(agreeing) +
                                    "/20 pairs inside the 4 sigma band");
}

// 3. Non-negativity over 1000 random pairs (dims 1-8) and vanishing
// self-divergence over 100 pairs.
void nonnegativity(Check& check) {
  kldiv::CounterRng gen(555);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t k = 1 + static_cast<std::size_t>(gen.next_in(0.0, 8.0));
    bool diag = gen.next_uniform() < 0.5;
    auto p = diag ? testsupport::random_diagonal_gaussian(gen, k)
                  : testsupport::random_full_gaussian(gen, k);
    auto q = diag ? testsupport::random_diagonal_gaussian(gen, k)
                  : testsupport::random_full_gaussian(gen, k);
    worst = std::min(worst, kldiv::kl(p, q).total);
  }
  check.require(worst >= -1e-10,
                "most negative total " + std::to_string(worst) + " breaches -1e-10");

  double worst_self = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t k = 1 + static_cast<std::size_t>(gen.next_in(0.0, 8.0));
    auto p = (trial % 2 == 0) ? testsupport::random_full_gaussian(gen, k)
                              : testsupport::random_diagonal_gaussian(gen, k);
    worst_self = std::max(worst_self, std::fabs(kldiv::kl(p, p).total));
  }
  check.require(worst_self <= 1e-10,
                "worst self-divergence " + std::to_string(worst_self) + " exceeds 1e-10");
}

// 4. Diagonal fast path, full-matrix path, and univariate path agree to
// 1e-12 relative on 100 shared inputs.
void path_equivalence(Check& check) {
  kldiv::CounterRng gen(777);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t k = 1 + static_cast<std::size_t>(trial % 6);
    auto mp = testsupport::random_vector(gen, k, -2.0, 2.0);
    auto vp = testsupport::random_vector(gen, k, 0.2, 3.0);
    auto mq = testsupport::random_vector(gen, k, -2.0, 2.0);
    auto vq = testsupport::random_vector(gen, k, 0.2, 3.0);

    double fast = kldiv::kl_diagonal(mp, vp, mq, vq);
    Gaussian p_full(mp, Covariance::full(SpdMatrix::from_diagonal(vp)));
    Gaussian q_full(mq, Covariance::full(SpdMatrix::from_diagonal(vq)));
    worst = std::max(worst, testsupport::rel_diff(fast, kldiv::kl(p_full, q_full).total));
    if (k == 1)
      worst = std::max(worst, testsupport::rel_diff(
                                  fast, kldiv::kl_univariate(mp[0], vp[0], mq[0], vq[0])));
  }
  check.require(worst <= 1e-12,
                "worst relative path disagreement " + std::to_string(worst));
}

// 5. Finite differences confirm the analytic gradient at step 1e-5 for 50
// random parameter sets up to dim 32; the gradient at the prior is exactly 0.
void gradient_verification(Check& check) {
  kldiv::CounterRng gen(888);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t k = 1 + static_cast<std::size_t>(gen.next_in(0.0, 32.0));
    kldiv::VaeKlParams params(testsupport::random_vector(gen, k, -2.0, 2.0),
                              testsupport::random_vector(gen, k, -2.0, 2.0));
    worst = std::max(worst, kldiv::finite_difference_check(params, 1e-5));
  }
  check.require(worst <= 1e-6, "worst finite-difference error " + std::to_string(worst));

  kldiv::VaeKlParams at_prior(std::vector<double>(32, 0.0), std::vector<double>(32, 0.0));
  auto grad = kldiv::vae_kl_gradient(at_prior);
  bool exactly_zero = true;
  for (double v : grad.d_mu) exactly_zero = exactly_zero && v == 0.0;
  for (double v : grad.d_log_var) exactly_zero = exactly_zero && v == 0.0;
  check.require(exactly_zero, "gradient at the prior is not exactly zero");
}

// 6. The divergence is invariant under x -> Ax + b for 50 random triples
// with cond(A) <= 100, to 1e-8 relative.
void affine_invariance(Check& check) {
  kldiv::CounterRng gen(999);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t k = 1 + static_cast<std::size_t>(gen.next_in(0.0, 6.0));
    auto p = testsupport::random_full_gaussian(gen, k);
    auto q = testsupport::random_full_gaussian(gen, k);
    double base = kldiv::kl(p, q).total;

    auto a = testsupport::random_conditioned_matrix(gen, k, 100.0);
    auto b = testsupport::random_vector(gen, k, -2.0, 2.0);
    auto push = [&](const Gaussian& g) {
      std::vector<double> mean(k, 0.0);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) mean[i] += a[i * k + j] * g.mean()[j];
        mean[i] += b[i];
      }
      auto sigma = g.covariance().full_matrix();
      auto as = testsupport::mat_mul(
          a, std::vector<double>(sigma.data().begin(), sigma.data().end()), k);
      auto asat = testsupport::mat_mul(as, testsupport::transpose(a, k), k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < i; ++j) {
          double s = 0.5 * (asat[i * k + j] + asat[j * k + i]);
          asat[i * k + j] = s;
          asat[j * k + i] = s;
        }
      return Gaussian(std::move(mean), Covariance::full(SpdMatrix(k, std::move(asat))));
    };

    worst = std::max(worst,
                     testsupport::rel_diff(kldiv::kl(push(p), push(q)).total, base));
  }
  check.require(worst <= 1e-8, "worst relative drift " + std::to_string(worst));
}

// 7. The full identity suite passes for dims 1-6: algebraic rows at 1e-10
// relative over 100 trials, moment rows at the 5/sqrt(n) threshold, n = 1e5.
void identity_suite(Check& check) {
  for (std::size_t dim = 1; dim <= 6; ++dim) {
    kldiv::IdentitySuiteConfig config;
    config.dim = dim;
    config.trials = 100;
    config.seed = 1234;
    config.algebraic_tol = 1e-10;
    config.moment_samples = 100000;
    for (const auto& row : kldiv::run_identity_suite(config))
      check.require(row.pass, row.name + " failed at dim " + std::to_string(dim) +
                                  " (deviation " + std::to_string(row.max_deviation) + ")");
  }
}

// 8. CLI contract: documented outputs and exit codes, lossless JSON, and
// byte-identical reruns under a fixed seed.
void cli_contract(Check& check) {
  using testsupport::run_command;
  using testsupport::shell_quote;
  using testsupport::write_temp_file;

  std::string cli = shell_quote(testsupport::cli_path());
  auto p = shell_quote(write_temp_file("acc_p.json", R"({"mean": [1.0], "var": [1.0]})"));
  auto q = shell_quote(write_temp_file("acc_q.json", R"({"mean": [0.0], "var": [1.0]})"));

  auto shift = run_command(cli + " kl " + p + " " + q);
  check.require(shift.exit_code == 0 && shift.out.find("total = 0.5\n") != std::string::npos,
                "unit-shift run should print total = 0.5 and exit 0");

  auto self = run_command(cli + " kl " + q + " " + q);
  check.require(self.exit_code == 0 && self.out.find("total = 0\n") != std::string::npos,
                "identical-input run should print total = 0 and exit 0");

  auto p2 = shell_quote(
      write_temp_file("acc_p2.json", R"({"mean": [0.0, 0.0], "var": [1.0, 1.0]})"));
  auto npd = shell_quote(write_temp_file(
      "acc_npd.json", R"({"mean": [0.0, 0.0], "cov": [[1.0, 2.0], [2.0, 1.0]]})"));
  auto indefinite = run_command(cli + " kl " + p2 + " " + npd);
  check.require(indefinite.exit_code == 2 &&
                    indefinite.err.find("not positive definite") != std::string::npos,
                "indefinite covariance should produce a diagnostic and exit 2");

  std::string json_cmd = cli + " kl " + p + " " + q + " --mc 2000 --seed 77 --output json";
  auto first = run_command(json_cmd);
  check.require(first.exit_code == 0, "json run should exit 0");
  try {
    auto doc = nlohmann::ordered_json::parse(first.out);
    check.require(doc.dump(2) + "\n" == first.out,
                  "parse-then-serialize should reproduce the document byte for byte");
    auto reparsed = nlohmann::ordered_json::parse(doc.dump(2));
    check.require(reparsed["mc"]["mean"].get<double>() == doc["mc"]["mean"].get<double>() &&
                      reparsed["closed_form"]["total"].get<double>() ==
                          doc["closed_form"]["total"].get<double>(),
                  "numeric fields should round-trip losslessly");
  } catch (const std::exception& e) {
    check.require(false, std::string("json output did not parse: ") + e.what());
  }

  auto second = run_command(json_cmd);
  check.require(!first.out.empty() && first.out == second.out,
                "reruns with a fixed seed should be byte-identical");
}

struct Criterion {
  const char* label;
  void (*run)(Check&);
  double time_limit_s;  // 0 means no bound
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"golden values match hand-derived constants", golden_values, 1.0},
      {"monte carlo oracle brackets the closed form", oracle_agreement, 30.0},
      {"non-negativity and vanishing self-divergence", nonnegativity, 5.0},
      {"diagonal, full, and univariate paths agree", path_equivalence, 0.0},
      {"analytic gradients survive finite differences", gradient_verification, 0.0},
      {"affine changes of variables preserve the divergence", affine_invariance, 0.0},
      {"algebraic and moment identity suite", identity_suite, 0.0},
      {"command-line contract and reproducible output", cli_contract, 0.0},
  };

  int passed = 0;
  int index = 0;
  for (const auto& criterion : criteria) {
    ++index;
    Check check;
    auto start = std::chrono::steady_clock::now();
    criterion.run(check);
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criterion.time_limit_s > 0.0 && elapsed > criterion.time_limit_s) {
      check.ok = false;
      check.notes.push_back("exceeded the " + std::to_string(criterion.time_limit_s) +
                            " s budget");
    }
    std::printf("%d. %-55s %s (%.2f s)\n", index, criterion.label,
                check.ok ? "PASS" : "FAIL", elapsed);
    for (const auto& note : check.notes) std::printf("     - %s\n", note.c_str());
    if (check.ok) ++passed;
  }

  std::printf("%d/8 acceptance criteria passed\n", passed);
  return passed == 8 ? 0 : 1;
}
