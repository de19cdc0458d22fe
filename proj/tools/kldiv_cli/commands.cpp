#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "kldiv/divergence.hpp"
#include "kldiv/errors.hpp"
#include "kldiv/identities.hpp"
#include "kldiv/mc_estimator.hpp"
#include "input_io.hpp"

namespace kldiv_cli {

namespace {

constexpr double kGradCheckThreshold = 1e-6;

// Human-readable mode prints 6 significant digits; JSON is authoritative.
std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

const char* verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

void print_diagnostic(std::ostream& err, const InputError& e) {
  err << "error: " << e.message << "\n";
}

int finish(const Json& report, OutputMode mode, std::ostream& out, const std::string& text,
           bool all_passed) {
  if (mode == OutputMode::Json) {
    out << report.dump(2) << "\n";
  } else {
    out << text;
  }
  return all_passed ? kExitPass : kExitCheckFailed;
}

}  // namespace

int run_kl(const KlOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const DistributionInput p = load_distribution_input(options.p_file, "P");
    const DistributionInput q = load_distribution_input(options.q_file, "Q");

    kldiv::KlBreakdown breakdown;
    try {
      breakdown = kldiv::kl(p.gaussian, q.gaussian);
    } catch (const kldiv::NotPositiveDefinite& e) {
      throw InputError{InputError::Kind::NotPositiveDefinite,
                       std::string("covariance is not positive definite: ") + e.what()};
    } catch (const kldiv::DimensionMismatch& e) {
      throw InputError{InputError::Kind::Dimensions,
                       std::string("dimension mismatch between P and Q: ") + e.what()};
    }
    const double total = breakdown.clamped_total();

    Json report;
    report["command"] = "kl";
    report["inputs"]["p"] = p.echo;
    report["inputs"]["q"] = q.echo;
    report["closed_form"]["H1"] = breakdown.h1;
    report["closed_form"]["H2"] = breakdown.h2;
    report["closed_form"]["H3"] = breakdown.h3;
    report["closed_form"]["total"] = total;

    std::string text;
    if (options.breakdown) {
      text += "H1 = " + fmt6(breakdown.h1) + "\n";
      text += "H2 = " + fmt6(breakdown.h2) + "\n";
      text += "H3 = " + fmt6(breakdown.h3) + "\n";
    }
    text += "total = " + fmt6(total) + "\n";

    bool all_passed = true;
    Json status = Json::object();
    if (options.mc_samples > 0) {
      const kldiv::McEstimate estimate =
          kldiv::mc_kl(p.gaussian, q.gaussian, options.mc_samples, options.seed);
      const double gap = std::abs(total - estimate.mean);
      const bool agree = gap <= 4.0 * estimate.std_error;
      all_passed = all_passed && agree;

      report["mc"]["mean"] = estimate.mean;
      report["mc"]["std_error"] = estimate.std_error;
      report["mc"]["n"] = estimate.n;
      report["mc"]["seed"] = estimate.seed;
      status["mc_agreement"] = verdict(agree);

      text += "mc mean = " + fmt6(estimate.mean) + "\n";
      text += "mc std error = " + fmt6(estimate.std_error) + "\n";
      text += "mc n = " + std::to_string(estimate.n) + "\n";
      text += "mc seed = " + std::to_string(estimate.seed) + "\n";
      text += std::string("agreement (4 sigma) = ") + verdict(agree) + "\n";
    }
    report["status"] = status;
    return finish(report, options.output, out, text, all_passed);
  } catch (const InputError& e) {
    print_diagnostic(err, e);
    return kExitInputError;
  } catch (const kldiv::Error& e) {
    err << "error: invalid input: " << e.what() << "\n";
    return kExitInputError;
  }
}

int run_vae_kl(const VaeKlOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const VaeParamsFile params = load_vae_params(options.params_file);

    kldiv::VaeKlBatchResult batch;
    double grad_error = 0.0;
    try {
      batch = kldiv::vae_kl_batch(params.rows);
      if (options.grad_check) {
        for (const kldiv::VaeKlParams& row : params.rows) {
          grad_error = std::max(grad_error, kldiv::finite_difference_check(row, options.step));
        }
      }
    } catch (const kldiv::Error& e) {
      throw InputError{InputError::Kind::Invalid,
                       std::string("invalid VAE params in '") + options.params_file +
                           "': " + e.what()};
    }

    Json report;
    report["command"] = "vae-kl";
    report["inputs"] = params.echo;
    report["kl"] = batch.values;
    report["mean"] = batch.mean;

    std::string text;
    for (std::size_t i = 0; i < batch.values.size(); ++i) {
      text += "kl[" + std::to_string(i) + "] = " + fmt6(batch.values[i]) + "\n";
    }
    text += "mean = " + fmt6(batch.mean) + "\n";

    bool all_passed = true;
    Json status = Json::object();
    if (options.grad_check) {
      const bool pass = grad_error <= kGradCheckThreshold;
      all_passed = all_passed && pass;
      report["gradient_check"]["max_rel_error"] = grad_error;
      report["gradient_check"]["step"] = options.step;
      report["gradient_check"]["threshold"] = kGradCheckThreshold;
      status["gradient_check"] = verdict(pass);
      text += "gradient check max rel error = " + fmt6(grad_error) + "\n";
      text += std::string("gradient check (<= 1e-06) = ") + verdict(pass) + "\n";
    }
    report["status"] = status;
    return finish(report, options.output, out, text, all_passed);
  } catch (const InputError& e) {
    print_diagnostic(err, e);
    return kExitInputError;
  } catch (const kldiv::Error& e) {
    err << "error: invalid input: " << e.what() << "\n";
    return kExitInputError;
  }
}

int run_identity_check(const IdentityCheckOptions& options, std::ostream& out, std::ostream& err) {
  try {
    kldiv::IdentitySuiteConfig config;
    config.dim = options.dim;
    config.trials = options.trials;
    config.seed = options.seed;
    config.algebraic_tol = options.tolerance;
    const std::vector<kldiv::IdentityResult> results = kldiv::run_identity_suite(config);

    bool all_passed = true;
    Json report;
    report["command"] = "identity-check";
    report["config"]["dim"] = options.dim;
    report["config"]["trials"] = options.trials;
    report["config"]["seed"] = options.seed;
    report["config"]["tolerance"] = options.tolerance;
    report["config"]["moment_samples"] = config.moment_samples;
    report["identities"] = Json::array();

    std::string text;
    for (const kldiv::IdentityResult& r : results) {
      all_passed = all_passed && r.pass;
      Json row;
      row["name"] = r.name;
      row["max_deviation"] = r.max_deviation;
      row[r.statistical ? "threshold" : "tolerance"] = r.tolerance;
      row["statistical"] = r.statistical;
      row["status"] = verdict(r.pass);
      report["identities"].push_back(row);
      text += r.name + ": max deviation " + fmt6(r.max_deviation) +
              (r.statistical ? " (threshold " : " (tolerance ") + fmt6(r.tolerance) + ") " +
              verdict(r.pass) + "\n";
    }
    report["status"]["identities"] = verdict(all_passed);
    text += std::string("all identities = ") + verdict(all_passed) + "\n";
    return finish(report, options.output, out, text, all_passed);
  } catch (const kldiv::Error& e) {
    err << "error: invalid input: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace kldiv_cli
