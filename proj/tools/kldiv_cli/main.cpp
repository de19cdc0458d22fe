#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using kldiv_cli::OutputMode;

OutputMode parse_output(const std::string& s) {
  return s == "json" ? OutputMode::Json : OutputMode::Text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed-form KL divergence between multivariate Gaussians"};
  app.require_subcommand(1);

  kldiv_cli::KlOptions kl_options;
  std::string kl_output = "text";
  CLI::App* kl = app.add_subcommand("kl", "KL divergence between two Gaussian input files");
  kl->add_option("p_file", kl_options.p_file, "JSON input for P (the left argument)")->required();
  kl->add_option("q_file", kl_options.q_file, "JSON input for Q (the right argument)")->required();
  kl->add_flag("--breakdown", kl_options.breakdown, "Print the H1/H2/H3 term decomposition");
  kl->add_option("--mc", kl_options.mc_samples,
                 "Cross-check against the Monte Carlo estimate with this many samples")
      ->check(CLI::Range(static_cast<std::size_t>(2), std::numeric_limits<std::size_t>::max()));
  kl->add_option("--seed", kl_options.seed, "Seed for the Monte Carlo sampler (default 0)");
  kl->add_option("--output", kl_output, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  kldiv_cli::VaeKlOptions vae_options;
  std::string vae_output = "text";
  CLI::App* vae = app.add_subcommand(
      "vae-kl", "KL against the standard-normal prior from mu/log_var params");
  vae->add_option("params_file", vae_options.params_file, "JSON file with mu and log_var")
      ->required();
  vae->add_flag("--grad-check", vae_options.grad_check,
                "Verify the analytic gradient with central finite differences");
  vae->add_option("--step", vae_options.step, "Finite-difference step (default 1e-5)")
      ->check(CLI::Range(1e-9, 1e-2));
  vae->add_option("--output", vae_output, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  kldiv_cli::IdentityCheckOptions id_options;
  std::string id_output = "text";
  CLI::App* id = app.add_subcommand(
      "identity-check", "Randomized verification of the trace/expectation identities");
  id->add_option("--dim", id_options.dim, "Matrix/vector dimension (default 4)")
      ->check(CLI::Range(static_cast<std::size_t>(1), static_cast<std::size_t>(1024)));
  id->add_option("--trials", id_options.trials, "Number of random trials (default 100)")
      ->check(CLI::Range(static_cast<std::size_t>(1), std::numeric_limits<std::size_t>::max()));
  id->add_option("--seed", id_options.seed, "Seed for the random trials (default 0)");
  id->add_option("--tolerance", id_options.tolerance,
                 "Relative tolerance for the algebraic identities (default 1e-10)")
      ->check(CLI::PositiveNumber);
  id->add_option("--output", id_output, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kldiv_cli::kExitInputError;
  }

  if (*kl) {
    kl_options.output = parse_output(kl_output);
    return kldiv_cli::run_kl(kl_options, std::cout, std::cerr);
  }
  if (*vae) {
    vae_options.output = parse_output(vae_output);
    return kldiv_cli::run_vae_kl(vae_options, std::cout, std::cerr);
  }
  id_options.output = parse_output(id_output);
  return kldiv_cli::run_identity_check(id_options, std::cout, std::cerr);
}
