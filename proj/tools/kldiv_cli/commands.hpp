#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace kldiv_cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

enum class OutputMode { Text, Json };

struct KlOptions {
  std::string p_file;
  std::string q_file;
  bool breakdown = false;
  std::size_t mc_samples = 0;  // 0 disables the Monte Carlo cross-check
  std::uint64_t seed = 0;
  OutputMode output = OutputMode::Text;
};

struct VaeKlOptions {
  std::string params_file;
  bool grad_check = false;
  double step = 1e-5;
  OutputMode output = OutputMode::Text;
};

struct IdentityCheckOptions {
  std::size_t dim = 4;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  double tolerance = 1e-10;
  OutputMode output = OutputMode::Text;
};

// Each command writes its report to `out` and diagnostics to `err`, and
// returns one of the exit codes above.
int run_kl(const KlOptions& options, std::ostream& out, std::ostream& err);
int run_vae_kl(const VaeKlOptions& options, std::ostream& out, std::ostream& err);
int run_identity_check(const IdentityCheckOptions& options, std::ostream& out, std::ostream& err);

}  // namespace kldiv_cli
