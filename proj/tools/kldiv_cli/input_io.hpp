#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kldiv/gaussian.hpp"
#include "kldiv/vae_kl.hpp"

namespace kldiv_cli {

using Json = nlohmann::ordered_json;

// Raised for anything wrong with an input file; `kind` selects the
// diagnostic prefix so each failure class prints a distinct message.
struct InputError {
  enum class Kind { FileNotFound, Malformed, Dimensions, NotPositiveDefinite, Invalid };
  Kind kind;
  std::string message;
};

// Distribution input file:
//   { "mean": [..], "var": [..] }   diagonal covariance
//   { "mean": [..], "cov": [[..]] } full covariance
// Exactly one of "var"/"cov"; no other keys.  Shape and type problems are
// reported before any numeric construction runs.
struct DistributionInput {
  kldiv::Gaussian gaussian;
  Json echo;  // normalized numeric echo for reports
};

DistributionInput load_distribution_input(const std::string& path, const std::string& label);

// VAE parameter file:
//   { "mu": [..], "log_var": [..] }       single row
//   { "mu": [[..],..], "log_var": [[..],..] }  batch, equal row counts
struct VaeParamsFile {
  std::vector<kldiv::VaeKlParams> rows;
  Json echo;
};

VaeParamsFile load_vae_params(const std::string& path);

}  // namespace kldiv_cli
