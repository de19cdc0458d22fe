#include "input_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "kldiv/errors.hpp"

namespace kldiv_cli {

namespace {

using Kind = InputError::Kind;

[[noreturn]] void fail(Kind kind, const std::string& message) {
  throw InputError{kind, message};
}

Json parse_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) fail(Kind::FileNotFound, "cannot open file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    fail(Kind::Malformed, std::string("malformed ") + what + " in '" + path + "': " + e.what());
  }
}

void require_keys(const Json& j, const std::vector<std::string>& allowed,
                  const std::string& path, const char* what) {
  if (!j.is_object()) fail(Kind::Malformed, std::string("malformed ") + what + " in '" + path +
                                            "': top level must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const auto& a : allowed) ok = ok || key == a;
    if (!ok) {
      fail(Kind::Malformed, std::string("malformed ") + what + " in '" + path +
                            "': unknown key \"" + key + "\"");
    }
  }
}

std::vector<double> number_array(const Json& j, const std::string& path, const char* what,
                                 const std::string& key) {
  if (!j.is_array() || j.empty()) {
    fail(Kind::Malformed, std::string("malformed ") + what + " in '" + path + "': \"" + key +
                          "\" must be a non-empty array of numbers");
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) {
      fail(Kind::Malformed, std::string("malformed ") + what + " in '" + path + "': \"" + key +
                            "\" must contain numbers only");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

DistributionInput load_distribution_input(const std::string& path, const std::string& label) {
  const char* what = "distribution input";
  const Json j = parse_file(path, what);
  require_keys(j, {"mean", "var", "cov"}, path, what);

  if (!j.contains("mean")) {
    fail(Kind::Malformed, std::string("malformed ") + what + " in '" + path +
                          "': missing required key \"mean\"");
  }
  const bool has_var = j.contains("var");
  const bool has_cov = j.contains("cov");
  if (has_var == has_cov) {
    fail(Kind::Malformed, std::string("malformed ") + what + " in '" + path +
                          "': exactly one of \"var\" or \"cov\" is required");
  }

  std::vector<double> mean = number_array(j.at("mean"), path, what, "mean");
  const std::size_t k = mean.size();

  Json echo;
  echo["mean"] = mean;

  try {
    if (has_var) {
      std::vector<double> var = number_array(j.at("var"), path, what, "var");
      if (var.size() != k) {
        fail(Kind::Dimensions, "dimension mismatch in '" + path + "' (" + label + "): mean has " +
                               std::to_string(k) + " entries, var has " +
                               std::to_string(var.size()));
      }
      echo["var"] = var;
      return DistributionInput{
          kldiv::Gaussian(std::move(mean), kldiv::Covariance::diagonal(std::move(var))),
          std::move(echo)};
    }

    const Json& cov = j.at("cov");
    if (!cov.is_array() || cov.size() != k) {
      fail(Kind::Dimensions, "dimension mismatch in '" + path + "' (" + label +
                             "): \"cov\" must be an array of " + std::to_string(k) + " rows");
    }
    std::vector<double> entries;
    entries.reserve(k * k);
    for (const auto& row : cov) {
      std::vector<double> r = number_array(row, path, what, "cov");
      if (r.size() != k) {
        fail(Kind::Dimensions, "dimension mismatch in '" + path + "' (" + label +
                               "): \"cov\" rows must each have " + std::to_string(k) + " entries");
      }
      entries.insert(entries.end(), r.begin(), r.end());
    }
    echo["cov"] = cov;
    return DistributionInput{
        kldiv::Gaussian(std::move(mean),
                        kldiv::Covariance::full(kldiv::SpdMatrix(k, std::move(entries)))),
        std::move(echo)};
  } catch (const kldiv::NotPositiveDefinite& e) {
    fail(Kind::NotPositiveDefinite, "covariance in '" + path + "' (" + label +
                                    ") is not positive definite: " + e.what());
  } catch (const kldiv::DimensionMismatch& e) {
    fail(Kind::Dimensions, "dimension mismatch in '" + path + "' (" + label + "): " + e.what());
  } catch (const kldiv::Error& e) {
    fail(Kind::Invalid, "invalid distribution input in '" + path + "' (" + label + "): " + e.what());
  }
}

VaeParamsFile load_vae_params(const std::string& path) {
  const char* what = "VAE params";
  const Json j = parse_file(path, what);
  require_keys(j, {"mu", "log_var"}, path, what);
  if (!j.contains("mu") || !j.contains("log_var")) {
    fail(Kind::Malformed, std::string("malformed ") + what + " in '" + path +
                          "': both \"mu\" and \"log_var\" are required");
  }
  const Json& mu = j.at("mu");
  const Json& lv = j.at("log_var");
  if (!mu.is_array() || !lv.is_array() || mu.empty() || lv.empty()) {
    fail(Kind::Malformed, std::string("malformed ") + what + " in '" + path +
                          "': \"mu\" and \"log_var\" must be non-empty arrays");
  }

  const bool batch = mu.front().is_array();
  if (batch != lv.front().is_array()) {
    fail(Kind::Malformed, std::string("malformed ") + what + " in '" + path +
                          "': \"mu\" and \"log_var\" must both be rows or both be batches");
  }

  VaeParamsFile out;
  out.echo["mu"] = mu;
  out.echo["log_var"] = lv;
  try {
    if (!batch) {
      out.rows.emplace_back(number_array(mu, path, what, "mu"),
                            number_array(lv, path, what, "log_var"));
      return out;
    }
    if (mu.size() != lv.size()) {
      fail(Kind::Dimensions, "dimension mismatch in '" + path + "': \"mu\" has " +
                             std::to_string(mu.size()) + " rows, \"log_var\" has " +
                             std::to_string(lv.size()));
    }
    for (std::size_t i = 0; i < mu.size(); ++i) {
      out.rows.emplace_back(number_array(mu.at(i), path, what, "mu"),
                            number_array(lv.at(i), path, what, "log_var"));
    }
    return out;
  } catch (const kldiv::DimensionMismatch& e) {
    fail(Kind::Dimensions, "dimension mismatch in '" + path + "': " + e.what());
  } catch (const kldiv::Error& e) {
    fail(Kind::Invalid, "invalid VAE params in '" + path + "': " + e.what());
  }
}

}  // namespace kldiv_cli
