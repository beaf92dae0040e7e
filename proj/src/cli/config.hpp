#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace cohstat::cli {

enum class OutputFormat { json, csv };

/// Usage or configuration problem; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Effective settings for one command. Unset optionals pick a per-command
/// default (truncation from |alpha|, smallest exact sphere rule).
struct RunConfig {
    std::optional<std::size_t> trunc;
    double tol = 1e-10;
    double tail_tol = 1e-12;
    int n_r = 256;
    int n_angle = 64;
    std::optional<int> n_theta;
    std::optional<int> n_gamma;
    std::size_t lambda_points = 2001;
    std::size_t p_points = 1001;
    std::vector<double> credible_masses{0.5, 0.9, 0.95};
    OutputFormat format = OutputFormat::json;
    std::string out = "-";
    std::uint64_t seed = 20240521;

    nlohmann::ordered_json to_json() const;
};

/// Names accepted both as config-file keys and (with dashes) as flags.
const std::vector<std::string>& config_keys();

/// Apply one key to `config`, validating it. Throws ConfigError naming the key.
void apply_config_value(RunConfig& config, const std::string& key, const nlohmann::json& value);

/// Defaults, overridden by the JSON object in `file` (if any), overridden by `flags`.
RunConfig load_config(const std::optional<std::string>& file, const nlohmann::json& flags);

} // namespace cohstat::cli
