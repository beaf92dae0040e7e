#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli/config.hpp"
#include "cohstat/linops.hpp"

namespace cohstat::cli {

struct VerifyParams {
    std::optional<Complex> alpha;
    std::optional<Complex> beta;
    std::optional<double> j;
    std::optional<double> theta;
    std::optional<double> gamma;
    /// Extra seeded random points for the gauss and translation checks.
    int samples = 0;
};

struct CheckResult {
    std::string check;
    nlohmann::ordered_json params;
    double residual;
    double threshold;

    bool pass() const { return residual <= threshold; }
};

const std::vector<std::string>& check_names();

/// Runs one named check, or every check for "all". Throws ConfigError for an
/// unknown name.
std::vector<CheckResult> run_checks(const std::string& name, const VerifyParams& params,
                                    const RunConfig& config);

} // namespace cohstat::cli
