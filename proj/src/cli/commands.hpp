#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli/config.hpp"

namespace cohstat::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kUsageError = 2 };

/// Tabular result of one command; `columns` fixes the CSV column order.
struct Report {
    std::string command;
    std::vector<std::string> columns;
    std::vector<nlohmann::ordered_json> rows;
    nlohmann::ordered_json footer = nlohmann::ordered_json::object();
};

/// {schema_version, command, config, rows, footer}.
nlohmann::ordered_json report_json(const Report& report, const RunConfig& config);

/// Header row, one line per row, then the config and footer as '#' comment lines.
/// Floats carry 17 significant digits.
void write_csv(const Report& report, const RunConfig& config, std::ostream& out);

Report family_poisson(double lambda, const RunConfig& config);
Report family_binomial(int n, double p, const RunConfig& config);
Report infer_poisson(int observed, const RunConfig& config);
Report infer_binomial(int n, int k, const RunConfig& config);

/// Entry point shared by the executable and the tests. `out` receives the
/// report unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cohstat::cli
