#include "cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cohstat::cli {

namespace {

using nlohmann::json;

double positive_real(const std::string& key, const json& v) {
    if (!v.is_number()) {
        throw ConfigError("config key '" + key + "' must be a number");
    }
    const double x = v.get<double>();
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw ConfigError("config key '" + key + "' must be positive");
    }
    return x;
}

long long positive_integer(const std::string& key, const json& v, long long minimum = 1) {
    if (!v.is_number_integer()) {
        throw ConfigError("config key '" + key + "' must be an integer");
    }
    const long long x = v.get<long long>();
    if (x < minimum) {
        throw ConfigError("config key '" + key + "' must be at least " + std::to_string(minimum));
    }
    return x;
}

} // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "trunc",  "tol",           "tail_tol", "n_r",             "n_angle", "n_theta", "n_gamma",
        "lambda_points", "p_points", "credible_masses", "format", "out", "seed"};
    return keys;
}

void apply_config_value(RunConfig& c, const std::string& key, const json& v) {
    if (key == "trunc") {
        c.trunc = static_cast<std::size_t>(positive_integer(key, v, 2));
    } else if (key == "tol") {
        c.tol = positive_real(key, v);
    } else if (key == "tail_tol") {
        c.tail_tol = positive_real(key, v);
    } else if (key == "n_r") {
        c.n_r = static_cast<int>(positive_integer(key, v, 2));
    } else if (key == "n_angle") {
        c.n_angle = static_cast<int>(positive_integer(key, v, 2));
    } else if (key == "n_theta") {
        c.n_theta = static_cast<int>(positive_integer(key, v, 2));
    } else if (key == "n_gamma") {
        c.n_gamma = static_cast<int>(positive_integer(key, v, 1));
    } else if (key == "lambda_points") {
        c.lambda_points = static_cast<std::size_t>(positive_integer(key, v, 3));
    } else if (key == "p_points") {
        c.p_points = static_cast<std::size_t>(positive_integer(key, v, 3));
    } else if (key == "credible_masses") {
        if (!v.is_array()) {
            throw ConfigError("config key 'credible_masses' must be an array of numbers");
        }
        std::vector<double> masses;
        for (const auto& m : v) {
            if (!m.is_number() || !(m.get<double>() > 0.0 && m.get<double>() < 1.0)) {
                throw ConfigError("config key 'credible_masses' entries must lie in (0, 1)");
            }
            masses.push_back(m.get<double>());
        }
        c.credible_masses = std::move(masses);
    } else if (key == "format") {
        if (!v.is_string() || (v != "json" && v != "csv")) {
            throw ConfigError("config key 'format' must be \"json\" or \"csv\"");
        }
        c.format = v == "json" ? OutputFormat::json : OutputFormat::csv;
    } else if (key == "out") {
        if (!v.is_string() || v.get<std::string>().empty()) {
            throw ConfigError("config key 'out' must be a non-empty path");
        }
        c.out = v.get<std::string>();
    } else if (key == "seed") {
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
            throw ConfigError("config key 'seed' must be a non-negative integer");
        }
        c.seed = v.get<std::uint64_t>();
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

RunConfig load_config(const std::optional<std::string>& file, const json& flags) {
    RunConfig config;
    if (file) {
        std::ifstream in(*file);
        if (!in) {
            throw ConfigError("cannot open config file '" + *file + "'");
        }
        json parsed;
        try {
            parsed = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError("malformed config file '" + *file + "': " + e.what());
        }
        if (!parsed.is_object()) {
            throw ConfigError("config file '" + *file + "' must hold a JSON object");
        }
        for (const auto& [key, value] : parsed.items()) {
            apply_config_value(config, key, value);
        }
    }
    for (const auto& [key, value] : flags.items()) {
        apply_config_value(config, key, value);
    }
    return config;
}

nlohmann::ordered_json RunConfig::to_json() const {
    nlohmann::ordered_json j;
    j["trunc"] = trunc ? nlohmann::ordered_json(*trunc) : nlohmann::ordered_json(nullptr);
    j["tol"] = tol;
    j["tail_tol"] = tail_tol;
    j["n_r"] = n_r;
    j["n_angle"] = n_angle;
    j["n_theta"] = n_theta ? nlohmann::ordered_json(*n_theta) : nlohmann::ordered_json(nullptr);
    j["n_gamma"] = n_gamma ? nlohmann::ordered_json(*n_gamma) : nlohmann::ordered_json(nullptr);
    j["lambda_points"] = lambda_points;
    j["p_points"] = p_points;
    j["credible_masses"] = credible_masses;
    j["format"] = format == OutputFormat::json ? "json" : "csv";
    j["out"] = out;
    j["seed"] = seed;
    return j;
}

} // namespace cohstat::cli
