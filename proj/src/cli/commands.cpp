#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cli/verify.hpp"
#include "cohstat/errors.hpp"
#include "cohstat/fock.hpp"
#include "cohstat/inference.hpp"
#include "cohstat/special.hpp"
#include "cohstat/spin.hpp"

namespace cohstat::cli {

namespace {

using nlohmann::ordered_json;

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string csv_cell(const ordered_json& v) {
    if (v.is_number_float()) {
        return format_number(v.get<double>());
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number() || v.is_boolean() || v.is_null()) {
        return v.dump();
    }
    // Nested values are quoted compact JSON.
    std::string s = v.dump();
    std::string quoted = "\"";
    for (char c : s) {
        quoted += c;
        if (c == '"') {
            quoted += '"';
        }
    }
    return quoted + "\"";
}

Report empty_report(std::string command, std::vector<std::string> columns) {
    Report r;
    r.command = std::move(command);
    r.columns = std::move(columns);
    return r;
}

ordered_json credible_json(const InferredDistribution& dist, const std::vector<double>& masses) {
    ordered_json out = ordered_json::array();
    for (double m : masses) {
        const CredibleInterval ci = credible_interval(dist, m);
        out.push_back(ordered_json{{"mass", m}, {"low", ci.low}, {"high", ci.high}, {"achieved", ci.mass}});
    }
    return out;
}

Report density_report(std::string command, const InferredDistribution& pov,
                      const InferredDistribution& analytic, const RunConfig& config) {
    const std::string& name = pov.parameter;
    Report r = empty_report(std::move(command), {name, "density_pov", "density_analytic", "absdiff"});
    double worst = 0.0;
    for (std::size_t i = 0; i < pov.grid.size(); ++i) {
        const double diff = std::abs(pov.density[i] - analytic.density[i]);
        worst = std::max(worst, diff);
        r.rows.push_back(ordered_json{{name, pov.grid[i]},
                                      {"density_pov", pov.density[i]},
                                      {"density_analytic", analytic.density[i]},
                                      {"absdiff", diff}});
    }
    r.footer["max_abs_diff"] = worst;
    r.footer["total_mass_pov"] = pov.total_mass;
    r.footer["total_mass_analytic"] = analytic.total_mass;
    r.footer["mass_tolerance_pov"] = pov.mass_tolerance();
    r.footer["credible_intervals"] = credible_json(pov, config.credible_masses);
    return r;
}

std::ostream* open_output(const RunConfig& config, std::ostream& fallback, std::ofstream& file) {
    if (config.out == "-") {
        return &fallback;
    }
    file.open(config.out, std::ios::binary);
    if (!file) {
        throw ConfigError("cannot open output path '" + config.out + "'");
    }
    return &file;
}

void emit(const Report& report, const RunConfig& config, std::ostream& out) {
    std::ofstream file;
    std::ostream* sink = open_output(config, out, file);
    if (config.format == OutputFormat::json) {
        *sink << report_json(report, config).dump(2) << '\n';
    } else {
        write_csv(report, config, *sink);
    }
    sink->flush();
}

} // namespace

ordered_json report_json(const Report& report, const RunConfig& config) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = report.command;
    j["config"] = config.to_json();
    j["rows"] = ordered_json::array();
    for (const auto& row : report.rows) {
        j["rows"].push_back(row);
    }
    j["footer"] = report.footer;
    return j;
}

void write_csv(const Report& report, const RunConfig& config, std::ostream& out) {
    for (std::size_t c = 0; c < report.columns.size(); ++c) {
        out << (c ? "," : "") << report.columns[c];
    }
    out << '\n';
    for (const auto& row : report.rows) {
        for (std::size_t c = 0; c < report.columns.size(); ++c) {
            out << (c ? "," : "") << csv_cell(row.at(report.columns[c]));
        }
        out << '\n';
    }
    out << "# command " << report.command << '\n';
    out << "# config " << config.to_json().dump() << '\n';
    out << "# footer " << report.footer.dump() << '\n';
}

Report family_poisson(double lambda, const RunConfig& config) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw DomainError("family poisson: --lambda must be finite and non-negative");
    }
    Report r = empty_report("family poisson", {"outcome", "probability", "probability_closed_form", "absdiff"});
    const Complex alpha(std::sqrt(lambda), 0.0);
    if (lambda == 0.0) {
        r.rows.push_back(ordered_json{{"outcome", 0}, {"probability", 1.0}, {"probability_closed_form", 1.0},
                                      {"absdiff", 0.0}});
        r.footer["max_abs_diff"] = 0.0;
        r.footer["tail_mass"] = 0.0;
        return r;
    }
    const std::size_t k = config.trunc.value_or(default_truncation(alpha));
    const LadderRep rep = build_ladder(k);
    // The closed form needs the tail below tail_tol before the exponential route is trusted.
    const CoherentStateWH reference = coherent_closed_form(alpha, rep.space, config.tail_tol);
    const CoherentStateWH state = coherent_via_exponential(alpha, rep, config.tol);
    double worst = 0.0;
    for (std::size_t n = 0; n < k; ++n) {
        const double closed = poisson_pmf(alpha, static_cast<std::int64_t>(n));
        if (closed <= 0.0) {
            break;
        }
        const double p = std::norm(state.state.vector()(static_cast<Eigen::Index>(n)));
        const double diff = std::abs(p - closed);
        worst = std::max(worst, diff);
        r.rows.push_back(ordered_json{{"outcome", n}, {"probability", p}, {"probability_closed_form", closed},
                                      {"absdiff", diff}});
    }
    r.footer["max_abs_diff"] = worst;
    r.footer["tail_mass"] = reference.tail_mass;
    r.footer["K"] = k;
    return r;
}

Report family_binomial(int n, double p, const RunConfig& config) {
    if (n < 0) {
        throw DomainError("family binomial: --n must be non-negative");
    }
    if (!(p >= 0.0 && p < 1.0)) {
        throw DomainError("family binomial: --p must lie in [0, 1) (p = 1 is the excluded South Pole)");
    }
    Report r = empty_report("family binomial", {"outcome", "probability", "probability_closed_form", "absdiff"});
    const SpinRep rep = build_spin_rep(HalfInteger::from_twice(n));
    const SpherePoint point(2.0 * std::asin(std::sqrt(p)), 0.0);
    const CoherentStateSpin state = spin_coherent_via_exponential(rep, point, config.tol);
    double worst = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double prob = std::norm(state.state.vector()(k));
        const double closed = binomial_probability(n, k, p, 1.0 - p);
        const double diff = std::abs(prob - closed);
        worst = std::max(worst, diff);
        r.rows.push_back(ordered_json{{"outcome", k}, {"probability", prob}, {"probability_closed_form", closed},
                                      {"absdiff", diff}});
    }
    r.footer["max_abs_diff"] = worst;
    r.footer["j"] = rep.j.value();
    r.footer["theta"] = point.theta();
    return r;
}

Report infer_poisson(int observed, const RunConfig& config) {
    if (observed < 0) {
        throw DomainError("infer poisson: --observed must be non-negative");
    }
    const std::vector<double> grid = lambda_grid(observed, config.lambda_points);
    const InferredDistribution pov = infer_poisson_pov(observed, grid, config.n_r, config.n_angle);
    const InferredDistribution analytic = analytic_poisson_posterior(observed, grid);
    Report r = density_report("infer poisson", pov, analytic, config);
    r.footer["radius"] = std::sqrt(grid.back()) + 8.0;
    return r;
}

Report infer_binomial(int n, int k, const RunConfig& config) {
    if (n < 0 || k < 0 || k > n) {
        throw DomainError("infer binomial: need 0 <= --k <= --n");
    }
    const HalfInteger j = HalfInteger::from_twice(n);
    const std::vector<double> grid = p_grid(config.p_points);
    const int n_theta = config.n_theta.value_or(n + 2);
    const int n_gamma = config.n_gamma.value_or(std::max(2 * n + 1, 2));
    const CoherentFamily family = SpinFamily{build_spin_rep(j)};
    const InferredDistribution pov =
        infer_via_pov(static_cast<std::size_t>(k), family, sphere_quadrature(j, n_theta, n_gamma), grid);
    const InferredDistribution analytic = analytic_binomial_posterior(n, k, grid);
    Report r = density_report("infer binomial", pov, analytic, config);
    r.footer["n_theta"] = n_theta;
    r.footer["n_gamma"] = n_gamma;
    return r;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coherent-state probability families and inferred distributions", "cohstat"};
    app.require_subcommand(1);

    // Common flags, attached to every leaf command.
    std::optional<std::string> config_file;
    nlohmann::json flag_values = nlohmann::json::object();
    std::size_t trunc = 0;
    double tol = 0.0;
    double tail_tol = 0.0;
    int n_r = 0;
    int n_angle = 0;
    int n_theta = 0;
    int n_gamma = 0;
    std::size_t lambda_points = 0;
    std::size_t p_points = 0;
    std::vector<double> masses;
    std::string out_path;
    std::string format;
    std::uint64_t seed = 0;
    std::string config_path;
    std::vector<std::pair<std::string, CLI::Option*>> common;

    auto add_common = [&](CLI::App* cmd) {
        common.emplace_back("trunc", cmd->add_option("--trunc", trunc, "Fock truncation dimension K"));
        common.emplace_back("tol", cmd->add_option("--tol", tol, "Cross-route tolerance"));
        common.emplace_back("tail_tol", cmd->add_option("--tail-tol", tail_tol, "Allowed Poisson tail mass"));
        common.emplace_back("n_r", cmd->add_option("--n-r", n_r, "Radial Gauss-Legendre nodes"));
        common.emplace_back("n_angle", cmd->add_option("--n-angle", n_angle, "Plane angular nodes"));
        common.emplace_back("n_theta", cmd->add_option("--n-theta", n_theta, "Sphere polar nodes"));
        common.emplace_back("n_gamma", cmd->add_option("--n-gamma", n_gamma, "Sphere azimuthal nodes"));
        common.emplace_back("lambda_points", cmd->add_option("--lambda-points", lambda_points, "Lambda grid size"));
        common.emplace_back("p_points", cmd->add_option("--p-points", p_points, "p grid size"));
        common.emplace_back("credible_masses", cmd->add_option("--mass", masses, "Credible-interval masses"));
        common.emplace_back("out", cmd->add_option("--out", out_path, "Output path, '-' for stdout"));
        common.emplace_back("format", cmd->add_option("--format", format, "json or csv"));
        common.emplace_back("seed", cmd->add_option("--seed", seed, "Seed for sampled test points"));
        cmd->add_option("--config", config_path, "JSON config file");
    };

    auto* family = app.add_subcommand("family", "Probability family via coherent states");
    family->require_subcommand(1);
    double lambda = 0.0;
    auto* family_poisson_cmd = family->add_subcommand("poisson", "Poisson family");
    family_poisson_cmd->add_option("--lambda", lambda, "Poisson mean")->required();
    add_common(family_poisson_cmd);
    int family_n = 0;
    double family_p = 0.0;
    auto* family_binomial_cmd = family->add_subcommand("binomial", "Binomial family");
    family_binomial_cmd->add_option("--n", family_n, "Number of trials")->required();
    family_binomial_cmd->add_option("--p", family_p, "Success probability")->required();
    add_common(family_binomial_cmd);

    auto* infer = app.add_subcommand("infer", "Inferred distribution on the parameter space");
    infer->require_subcommand(1);
    int observed = 0;
    auto* infer_poisson_cmd = infer->add_subcommand("poisson", "Observed Poisson count");
    infer_poisson_cmd->add_option("--observed", observed, "Observed count n")->required();
    add_common(infer_poisson_cmd);
    int infer_n = 0;
    int infer_k = 0;
    auto* infer_binomial_cmd = infer->add_subcommand("binomial", "Observed binomial count");
    infer_binomial_cmd->add_option("--n", infer_n, "Number of trials")->required();
    infer_binomial_cmd->add_option("--k", infer_k, "Observed successes")->required();
    add_common(infer_binomial_cmd);

    auto* verify = app.add_subcommand("verify", "Residual checks of the operator identities");
    std::string check = "all";
    std::vector<double> alpha;
    std::vector<double> beta;
    double spin_j = 0.0;
    double theta = 0.0;
    double gamma = 0.0;
    int samples = 0;
    verify->add_option("--check", check, "ladder|bch|gauss|identity|translation|example12|all");
    auto* alpha_opt = verify->add_option("--alpha", alpha, "alpha as RE IM")->expected(2);
    auto* beta_opt = verify->add_option("--beta", beta, "beta as RE IM")->expected(2);
    auto* j_opt = verify->add_option("--j", spin_j, "Spin j");
    auto* theta_opt = verify->add_option("--theta", theta, "Polar angle");
    auto* gamma_opt = verify->add_option("--gamma", gamma, "Azimuthal angle");
    verify->add_option("--samples", samples, "Extra seeded sample points")->check(CLI::NonNegativeNumber);
    add_common(verify);

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("cohstat");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) {
        argv.push_back(a.data());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "cohstat: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        for (const auto& [key, opt] : common) {
            if (opt->count() == 0) {
                continue;
            }
            if (key == "trunc") {
                flag_values[key] = trunc;
            } else if (key == "tol") {
                flag_values[key] = tol;
            } else if (key == "tail_tol") {
                flag_values[key] = tail_tol;
            } else if (key == "n_r") {
                flag_values[key] = n_r;
            } else if (key == "n_angle") {
                flag_values[key] = n_angle;
            } else if (key == "n_theta") {
                flag_values[key] = n_theta;
            } else if (key == "n_gamma") {
                flag_values[key] = n_gamma;
            } else if (key == "lambda_points") {
                flag_values[key] = lambda_points;
            } else if (key == "p_points") {
                flag_values[key] = p_points;
            } else if (key == "credible_masses") {
                flag_values[key] = masses;
            } else if (key == "out") {
                flag_values[key] = out_path;
            } else if (key == "format") {
                flag_values[key] = format;
            } else if (key == "seed") {
                flag_values[key] = seed;
            }
        }
        if (!config_path.empty()) {
            config_file = config_path;
        }
        const RunConfig config = load_config(config_file, flag_values);

        if (family_poisson_cmd->parsed()) {
            emit(family_poisson(lambda, config), config, out);
        } else if (family_binomial_cmd->parsed()) {
            emit(family_binomial(family_n, family_p, config), config, out);
        } else if (infer_poisson_cmd->parsed()) {
            emit(infer_poisson(observed, config), config, out);
        } else if (infer_binomial_cmd->parsed()) {
            emit(infer_binomial(infer_n, infer_k, config), config, out);
        } else if (verify->parsed()) {
            VerifyParams params;
            if (alpha_opt->count() > 0) {
                params.alpha = Complex(alpha[0], alpha[1]);
            }
            if (beta_opt->count() > 0) {
                params.beta = Complex(beta[0], beta[1]);
            }
            if (j_opt->count() > 0) {
                params.j = spin_j;
            }
            if (theta_opt->count() > 0) {
                params.theta = theta;
            }
            if (gamma_opt->count() > 0) {
                params.gamma = gamma;
            }
            params.samples = samples;

            const std::vector<CheckResult> results = run_checks(check, params, config);
            Report r = empty_report("verify", {"check", "params", "residual", "threshold", "pass"});
            bool all_pass = true;
            for (const auto& res : results) {
                all_pass = all_pass && res.pass();
                r.rows.push_back(ordered_json{{"check", res.check},
                                              {"params", res.params},
                                              {"residual", res.residual},
                                              {"threshold", res.threshold},
                                              {"pass", res.pass()}});
            }
            r.footer["checks"] = results.size();
            r.footer["all_pass"] = all_pass;
            emit(r, config, out);
            return all_pass ? kSuccess : kVerificationFailed;
        }
    } catch (const ConfigError& e) {
        err << "cohstat: " << e.what() << '\n';
        return kUsageError;
    } catch (const DomainError& e) {
        err << "cohstat: " << e.what() << '\n';
        return kUsageError;
    } catch (const DimensionError& e) {
        err << "cohstat: " << e.what() << '\n';
        return kUsageError;
    } catch (const TruncationError& e) {
        err << "cohstat: " << e.what() << " (raise --trunc)\n";
        return kUsageError;
    } catch (const Error& e) {
        err << "cohstat: " << e.what() << '\n';
        return kVerificationFailed;
    }
    return kSuccess;
}

} // namespace cohstat::cli
