#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "ppbnb/errors.hpp"
#include "ppbnb/metrics.hpp"
#include "ppbnb/oracle.hpp"

namespace ppbnb::cli {

using nlohmann::json;

namespace {

struct RunFlags {
    std::string problem, problem_file, ub_mode, out, config;
    std::vector<std::string> params;
    double proper_eps = 0.0, tol = 0.0, delta = 0.0;
    unsigned threads = 1;
    std::uint64_t seed = 0;
    std::size_t max_iters = 0, oracle_resolution = 0;
    bool oracle = false, no_plot = false;

    CLI::Option *o_problem{}, *o_problem_file{}, *o_params{}, *o_eps{}, *o_tol{}, *o_delta{}, *o_ub{},
        *o_threads{}, *o_seed{}, *o_iters{}, *o_out{}, *o_res{}, *o_config{}, *o_oracle{}, *o_no_plot{};
};

void add_run_options(CLI::App& app, RunFlags& f) {
    f.o_problem = app.add_option("--problem", f.problem, "built-in problem name (see list-problems)");
    f.o_problem_file = app.add_option("--problem-file", f.problem_file, "problem expression file (JSON)");
    f.o_params = app.add_option("--param", f.params, "problem parameter, e.g. K=4 (repeatable)");
    f.o_eps = app.add_option("--proper-eps", f.proper_eps, "cone parameter in [0, 1)");
    f.o_tol = app.add_option("--tol", f.tol, "gap tolerance (normalized objective units)");
    f.o_delta = app.add_option("--delta", f.delta, "box diameter tolerance");
    f.o_ub = app.add_option("--ub-mode", f.ub_mode, "upper bounds: midpoint or moea");
    f.o_threads = app.add_option("--threads", f.threads, "worker threads (default: PPBNB_THREADS or 1)");
    f.o_seed = app.add_option("--seed", f.seed, "random seed");
    f.o_iters = app.add_option("--max-iters", f.max_iters, "iteration limit");
    f.o_out = app.add_option("--out", f.out, "output directory");
    f.o_res = app.add_option("--oracle-resolution", f.oracle_resolution, "grid points per dimension");
    f.o_config = app.add_option("--config", f.config, "JSON config file");
    f.o_oracle = app.add_flag("--oracle", f.oracle, "overlay a grid oracle in the plot data (n <= 3)");
    f.o_no_plot = app.add_flag("--no-plot", f.no_plot, "skip plot data");
}

unsigned parse_threads_env(const char* text) {
    const std::string s = text;
    std::size_t used = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty() || v == 0 || v > 4096) {
        throw ConfigError("PPBNB_THREADS must be a positive integer, got '" + s + "'");
    }
    return static_cast<unsigned>(v);
}

RunConfig config_from_flags(const RunFlags& f, const char* env_threads) {
    RunConfig base;
    if (env_threads && *env_threads) base.solver.threads = parse_threads_env(env_threads);

    json doc = json::object();
    if (*f.o_config) {
        try {
            doc = json::parse(read_text_file(f.config));
        } catch (const json::exception& e) {
            throw ConfigError("config '" + f.config + "' is not valid JSON: " + e.what());
        }
        if (!doc.is_object()) throw ConfigError("config '" + f.config + "' must hold a JSON object");
    }

    json over = json::object();
    if (*f.o_problem) over["problem"] = f.problem;
    if (*f.o_problem_file) over["problem_file"] = f.problem_file;
    for (const auto& kv : f.params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError("--param expects KEY=VALUE, got '" + kv + "'");
        const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != value.size()) throw ConfigError("--param " + key + " needs a numeric value");
        over["params"][key] = v;
    }
    if (*f.o_eps) over["proper_eps"] = f.proper_eps;
    if (*f.o_tol) over["tol"] = f.tol;
    if (*f.o_delta) over["delta"] = f.delta;
    if (*f.o_ub) over["ub_mode"] = f.ub_mode;
    if (*f.o_threads) over["threads"] = f.threads;
    if (*f.o_seed) over["seed"] = f.seed;
    if (*f.o_iters) over["max_iterations"] = f.max_iters;
    if (*f.o_out) over["out"] = f.out;
    if (*f.o_res) over["oracle_resolution"] = f.oracle_resolution;
    if (*f.o_oracle) over["oracle"] = true;
    if (*f.o_no_plot) over["export"]["plot"] = false;
    doc.merge_patch(over);
    if (!doc.contains("problem")) doc["problem"] = base.problem;

    RunConfig cfg = config_from_json(doc.dump(), base);
    cfg.validate();
    return cfg;
}

std::vector<Vector> images(const std::vector<GridPoint>& pts, const ReferencePoints& ref) {
    std::vector<Vector> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(normalize(p.f, ref));
    return out;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
    const ProblemDefinition prob = resolve_problem(cfg);
    const RunResult result = solve(prob, cfg.solver);
    export_results(result, cfg, prob);
    if (cfg.export_plot) {
        std::optional<GridOracle> oracle;
        if (cfg.oracle) {
            const std::size_t res = cfg.oracle_resolution ? cfg.oracle_resolution : default_oracle_resolution(prob.n);
            oracle = build_grid_oracle(prob, res, cfg.solver.threads);
        }
        emit_plot_data(result, oracle, cfg.output_dir);
    }
    out << prob.name << ": " << to_string(result.reason) << " after " << result.state.iteration
        << " iterations, " << result.state.upper_archive.size() << " solutions, d = "
        << format_double(result.state.gap) << ", w = " << format_double(result.state.width) << "\n";
    if (!result.message.empty()) out << result.message << "\n";
    out << "results written to " << cfg.output_dir << "\n";
    return exit_code_for(result.reason);
}

int cmd_list(std::ostream& out) {
    for (const auto& name : list_problems()) {
        const ProblemDefinition p = get_problem(name);
        out << name << "  n=" << p.n << " m=" << p.m << " p=" << p.p << "\n";
    }
    return kOk;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
    const ProblemDefinition prob = resolve_problem(cfg);
    const std::size_t res = cfg.oracle_resolution ? cfg.oracle_resolution : default_oracle_resolution(prob.n);
    const GridOracle oracle = build_grid_oracle(prob, res, cfg.solver.threads);
    if (oracle.feasible.empty()) throw DegenerateRangeError("no feasible grid point");
    const ReferencePoints ref = grid_reference(oracle);
    const auto pareto = oracle_pareto_front(oracle);
    const auto proper = oracle_proper_front(oracle, cfg.solver.proper_eps.value(), ref);
    std::filesystem::create_directories(cfg.output_dir);
    const std::filesystem::path dir(cfg.output_dir);
    write_text_file((dir / "oracle_pareto.csv").string(), oracle_csv(pareto, ref, prob.n));
    write_text_file((dir / "oracle_proper.csv").string(), oracle_csv(proper, ref, prob.n));
    out << prob.name << ": " << oracle.total_points << " grid points, " << oracle.feasible.size() << " feasible, "
        << pareto.size() << " Pareto, " << proper.size() << " eps-proper (eps = "
        << format_double(cfg.solver.proper_eps.value()) << ")\n";
    return kOk;
}

int cmd_verify(const std::string& dir_text, std::size_t resolution, double hausdorff_tol, std::ostream& out) {
    const std::filesystem::path dir(dir_text);
    const json summary = json::parse(read_text_file((dir / "summary.json").string()));
    RunConfig cfg = config_from_json(summary.at("config").dump());
    const ProblemDefinition prob = resolve_problem(cfg);
    const auto rows = read_solutions_csv((dir / "solutions.csv").string(), prob.n, prob.m);
    const ReferencePoints ref{summary.at("reference").at("ideal").get<Vector>(),
                              summary.at("reference").at("nadir").get<Vector>()};
    const double eps = cfg.solver.proper_eps.value();

    bool all = true;
    auto report = [&](const std::string& name, bool ok, const std::string& detail) {
        out << (ok ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
        all = all && ok;
    };

    std::size_t infeasible = 0;
    std::vector<Vector> normalized;
    for (const auto& r : rows) {
        if (!evaluate(prob, r.x).feasible) ++infeasible;
        normalized.push_back(r.f_norm);
    }
    report("feasibility", infeasible == 0, std::to_string(infeasible) + " of " + std::to_string(rows.size()) +
                                               " solutions violate a constraint");
    const auto kept = non_eps_dominated_indices(normalized, EpsParameter(eps), cfg.solver.dominance_tolerance);
    report("non-dominance", kept.size() == rows.size(),
           std::to_string(rows.size() - kept.size()) + " solutions are eps-dominated inside the archive");

    if (prob.n > 3) {
        out << "SKIP oracle checks: n = " << prob.n << " is too large for a grid\n";
        return all ? kOk : kVerifyFailed;
    }
    if (rows.empty()) {
        report("oracle", false, "no solutions to compare");
        return kVerifyFailed;
    }
    const std::size_t res = resolution ? resolution : default_oracle_resolution(prob.n);
    const GridOracle oracle = build_grid_oracle(prob, res, cfg.solver.threads);
    const auto proper = images(oracle_proper_front(oracle, eps, ref), ref);
    if (proper.empty()) {
        report("oracle", false, "oracle has no feasible points");
        return kVerifyFailed;
    }
    const double dh = directed_hausdorff(normalized, proper, cfg.solver.threads);
    report("front distance", dh <= hausdorff_tol,
           "directed Hausdorff to the oracle eps-proper front = " + format_double(dh));

    if (cfg.solver.ub_mode == UpperBoundMode::Midpoint) {
        const double bound = summary.at("efficiency_bound").get<double>();
        std::vector<Vector> grid;
        for (const auto& p : oracle.feasible) grid.push_back(normalize(p.f, ref));
        std::size_t bad = 0;
        for (const auto& y : normalized) {
            if (!eps_efficient_image(y, bound, grid)) ++bad;
        }
        report("eps-efficiency", bad == 0,
               std::to_string(bad) + " solutions fail at eps = " + format_double(bound));
    }
    return all ? kOk : kVerifyFailed;
}

}  // namespace

int exit_code_for(TerminationReason reason) {
    switch (reason) {
        case TerminationReason::Converged: return kOk;
        case TerminationReason::Degenerate: return kDegenerate;
        case TerminationReason::MaxIterations: return kMaxIterations;
    }
    return kRuntimeError;
}

RunConfig parse_run_config(const std::vector<std::string>& args, const char* env_threads) {
    CLI::App app{"solve"};
    RunFlags flags;
    add_run_options(app, flags);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }
    return config_from_flags(flags, env_threads);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Branch and bound for eps-properly Pareto optimal sets", "ppbnb"};
    app.require_subcommand(1);

    RunFlags solve_flags, oracle_flags;
    CLI::App* solve_cmd = app.add_subcommand("solve", "run the solver and export results");
    add_run_options(*solve_cmd, solve_flags);

    CLI::App* list_cmd = app.add_subcommand("list-problems", "list built-in problems");

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "export grid Pareto and eps-proper fronts");
    add_run_options(*oracle_cmd, oracle_flags);

    std::string verify_dir;
    std::size_t verify_res = 0;
    double verify_tol = 0.15;
    CLI::App* verify_cmd = app.add_subcommand("verify", "check a finished run against a grid oracle");
    verify_cmd->add_option("result", verify_dir, "output directory of a solve run")->required();
    verify_cmd->add_option("--oracle-resolution", verify_res, "grid points per dimension");
    verify_cmd->add_option("--hausdorff-tol", verify_tol, "allowed distance to the oracle front");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kValidationError;
    }

    const char* env_threads = std::getenv("PPBNB_THREADS");
    try {
        if (*solve_cmd) return cmd_solve(config_from_flags(solve_flags, env_threads), out);
        if (*list_cmd) return cmd_list(out);
        if (*oracle_cmd) return cmd_oracle(config_from_flags(oracle_flags, env_threads), out);
        if (*verify_cmd) return cmd_verify(verify_dir, verify_res, verify_tol, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kValidationError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kRuntimeError;
    }
    return kRuntimeError;
}

}  // namespace ppbnb::cli
