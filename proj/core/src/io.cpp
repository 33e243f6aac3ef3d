#include "ppbnb/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "ppbnb/errors.hpp"

namespace ppbnb {

using nlohmann::ordered_json;

std::pair<double, double> default_tolerances(const std::string& problem) {
    if (problem == "MOP") return {0.001, 0.0001};
    if (problem == "DEB2DK") return {0.0015, 0.00015};
    if (problem == "DEB3DK") return {0.006, 0.008};
    if (problem == "welded-beam") return {0.3, 0.02};
    if (problem == "water-resources") return {0.1, 0.02};
    return {0.05, 0.05};
}

void RunConfig::validate() const {
    if (problem_file.empty()) {
        const auto names = list_problems();
        if (std::find(names.begin(), names.end(), problem) == names.end()) {
            throw ConfigError("unknown problem '" + problem + "'");
        }
    } else if (!std::filesystem::exists(problem_file)) {
        throw ConfigError("problem file '" + problem_file + "' does not exist");
    }
    solver.validate();
    if (output_dir.empty()) throw ConfigError("output directory must not be empty");
}

ProblemDefinition resolve_problem(const RunConfig& cfg) {
    if (!cfg.problem_file.empty()) return load_problem_file(cfg.problem_file);
    return get_problem(cfg.problem, cfg.params);
}

std::string format_double(double v) {
    if (std::isnan(v)) return "NaN";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

ordered_json config_json(const RunConfig& cfg) {
    const SolverConfig& s = cfg.solver;
    ordered_json j;
    j["problem"] = cfg.problem;
    j["params"] = ordered_json::object();
    for (const auto& [k, v] : cfg.params) j["params"][k] = v;
    j["problem_file"] = cfg.problem_file;
    j["proper_eps"] = s.proper_eps.value();
    j["tol"] = s.tol_eps;
    j["delta"] = s.tol_delta;
    j["max_iterations"] = s.max_iterations;
    j["ub_mode"] = to_string(s.ub_mode);
    j["moea"] = {{"population", s.moea_cfg.population},
                 {"generations", s.moea_cfg.generations},
                 {"neighborhood", s.moea_cfg.neighborhood},
                 {"de_scale", s.moea_cfg.de_scale},
                 {"crossover_rate", s.moea_cfg.crossover_rate}};
    j["threads"] = s.threads;
    j["seed"] = s.seed;
    j["dominance_tolerance"] = s.dominance_tolerance;
    j["max_boxes"] = s.max_boxes;
    j["lipschitz_floor"] = s.lipschitz_floor;
    j["reference_samples"] = s.reference_samples;
    if (s.reference) {
        j["reference"] = {{"ideal", s.reference->ideal}, {"nadir", s.reference->nadir}};
    } else {
        j["reference"] = nullptr;
    }
    j["verbose"] = s.verbose;
    j["out"] = cfg.output_dir;
    j["export"] = {{"csv", cfg.export_csv}, {"plot", cfg.export_plot}};
    j["oracle"] = cfg.oracle;
    j["oracle_resolution"] = cfg.oracle_resolution;
    return j;
}

template <typename T>
T number_field(const ordered_json& j, const char* key, const char* what) {
    const auto& v = j.at(key);
    if (!v.is_number()) throw ConfigError(std::string("config field '") + key + "' must be " + what);
    if constexpr (std::is_integral_v<T>) {
        if (v.is_number_float() || (v.is_number_integer() && v.get<long long>() < 0)) {
            throw ConfigError(std::string("config field '") + key + "' must be " + what);
        }
    }
    return v.get<T>();
}

}  // namespace

std::string config_to_json(const RunConfig& cfg) { return config_json(cfg).dump(2); }

RunConfig config_from_json(const std::string& text, RunConfig base) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    RunConfig cfg = std::move(base);
    SolverConfig& s = cfg.solver;
    try {
        if (j.contains("problem")) {
            cfg.problem = j.at("problem").get<std::string>();
            const auto [tol, delta] = default_tolerances(cfg.problem);
            if (!j.contains("tol")) s.tol_eps = tol;
            if (!j.contains("delta")) s.tol_delta = delta;
        }
        if (j.contains("params")) {
            cfg.params.clear();
            for (const auto& [k, v] : j.at("params").items()) {
                if (!v.is_number()) throw ConfigError("problem parameter '" + k + "' must be numeric");
                cfg.params[k] = v.get<double>();
            }
        }
        if (j.contains("problem_file")) cfg.problem_file = j.at("problem_file").get<std::string>();
        if (j.contains("proper_eps")) s.proper_eps = EpsParameter(number_field<double>(j, "proper_eps", "a number"));
        if (j.contains("tol")) s.tol_eps = number_field<double>(j, "tol", "a number");
        if (j.contains("delta")) s.tol_delta = number_field<double>(j, "delta", "a number");
        if (j.contains("max_iterations")) {
            s.max_iterations = number_field<std::size_t>(j, "max_iterations", "a nonnegative integer");
        }
        if (j.contains("ub_mode")) s.ub_mode = parse_upper_bound_mode(j.at("ub_mode").get<std::string>());
        if (j.contains("moea")) {
            const auto& mo = j.at("moea");
            if (mo.contains("population")) s.moea_cfg.population = number_field<std::size_t>(mo, "population", "a positive integer");
            if (mo.contains("generations")) s.moea_cfg.generations = number_field<std::size_t>(mo, "generations", "a positive integer");
            if (mo.contains("neighborhood")) s.moea_cfg.neighborhood = number_field<std::size_t>(mo, "neighborhood", "a positive integer");
            if (mo.contains("de_scale")) s.moea_cfg.de_scale = number_field<double>(mo, "de_scale", "a number");
            if (mo.contains("crossover_rate")) s.moea_cfg.crossover_rate = number_field<double>(mo, "crossover_rate", "a number");
        }
        if (j.contains("threads")) s.threads = number_field<unsigned>(j, "threads", "a positive integer");
        if (j.contains("seed")) s.seed = number_field<std::uint64_t>(j, "seed", "a nonnegative integer");
        if (j.contains("dominance_tolerance")) s.dominance_tolerance = number_field<double>(j, "dominance_tolerance", "a number");
        if (j.contains("max_boxes")) s.max_boxes = number_field<std::size_t>(j, "max_boxes", "a positive integer");
        if (j.contains("lipschitz_floor")) s.lipschitz_floor = number_field<double>(j, "lipschitz_floor", "a number");
        if (j.contains("reference_samples")) {
            s.reference_samples = number_field<std::size_t>(j, "reference_samples", "a nonnegative integer");
        }
        if (j.contains("reference")) {
            const auto& r = j.at("reference");
            if (r.is_null()) {
                s.reference.reset();
            } else {
                s.reference = ReferencePoints{r.at("ideal").get<Vector>(), r.at("nadir").get<Vector>()};
            }
        }
        if (j.contains("verbose")) s.verbose = j.at("verbose").get<bool>();
        if (j.contains("out")) cfg.output_dir = j.at("out").get<std::string>();
        if (j.contains("export")) {
            const auto& e = j.at("export");
            if (e.contains("csv")) cfg.export_csv = e.at("csv").get<bool>();
            if (e.contains("plot")) cfg.export_plot = e.at("plot").get<bool>();
        }
        if (j.contains("oracle")) cfg.oracle = j.at("oracle").get<bool>();
        if (j.contains("oracle_resolution")) {
            cfg.oracle_resolution = number_field<std::size_t>(j, "oracle_resolution", "a nonnegative integer");
        }
    } catch (const ordered_json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out) throw IoError("failed while writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
    return config_from_json(read_text_file(path), std::move(base));
}

std::string solutions_header(std::size_t n, std::size_t m) {
    std::string h;
    for (std::size_t k = 1; k <= n; ++k) h += "x" + std::to_string(k) + ",";
    for (std::size_t i = 1; i <= m; ++i) h += "f" + std::to_string(i) + ",";
    for (std::size_t i = 1; i <= m; ++i) h += "f" + std::to_string(i) + "_norm" + (i < m ? "," : "");
    return h + "\n";
}

namespace {

void append_row(std::string& out, const Vector& x, const Vector& f, const Vector& fn) {
    bool first = true;
    auto put = [&](double v) {
        if (!first) out += ',';
        out += format_double(v);
        first = false;
    };
    for (double v : x) put(v);
    for (double v : f) put(v);
    for (double v : fn) put(v);
    out += '\n';
}

std::string boxes_csv(const RunResult& result, const ProblemDefinition& prob) {
    std::string out = "id,parent_id,depth,protected";
    for (std::size_t k = 1; k <= prob.n; ++k) out += ",lower" + std::to_string(k) + ",upper" + std::to_string(k);
    for (std::size_t i = 1; i <= prob.m; ++i) out += ",l" + std::to_string(i) + "_norm";
    out += '\n';
    for (const auto& rec : result.state.boxes) {
        out += std::to_string(rec.box.id) + ',' + (rec.box.parent_id ? std::to_string(*rec.box.parent_id) : "") + ',' +
               std::to_string(rec.box.depth) + ',' + (rec.is_protected ? "1" : "0");
        for (std::size_t k = 0; k < prob.n; ++k) {
            out += ',' + format_double(rec.box.lower[k]) + ',' + format_double(rec.box.upper[k]);
        }
        for (double l : rec.lower) out += ',' + format_double(l);
        out += '\n';
    }
    return out;
}

std::string timings_csv(const RunResult& result) {
    std::string out = "iteration,seconds\n";
    for (const auto& t : result.trace) out += std::to_string(t.iteration) + ',' + format_double(t.seconds) + '\n';
    return out;
}

}  // namespace

std::string solutions_csv(const RunResult& result, const ProblemDefinition& prob) {
    std::string out = solutions_header(prob.n, prob.m);
    for (const auto& u : result.state.upper_archive) append_row(out, u.x, u.raw, u.normalized);
    return out;
}

std::string oracle_csv(const std::vector<GridPoint>& points, const ReferencePoints& ref, std::size_t n) {
    const std::size_t m = ref.ideal.size();
    std::string out = solutions_header(n, m);
    for (const auto& p : points) append_row(out, p.x, p.f, normalize(p.f, ref));
    return out;
}

std::string summary_json(const RunResult& result, const RunConfig& cfg, const ProblemDefinition& prob) {
    ordered_json j;
    j["problem"] = {{"name", prob.name}, {"n", prob.n}, {"m", prob.m}, {"p", prob.p},
                    {"lipschitz_f", prob.lipschitz_f}};
    if (prob.lipschitz_g) j["problem"]["lipschitz_g"] = *prob.lipschitz_g;
    j["config"] = config_json(cfg);
    j["termination"] = to_string(result.reason);
    if (!result.message.empty()) j["message"] = result.message;
    j["iterations"] = result.state.iteration;
    j["final_gap"] = result.state.gap;
    j["final_width"] = result.state.width;
    j["efficiency_bound"] = result.efficiency_bound;
    j["normalized_lipschitz"] = result.normalized_lipschitz;
    j["reference"] = {{"ideal", result.state.ref.ideal}, {"nadir", result.state.ref.nadir}};
    j["solutions"] = result.state.upper_archive.size();
    j["live_boxes"] = result.state.boxes.size();
    ordered_json trace = ordered_json::array();
    for (const auto& t : result.trace) {
        trace.push_back({{"iteration", t.iteration},
                         {"boxes_bisected", t.boxes_bisected},
                         {"boxes_infeasible", t.boxes_infeasible},
                         {"boxes_discarded", t.boxes_discarded},
                         {"boxes_live", t.boxes_live},
                         {"protected", t.protected_boxes},
                         {"lower_archive", t.lower_archive},
                         {"upper_archive", t.upper_archive},
                         {"width", t.width},
                         {"gap", t.gap},
                         {"gap_bound", t.gap_bound}});
    }
    j["trace"] = std::move(trace);
    return j.dump(2) + "\n";
}

void export_results(const RunResult& result, const RunConfig& cfg, const ProblemDefinition& prob) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec || !std::filesystem::is_directory(cfg.output_dir)) {
        throw IoError("cannot create output directory '" + cfg.output_dir + "'");
    }
    const std::filesystem::path dir(cfg.output_dir);
    if (cfg.export_csv) {
        write_text_file((dir / "solutions.csv").string(), solutions_csv(result, prob));
        write_text_file((dir / "boxes.csv").string(), boxes_csv(result, prob));
    }
    write_text_file((dir / "summary.json").string(), summary_json(result, cfg, prob));
    write_text_file((dir / "timings.csv").string(), timings_csv(result));
}

std::string emit_plot_data(const RunResult& result, const std::optional<GridOracle>& oracle,
                           const std::string& output_dir) {
    const ReferencePoints& ref = result.state.ref;
    const std::size_t m = ref.ideal.size();
    std::vector<Vector> solver;
    for (const auto& u : result.state.upper_archive) solver.push_back(u.normalized);
    std::vector<Vector> truth;
    if (oracle) {
        for (const auto& p : oracle_pareto_front(*oracle)) truth.push_back(normalize(p.f, ref));
    }

    std::error_code ec;
    std::filesystem::create_directories(output_dir, ec);
    std::string out;
    std::filesystem::path path(output_dir);
    if (m == 2) {
        path /= "front.dat";
        out = "# oracle_f1 oracle_f2 solver_f1 solver_f2 (normalized)\n";
        const std::size_t rows = std::max(truth.size(), solver.size());
        const std::string pad = "NaN NaN";
        for (std::size_t r = 0; r < rows; ++r) {
            out += r < truth.size() ? format_double(truth[r][0]) + ' ' + format_double(truth[r][1]) : pad;
            out += ' ';
            out += r < solver.size() ? format_double(solver[r][0]) + ' ' + format_double(solver[r][1]) : pad;
            out += '\n';
        }
    } else {
        path /= "value_paths.dat";
        out = "# solver value paths, one row per solution (normalized f1..f" + std::to_string(m) + ")\n";
        auto rows = [&](const std::vector<Vector>& set) {
            for (const auto& y : set) {
                for (std::size_t i = 0; i < m; ++i) out += (i ? " " : "") + format_double(y[i]);
                out += '\n';
            }
        };
        rows(solver);
        if (!truth.empty()) {
            out += "\n\n# oracle Pareto front value paths\n";
            rows(truth);
        }
    }
    write_text_file(path.string(), out);
    return path.string();
}

std::vector<SolutionRow> read_solutions_csv(const std::string& path, std::size_t n, std::size_t m) {
    std::istringstream in(read_text_file(path));
    std::string line;
    if (!std::getline(in, line)) throw IoError("'" + path + "' is empty");
    if (line + "\n" != solutions_header(n, m)) throw IoError("'" + path + "' has an unexpected header");
    std::vector<SolutionRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> values;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            double v = 0.0;
            const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
                throw IoError("'" + path + "' contains a malformed number: " + cell);
            }
            values.push_back(v);
        }
        if (values.size() != n + 2 * m) throw IoError("'" + path + "' has a row of the wrong width");
        SolutionRow row;
        row.x.assign(values.begin(), values.begin() + static_cast<long>(n));
        row.f.assign(values.begin() + static_cast<long>(n), values.begin() + static_cast<long>(n + m));
        row.f_norm.assign(values.begin() + static_cast<long>(n + m), values.end());
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace ppbnb
