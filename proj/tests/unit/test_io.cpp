#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "ppbnb/errors.hpp"
#include "ppbnb/io.hpp"
#include "ppbnb/oracle.hpp"
#include "support/temp_dir.hpp"

using namespace ppbnb;

namespace {

RunResult coarse_mop(unsigned threads = 1) {
    SolverConfig cfg;
    cfg.tol_eps = 0.1;
    cfg.tol_delta = 0.1;
    cfg.threads = threads;
    return solve(get_problem("MOP"), cfg);
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) n += c == '\n';
    return n;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("format_double reads back exactly") {
    for (double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 1e-300, 6.02214076e23}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "NaN");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("tolerance defaults") {
    CHECK(default_tolerances("MOP") == std::pair{0.001, 0.0001});
    CHECK(default_tolerances("DEB3DK") == std::pair{0.006, 0.008});
    CHECK(default_tolerances("welded-beam") == std::pair{0.3, 0.02});
}

TEST_CASE("config round trip") {
    RunConfig cfg;
    cfg.problem = "DEB2DK";
    cfg.params = {{"K", 4}, {"n", 3}};
    cfg.solver.proper_eps = EpsParameter(0.25);
    cfg.solver.tol_eps = 0.02;
    cfg.solver.tol_delta = 0.125;
    cfg.solver.ub_mode = UpperBoundMode::Midpoint;
    cfg.solver.threads = 3;
    cfg.solver.seed = 99;
    cfg.solver.max_iterations = 17;
    cfg.solver.moea_cfg.population = 12;
    cfg.solver.reference = ReferencePoints{{0, 0}, {2, 3}};
    cfg.output_dir = "somewhere";
    cfg.export_plot = false;
    cfg.oracle = true;
    cfg.oracle_resolution = 33;

    const std::string text = config_to_json(cfg);
    const RunConfig back = config_from_json(text);
    CHECK(config_to_json(back) == text);
    CHECK(back.params.at("K") == 4);
    CHECK(back.solver.proper_eps.value() == 0.25);
    CHECK(back.solver.tol_delta == 0.125);
    CHECK(back.solver.reference->nadir == Vector{2, 3});
    CHECK(back.oracle_resolution == 33);
}

TEST_CASE("problem defaults fill missing tolerances") {
    const RunConfig c = config_from_json(R"({"problem": "DEB3DK"})");
    CHECK(c.solver.tol_eps == 0.006);
    CHECK(c.solver.tol_delta == 0.008);
    CHECK(c.solver.proper_eps.value() == 0.75);
    CHECK(c.solver.moea_cfg.population == 10);
    CHECK(c.solver.moea_cfg.generations == 20);
    const auto p = resolve_problem(c);
    CHECK(p.n == 3);
    CHECK(p.m == 3);

    const RunConfig d = config_from_json(R"({"problem": "DEB3DK", "tol": 0.5})");
    CHECK(d.solver.tol_eps == 0.5);
    CHECK(d.solver.tol_delta == 0.008);
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(config_from_json("{"), ConfigError);
    CHECK_THROWS_AS(config_from_json("[1]"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"proper_eps": 1.5})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"tol": "small"})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"threads": 1.5})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"ub_mode": "exact"})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"params": {"K": "four"}})"), ConfigError);

    RunConfig bad = config_from_json(R"({"problem": "NOPE"})");
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    RunConfig neg = config_from_json(R"({"problem": "MOP", "tol": -1})");
    CHECK_THROWS_AS(neg.validate(), ConfigError);
}

TEST_CASE("config files") {
    TempDir dir("cfg");
    write_text_file(dir.str("c.json"), R"({"problem": "MOP", "seed": 5})");
    const RunConfig c = load_config_file(dir.str("c.json"));
    CHECK(c.solver.seed == 5);
    CHECK_THROWS(load_config_file(dir.str("missing.json")));
}

TEST_CASE("solutions CSV") {
    CHECK(solutions_header(2, 2) == "x1,x2,f1,f2,f1_norm,f2_norm\n");
    const auto mop = get_problem("MOP");
    const RunResult r = coarse_mop();
    const std::string csv = solutions_csv(r, mop);
    CHECK(csv.rfind(solutions_header(2, 2), 0) == 0);
    CHECK(count_lines(csv) == r.state.upper_archive.size() + 1);

    RunResult empty = r;
    empty.state.upper_archive.clear();
    CHECK(solutions_csv(empty, mop) == solutions_header(2, 2));
}

TEST_CASE("export writes every file and is reproducible") {
    const auto mop = get_problem("MOP");
    TempDir a("export-a"), b("export-b");
    RunConfig cfg;
    cfg.output_dir = a.str();
    export_results(coarse_mop(), cfg, mop);
    for (const char* f : {"solutions.csv", "boxes.csv", "summary.json", "timings.csv"}) {
        CHECK(std::filesystem::exists(a.path() / f));
    }
    cfg.output_dir = b.str();
    export_results(coarse_mop(2), cfg, mop);
    CHECK(read_text_file(a.str("solutions.csv")) == read_text_file(b.str("solutions.csv")));
    CHECK(read_text_file(a.str("boxes.csv")) == read_text_file(b.str("boxes.csv")));

    const auto summary = nlohmann::json::parse(read_text_file(a.str("summary.json")));
    CHECK(summary.at("termination") == "converged");
    CHECK(summary.at("trace").is_array());
    CHECK(summary.contains("final_gap"));
    CHECK(summary.contains("final_width"));
    CHECK(summary.at("config").at("problem") == "MOP");

    const auto rows = read_solutions_csv(a.str("solutions.csv"), 2, 2);
    const RunResult r = coarse_mop();
    REQUIRE(rows.size() == r.state.upper_archive.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].x == r.state.upper_archive[i].x);
        CHECK(rows[i].f == r.state.upper_archive[i].raw);
        CHECK(rows[i].f_norm == r.state.upper_archive[i].normalized);
    }
    CHECK_THROWS_AS(read_solutions_csv(a.str("solutions.csv"), 3, 2), IoError);
    CHECK_THROWS_AS(read_solutions_csv(a.str("boxes.csv"), 2, 2), IoError);
}

TEST_CASE("unwritable targets") {
    TempDir dir("unwritable");
    write_text_file(dir.str("file"), "x");
    CHECK_THROWS_AS(write_text_file(dir.str("file/inner.txt"), "y"), IoError);
    CHECK_THROWS_AS(read_text_file(dir.str("absent")), IoError);
    RunConfig cfg;
    cfg.output_dir = dir.str("file");
    CHECK_THROWS_AS(export_results(coarse_mop(), cfg, get_problem("MOP")), IoError);
}

TEST_CASE("plot data for two objectives") {
    const RunResult r = coarse_mop();
    TempDir dir("plot2");
    const std::string solo = emit_plot_data(r, std::nullopt, dir.str());
    CHECK(std::filesystem::path(solo).filename() == "front.dat");
    std::istringstream in(read_text_file(solo));
    std::string line;
    std::getline(in, line);
    CHECK(line[0] == '#');
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.rfind("NaN NaN ", 0) == 0);
    }
    CHECK(rows == r.state.upper_archive.size());

    const auto oracle = build_grid_oracle(get_problem("MOP"), 64);
    const std::string both = emit_plot_data(r, oracle, dir.str());
    std::istringstream in2(read_text_file(both));
    std::getline(in2, line);
    rows = 0;
    while (std::getline(in2, line)) {
        ++rows;
        std::istringstream cols(line);
        std::string c;
        std::size_t n = 0;
        while (cols >> c) ++n;
        CHECK(n == 4);
    }
    CHECK(rows == std::max(oracle_pareto_front(oracle).size(), r.state.upper_archive.size()));
}

TEST_CASE("value paths for many objectives") {
    RunResult r;
    r.state.ref = ReferencePoints{Vector(5, 0.0), Vector(5, 1.0)};
    r.state.upper_archive.push_back({{0.1, 0.2, 0.3, 0.4, 0.5}, {0.1, 0.2, 0.3, 0.4, 0.5}, {0.1, 0.05, 0.05}, 1});
    r.state.upper_archive.push_back({{0.5, 0.4, 0.3, 0.2, 0.1}, {0.5, 0.4, 0.3, 0.2, 0.1}, {0.2, 0.05, 0.05}, 2});
    TempDir dir("paths");
    const std::string path = emit_plot_data(r, std::nullopt, dir.str());
    CHECK(std::filesystem::path(path).filename() == "value_paths.dat");
    std::istringstream in(read_text_file(path));
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream cols(line);
        double v;
        std::size_t n = 0;
        while (cols >> v) ++n;
        CHECK(n == 5);
        ++rows;
    }
    CHECK(rows == 2);
}

TEST_CASE("oracle CSV uses the solutions schema") {
    const auto oracle = build_grid_oracle(get_problem("MOP"), 16);
    const auto front = oracle_pareto_front(oracle);
    const std::string csv = oracle_csv(front, grid_reference(oracle), 2);
    CHECK(csv.rfind(solutions_header(2, 2), 0) == 0);
    CHECK(count_lines(csv) == front.size() + 1);
}

}
