/**
 * @file io.hpp
 * @brief Run configuration, result export and plot data.
 *
 * Config files are JSON. Every key is optional; see README for the schema.
 */
#ifndef PPBNB_IO_HPP
#define PPBNB_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "ppbnb/oracle.hpp"
#include "ppbnb/problems.hpp"
#include "ppbnb/solver.hpp"

namespace ppbnb {

struct RunConfig {
    std::string problem = "MOP";
    ProblemParams params;
    std::string problem_file;  ///< expression file; takes precedence over `problem`
    SolverConfig solver;
    std::string output_dir = "ppbnb-out";
    bool export_csv = true;
    bool export_plot = true;
    bool oracle = false;             ///< build a grid oracle for plot overlays
    std::size_t oracle_resolution = 0;  ///< 0 selects the default for n

    /// Throws ConfigError on invalid values; the problem must resolve.
    void validate() const;
};

/// Tolerance defaults (gap, box diameter) used for each built-in problem.
std::pair<double, double> default_tolerances(const std::string& problem);

/// Resolve the problem named by a config (built-in, registered or from file).
ProblemDefinition resolve_problem(const RunConfig& cfg);

/// JSON text of a config, including every field, for echo and round trips.
std::string config_to_json(const RunConfig& cfg);

/// Parse JSON text over `base`; keys present in the text override `base`.
RunConfig config_from_json(const std::string& text, RunConfig base = {});

RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Decimal text that reads back to the same double.
std::string format_double(double v);

/// Header `x1..xn,f1..fm,f1_norm..fm_norm`.
std::string solutions_header(std::size_t n, std::size_t m);

/**
 * @brief Write solutions.csv, boxes.csv, summary.json and timings.csv into cfg.output_dir.
 *
 * Everything but timings.csv is byte-identical across reruns with the same seed.
 */
void export_results(const RunResult& result, const RunConfig& cfg, const ProblemDefinition& prob);

/// Solution rows as CSV text (used by export_results and by tests).
std::string solutions_csv(const RunResult& result, const ProblemDefinition& prob);

std::string summary_json(const RunResult& result, const RunConfig& cfg, const ProblemDefinition& prob);

/// Grid fronts in the solutions.csv schema, normalized with `ref`.
std::string oracle_csv(const std::vector<GridPoint>& points, const ReferencePoints& ref, std::size_t n);

/**
 * @brief Whitespace-delimited plot data for gnuplot.
 *
 * m = 2: front.dat with columns `oracle_f1 oracle_f2 solver_f1 solver_f2` (NaN pads
 * the shorter series). m >= 3: value_paths.dat, one row per solution with the m
 * normalized objectives; oracle rows follow after two blank lines.
 * Returns the written file path.
 */
std::string emit_plot_data(const RunResult& result, const std::optional<GridOracle>& oracle,
                           const std::string& output_dir);

struct SolutionRow {
    Vector x;
    Vector f;
    Vector f_norm;
};

/// Read a solutions.csv back; throws IoError on malformed input.
std::vector<SolutionRow> read_solutions_csv(const std::string& path, std::size_t n, std::size_t m);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace ppbnb

#endif  // PPBNB_IO_HPP
