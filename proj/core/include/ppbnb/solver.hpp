/**
 * @file solver.hpp
 * @brief Breadth-first multiobjective branch and bound with the cone discarding test.
 *
 * Every iteration bisects all live boxes, drops boxes proven infeasible, computes
 * Lipschitz lower bounds, keeps the non-eps-dominated lower bounds, asks the upper
 * bound provider for feasible images in the boxes behind those bounds, filters the
 * images, and discards every unprotected box whose lower bound is eps-dominated by
 * an archived image. All archives and tolerances live in normalized objective space.
 */
#ifndef PPBNB_SOLVER_HPP
#define PPBNB_SOLVER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ppbnb/bounding.hpp"
#include "ppbnb/cone_order.hpp"
#include "ppbnb/geometry.hpp"
#include "ppbnb/moea.hpp"
#include "ppbnb/problems.hpp"

namespace ppbnb {

enum class UpperBoundMode { Midpoint, Moea };

std::string to_string(UpperBoundMode mode);
/// Throws ConfigError for anything but "midpoint" or "moea".
UpperBoundMode parse_upper_bound_mode(const std::string& text);

struct SolverConfig {
    EpsParameter proper_eps{0.75};
    double tol_eps = 0.05;    ///< gap tolerance, normalized objective units
    double tol_delta = 0.05;  ///< box diameter tolerance, decision units
    std::size_t max_iterations = 100;
    UpperBoundMode ub_mode = UpperBoundMode::Moea;
    MiniMoeaConfig moea_cfg{};
    unsigned threads = 1;
    std::uint64_t seed = 1;

    double dominance_tolerance = 0.0;  ///< absolute slack in the cone comparisons
    std::size_t max_boxes = std::size_t{1} << 20;
    double lipschitz_floor = 1e-12;
    std::size_t reference_samples = 4096;
    std::optional<ReferencePoints> reference;  ///< user-supplied initial ideal/nadir
    bool verbose = false;                      ///< keep per-iteration box snapshots

    /// Throws ConfigError when tolerances are not positive or counts are zero.
    void validate() const;
};

enum class TerminationReason { Converged, MaxIterations, Degenerate };

std::string to_string(TerminationReason reason);

struct ArchiveEntry {
    Vector normalized;
    Vector raw;
    Vector x;       ///< preimage; empty for lower bounds
    BoxId box_id = 0;
};

struct IterationTrace {
    std::size_t iteration = 0;
    std::size_t boxes_bisected = 0;   ///< after bisection
    std::size_t boxes_infeasible = 0; ///< removed by the feasibility test
    std::size_t boxes_discarded = 0;
    std::size_t boxes_live = 0;       ///< after discarding
    std::size_t lower_archive = 0;
    std::size_t upper_archive = 0;
    std::size_t protected_boxes = 0;
    double width = 0.0;               ///< w_k
    double gap = 0.0;                 ///< d
    double gap_bound = 0.0;           ///< w_k * ||normalized L||
    double seconds = 0.0;             ///< wall time of the iteration
};

struct SolverState {
    std::size_t iteration = 0;
    std::vector<BoundRecord> boxes;
    std::vector<ArchiveEntry> lower_archive;
    std::vector<ArchiveEntry> upper_archive;
    ReferencePoints ref;
    double width = 0.0;
    double gap = 1e6;
};

struct RunResult {
    SolverState state;
    std::vector<IterationTrace> trace;
    TerminationReason reason = TerminationReason::MaxIterations;
    std::string message;        ///< detail for degenerate terminations
    Vector normalized_lipschitz;
    /// w_final * ||normalized L||: the eps for which the returned set is eps-efficient
    /// in midpoint mode.
    double efficiency_bound = 0.0;
};

/// Per-iteration view passed to an observer; boxes are after discarding.
struct IterationSnapshot {
    const IterationTrace& trace;
    const std::vector<BoundRecord>& live;
    const std::vector<Box>& discarded;
    const std::vector<Box>& infeasible;
    const std::vector<ArchiveEntry>& lower_archive;
    const std::vector<ArchiveEntry>& upper_archive;
    const ReferencePoints& ref;
};

using IterationObserver = std::function<void(const IterationSnapshot&)>;

/**
 * @brief Cone discarding flags for `records` in input order.
 *
 * flag = 1 iff some archive point eps-dominates the record's lower bound and the
 * record is not protected.
 */
std::vector<char> discarding_pass(const std::vector<BoundRecord>& records, std::span<const Vector> upper_archive,
                                  EpsParameter proper_eps, double tolerance = 0.0, unsigned threads = 1);

/**
 * @brief Protect the extreme boxes.
 *
 * For each objective, the record with the smallest lower bound component and the
 * record whose upper candidate has the largest component are protected. Ties go
 * to the lowest box id.
 */
std::vector<BoundRecord> mark_protected(std::vector<BoundRecord> records);

RunResult solve(const ProblemDefinition& prob, const SolverConfig& cfg,
                const IterationObserver& observer = {});

}  // namespace ppbnb

#endif  // PPBNB_SOLVER_HPP
