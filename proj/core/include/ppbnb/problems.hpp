/**
 * @file problems.hpp
 * @brief Box- and inequality-constrained multiobjective problems.
 *
 * Constraints follow the convention g_j(x) >= 0 is feasible. Lipschitz constants
 * are in raw objective units per decision unit; the solver rescales them when it
 * works in normalized objective space.
 */
#ifndef PPBNB_PROBLEMS_HPP
#define PPBNB_PROBLEMS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppbnb/geometry.hpp"

namespace ppbnb {

using VectorFunction = std::function<Vector(std::span<const double>)>;

struct ProblemDefinition {
    std::string name;
    std::size_t n = 0;  ///< decision variables
    std::size_t m = 0;  ///< objectives, at least two
    std::size_t p = 0;  ///< inequality constraints
    VectorFunction objectives;
    VectorFunction constraints;  ///< may be empty when p == 0
    Box domain;
    Vector lipschitz_f;
    std::optional<Vector> lipschitz_g;

    /// Throws ConfigError when the invariants are broken.
    void validate() const;
};

struct Evaluation {
    Vector objectives;
    Vector constraints;
    bool feasible = false;
};

/**
 * @brief Evaluate objectives and constraints at x.
 *
 * Throws DomainError when x leaves the domain box and EvaluationError when an
 * objective is not finite. A non-finite constraint value counts as violated.
 */
Evaluation evaluate(const ProblemDefinition& prob, std::span<const double> x);

/// Objectives only, with the same checks as evaluate().
Vector evaluate_objectives(const ProblemDefinition& prob, std::span<const double> x);

using ProblemParams = std::map<std::string, double>;

/// Names accepted by get_problem(), in a fixed order.
std::vector<std::string> list_problems();

/**
 * @brief Built-in benchmark by name.
 *
 * Accepts MOP, DEB2DK, DEB3DK, welded-beam and water-resources. DEB2DK and DEB3DK
 * take `K` and `n`. Lipschitz constants come from estimate_lipschitz() with the
 * registry defaults and are cached per (name, params).
 */
ProblemDefinition get_problem(const std::string& name, const ProblemParams& params = {});

/// Register or replace a user problem so that get_problem() can find it.
void register_problem(const ProblemDefinition& prob);

/**
 * @brief Load a problem from an expression file (JSON).
 *
 * Schema: {"name": str, "bounds": [[lo, hi], ...], "objectives": [expr, ...],
 * "constraints": [expr, ...], "lipschitz_f": [...], "lipschitz_g": [...]}.
 * Missing Lipschitz constants are estimated.
 */
ProblemDefinition load_problem_file(const std::string& path);
ProblemDefinition parse_problem_json(const std::string& text);

/// Ideal and nadir estimates used for objective normalization.
struct ReferencePoints {
    Vector ideal;
    Vector nadir;

    bool valid() const;  ///< ideal_i < nadir_i for every i
};

/// (y_i - ideal_i) / (nadir_i - ideal_i). Throws DegenerateRangeError when a range is empty.
Vector normalize(std::span<const double> y, const ReferencePoints& ref);

/// Inverse of normalize().
Vector denormalize(std::span<const double> y, const ReferencePoints& ref);

/// L_i / (nadir_i - ideal_i).
Vector normalize_lipschitz(std::span<const double> lipschitz, const ReferencePoints& ref);

/// ideal := min(ideal, lower bounds); nadir := max(nadir, upper bounds), componentwise.
ReferencePoints update_reference_points(ReferencePoints ref, std::span<const Vector> lower_bounds,
                                        std::span<const Vector> upper_bounds);

/**
 * @brief Initial reference points from uniform samples of the domain.
 *
 * Uses the feasible samples, or every sample when none is feasible. A zero range
 * is widened to one raw unit so normalization stays defined.
 */
ReferencePoints sample_reference_points(const ProblemDefinition& prob, std::size_t samples,
                                        std::uint64_t seed);

struct LipschitzEstimateOptions {
    std::size_t samples = 100000;
    double safety = 1.5;
    std::uint64_t seed = 20240611;
};

/**
 * @brief Sampled Lipschitz constants of a vector function on the domain.
 *
 * safety * max |f_i(x) - f_i(x')| / ||x - x'|| over `samples` random pairs. Half of
 * the base points are biased toward the domain faces and pair distances are spread
 * log-uniformly over six decades, so both local and global slopes are seen.
 */
Vector estimate_lipschitz(const VectorFunction& fn, std::size_t outputs, const Box& domain,
                          const LipschitzEstimateOptions& options);

/// Objective constants of `prob`.
Vector estimate_lipschitz(const ProblemDefinition& prob, std::size_t samples, double safety,
                          std::uint64_t seed);

}  // namespace ppbnb

#endif  // PPBNB_PROBLEMS_HPP
