/**
 * @file oracle.hpp
 * @brief Dense-grid ground truth for small problems (n <= 3).
 *
 * The fronts here are computed with their own comparison loops and share no code
 * with cone_order, so they can cross-check the solver.
 */
#ifndef PPBNB_ORACLE_HPP
#define PPBNB_ORACLE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "ppbnb/geometry.hpp"
#include "ppbnb/problems.hpp"

namespace ppbnb {

struct GridPoint {
    Vector x;
    Vector f;  ///< raw objectives
};

struct GridOracle {
    std::size_t resolution = 0;      ///< points per dimension
    Vector spacing;                  ///< grid step per dimension
    std::size_t total_points = 0;
    std::vector<GridPoint> feasible;  ///< in grid index order
    std::vector<std::size_t> pareto;  ///< indices into `feasible`, ascending
};

/// 512 for n <= 2, 64 for n = 3.
std::size_t default_oracle_resolution(std::size_t n);

/**
 * @brief Evaluate the problem on a uniform grid and extract the Pareto front.
 *
 * Throws ConfigError when n > 3 or resolution < 2.
 */
GridOracle build_grid_oracle(const ProblemDefinition& prob, std::size_t resolution, unsigned threads = 1);

std::vector<GridPoint> oracle_pareto_front(const GridOracle& oracle);

/// min / max of the feasible grid images; throws DegenerateRangeError on empty grids.
ReferencePoints grid_reference(const GridOracle& oracle);

/**
 * @brief Feasible grid points whose images are not eps-dominated by another feasible image.
 *
 * The cone order is evaluated on images normalized with `ref` (grid_reference() when
 * absent); eps = 0 reproduces the Pareto front.
 */
std::vector<GridPoint> oracle_proper_front(const GridOracle& oracle, double eps,
                                           const std::optional<ReferencePoints>& ref = std::nullopt);

/// Single-linkage grouping of images: points closer than `gap` share a cluster.
std::vector<std::vector<Vector>> cluster_images(const std::vector<Vector>& images, double gap);

}  // namespace ppbnb

#endif  // PPBNB_ORACLE_HPP
