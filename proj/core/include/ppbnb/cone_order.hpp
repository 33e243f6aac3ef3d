/**
 * @file cone_order.hpp
 * @brief Polyhedral cone order used for proper Pareto optimality.
 *
 * The cone C_eps = { y : T_eps(y) >= 0 } with T_eps the m x m matrix holding 1 on
 * the diagonal and eps elsewhere. eps = 0 gives the Pareto cone; larger eps widens
 * the cone so that points with unbounded trade-offs become dominated.
 */
#ifndef PPBNB_CONE_ORDER_HPP
#define PPBNB_CONE_ORDER_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ppbnb/geometry.hpp"

namespace ppbnb {

/// Cone parameter in [0, 1). eps = 1 makes T_eps singular and is rejected.
class EpsParameter {
public:
    /// Throws ConfigError when eps is outside [0, 1).
    explicit EpsParameter(double eps = 0.0);
    double value() const noexcept { return eps_; }

private:
    double eps_;
};

/// Component i = y_i + eps * sum_{j != i} y_j. Throws DimensionError for m < 2.
Vector apply_t_eps(std::span<const double> y, EpsParameter eps);

/// a <= b componentwise and a != b.
bool pareto_dominates(std::span<const double> a, std::span<const double> b);

/**
 * @brief Strict cone dominance a <=_eps b.
 *
 * True iff a != b and T_eps(a) <= T_eps(b) + tolerance componentwise.
 * The tolerance defaults to 0 (exact IEEE comparison).
 */
bool eps_dominates(std::span<const double> a, std::span<const double> b, EpsParameter eps,
                   double tolerance = 0.0);

/// Membership y in C_eps, i.e. T_eps(y) >= 0 componentwise.
bool in_cone(std::span<const double> y, EpsParameter eps);

/**
 * @brief Indices of the points not eps-dominated by any other point.
 *
 * Returned in ascending input order. Duplicates never dominate each other, so
 * repeated vectors are all kept. The result does not depend on `threads`.
 */
std::vector<std::size_t> non_eps_dominated_indices(std::span<const Vector> points, EpsParameter eps,
                                                   double tolerance = 0.0, unsigned threads = 1);

template <typename Payload>
std::vector<std::pair<Vector, Payload>> filter_non_eps_dominated(
    const std::vector<std::pair<Vector, Payload>>& set, EpsParameter eps, double tolerance = 0.0,
    unsigned threads = 1) {
    std::vector<Vector> points;
    points.reserve(set.size());
    for (const auto& entry : set) points.push_back(entry.first);
    std::vector<std::pair<Vector, Payload>> out;
    for (std::size_t i : non_eps_dominated_indices(points, eps, tolerance, threads)) {
        out.push_back(set[i]);
    }
    return out;
}

}  // namespace ppbnb

#endif  // PPBNB_CONE_ORDER_HPP
