/**
 * @file metrics.hpp
 * @brief Set distances and approximation checks in objective space.
 */
#ifndef PPBNB_METRICS_HPP
#define PPBNB_METRICS_HPP

#include <optional>
#include <span>
#include <vector>

#include "ppbnb/geometry.hpp"
#include "ppbnb/problems.hpp"

namespace ppbnb {

/// max over a of min over b of ||a - b||. Throws DimensionError on empty sets.
double directed_hausdorff(std::span<const Vector> a, std::span<const Vector> b, unsigned threads = 1);

/// max(directed_hausdorff(a, b), directed_hausdorff(b, a)).
double hausdorff(std::span<const Vector> a, std::span<const Vector> b, unsigned threads = 1);

/// Euclidean distance from y to the nearest point of `set`.
double distance_to_set(std::span<const double> y, std::span<const Vector> set);

/**
 * @brief eps-efficiency of x against a finite witness set.
 *
 * False iff some witness w has F(w) <= F(x) - eps_val * e componentwise. When
 * `ref` is given both images are normalized first.
 */
bool check_eps_efficient(std::span<const double> x, double eps_val, const ProblemDefinition& prob,
                         std::span<const Vector> witnesses,
                         const std::optional<ReferencePoints>& ref = std::nullopt);

/// Same test with precomputed images: false iff some w <= y - eps_val * e.
bool eps_efficient_image(std::span<const double> y, double eps_val, std::span<const Vector> witness_images);

/// Dominated hypervolume of a 2-D point set with respect to `reference` (minimization).
double hypervolume_2d(std::span<const Vector> points, std::span<const double> reference);

}  // namespace ppbnb

#endif  // PPBNB_METRICS_HPP
