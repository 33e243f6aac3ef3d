/**
 * @file geometry.hpp
 * @brief Axis-aligned boxes in decision space and their bisection.
 */
#ifndef PPBNB_GEOMETRY_HPP
#define PPBNB_GEOMETRY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace ppbnb {

using Vector = std::vector<double>;
using BoxId = std::uint64_t;

/**
 * @brief Hyperrectangle [lower, upper] with bisection lineage.
 *
 * Boxes are values; once created they are not modified by the solver.
 */
struct Box {
    Vector lower;                    ///< lower corner, decision units
    Vector upper;                    ///< upper corner, decision units
    BoxId id = 0;                    ///< unique within one run
    std::optional<BoxId> parent_id;  ///< absent for the root domain
    std::uint32_t depth = 0;

    std::size_t dimension() const noexcept { return lower.size(); }
    Vector widths() const;
    double volume() const;

    /// True if x lies in the box enlarged by `inflate` on every face.
    /// A negative value shrinks the box instead.
    bool contains(std::span<const double> x, double inflate = 0.0) const;
};

/// Validated constructor; throws DimensionError on size mismatch or lower > upper.
Box make_box(Vector lower, Vector upper, BoxId id = 0);

Vector midpoint(const Box& box);

/// Euclidean norm of the width vector.
double diameter(const Box& box);

/// Dimension of maximal width; ties go to the lowest index.
std::size_t split_dimension(const Box& box);

/**
 * @brief Split `box` at the midpoint of its widest dimension.
 *
 * Children receive ids `first_child_id` and `first_child_id + 1`, depth + 1 and
 * the parent's id. Throws DegenerateBoxError when the diameter is zero.
 */
std::pair<Box, Box> bisect(const Box& box, BoxId first_child_id);

/// Monotone id source; ids are handed out in creation order.
class BoxIdCounter {
public:
    explicit BoxIdCounter(BoxId next = 1) : next_(next) {}
    BoxId take(BoxId count = 1) noexcept {
        const BoxId first = next_;
        next_ += count;
        return first;
    }
    BoxId peek() const noexcept { return next_; }

private:
    BoxId next_;
};

inline std::pair<Box, Box> bisect(const Box& box, BoxIdCounter& ids) {
    return bisect(box, ids.take(2));
}

}  // namespace ppbnb

#endif  // PPBNB_GEOMETRY_HPP
