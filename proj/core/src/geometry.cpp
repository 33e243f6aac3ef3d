#include "ppbnb/geometry.hpp"

#include <cmath>
#include <string>

#include "ppbnb/errors.hpp"

namespace ppbnb {

Vector Box::widths() const {
    Vector w(lower.size());
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = upper[k] - lower[k];
    return w;
}

double Box::volume() const {
    double v = 1.0;
    for (std::size_t k = 0; k < lower.size(); ++k) v *= upper[k] - lower[k];
    return v;
}

bool Box::contains(std::span<const double> x, double inflate) const {
    if (x.size() != lower.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] < lower[k] - inflate || x[k] > upper[k] + inflate) return false;
    }
    return true;
}

Box make_box(Vector lower, Vector upper, BoxId id) {
    if (lower.size() != upper.size()) {
        throw DimensionError("box corners have different dimensions");
    }
    if (lower.empty()) throw DimensionError("box must have at least one dimension");
    for (std::size_t k = 0; k < lower.size(); ++k) {
        if (!std::isfinite(lower[k]) || !std::isfinite(upper[k])) {
            throw DimensionError("box bounds must be finite");
        }
        if (lower[k] > upper[k]) {
            throw DimensionError("box lower bound exceeds upper bound in dimension " +
                                 std::to_string(k));
        }
    }
    Box b;
    b.lower = std::move(lower);
    b.upper = std::move(upper);
    b.id = id;
    return b;
}

Vector midpoint(const Box& box) {
    Vector m(box.dimension());
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = (box.lower[k] + box.upper[k]) / 2.0;
    return m;
}

double diameter(const Box& box) {
    double sq = 0.0;
    for (std::size_t k = 0; k < box.dimension(); ++k) {
        const double w = box.upper[k] - box.lower[k];
        sq += w * w;
    }
    return std::sqrt(sq);
}

std::size_t split_dimension(const Box& box) {
    std::size_t best = 0;
    double best_width = -1.0;
    for (std::size_t k = 0; k < box.dimension(); ++k) {
        const double w = box.upper[k] - box.lower[k];
        if (w > best_width) {
            best_width = w;
            best = k;
        }
    }
    return best;
}

std::pair<Box, Box> bisect(const Box& box, BoxId first_child_id) {
    if (!(diameter(box) > 0.0)) throw DegenerateBoxError("cannot bisect a zero-diameter box");
    const std::size_t k = split_dimension(box);
    const double cut = (box.lower[k] + box.upper[k]) / 2.0;

    Box left = box;
    Box right = box;
    left.upper[k] = cut;
    right.lower[k] = cut;
    left.id = first_child_id;
    right.id = first_child_id + 1;
    left.parent_id = right.parent_id = box.id;
    left.depth = right.depth = box.depth + 1;
    return {std::move(left), std::move(right)};
}

}  // namespace ppbnb
