#include "ppbnb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ppbnb/errors.hpp"
#include "ppbnb/parallel.hpp"

namespace ppbnb {

double distance_to_set(std::span<const double> y, std::span<const Vector> set) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : set) {
        double sq = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double d = y[i] - b[i];
            sq += d * d;
        }
        best = std::min(best, sq);
    }
    return std::sqrt(best);
}

double directed_hausdorff(std::span<const Vector> a, std::span<const Vector> b, unsigned threads) {
    if (a.empty() || b.empty()) throw DimensionError("Hausdorff distance of an empty set");
    std::vector<double> nearest(a.size());
    parallel_for(a.size(), threads, [&](std::size_t i) { nearest[i] = distance_to_set(a[i], b); });
    return *std::max_element(nearest.begin(), nearest.end());
}

double hausdorff(std::span<const Vector> a, std::span<const Vector> b, unsigned threads) {
    return std::max(directed_hausdorff(a, b, threads), directed_hausdorff(b, a, threads));
}

bool eps_efficient_image(std::span<const double> y, double eps_val, std::span<const Vector> witness_images) {
    for (const auto& w : witness_images) {
        bool all = true;
        for (std::size_t i = 0; i < y.size() && all; ++i) all = w[i] <= y[i] - eps_val;
        if (all) return false;
    }
    return true;
}

bool check_eps_efficient(std::span<const double> x, double eps_val, const ProblemDefinition& prob,
                         std::span<const Vector> witnesses, const std::optional<ReferencePoints>& ref) {
    auto image = [&](std::span<const double> point) {
        Vector f = evaluate_objectives(prob, point);
        return ref ? normalize(f, *ref) : f;
    };
    const Vector y = image(x);
    std::vector<Vector> images;
    images.reserve(witnesses.size());
    for (const auto& w : witnesses) images.push_back(image(w));
    return eps_efficient_image(y, eps_val, images);
}

double hypervolume_2d(std::span<const Vector> points, std::span<const double> reference) {
    std::vector<Vector> inside;
    for (const auto& p : points) {
        if (p[0] < reference[0] && p[1] < reference[1]) inside.push_back(p);
    }
    std::sort(inside.begin(), inside.end());
    double volume = 0.0;
    double ceiling = reference[1];
    for (const auto& p : inside) {
        if (p[1] < ceiling) {
            volume += (reference[0] - p[0]) * (ceiling - p[1]);
            ceiling = p[1];
        }
    }
    return volume;
}

}  // namespace ppbnb
