#include "ppbnb/cone_order.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ppbnb/errors.hpp"
#include "ppbnb/parallel.hpp"

namespace ppbnb {

EpsParameter::EpsParameter(double eps) : eps_(eps) {
    if (!(eps >= 0.0 && eps < 1.0)) {
        throw ConfigError("proper eps must lie in [0, 1), got " + std::to_string(eps));
    }
}

namespace {

void check_same_size(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionError("objective vectors differ in dimension");
}

void t_eps_into(std::span<const double> y, double eps, std::span<double> out) {
    const std::size_t m = y.size();
    for (std::size_t i = 0; i < m; ++i) {
        double off = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            if (j != i) off += y[j];
        }
        out[i] = y[i] + eps * off;
    }
}

bool same_vector(std::span<const double> a, std::span<const double> b) {
    return std::equal(a.begin(), a.end(), b.begin());
}

bool transformed_leq(std::span<const double> ta, std::span<const double> tb, double tolerance) {
    for (std::size_t i = 0; i < ta.size(); ++i) {
        if (!(ta[i] <= tb[i] + tolerance)) return false;
    }
    return true;
}

}  // namespace

Vector apply_t_eps(std::span<const double> y, EpsParameter eps) {
    if (y.size() < 2) throw DimensionError("the cone order needs at least two objectives");
    Vector out(y.size());
    t_eps_into(y, eps.value(), out);
    return out;
}

bool pareto_dominates(std::span<const double> a, std::span<const double> b) {
    check_same_size(a, b);
    bool strictly = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strictly = true;
    }
    return strictly;
}

bool eps_dominates(std::span<const double> a, std::span<const double> b, EpsParameter eps,
                   double tolerance) {
    check_same_size(a, b);
    if (same_vector(a, b)) return false;
    const Vector ta = apply_t_eps(a, eps);
    const Vector tb = apply_t_eps(b, eps);
    return transformed_leq(ta, tb, tolerance);
}

bool in_cone(std::span<const double> y, EpsParameter eps) {
    const Vector t = apply_t_eps(y, eps);
    return std::all_of(t.begin(), t.end(), [](double v) { return v >= 0.0; });
}

std::vector<std::size_t> non_eps_dominated_indices(std::span<const Vector> points, EpsParameter eps,
                                                   double tolerance, unsigned threads) {
    const std::size_t count = points.size();
    if (count == 0) return {};
    const std::size_t m = points.front().size();
    for (const auto& p : points) {
        if (p.size() != m) throw DimensionError("objective vectors differ in dimension");
    }
    if (count == 1) return {0};
    if (m < 2) throw DimensionError("the cone order needs at least two objectives");

    // T_eps images, plus a scalar key: T(a) <= T(b) + tol implies key(a) <= bound(b)
    // because rounded summation in a fixed order is monotone.
    std::vector<double> transformed(count * m);
    std::vector<double> key(count);
    std::vector<double> bound(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::span<double> ti(transformed.data() + i * m, m);
        t_eps_into(points[i], eps.value(), ti);
        double s = 0.0;
        double sb = 0.0;
        for (double v : ti) {
            s += v;
            sb += v + tolerance;
        }
        key[i] = s;
        bound[i] = sb;
    }

    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });

    std::vector<char> dominated(count, 0);
    parallel_for(count, threads, [&](std::size_t b) {
        std::span<const double> tb(transformed.data() + b * m, m);
        for (std::size_t a : order) {
            if (key[a] > bound[b]) break;
            if (a == b) continue;
            std::span<const double> ta(transformed.data() + a * m, m);
            if (transformed_leq(ta, tb, tolerance) && !same_vector(points[a], points[b])) {
                dominated[b] = 1;
                break;
            }
        }
    });

    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < count; ++i) {
        if (!dominated[i]) kept.push_back(i);
    }
    return kept;
}

}  // namespace ppbnb
