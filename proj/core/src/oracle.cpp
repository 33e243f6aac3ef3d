#include "ppbnb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ppbnb/errors.hpp"
#include "ppbnb/parallel.hpp"

namespace ppbnb {

std::size_t default_oracle_resolution(std::size_t n) { return n <= 2 ? 512 : 64; }

namespace {

// a <= b componentwise with a != b
bool weakly_better_and_distinct(const Vector& a, const Vector& b) {
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strict = true;
    }
    return strict;
}

// Indices of the non-dominated images, ascending. Lexicographic sweep: a point can
// only be dominated by one that sorts before it, and every dominated point is
// dominated by some front member.
std::vector<std::size_t> pareto_sweep(const std::vector<Vector>& images) {
    std::vector<std::size_t> order(images.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return images[a] < images[b]; });
    std::vector<std::size_t> front;
    for (std::size_t idx : order) {
        bool dominated = false;
        for (std::size_t f : front) {
            if (weakly_better_and_distinct(images[f], images[idx])) {
                dominated = true;
                break;
            }
        }
        if (!dominated) front.push_back(idx);
    }
    std::sort(front.begin(), front.end());
    return front;
}

}  // namespace

GridOracle build_grid_oracle(const ProblemDefinition& prob, std::size_t resolution, unsigned threads) {
    if (prob.n > 3) throw ConfigError("grid oracle supports at most three decision variables");
    if (resolution < 2) throw ConfigError("grid oracle resolution must be at least 2");

    GridOracle o;
    o.resolution = resolution;
    o.spacing.resize(prob.n);
    for (std::size_t k = 0; k < prob.n; ++k) {
        o.spacing[k] = (prob.domain.upper[k] - prob.domain.lower[k]) / static_cast<double>(resolution - 1);
    }
    o.total_points = 1;
    for (std::size_t k = 0; k < prob.n; ++k) o.total_points *= resolution;

    std::vector<GridPoint> points(o.total_points);
    std::vector<char> ok(o.total_points, 0);
    parallel_for(o.total_points, threads, [&](std::size_t idx) {
        Vector x(prob.n);
        std::size_t rest = idx;
        for (std::size_t k = prob.n; k-- > 0;) {
            const std::size_t i = rest % resolution;
            rest /= resolution;
            x[k] = i + 1 == resolution
                       ? prob.domain.upper[k]
                       : prob.domain.lower[k] + static_cast<double>(i) * o.spacing[k];
        }
        Evaluation e = evaluate(prob, x);
        if (e.feasible) {
            points[idx] = {std::move(x), std::move(e.objectives)};
            ok[idx] = 1;
        }
    });
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (ok[i]) o.feasible.push_back(std::move(points[i]));
    }

    std::vector<Vector> images;
    images.reserve(o.feasible.size());
    for (const auto& p : o.feasible) images.push_back(p.f);
    std::vector<std::size_t> front = pareto_sweep(images);
    o.pareto = std::move(front);
    return o;
}

std::vector<GridPoint> oracle_pareto_front(const GridOracle& oracle) {
    std::vector<GridPoint> out;
    out.reserve(oracle.pareto.size());
    for (std::size_t i : oracle.pareto) out.push_back(oracle.feasible[i]);
    return out;
}

ReferencePoints grid_reference(const GridOracle& oracle) {
    if (oracle.feasible.empty()) throw DegenerateRangeError("grid oracle has no feasible point");
    ReferencePoints ref{oracle.feasible.front().f, oracle.feasible.front().f};
    for (const auto& p : oracle.feasible) {
        for (std::size_t i = 0; i < p.f.size(); ++i) {
            ref.ideal[i] = std::min(ref.ideal[i], p.f[i]);
            ref.nadir[i] = std::max(ref.nadir[i], p.f[i]);
        }
    }
    for (std::size_t i = 0; i < ref.ideal.size(); ++i) {
        if (!(ref.ideal[i] < ref.nadir[i])) ref.nadir[i] = ref.ideal[i] + 1.0;
    }
    return ref;
}

std::vector<GridPoint> oracle_proper_front(const GridOracle& oracle, double eps,
                                           const std::optional<ReferencePoints>& ref) {
    if (oracle.feasible.empty()) return {};
    const ReferencePoints r = ref ? *ref : grid_reference(oracle);
    const std::size_t m = r.ideal.size();

    // Rounding in the normalization can merge raw values, so the candidates come
    // from a fresh sweep over the normalized images. Pareto-dominated images are
    // eps-dominated too, and any eps-dominator is itself dominated by a front member.
    std::vector<Vector> scaled;
    scaled.reserve(oracle.feasible.size());
    for (const auto& p : oracle.feasible) {
        Vector y(m);
        for (std::size_t i = 0; i < m; ++i) y[i] = (p.f[i] - r.ideal[i]) / (r.nadir[i] - r.ideal[i]);
        scaled.push_back(std::move(y));
    }
    const std::vector<std::size_t> candidates = pareto_sweep(scaled);
    std::vector<Vector> mapped;
    mapped.reserve(candidates.size());
    for (std::size_t idx : candidates) {
        const Vector& y = scaled[idx];
        Vector t(m);
        for (std::size_t i = 0; i < m; ++i) {
            double others = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                if (j != i) others += y[j];
            }
            t[i] = y[i] + eps * others;
        }
        mapped.push_back(std::move(t));
    }

    std::vector<GridPoint> out;
    for (std::size_t b = 0; b < mapped.size(); ++b) {
        bool dominated = false;
        for (std::size_t a = 0; a < mapped.size() && !dominated; ++a) {
            if (a == b || scaled[candidates[a]] == scaled[candidates[b]]) continue;
            bool leq = true;
            for (std::size_t i = 0; i < m && leq; ++i) leq = mapped[a][i] <= mapped[b][i];
            dominated = leq;
        }
        if (!dominated) out.push_back(oracle.feasible[candidates[b]]);
    }
    return out;
}

std::vector<std::vector<Vector>> cluster_images(const std::vector<Vector>& images, double gap) {
    const std::size_t count = images.size();
    std::vector<std::size_t> parent(count);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t a = 0; a < count; ++a) {
        for (std::size_t b = a + 1; b < count; ++b) {
            double sq = 0.0;
            for (std::size_t i = 0; i < images[a].size(); ++i) sq += (images[a][i] - images[b][i]) * (images[a][i] - images[b][i]);
            if (std::sqrt(sq) < gap) parent[find(a)] = find(b);
        }
    }
    std::vector<std::vector<Vector>> clusters;
    std::vector<std::size_t> slot(count, count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t root = find(i);
        if (slot[root] == count) {
            slot[root] = clusters.size();
            clusters.emplace_back();
        }
        clusters[slot[root]].push_back(images[i]);
    }
    return clusters;
}

}  // namespace ppbnb
