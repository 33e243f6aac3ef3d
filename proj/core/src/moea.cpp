#include "ppbnb/moea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ppbnb/errors.hpp"

namespace ppbnb {

void MiniMoeaConfig::validate() const {
    if (population == 0) throw ConfigError("MOEA population must be positive");
    if (generations == 0) throw ConfigError("MOEA generations must be positive");
    if (neighborhood == 0 || neighborhood > population) {
        throw ConfigError("MOEA neighborhood must lie in [1, population]");
    }
    if (!(de_scale > 0.0 && de_scale <= 2.0)) throw ConfigError("DE scale must lie in (0, 2]");
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
        throw ConfigError("crossover rate must lie in [0, 1]");
    }
}

double constraint_violation(std::span<const double> g) {
    double v = 0.0;
    for (double gj : g) {
        if (std::isnan(gj)) return std::numeric_limits<double>::infinity();
        if (gj < 0.0) v += -gj;
    }
    return v;
}

double tchebycheff_scalarize(std::span<const double> y, std::span<const double> weight,
                             std::span<const double> ideal) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < y.size(); ++i) best = std::max(best, weight[i] * (y[i] - ideal[i]));
    return best;
}

Vector floor_weight(Vector weight, double floor) {
    double sum = 0.0;
    for (double& w : weight) {
        w = std::max(w, floor);
        sum += w;
    }
    for (double& w : weight) w /= sum;
    return weight;
}

namespace {

double binomial(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

void compositions(std::size_t remaining, std::size_t slot, std::size_t h, Vector& current,
                  std::vector<Vector>& out) {
    if (slot + 1 == current.size()) {
        current[slot] = static_cast<double>(remaining) / static_cast<double>(h);
        out.push_back(current);
        return;
    }
    for (std::size_t take = remaining + 1; take-- > 0;) {
        current[slot] = static_cast<double>(take) / static_cast<double>(h);
        compositions(remaining - take, slot + 1, h, current, out);
    }
}

}  // namespace

std::vector<Vector> simplex_weights(std::size_t count, std::size_t m) {
    if (m == 0 || count == 0) return {};
    std::size_t h = 0;
    while (binomial(h + 1 + m - 1, m - 1) <= static_cast<double>(count)) ++h;

    std::vector<Vector> lattice;
    if (h == 0) {
        lattice.push_back(Vector(m, 1.0 / static_cast<double>(m)));
        for (std::size_t i = 0; lattice.size() < count && i < m; ++i) {
            Vector e(m, 0.0);
            e[i] = 1.0;
            lattice.push_back(e);
        }
    } else {
        Vector current(m, 0.0);
        compositions(h, 0, h, current, lattice);
    }

    std::vector<Vector> weights = lattice;
    for (std::size_t i = 0; weights.size() < count; ++i) {
        const Vector& a = lattice[i % lattice.size()];
        const Vector& b = lattice[(i + 1) % lattice.size()];
        Vector mid(m);
        for (std::size_t k = 0; k < m; ++k) mid[k] = 0.5 * (a[k] + b[k]);
        weights.push_back(mid);
    }
    weights.resize(count);
    for (auto& w : weights) w = floor_weight(std::move(w));
    return weights;
}

Vector de_offspring(const Individual& target, const std::array<const Individual*, 3>& donors,
                    const MiniMoeaConfig& cfg, const Box& box, Rng& rng) {
    const std::size_t n = target.x.size();
    const std::size_t forced = std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)));
    Vector trial(n);
    for (std::size_t k = 0; k < n; ++k) {
        const bool from_mutant = uniform01(rng) < cfg.crossover_rate || k == forced;
        if (from_mutant) {
            trial[k] = donors[0]->x[k] + cfg.de_scale * (donors[1]->x[k] - donors[2]->x[k]);
        } else {
            trial[k] = target.x[k];
        }
        trial[k] = std::clamp(trial[k], box.lower[k], box.upper[k]);
    }
    return trial;
}

namespace {

Individual make_individual(const ProblemDefinition& prob, Vector x, const ReferencePoints& ref) {
    Evaluation e = evaluate(prob, x);
    Individual ind;
    ind.x = std::move(x);
    ind.objectives = normalize(e.objectives, ref);
    ind.raw = std::move(e.objectives);
    ind.violation = e.feasible ? 0.0 : constraint_violation(e.constraints);
    if (!e.feasible && ind.violation == 0.0) ind.violation = std::numeric_limits<double>::min();
    return ind;
}

// Feasibility first, then the subproblem's scalarized value.
bool better(const Individual& a, const Individual& b, const Vector& weight, const Vector& ideal) {
    if (a.violation != b.violation) return a.violation < b.violation;
    return tchebycheff_scalarize(a.objectives, weight, ideal) < tchebycheff_scalarize(b.objectives, weight, ideal);
}

std::size_t draw_index(std::size_t size, Rng& rng) {
    return std::min(size - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(size)));
}

constexpr double kNeighborhoodSelection = 0.9;
constexpr std::size_t kMaxReplacements = 2;

}  // namespace

std::vector<UpperCandidate> run_mini_moea(const ProblemDefinition& prob, const Box& box,
                                          const ReferencePoints& ref, const MiniMoeaConfig& cfg) {
    cfg.validate();
    const std::size_t pop_size = cfg.population;
    const std::size_t m = prob.m;
    const std::vector<Vector> weights = simplex_weights(pop_size, m);

    std::vector<std::vector<std::size_t>> neighbors(pop_size);
    for (std::size_t i = 0; i < pop_size; ++i) {
        std::vector<std::pair<double, std::size_t>> dist;
        for (std::size_t j = 0; j < pop_size; ++j) {
            double d = 0.0;
            for (std::size_t k = 0; k < m; ++k) d += (weights[i][k] - weights[j][k]) * (weights[i][k] - weights[j][k]);
            dist.emplace_back(d, j);
        }
        std::stable_sort(dist.begin(), dist.end());
        for (std::size_t t = 0; t < cfg.neighborhood; ++t) neighbors[i].push_back(dist[t].second);
    }

    Rng rng(cfg.seed);
    std::vector<Individual> pop;
    pop.reserve(pop_size);
    pop.push_back(make_individual(prob, midpoint(box), ref));
    while (pop.size() < pop_size) {
        Vector x(box.dimension());
        for (std::size_t k = 0; k < x.size(); ++k) {
            x[k] = std::clamp(box.lower[k] + uniform01(rng) * (box.upper[k] - box.lower[k]), box.lower[k],
                              box.upper[k]);
        }
        pop.push_back(make_individual(prob, std::move(x), ref));
    }

    Vector ideal = pop.front().objectives;
    for (const auto& ind : pop) {
        for (std::size_t k = 0; k < m; ++k) ideal[k] = std::min(ideal[k], ind.objectives[k]);
    }

    std::vector<std::size_t> everyone(pop_size);
    std::iota(everyone.begin(), everyone.end(), std::size_t{0});

    if (pop_size >= 4) {
        for (std::size_t gen = 0; gen < cfg.generations; ++gen) {
            for (std::size_t i = 0; i < pop_size; ++i) {
                std::vector<std::size_t> pool =
                    uniform01(rng) < kNeighborhoodSelection ? neighbors[i] : everyone;
                std::vector<std::size_t> others;
                for (std::size_t j : pool) {
                    if (j != i) others.push_back(j);
                }
                if (others.size() < 3) {
                    pool = everyone;
                    others.clear();
                    for (std::size_t j : everyone) {
                        if (j != i) others.push_back(j);
                    }
                }
                // Three distinct donors via a partial Fisher-Yates shuffle.
                for (std::size_t s = 0; s < 3; ++s) {
                    std::swap(others[s], others[s + draw_index(others.size() - s, rng)]);
                }
                const std::array<const Individual*, 3> donors = {&pop[others[0]], &pop[others[1]], &pop[others[2]]};
                Individual child = make_individual(prob, de_offspring(pop[i], donors, cfg, box, rng), ref);
                for (std::size_t k = 0; k < m; ++k) ideal[k] = std::min(ideal[k], child.objectives[k]);

                for (std::size_t s = 0; s + 1 < pool.size(); ++s) {
                    std::swap(pool[s], pool[s + draw_index(pool.size() - s, rng)]);
                }
                std::size_t replaced = 0;
                for (std::size_t j : pool) {
                    if (replaced >= kMaxReplacements) break;
                    if (better(child, pop[j], weights[j], ideal)) {
                        pop[j] = child;
                        ++replaced;
                    }
                }
            }
        }
    }

    std::vector<UpperCandidate> out;
    for (const auto& ind : pop) {
        if (ind.violation != 0.0) continue;
        const bool seen = std::any_of(out.begin(), out.end(), [&](const UpperCandidate& c) { return c.x == ind.x; });
        if (seen) continue;
        out.push_back({ind.objectives, ind.raw, ind.x});
    }
    return out;
}

std::vector<UpperCandidate> MoeaProvider::bounds(const ProblemDefinition& prob, const Box& box,
                                                 const ReferencePoints& ref, std::uint64_t seed) const {
    MiniMoeaConfig cfg = cfg_;
    cfg.seed = seed;
    return run_mini_moea(prob, box, ref, cfg);
}

}  // namespace ppbnb
