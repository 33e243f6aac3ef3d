#include "ppbnb/problems.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "ppbnb/errors.hpp"
#include "ppbnb/random.hpp"

namespace ppbnb {

void ProblemDefinition::validate() const {
    if (m < 2) throw ConfigError(name + ": at least two objectives are required");
    if (!objectives) throw ConfigError(name + ": missing objective evaluator");
    if (p > 0 && !constraints) throw ConfigError(name + ": missing constraint evaluator");
    if (domain.dimension() != n) throw ConfigError(name + ": domain dimension differs from n");
    for (std::size_t k = 0; k < n; ++k) {
        if (!(domain.lower[k] <= domain.upper[k])) throw ConfigError(name + ": invalid domain box");
    }
    if (lipschitz_f.size() != m) throw ConfigError(name + ": expected one Lipschitz constant per objective");
    for (double l : lipschitz_f) {
        if (!(l > 0.0) || !std::isfinite(l)) {
            throw ConfigError(name + ": objective Lipschitz constants must be positive and finite");
        }
    }
    if (lipschitz_g) {
        if (lipschitz_g->size() != p) {
            throw ConfigError(name + ": expected one Lipschitz constant per constraint");
        }
        for (double l : *lipschitz_g) {
            if (!(l > 0.0) || !std::isfinite(l)) {
                throw ConfigError(name + ": constraint Lipschitz constants must be positive and finite");
            }
        }
    }
}

namespace {

void check_in_domain(const ProblemDefinition& prob, std::span<const double> x) {
    if (x.size() != prob.n) throw DimensionError(prob.name + ": decision vector has wrong dimension");
    if (!prob.domain.contains(x)) throw DomainError(prob.name + ": point lies outside the domain box");
}

Vector checked_objectives(const ProblemDefinition& prob, std::span<const double> x) {
    Vector f = prob.objectives(x);
    if (f.size() != prob.m) throw EvaluationError(prob.name + ": objective evaluator returned wrong size");
    for (double v : f) {
        if (!std::isfinite(v)) throw EvaluationError(prob.name + ": non-finite objective value");
    }
    return f;
}

}  // namespace

Evaluation evaluate(const ProblemDefinition& prob, std::span<const double> x) {
    check_in_domain(prob, x);
    Evaluation e;
    e.objectives = checked_objectives(prob, x);
    e.feasible = true;
    if (prob.p > 0) {
        e.constraints = prob.constraints(x);
        if (e.constraints.size() != prob.p) {
            throw EvaluationError(prob.name + ": constraint evaluator returned wrong size");
        }
        for (double g : e.constraints) {
            if (!(g >= 0.0)) e.feasible = false;  // NaN counts as violated
        }
    }
    return e;
}

Vector evaluate_objectives(const ProblemDefinition& prob, std::span<const double> x) {
    check_in_domain(prob, x);
    return checked_objectives(prob, x);
}

bool ReferencePoints::valid() const {
    if (ideal.size() != nadir.size() || ideal.empty()) return false;
    for (std::size_t i = 0; i < ideal.size(); ++i) {
        if (!(ideal[i] < nadir[i])) return false;
    }
    return true;
}

Vector normalize(std::span<const double> y, const ReferencePoints& ref) {
    if (y.size() != ref.ideal.size() || y.size() != ref.nadir.size()) {
        throw DimensionError("reference points and objective vector differ in dimension");
    }
    Vector out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double range = ref.nadir[i] - ref.ideal[i];
        if (!(range > 0.0)) {
            throw DegenerateRangeError("nadir equals ideal in objective " + std::to_string(i + 1));
        }
        out[i] = (y[i] - ref.ideal[i]) / range;
    }
    return out;
}

Vector denormalize(std::span<const double> y, const ReferencePoints& ref) {
    if (y.size() != ref.ideal.size()) throw DimensionError("reference points and vector differ in dimension");
    Vector out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        out[i] = ref.ideal[i] + y[i] * (ref.nadir[i] - ref.ideal[i]);
    }
    return out;
}

Vector normalize_lipschitz(std::span<const double> lipschitz, const ReferencePoints& ref) {
    if (lipschitz.size() != ref.ideal.size()) throw DimensionError("Lipschitz vector has wrong dimension");
    Vector out(lipschitz.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double range = ref.nadir[i] - ref.ideal[i];
        if (!(range > 0.0)) {
            throw DegenerateRangeError("nadir equals ideal in objective " + std::to_string(i + 1));
        }
        out[i] = lipschitz[i] / range;
    }
    return out;
}

ReferencePoints update_reference_points(ReferencePoints ref, std::span<const Vector> lower_bounds,
                                        std::span<const Vector> upper_bounds) {
    for (const auto& l : lower_bounds) {
        if (l.size() != ref.ideal.size()) throw DimensionError("lower bound has wrong dimension");
        for (std::size_t i = 0; i < l.size(); ++i) ref.ideal[i] = std::min(ref.ideal[i], l[i]);
    }
    for (const auto& u : upper_bounds) {
        if (u.size() != ref.nadir.size()) throw DimensionError("upper bound has wrong dimension");
        for (std::size_t i = 0; i < u.size(); ++i) ref.nadir[i] = std::max(ref.nadir[i], u[i]);
    }
    return ref;
}

namespace {

Vector uniform_point(const Box& box, Rng& rng) {
    Vector x(box.dimension());
    for (std::size_t k = 0; k < x.size(); ++k) {
        x[k] = box.lower[k] + uniform01(rng) * (box.upper[k] - box.lower[k]);
    }
    return x;
}

}  // namespace

ReferencePoints sample_reference_points(const ProblemDefinition& prob, std::size_t samples,
                                        std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Vector> feasible;
    std::vector<Vector> all;
    std::vector<Vector> probes;
    probes.push_back(midpoint(prob.domain));
    for (std::size_t s = 0; s < samples; ++s) probes.push_back(uniform_point(prob.domain, rng));
    for (const auto& x : probes) {
        Evaluation e = evaluate(prob, x);
        if (e.feasible) feasible.push_back(e.objectives);
        all.push_back(std::move(e.objectives));
    }
    const auto& pool = feasible.empty() ? all : feasible;

    ReferencePoints ref;
    ref.ideal = pool.front();
    ref.nadir = pool.front();
    ref = update_reference_points(ref, pool, pool);
    for (std::size_t i = 0; i < prob.m; ++i) {
        if (!(ref.ideal[i] < ref.nadir[i])) ref.nadir[i] = ref.ideal[i] + 1.0;
    }
    return ref;
}

Vector estimate_lipschitz(const VectorFunction& fn, std::size_t outputs, const Box& domain,
                          const LipschitzEstimateOptions& options) {
    const std::size_t n = domain.dimension();
    const double span = diameter(domain);
    Vector best(outputs, 0.0);
    if (!(span > 0.0)) return best;

    Rng rng(options.seed);
    Vector x(n);
    Vector y(n);
    for (std::size_t s = 0; s < options.samples; ++s) {
        const bool biased = (s % 2) == 1;
        for (std::size_t k = 0; k < n; ++k) {
            const double lo = domain.lower[k];
            const double w = domain.upper[k] - domain.lower[k];
            double u = uniform01(rng);
            if (biased) {
                const double t = u * u * u;
                u = uniform01(rng) < 0.5 ? t : 1.0 - t;
            }
            x[k] = lo + u * w;
        }
        // Random direction, log-uniform length in [1e-6, 1] * diameter.
        double norm = 0.0;
        Vector dir(n);
        for (std::size_t k = 0; k < n; ++k) {
            dir[k] = 2.0 * uniform01(rng) - 1.0;
            norm += dir[k] * dir[k];
        }
        norm = std::sqrt(norm);
        if (!(norm > 0.0)) continue;
        const double length = span * std::pow(10.0, -6.0 * uniform01(rng));
        double dist2 = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            y[k] = std::clamp(x[k] + length * dir[k] / norm, domain.lower[k], domain.upper[k]);
            dist2 += (y[k] - x[k]) * (y[k] - x[k]);
        }
        const double dist = std::sqrt(dist2);
        if (!(dist > 0.0)) continue;

        const Vector fx = fn(x);
        const Vector fy = fn(y);
        for (std::size_t i = 0; i < outputs; ++i) {
            if (!std::isfinite(fx[i]) || !std::isfinite(fy[i])) {
                throw EvaluationError("non-finite value while estimating Lipschitz constants");
            }
            best[i] = std::max(best[i], std::fabs(fx[i] - fy[i]) / dist);
        }
    }
    for (double& b : best) b *= options.safety;
    return best;
}

Vector estimate_lipschitz(const ProblemDefinition& prob, std::size_t samples, double safety,
                          std::uint64_t seed) {
    if (samples == 0) throw ConfigError("Lipschitz estimation needs at least one sample");
    if (!(safety > 0.0)) throw ConfigError("Lipschitz safety factor must be positive");
    return estimate_lipschitz(prob.objectives, prob.m, prob.domain, {samples, safety, seed});
}

}  // namespace ppbnb
