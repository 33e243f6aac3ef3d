#include "ppbnb/bounding.hpp"

#include "ppbnb/errors.hpp"

namespace ppbnb {

Vector lipschitz_lower_bound_raw(const ProblemDefinition& prob, const Box& box) {
    const Vector mid = midpoint(box);
    Vector l = evaluate_objectives(prob, mid);
    const double half = diameter(box) / 2.0;
    for (std::size_t i = 0; i < l.size(); ++i) l[i] -= prob.lipschitz_f[i] * half;
    return l;
}

Vector lower_bound_from_midpoint(std::span<const double> mid_objectives, std::span<const double> lipschitz,
                                 double diam, const ReferencePoints& ref) {
    Vector l = normalize(mid_objectives, ref);
    const Vector scaled = normalize_lipschitz(lipschitz, ref);
    for (std::size_t i = 0; i < l.size(); ++i) l[i] -= scaled[i] / 2.0 * diam;
    return l;
}

Vector lipschitz_lower_bound(const ProblemDefinition& prob, const Box& box, const ReferencePoints& ref) {
    const Vector f = evaluate_objectives(prob, midpoint(box));
    return lower_bound_from_midpoint(f, prob.lipschitz_f, diameter(box), ref);
}

FeasibilityStatus feasibility_test(const ProblemDefinition& prob, const Box& box) {
    if (prob.p == 0 || !prob.lipschitz_g) return FeasibilityStatus::Unknown;
    const Vector g = prob.constraints(midpoint(box));
    const double half = diameter(box) / 2.0;
    for (std::size_t j = 0; j < prob.p; ++j) {
        if (g[j] + (*prob.lipschitz_g)[j] * half < 0.0) return FeasibilityStatus::ProvablyInfeasible;
    }
    return FeasibilityStatus::Unknown;
}

std::optional<UpperCandidate> midpoint_upper_bound(const ProblemDefinition& prob, const Box& box,
                                                   const ReferencePoints& ref) {
    Vector mid = midpoint(box);
    Evaluation e = evaluate(prob, mid);
    if (!e.feasible) return std::nullopt;
    UpperCandidate c;
    c.normalized = normalize(e.objectives, ref);
    c.raw = std::move(e.objectives);
    c.x = std::move(mid);
    return c;
}

std::vector<UpperCandidate> MidpointProvider::bounds(const ProblemDefinition& prob, const Box& box,
                                                     const ReferencePoints& ref, std::uint64_t) const {
    std::vector<UpperCandidate> out;
    if (auto c = midpoint_upper_bound(prob, box, ref)) out.push_back(std::move(*c));
    return out;
}

}  // namespace ppbnb
