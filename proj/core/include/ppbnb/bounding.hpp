/**
 * @file bounding.hpp
 * @brief Lipschitz lower bounds, midpoint upper bounds and the infeasibility test.
 */
#ifndef PPBNB_BOUNDING_HPP
#define PPBNB_BOUNDING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "ppbnb/geometry.hpp"
#include "ppbnb/problems.hpp"

namespace ppbnb {

enum class FeasibilityStatus { ProvablyInfeasible, Unknown, HasFeasiblePoint };

/// A feasible image found inside a box. `raw` is kept so archives can be
/// renormalized exactly when the reference points move.
struct UpperCandidate {
    Vector normalized;
    Vector raw;
    Vector x;
};

struct BoundRecord {
    Box box;
    Vector mid_objectives;  ///< raw F(m(B))
    double diam = 0.0;
    Vector lower;           ///< normalized lower bound
    Vector lower_raw;       ///< raw lower bound F(m(B)) - L/2 * diam
    std::vector<UpperCandidate> upper_candidates;
    FeasibilityStatus feasible_status = FeasibilityStatus::Unknown;
    bool is_protected = false;
};

/// Raw bound f_i(m(B)) - (L_i / 2) * diameter(B).
Vector lipschitz_lower_bound_raw(const ProblemDefinition& prob, const Box& box);

/// Normalized bound: normalized f_i(m(B)) - (L_i / range_i / 2) * diameter(B).
Vector lipschitz_lower_bound(const ProblemDefinition& prob, const Box& box, const ReferencePoints& ref);

/// Same bound from an already evaluated midpoint image.
Vector lower_bound_from_midpoint(std::span<const double> mid_objectives, std::span<const double> lipschitz,
                                 double diam, const ReferencePoints& ref);

/**
 * @brief Lipschitz infeasibility proof.
 *
 * ProvablyInfeasible iff some g_j(m(B)) + (Lg_j / 2) * diameter(B) < 0. Returns
 * Unknown when the problem has no constraints or no constraint Lipschitz constants.
 */
FeasibilityStatus feasibility_test(const ProblemDefinition& prob, const Box& box);

/// (F(m(B)) normalized, m(B)) when the midpoint is feasible.
std::optional<UpperCandidate> midpoint_upper_bound(const ProblemDefinition& prob, const Box& box,
                                                   const ReferencePoints& ref);

/// Source of feasible images inside a box; one call per box, with a per-box seed.
class UpperBoundProvider {
public:
    virtual ~UpperBoundProvider() = default;
    virtual std::vector<UpperCandidate> bounds(const ProblemDefinition& prob, const Box& box,
                                               const ReferencePoints& ref, std::uint64_t seed) const = 0;
};

class MidpointProvider final : public UpperBoundProvider {
public:
    std::vector<UpperCandidate> bounds(const ProblemDefinition& prob, const Box& box,
                                       const ReferencePoints& ref, std::uint64_t seed) const override;
};

}  // namespace ppbnb

#endif  // PPBNB_BOUNDING_HPP
