/**
 * @file moea.hpp
 * @brief Small decomposition-based evolutionary optimizer (MOEA/D with DE variation)
 *        used to find feasible upper-bound points inside one box.
 */
#ifndef PPBNB_MOEA_HPP
#define PPBNB_MOEA_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ppbnb/bounding.hpp"
#include "ppbnb/geometry.hpp"
#include "ppbnb/problems.hpp"
#include "ppbnb/random.hpp"

namespace ppbnb {

struct MiniMoeaConfig {
    std::size_t population = 10;
    std::size_t generations = 20;
    std::size_t neighborhood = 5;
    double de_scale = 0.5;
    double crossover_rate = 0.9;
    std::uint64_t seed = 1;

    /// Throws ConfigError on out-of-range values.
    void validate() const;
};

struct Individual {
    Vector x;
    Vector raw;         ///< F(x)
    Vector objectives;  ///< normalized F(x)
    double violation = 0.0;
};

/// Sum of max(0, -g_j).
double constraint_violation(std::span<const double> g);

/// max_i weight_i * (y_i - ideal_i).
double tchebycheff_scalarize(std::span<const double> y, std::span<const double> weight,
                             std::span<const double> ideal);

/**
 * @brief Simplex weight vectors for `count` subproblems in m objectives.
 *
 * Uses the largest Das-Dennis lattice that fits, tops up with midpoints of
 * consecutive lattice vectors, then applies a 1e-6 floor and renormalizes.
 */
std::vector<Vector> simplex_weights(std::size_t count, std::size_t m);

/// Raise every component to at least `floor`, then rescale to sum 1.
Vector floor_weight(Vector weight, double floor = 1e-6);

/**
 * @brief DE/rand/1 trial with binomial crossover, clipped to the box.
 *
 * trial = x_r1 + de_scale * (x_r2 - x_r3); each gene is taken from the mutant with
 * probability crossover_rate, and one random gene always is.
 */
Vector de_offspring(const Individual& target, const std::array<const Individual*, 3>& donors,
                    const MiniMoeaConfig& cfg, const Box& box, Rng& rng);

/**
 * @brief Run the optimizer inside `box`.
 *
 * Returns at most `population` feasible (image, preimage) pairs, all inside the
 * box; empty when nothing feasible was found. Deterministic for a given seed.
 */
std::vector<UpperCandidate> run_mini_moea(const ProblemDefinition& prob, const Box& box,
                                          const ReferencePoints& ref, const MiniMoeaConfig& cfg);

class MoeaProvider final : public UpperBoundProvider {
public:
    explicit MoeaProvider(MiniMoeaConfig cfg) : cfg_(cfg) {}
    std::vector<UpperCandidate> bounds(const ProblemDefinition& prob, const Box& box,
                                       const ReferencePoints& ref, std::uint64_t seed) const override;

private:
    MiniMoeaConfig cfg_;
};

}  // namespace ppbnb

#endif  // PPBNB_MOEA_HPP
