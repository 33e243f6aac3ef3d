#include "doctest.h"
#include "ppbnb/errors.hpp"
#include "ppbnb/metrics.hpp"
#include "ppbnb/moea.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace ppbnb;

namespace {

Individual at(Vector x) {
    Individual ind;
    ind.x = std::move(x);
    return ind;
}

}  // namespace

TEST_SUITE("moea") {

TEST_CASE("constraint violation") {
    CHECK(constraint_violation(Vector{1, -2}) == 2);
    CHECK(constraint_violation(Vector{0, 0}) == 0);
    CHECK(constraint_violation(Vector{-1, -1}) == 2);
    CHECK(constraint_violation(Vector{}) == 0);
}

TEST_CASE("Tchebycheff scalarization") {
    const Vector axis = floor_weight({1, 0});
    CHECK(tchebycheff_scalarize(Vector{3, 5}, axis, Vector{0, 0}) == doctest::Approx(3).epsilon(1e-5));
    CHECK(tchebycheff_scalarize(Vector{1, 2}, Vector{0.5, 0.5}, Vector{1, 2}) == 0);
    CHECK(tchebycheff_scalarize(Vector{2, 2}, Vector{0.5, 0.5}, Vector{0, 0}) == 1);
}

TEST_CASE("simplex weights") {
    for (std::size_t m : {2u, 3u, 5u}) {
        for (std::size_t count : {1u, 5u, 10u, 21u}) {
            const auto w = simplex_weights(count, m);
            CHECK(w.size() == count);
            for (const auto& v : w) {
                double sum = 0;
                for (double c : v) {
                    CHECK(c >= 1e-6 * 0.99);
                    sum += c;
                }
                CHECK(sum == doctest::Approx(1.0));
            }
        }
    }
}

TEST_CASE("DE offspring examples") {
    MiniMoeaConfig cfg;
    cfg.de_scale = 0.5;
    cfg.crossover_rate = 1.0;
    Rng rng(1);
    const Box box = make_box({-10}, {10});
    const Individual target = at({5}), r1 = at({0}), r2 = at({2}), r3 = at({0});
    CHECK(de_offspring(target, {&r1, &r2, &r3}, cfg, box, rng) == Vector{1});
    CHECK(de_offspring(target, {&r1, &r2, &r2}, cfg, box, rng) == Vector{0});
    const Individual far = at({100});
    CHECK(de_offspring(target, {&r1, &far, &r3}, cfg, box, rng) == Vector{10});

    cfg.crossover_rate = 0.0;  // only the forced gene comes from the mutant
    const Box box3 = make_box({-10, -10, -10}, {10, 10, 10});
    const Individual t3 = at({5, 5, 5}), a = at({0, 0, 0}), b = at({2, 2, 2}), c = at({0, 0, 0});
    const Vector trial = de_offspring(t3, {&a, &b, &c}, cfg, box3, rng);
    CHECK(std::count(trial.begin(), trial.end(), 1.0) == 1);
    CHECK(std::count(trial.begin(), trial.end(), 5.0) == 2);
}

TEST_CASE("config validation") {
    MiniMoeaConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.neighborhood = 11;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.de_scale = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.crossover_rate = 1.5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("mini MOEA on MOP boxes") {
    const auto prob = get_problem("MOP");
    const auto ref = sample_reference_points(prob, 1000, 2);
    MiniMoeaConfig cfg;
    cfg.seed = 77;
    const Box box = make_box({-1, 0}, {0.5, 2});
    const auto out = run_mini_moea(prob, box, ref, cfg);
    REQUIRE_FALSE(out.empty());
    CHECK(out.size() <= cfg.population);
    for (const auto& c : out) {
        CHECK(box.contains(c.x));
        const Evaluation e = evaluate(prob, c.x);
        CHECK(e.feasible);
        CHECK(e.objectives == c.raw);
        CHECK(normalize(c.raw, ref) == c.normalized);
    }
    const auto again = run_mini_moea(prob, box, ref, cfg);
    REQUIRE(again.size() == out.size());
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(again[i].x == out[i].x);
}

TEST_CASE("infeasible box gives nothing") {
    ProblemDefinition p;
    p.name = "never";
    p.n = 2;
    p.m = 2;
    p.p = 1;
    p.domain = make_box({0, 0}, {1, 1});
    p.objectives = [](std::span<const double> x) { return Vector{x[0], x[1]}; };
    p.constraints = [](std::span<const double>) { return Vector{-1.0}; };
    p.lipschitz_f = {1, 1};
    MiniMoeaConfig cfg;
    CHECK(run_mini_moea(p, p.domain, ReferencePoints{{0, 0}, {1, 1}}, cfg).empty());
}

TEST_CASE("feasible individuals survive") {
    // Feasible only in a thin band; whatever the run returns must be feasible.
    ProblemDefinition p;
    p.name = "band";
    p.n = 2;
    p.m = 2;
    p.p = 1;
    p.domain = make_box({0, 0}, {1, 1});
    p.objectives = [](std::span<const double> x) { return Vector{x[0], 1 - x[0] + x[1]}; };
    p.constraints = [](std::span<const double> x) { return Vector{0.05 - std::abs(x[1] - 0.5)}; };
    p.lipschitz_f = {1, 1.5};
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        MiniMoeaConfig cfg;
        cfg.seed = seed;
        const auto out = run_mini_moea(p, p.domain, ReferencePoints{{0, 0}, {1, 2}}, cfg);
        CHECK_FALSE(out.empty());  // the midpoint is feasible
        for (const auto& c : out) CHECK(evaluate(p, c.x).feasible);
    }
}

TEST_CASE("hypervolume not worse than the midpoint in most boxes") {
    const auto prob = get_problem("MOP");
    const auto ref = sample_reference_points(prob, 1000, 2);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-3, 3);
    int wins = 0;
    for (int t = 0; t < 100; ++t) {
        Vector lo(2), hi(2);
        for (int k = 0; k < 2; ++k) {
            double a = u(rng), b = u(rng);
            if (a > b) std::swap(a, b);
            lo[k] = a;
            hi[k] = b;
        }
        const Box box = make_box(lo, hi);
        MiniMoeaConfig cfg;
        cfg.seed = 1000 + t;
        const auto moea = run_mini_moea(prob, box, ref, cfg);
        const Vector mid = normalize(evaluate_objectives(prob, midpoint(box)), ref);
        std::vector<Vector> front;
        for (const auto& c : moea) front.push_back(c.normalized);
        Vector reference = mid;
        for (const auto& y : front) {
            for (int i = 0; i < 2; ++i) reference[i] = std::max(reference[i], y[i]);
        }
        for (double& r : reference) r += 0.1;
        const std::vector<Vector> single{mid};
        if (hypervolume_2d(front, reference) >= hypervolume_2d(single, reference)) ++wins;
    }
    CHECK(wins >= 50);
}

TEST_CASE("provider reseeds per box") {
    const auto prob = get_problem("MOP");
    const auto ref = sample_reference_points(prob, 1000, 2);
    const MoeaProvider provider(MiniMoeaConfig{});
    const Box box = make_box({-1, -1}, {1, 1});
    const auto a = provider.bounds(prob, box, ref, 5);
    const auto b = provider.bounds(prob, box, ref, 5);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].x == b[i].x);
}

}
