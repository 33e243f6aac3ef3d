#include "doctest.h"
#include "ppbnb/errors.hpp"
#include "ppbnb/metrics.hpp"
#include "ppbnb/oracle.hpp"
#include "ppbnb/solver.hpp"

using namespace ppbnb;

namespace {

BoundRecord record(BoxId id, Vector lower, std::vector<Vector> upper = {}) {
    BoundRecord r;
    r.box = make_box({0}, {1}, id);
    r.lower = std::move(lower);
    for (auto& u : upper) r.upper_candidates.push_back({u, u, {0.5}});
    return r;
}

std::vector<Vector> normalized_images(const std::vector<GridPoint>& pts, const ReferencePoints& ref) {
    std::vector<Vector> out;
    for (const auto& p : pts) out.push_back(normalize(p.f, ref));
    return out;
}

std::vector<Vector> archive_points(const std::vector<ArchiveEntry>& a) {
    std::vector<Vector> out;
    for (const auto& e : a) out.push_back(e.normalized);
    return out;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("discarding pass examples") {
    const std::vector<Vector> archive{{0.5, 0.5}};
    std::vector<BoundRecord> recs{record(1, {2, 2}), record(2, {0, 0}), record(3, {2, 2})};
    recs[2].is_protected = true;
    const auto flags = discarding_pass(recs, archive, EpsParameter(0.75));
    CHECK(flags == std::vector<char>{1, 0, 0});
    CHECK(discarding_pass(recs, archive, EpsParameter(0.75), 0.0, 3) == flags);
    // an archive point equal to the bound never discards it
    const std::vector<Vector> same{{2, 2}};
    CHECK(discarding_pass({record(1, {2, 2})}, same, EpsParameter(0.5)) == std::vector<char>{0});
}

TEST_CASE("extreme boxes are protected") {
    auto two = mark_protected({record(1, {0, 5}), record(2, {5, 0})});
    CHECK(two[0].is_protected);
    CHECK(two[1].is_protected);

    auto one = mark_protected({record(4, {1, 1})});
    CHECK(one[0].is_protected);

    auto ties = mark_protected({record(9, {0, 0}), record(3, {0, 0}), record(5, {1, 1})});
    CHECK_FALSE(ties[0].is_protected);
    CHECK(ties[1].is_protected);
    CHECK_FALSE(ties[2].is_protected);

    auto upper = mark_protected({record(1, {0, 0}), record(2, {1, 1}, {{9, 9}}), record(3, {1, 1}, {{2, 2}})});
    CHECK(upper[0].is_protected);
    CHECK(upper[1].is_protected);
    CHECK_FALSE(upper[2].is_protected);
}

TEST_CASE("config validation") {
    SolverConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.tol_eps = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.tol_delta = -1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.threads = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK(parse_upper_bound_mode("midpoint") == UpperBoundMode::Midpoint);
    CHECK(parse_upper_bound_mode("moea") == UpperBoundMode::Moea);
    CHECK_THROWS_AS(parse_upper_bound_mode("best"), ConfigError);
    CHECK(to_string(TerminationReason::Converged) == "converged");
    CHECK(to_string(TerminationReason::MaxIterations) == "max-iterations");
    CHECK(to_string(TerminationReason::Degenerate) == "degenerate");
}

TEST_CASE("zero iterations return the domain") {
    const auto mop = get_problem("MOP");
    SolverConfig cfg;
    cfg.max_iterations = 0;
    const auto r = solve(mop, cfg);
    CHECK(r.reason == TerminationReason::MaxIterations);
    CHECK(r.state.iteration == 0);
    REQUIRE(r.state.boxes.size() == 1);
    CHECK(r.state.boxes[0].box.lower == mop.domain.lower);
    CHECK(r.state.boxes[0].box.upper == mop.domain.upper);
    CHECK(r.trace.empty());
}

TEST_CASE("MOP Pareto front at coarse tolerances") {
    const auto mop = get_problem("MOP");
    SolverConfig cfg;
    cfg.proper_eps = EpsParameter(0);
    cfg.tol_eps = 0.05;
    cfg.tol_delta = 0.05;
    const auto r = solve(mop, cfg);
    CHECK(r.reason == TerminationReason::Converged);
    REQUIRE_FALSE(r.state.upper_archive.empty());
    const auto pts = archive_points(r.state.upper_archive);
    for (const auto& a : pts) {
        for (const auto& b : pts) CHECK_FALSE(pareto_dominates(a, b));
    }
    const auto oracle = build_grid_oracle(mop, 256);
    const auto front = normalized_images(oracle_pareto_front(oracle), r.state.ref);
    for (const auto& u : pts) CHECK(distance_to_set(u, front) <= 0.1);
}

TEST_CASE("MOP proper front") {
    const auto mop = get_problem("MOP");
    SolverConfig cfg;
    cfg.tol_eps = 0.05;
    cfg.tol_delta = 0.05;
    const auto r = solve(mop, cfg);
    REQUIRE_FALSE(r.state.upper_archive.empty());
    const auto oracle = build_grid_oracle(mop, 256);
    const auto proper = normalized_images(oracle_proper_front(oracle, 0.75, r.state.ref), r.state.ref);
    CHECK(directed_hausdorff(archive_points(r.state.upper_archive), proper) <= 0.1);
}

TEST_CASE("archives stay non-dominated and widths shrink") {
    const auto deb = get_problem("DEB2DK");
    SolverConfig cfg;
    cfg.tol_eps = 0.05;
    cfg.tol_delta = 0.05;
    cfg.max_iterations = 25;
    double last_width = 1e300;
    std::size_t iterations = 0;
    solve(deb, cfg, [&](const IterationSnapshot& s) {
        ++iterations;
        CHECK(s.trace.width < last_width);
        last_width = s.trace.width;
        for (const auto* archive : {&s.upper_archive, &s.lower_archive}) {
            for (const auto& a : *archive) {
                for (const auto& b : *archive) CHECK_FALSE(eps_dominates(a.normalized, b.normalized, cfg.proper_eps));
            }
        }
        for (const auto& u : s.upper_archive) CHECK(evaluate(deb, u.x).feasible);
    });
    CHECK(iterations > 0);
}

TEST_CASE("results do not depend on the thread count") {
    const auto deb = get_problem("DEB2DK");
    SolverConfig cfg;
    cfg.tol_eps = 0.05;
    cfg.tol_delta = 0.05;
    cfg.max_iterations = 14;
    const auto a = solve(deb, cfg);
    cfg.threads = 3;
    const auto b = solve(deb, cfg);
    REQUIRE(a.state.upper_archive.size() == b.state.upper_archive.size());
    for (std::size_t i = 0; i < a.state.upper_archive.size(); ++i) {
        CHECK(a.state.upper_archive[i].x == b.state.upper_archive[i].x);
        CHECK(a.state.upper_archive[i].raw == b.state.upper_archive[i].raw);
    }
    CHECK(a.state.boxes.size() == b.state.boxes.size());
    CHECK(a.state.gap == b.state.gap);
    CHECK(a.state.ref.ideal == b.state.ref.ideal);
}

TEST_CASE("degenerate terminations") {
    ProblemDefinition p;
    p.name = "never";
    p.n = 1;
    p.m = 2;
    p.p = 1;
    p.domain = make_box({0}, {1});
    p.objectives = [](std::span<const double> x) { return Vector{x[0], 1 - x[0]}; };
    p.constraints = [](std::span<const double>) { return Vector{-5.0}; };
    p.lipschitz_f = {1, 1};
    p.lipschitz_g = Vector{1};
    SolverConfig cfg;
    cfg.reference = ReferencePoints{{0, 0}, {1, 1}};
    const auto r = solve(p, cfg);
    CHECK(r.reason == TerminationReason::Degenerate);
    CHECK(r.state.upper_archive.empty());
    CHECK(r.state.boxes.empty());

    ProblemDefinition point = p;
    point.p = 0;
    point.constraints = {};
    point.lipschitz_g.reset();
    point.domain = make_box({0.5}, {0.5});
    const auto z = solve(point, cfg);
    CHECK(z.reason == TerminationReason::Degenerate);
}

TEST_CASE("box cap") {
    const auto mop = get_problem("MOP");
    SolverConfig cfg;
    cfg.proper_eps = EpsParameter(0);
    cfg.tol_eps = 1e-6;
    cfg.tol_delta = 1e-6;
    cfg.max_boxes = 64;
    CHECK_THROWS_AS(solve(mop, cfg), CapacityError);
}

TEST_CASE("user reference points are checked") {
    SolverConfig cfg;
    cfg.reference = ReferencePoints{{0, 1}, {1, 1}};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

}
