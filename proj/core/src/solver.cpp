#include "ppbnb/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>

#include "ppbnb/errors.hpp"
#include "ppbnb/metrics.hpp"
#include "ppbnb/parallel.hpp"
#include "ppbnb/random.hpp"

namespace ppbnb {

std::string to_string(UpperBoundMode mode) {
    return mode == UpperBoundMode::Midpoint ? "midpoint" : "moea";
}

UpperBoundMode parse_upper_bound_mode(const std::string& text) {
    if (text == "midpoint") return UpperBoundMode::Midpoint;
    if (text == "moea") return UpperBoundMode::Moea;
    throw ConfigError("unknown upper bound mode '" + text + "' (expected midpoint or moea)");
}

std::string to_string(TerminationReason reason) {
    switch (reason) {
        case TerminationReason::Converged: return "converged";
        case TerminationReason::MaxIterations: return "max-iterations";
        default: return "degenerate";
    }
}

void SolverConfig::validate() const {
    if (!(tol_eps > 0.0) || !std::isfinite(tol_eps)) throw ConfigError("tolerance --tol must be positive");
    if (!(tol_delta > 0.0) || !std::isfinite(tol_delta)) throw ConfigError("tolerance --delta must be positive");
    if (threads == 0) throw ConfigError("thread count must be positive");
    if (max_boxes == 0) throw ConfigError("box cap must be positive");
    if (!(dominance_tolerance >= 0.0)) throw ConfigError("dominance tolerance must be nonnegative");
    if (!(lipschitz_floor > 0.0)) throw ConfigError("Lipschitz floor must be positive");
    if (reference && !reference->valid()) throw ConfigError("reference points need ideal < nadir in every objective");
    if (ub_mode == UpperBoundMode::Moea) moea_cfg.validate();
}

namespace {

struct TransformedSet {
    std::size_t m = 0;
    std::vector<double> values;  // row-major T_eps images
};

TransformedSet transform_all(std::span<const Vector> points, EpsParameter eps) {
    TransformedSet t;
    if (points.empty()) return t;
    t.m = points.front().size();
    t.values.reserve(points.size() * t.m);
    for (const auto& p : points) {
        const Vector tp = apply_t_eps(p, eps);
        t.values.insert(t.values.end(), tp.begin(), tp.end());
    }
    return t;
}

}  // namespace

std::vector<char> discarding_pass(const std::vector<BoundRecord>& records, std::span<const Vector> upper_archive,
                                  EpsParameter proper_eps, double tolerance, unsigned threads) {
    std::vector<char> flags(records.size(), 0);
    if (upper_archive.empty()) return flags;
    const TransformedSet tu = transform_all(upper_archive, proper_eps);
    const std::size_t m = tu.m;
    parallel_for(records.size(), threads, [&](std::size_t r) {
        const BoundRecord& rec = records[r];
        if (rec.is_protected) return;
        const Vector tl = apply_t_eps(rec.lower, proper_eps);
        for (std::size_t a = 0; a < upper_archive.size(); ++a) {
            const double* ta = tu.values.data() + a * m;
            bool leq = true;
            for (std::size_t i = 0; i < m && leq; ++i) leq = ta[i] <= tl[i] + tolerance;
            if (leq && upper_archive[a] != rec.lower) {
                flags[r] = 1;
                return;
            }
        }
    });
    return flags;
}

std::vector<BoundRecord> mark_protected(std::vector<BoundRecord> records) {
    if (records.empty()) return records;
    const std::size_t m = records.front().lower.size();
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t best_low = records.size();
        std::size_t best_high = records.size();
        double high_value = -std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < records.size(); ++r) {
            const auto& rec = records[r];
            if (best_low == records.size() || rec.lower[i] < records[best_low].lower[i] ||
                (rec.lower[i] == records[best_low].lower[i] && rec.box.id < records[best_low].box.id)) {
                best_low = r;
            }
            for (const auto& c : rec.upper_candidates) {
                if (best_high == records.size() || c.normalized[i] > high_value ||
                    (c.normalized[i] == high_value && rec.box.id < records[best_high].box.id)) {
                    best_high = r;
                    high_value = c.normalized[i];
                }
            }
        }
        records[best_low].is_protected = true;
        if (best_high < records.size()) records[best_high].is_protected = true;
    }
    return records;
}

namespace {

using Clock = std::chrono::steady_clock;

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

std::vector<Vector> normalized_of(const std::vector<ArchiveEntry>& entries) {
    std::vector<Vector> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.normalized);
    return out;
}

BoundRecord bound_box(const ProblemDefinition& prob, Box box, std::span<const double> lipschitz,
                      const ReferencePoints& ref) {
    BoundRecord rec;
    rec.mid_objectives = evaluate_objectives(prob, midpoint(box));
    rec.diam = diameter(box);
    rec.lower_raw = rec.mid_objectives;
    for (std::size_t i = 0; i < rec.lower_raw.size(); ++i) rec.lower_raw[i] -= lipschitz[i] / 2.0 * rec.diam;
    rec.lower = lower_bound_from_midpoint(rec.mid_objectives, lipschitz, rec.diam, ref);
    rec.box = std::move(box);
    return rec;
}

class Solver {
public:
    Solver(const ProblemDefinition& prob, const SolverConfig& cfg, const IterationObserver& observer)
        : prob_(prob), cfg_(cfg), observer_(observer) {
        cfg_.validate();
        prob_.validate();
        lipschitz_ = prob_.lipschitz_f;
        for (double& l : lipschitz_) l = std::max(l, cfg_.lipschitz_floor);
        if (cfg_.ub_mode == UpperBoundMode::Moea) {
            provider_ = std::make_unique<MoeaProvider>(cfg_.moea_cfg);
        } else {
            provider_ = std::make_unique<MidpointProvider>();
        }
    }

    RunResult run() {
        RunResult result;
        SolverState& st = result.state;
        st.ref = cfg_.reference ? *cfg_.reference
                                : sample_reference_points(prob_, cfg_.reference_samples, derive_seed(cfg_.seed, ~0ULL));
        if (!st.ref.valid()) throw ConfigError("initial reference points are degenerate");

        Box root = prob_.domain;
        root.id = ids_.take();
        root.parent_id.reset();
        root.depth = 0;
        st.boxes.push_back(bound_box(prob_, root, lipschitz_, st.ref));
        st.width = diameter(root);
        st.gap = 1e6;
        st.iteration = 0;

        for (;;) {
            if (!(st.gap > cfg_.tol_eps || st.width > cfg_.tol_delta)) {
                result.reason = TerminationReason::Converged;
                break;
            }
            if (st.iteration >= cfg_.max_iterations) {
                result.reason = TerminationReason::MaxIterations;
                break;
            }
            if (!(st.width > 0.0)) {
                result.reason = TerminationReason::Degenerate;
                result.message = "domain has zero diameter";
                break;
            }
            if (!iterate(result)) break;
        }

        result.normalized_lipschitz = normalize_lipschitz(lipschitz_, st.ref);
        result.efficiency_bound = st.width * norm2(result.normalized_lipschitz);
        return result;
    }

private:
    // One pass of the main loop; false when the run ended as degenerate.
    bool iterate(RunResult& result) {
        SolverState& st = result.state;
        const auto started = Clock::now();
        IterationTrace tr;
        tr.iteration = ++st.iteration;

        // Branch: bisect every live box.
        const std::size_t parents = st.boxes.size();
        if (2 * parents > cfg_.max_boxes) {
            throw CapacityError("live box count " + std::to_string(2 * parents) + " exceeds the cap of " +
                                std::to_string(cfg_.max_boxes) + " at iteration " + std::to_string(st.iteration));
        }
        const BoxId first_id = ids_.take(2 * parents);
        std::vector<Box> children(2 * parents);
        parallel_for(parents, cfg_.threads, [&](std::size_t i) {
            auto [a, b] = bisect(st.boxes[i].box, first_id + 2 * i);
            children[2 * i] = std::move(a);
            children[2 * i + 1] = std::move(b);
        });
        tr.boxes_bisected = children.size();
        double width = 0.0;
        for (const auto& c : children) width = std::max(width, diameter(c));
        st.width = width;
        tr.width = width;

        // Feasibility test.
        std::vector<char> infeasible(children.size(), 0);
        parallel_for(children.size(), cfg_.threads, [&](std::size_t i) {
            infeasible[i] = feasibility_test(prob_, children[i]) == FeasibilityStatus::ProvablyInfeasible;
        });
        std::vector<Box> kept;
        std::vector<Box> dropped;
        for (std::size_t i = 0; i < children.size(); ++i) {
            (infeasible[i] ? dropped : kept).push_back(std::move(children[i]));
        }
        tr.boxes_infeasible = dropped.size();
        if (kept.empty()) {
            st.boxes.clear();
            st.lower_archive.clear();
            result.reason = TerminationReason::Degenerate;
            result.message = "every box was proven infeasible";
            finish_iteration(result, tr, started, {}, dropped);
            return false;
        }

        // Lower bounds.
        std::vector<BoundRecord> records(kept.size());
        parallel_for(kept.size(), cfg_.threads,
                     [&](std::size_t i) { records[i] = bound_box(prob_, std::move(kept[i]), lipschitz_, st.ref); });
        std::vector<Vector> lowers;
        lowers.reserve(records.size());
        for (const auto& r : records) lowers.push_back(r.lower);
        const std::vector<std::size_t> lower_front =
            non_eps_dominated_indices(lowers, cfg_.proper_eps, cfg_.dominance_tolerance, cfg_.threads);

        // Upper bounds from the boxes behind the non-eps-dominated lower bounds.
        parallel_for(lower_front.size(), cfg_.threads, [&](std::size_t j) {
            BoundRecord& rec = records[lower_front[j]];
            rec.upper_candidates = provider_->bounds(prob_, rec.box, st.ref, derive_seed(cfg_.seed, rec.box.id));
            if (!rec.upper_candidates.empty()) rec.feasible_status = FeasibilityStatus::HasFeasiblePoint;
        });

        std::vector<ArchiveEntry> uppers;
        for (const auto& rec : records) {
            for (const auto& c : rec.upper_candidates) uppers.push_back({c.normalized, c.raw, c.x, rec.box.id});
        }
        if (!uppers.empty()) {
            std::vector<Vector> pts = normalized_of(uppers);
            std::vector<ArchiveEntry> filtered;
            for (std::size_t i : non_eps_dominated_indices(pts, cfg_.proper_eps, cfg_.dominance_tolerance, cfg_.threads)) {
                filtered.push_back(std::move(uppers[i]));
            }
            st.upper_archive = std::move(filtered);
        }
        // Otherwise the previous archive stays: its points are still feasible images.

        st.lower_archive.clear();
        lower_sources_.clear();
        for (std::size_t i : lower_front) {
            st.lower_archive.push_back({records[i].lower, records[i].lower_raw, {}, records[i].box.id});
            lower_sources_.emplace_back(records[i].mid_objectives, records[i].diam);
        }

        // Discard.
        records = mark_protected(std::move(records));
        const std::vector<Vector> upper_points = normalized_of(st.upper_archive);
        const std::vector<char> flags =
            discarding_pass(records, upper_points, cfg_.proper_eps, cfg_.dominance_tolerance, cfg_.threads);
        std::vector<BoundRecord> live;
        std::vector<Box> discarded;
        std::vector<Vector> live_lower_raw;
        live_lower_raw.reserve(records.size());
        for (std::size_t i = 0; i < records.size(); ++i) {
            if (!flags[i]) live_lower_raw.push_back(records[i].lower_raw);
            if (records[i].is_protected) ++tr.protected_boxes;
            if (flags[i]) {
                discarded.push_back(std::move(records[i].box));
            } else {
                live.push_back(std::move(records[i]));
            }
        }
        tr.boxes_discarded = discarded.size();
        st.boxes = std::move(live);

        // Reference points, then renormalize everything that depends on them.
        std::vector<Vector> upper_raw;
        for (const auto& u : st.upper_archive) upper_raw.push_back(u.raw);
        ReferencePoints next = update_reference_points(st.ref, live_lower_raw, upper_raw);
        if (next.ideal != st.ref.ideal || next.nadir != st.ref.nadir) {
            st.ref = std::move(next);
            renormalize(st);
        }

        // With no image found so far d keeps its previous value.
        if (!st.upper_archive.empty() && !st.lower_archive.empty()) {
            st.gap = directed_hausdorff(normalized_of(st.upper_archive), normalized_of(st.lower_archive), cfg_.threads);
        }
        tr.gap = st.gap;
        tr.gap_bound = st.width * norm2(normalize_lipschitz(lipschitz_, st.ref));

        finish_iteration(result, tr, started, discarded, dropped);
        return true;
    }

    void renormalize(SolverState& st) {
        parallel_for(st.boxes.size(), cfg_.threads, [&](std::size_t i) {
            BoundRecord& rec = st.boxes[i];
            rec.lower = lower_bound_from_midpoint(rec.mid_objectives, lipschitz_, rec.diam, st.ref);
            for (auto& c : rec.upper_candidates) c.normalized = normalize(c.raw, st.ref);
        });
        for (auto& u : st.upper_archive) u.normalized = normalize(u.raw, st.ref);
        for (std::size_t i = 0; i < st.lower_archive.size(); ++i) {
            const auto& [mid_objectives, diam] = lower_sources_[i];
            st.lower_archive[i].normalized = lower_bound_from_midpoint(mid_objectives, lipschitz_, diam, st.ref);
        }
        // A new range ratio changes the cone order, so both archives are filtered again.
        const auto upper_keep = non_eps_dominated_indices(normalized_of(st.upper_archive), cfg_.proper_eps,
                                                          cfg_.dominance_tolerance, cfg_.threads);
        std::vector<ArchiveEntry> upper;
        for (std::size_t i : upper_keep) upper.push_back(std::move(st.upper_archive[i]));
        st.upper_archive = std::move(upper);
        const auto lower_keep = non_eps_dominated_indices(normalized_of(st.lower_archive), cfg_.proper_eps,
                                                          cfg_.dominance_tolerance, cfg_.threads);
        std::vector<ArchiveEntry> lower;
        std::vector<std::pair<Vector, double>> sources;
        for (std::size_t i : lower_keep) {
            lower.push_back(std::move(st.lower_archive[i]));
            sources.push_back(std::move(lower_sources_[i]));
        }
        st.lower_archive = std::move(lower);
        lower_sources_ = std::move(sources);
    }

    void finish_iteration(RunResult& result, IterationTrace& tr, Clock::time_point started,
                          const std::vector<Box>& discarded, const std::vector<Box>& infeasible) {
        SolverState& st = result.state;
        tr.boxes_live = st.boxes.size();
        tr.lower_archive = st.lower_archive.size();
        tr.upper_archive = st.upper_archive.size();
        if (result.reason == TerminationReason::Degenerate) tr.gap = st.gap;
        tr.seconds = std::chrono::duration<double>(Clock::now() - started).count();
        result.trace.push_back(tr);
        if (observer_) {
            observer_(IterationSnapshot{result.trace.back(), st.boxes, discarded, infeasible, st.lower_archive,
                                        st.upper_archive, st.ref});
        }
    }

    const ProblemDefinition& prob_;
    SolverConfig cfg_;
    const IterationObserver& observer_;
    Vector lipschitz_;
    std::unique_ptr<UpperBoundProvider> provider_;
    BoxIdCounter ids_{0};
    std::vector<std::pair<Vector, double>> lower_sources_;  // (F(m(B)), diameter) per lower archive entry
};

}  // namespace

RunResult solve(const ProblemDefinition& prob, const SolverConfig& cfg, const IterationObserver& observer) {
    return Solver(prob, cfg, observer).run();
}

}  // namespace ppbnb
