// Built-in benchmark problems, the problem registry and expression-file loading.
//
// Water resources: the printed formulation in the source article of the knee
// experiments is not evaluable as typeset. Objectives and constraints below follow
// the canonical storm-drainage formulation (Musselman & Talavage; Ray, Tai & Seow):
//   f3 = 305700 * 2289 * x2 / (0.06 * 2289)^0.65   (printed "30570*0.02289.0x2/...")
//   f4 = 250 * 2289 * exp(-39.75 x2 + 9.9 x3 + 2.74)
//   g4, g5 use x2 in their linear term             (printed "8046.33x")
//   constraints are rewritten as  rhs - lhs >= 0.
//
// Welded beam: transcribed as printed, including the 2.1592 deflection constant.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <string>
#include <unordered_map>

#include "json.hpp"
#include "ppbnb/errors.hpp"
#include "ppbnb/expression.hpp"
#include "ppbnb/problems.hpp"

namespace ppbnb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLipschitzFloor = 1e-12;

ProblemDefinition make_mop() {
    ProblemDefinition p;
    p.name = "MOP";
    p.n = 2;
    p.m = 2;
    p.p = 0;
    p.domain = make_box({-3.0, -3.0}, {3.0, 3.0});
    p.objectives = [](std::span<const double> x) {
        const double s = x[0] + x[1];
        const double d = x[0] - x[1];
        const double common = std::sqrt(1.0 + s * s) + std::sqrt(1.0 + d * d);
        const double bump = std::exp(-d * d);
        return Vector{0.5 * (common + x[0] - x[1]) + bump, 0.5 * (common - x[0] + x[1]) + bump};
    };
    return p;
}

double knee_shape(double t, double k) {
    const double c = t - 0.5;
    return 5.0 + 10.0 * c * c + std::cos(2.0 * k * kPi * t) / k;
}

ProblemDefinition make_deb2dk(int k, int n) {
    ProblemDefinition p;
    p.name = "DEB2DK";
    p.n = static_cast<std::size_t>(n);
    p.m = 2;
    p.domain = make_box(Vector(p.n, 0.0), Vector(p.n, 1.0));
    const double kk = k;
    const std::size_t nn = p.n;
    p.objectives = [kk, nn](std::span<const double> x) {
        double tail = 0.0;
        for (std::size_t i = 1; i < nn; ++i) tail += x[i];
        const double g = 1.0 + 9.0 / static_cast<double>(nn - 1) * tail;
        const double r = knee_shape(x[0], kk);
        const double a = 0.5 * kPi * x[0];
        return Vector{g * r * std::sin(a), g * r * std::cos(a)};
    };
    return p;
}

ProblemDefinition make_deb3dk(int k, int n) {
    ProblemDefinition p;
    p.name = "DEB3DK";
    p.n = static_cast<std::size_t>(n);
    p.m = 3;
    p.domain = make_box(Vector(p.n, 0.0), Vector(p.n, 1.0));
    const double kk = k;
    const std::size_t nn = p.n;
    p.objectives = [kk, nn](std::span<const double> x) {
        double tail = 0.0;
        for (std::size_t i = 2; i < nn; ++i) tail += x[i];
        const double g = 1.0 + 9.0 / static_cast<double>(nn - 1) * tail;
        const double r = 0.5 * (knee_shape(x[0], kk) + knee_shape(x[1], kk));
        const double a = 0.5 * kPi * x[0];
        const double b = 0.5 * kPi * x[1];
        return Vector{g * r * std::sin(a) * std::sin(b), g * r * std::sin(a) * std::cos(b),
                      g * r * std::cos(a)};
    };
    return p;
}

ProblemDefinition make_welded_beam() {
    ProblemDefinition p;
    p.name = "welded-beam";
    p.n = 4;
    p.m = 2;
    p.p = 4;
    p.domain = make_box({0.125, 0.125, 0.1, 0.1}, {5.0, 5.0, 10.0, 10.0});
    p.objectives = [](std::span<const double> x) {
        return Vector{1.10471 * x[0] * x[0] * x[2] + 0.04811 * x[1] * x[3] * (14.0 + x[2]),
                      2.1592 / (x[1] * x[3] * x[3] * x[3])};
    };
    p.constraints = [](std::span<const double> x) {
        const double sum14 = x[0] + x[3];
        const double radius = std::sqrt(0.25 * (x[2] * x[2] + sum14 * sum14));
        const double tau1 = 6000.0 / (std::sqrt(2.0) * x[0] * x[2]);
        const double tau2 = 6000.0 * (14.0 + 0.5 * x[2]) * radius /
                            (1.414 * x[0] * x[2] * (x[2] * x[2] / 12.0 + 0.25 * sum14 * sum14));
        const double tau = std::sqrt(tau1 * tau1 + tau2 * tau2 + x[2] * tau1 * tau2 / radius);
        const double sigma = 504000.0 / (x[1] * x[3] * x[3]);
        const double buckling = 64746.022 * (1.0 - 0.0282346 * x[3]) * x[3] * x[1] * x[1] * x[1];
        return Vector{13600.0 - tau, 30000.0 - sigma, x[1] - x[0], buckling - 6000.0};
    };
    return p;
}

ProblemDefinition make_water_resources() {
    ProblemDefinition p;
    p.name = "water-resources";
    p.n = 3;
    p.m = 5;
    p.p = 7;
    p.domain = make_box({0.01, 0.01, 0.01}, {0.45, 0.1, 0.1});
    p.objectives = [](std::span<const double> x) {
        const double x12 = x[0] * x[1];
        return Vector{106780.37 * (x[1] + x[2]) + 61704.67, 3000.0 * x[0],
                      305700.0 * 2289.0 * x[1] / std::pow(0.06 * 2289.0, 0.65),
                      250.0 * 2289.0 * std::exp(-39.75 * x[1] + 9.9 * x[2] + 2.74),
                      25.0 * (1.39 / x12 + 4940.0 * x[2] - 80.0)};
    };
    p.constraints = [](std::span<const double> x) {
        const double x12 = x[0] * x[1];
        return Vector{1.0 - (0.00139 / x12 + 4.94 * x[2] - 0.08),
                      1.0 - (0.000306 / x12 + 1.082 * x[2] - 0.0986),
                      50000.0 - (12.307 / x12 + 49408.24 * x[2] + 4051.02),
                      16000.0 - (2.098 / x12 + 8046.33 * x[1] - 696.71),
                      10000.0 - (2.138 / x12 + 7883.39 * x[1] - 705.04),
                      2000.0 - (0.417 * x12 + 1721.26 * x[2] - 136.54),
                      550.0 - (0.164 / x12 + 631.13 * x[2] - 54.48)};
    };
    return p;
}

int integer_param(const ProblemParams& params, const std::string& key, int fallback) {
    const auto it = params.find(key);
    if (it == params.end()) return fallback;
    const double v = it->second;
    if (std::floor(v) != v) throw ConfigError("parameter " + key + " must be an integer");
    return static_cast<int>(v);
}

void reject_unknown(const std::string& name, const ProblemParams& params,
                    std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : params) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw ConfigError(name + " does not take parameter '" + key + "'");
    }
}

void attach_lipschitz(ProblemDefinition& p) {
    const LipschitzEstimateOptions opts;  // 1e5 samples, safety 1.5, fixed seed
    p.lipschitz_f = estimate_lipschitz(p.objectives, p.m, p.domain, opts);
    for (double& l : p.lipschitz_f) l = std::max(l, kLipschitzFloor);
    if (p.p > 0) {
        Vector lg = estimate_lipschitz(p.constraints, p.p, p.domain, opts);
        for (double& l : lg) l = std::max(l, kLipschitzFloor);
        p.lipschitz_g = std::move(lg);
    }
}

std::string cache_key(const std::string& name, const ProblemParams& params) {
    std::ostringstream os;
    os.precision(17);
    os << name;
    for (const auto& [k, v] : params) os << ';' << k << '=' << v;
    return os.str();
}

struct Registry {
    std::mutex mutex;
    std::unordered_map<std::string, ProblemDefinition> cache;
    std::unordered_map<std::string, ProblemDefinition> user;
};

Registry& registry() {
    static Registry r;
    return r;
}

ProblemDefinition build_builtin(const std::string& name, const ProblemParams& params) {
    if (name == "MOP") {
        reject_unknown(name, params, {});
        return make_mop();
    }
    if (name == "DEB2DK" || name == "DEB3DK") {
        reject_unknown(name, params, {"K", "n"});
        const bool two = name == "DEB2DK";
        const int k = integer_param(params, "K", two ? 4 : 1);
        const int n = integer_param(params, "n", 3);
        if (k < 1) throw ConfigError(name + ": K must be at least 1");
        if (n < 2) throw ConfigError(name + ": n must be at least 2");
        return two ? make_deb2dk(k, n) : make_deb3dk(k, n);
    }
    if (name == "welded-beam") {
        reject_unknown(name, params, {});
        return make_welded_beam();
    }
    if (name == "water-resources") {
        reject_unknown(name, params, {});
        return make_water_resources();
    }
    throw ConfigError("unknown problem '" + name + "'");
}

}  // namespace

std::vector<std::string> list_problems() {
    std::vector<std::string> names = {"MOP", "DEB2DK", "DEB3DK", "welded-beam", "water-resources"};
    auto& reg = registry();
    std::lock_guard lock(reg.mutex);
    std::vector<std::string> extra;
    for (const auto& [name, prob] : reg.user) extra.push_back(name);
    std::sort(extra.begin(), extra.end());
    names.insert(names.end(), extra.begin(), extra.end());
    return names;
}

ProblemDefinition get_problem(const std::string& name, const ProblemParams& params) {
    auto& reg = registry();
    {
        std::lock_guard lock(reg.mutex);
        if (auto it = reg.user.find(name); it != reg.user.end()) {
            if (!params.empty()) throw ConfigError("user problem '" + name + "' takes no parameters");
            return it->second;
        }
        if (auto it = reg.cache.find(cache_key(name, params)); it != reg.cache.end()) return it->second;
    }
    ProblemDefinition p = build_builtin(name, params);
    attach_lipschitz(p);
    p.validate();
    std::lock_guard lock(reg.mutex);
    reg.cache.emplace(cache_key(name, params), p);
    return p;
}

void register_problem(const ProblemDefinition& prob) {
    prob.validate();
    auto& reg = registry();
    std::lock_guard lock(reg.mutex);
    reg.user[prob.name] = prob;
}

ProblemDefinition parse_problem_json(const std::string& text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("problem file is not valid JSON: ") + e.what());
    }
    try {
        ProblemDefinition p;
        p.name = doc.value("name", std::string("user"));
        Vector lo;
        Vector hi;
        for (const auto& b : doc.at("bounds")) {
            if (b.size() != 2) throw ConfigError("each bound must be a [lower, upper] pair");
            lo.push_back(b.at(0).get<double>());
            hi.push_back(b.at(1).get<double>());
        }
        p.n = lo.size();
        p.domain = make_box(lo, hi);

        std::vector<Expression> objs;
        for (const auto& e : doc.at("objectives")) objs.emplace_back(e.get<std::string>(), p.n);
        std::vector<Expression> cons;
        if (doc.contains("constraints")) {
            for (const auto& e : doc.at("constraints")) cons.emplace_back(e.get<std::string>(), p.n);
        }
        p.m = objs.size();
        p.p = cons.size();
        p.objectives = [objs](std::span<const double> x) {
            Vector out;
            out.reserve(objs.size());
            for (const auto& e : objs) out.push_back(e.evaluate(x));
            return out;
        };
        if (p.p > 0) {
            p.constraints = [cons](std::span<const double> x) {
                Vector out;
                out.reserve(cons.size());
                for (const auto& e : cons) out.push_back(e.evaluate(x));
                return out;
            };
        }
        if (doc.contains("lipschitz_f")) {
            p.lipschitz_f = doc.at("lipschitz_f").get<Vector>();
        } else {
            p.lipschitz_f = estimate_lipschitz(p.objectives, p.m, p.domain, {});
            for (double& l : p.lipschitz_f) l = std::max(l, kLipschitzFloor);
        }
        if (doc.contains("lipschitz_g")) {
            p.lipschitz_g = doc.at("lipschitz_g").get<Vector>();
        } else if (p.p > 0) {
            Vector lg = estimate_lipschitz(p.constraints, p.p, p.domain, {});
            for (double& l : lg) l = std::max(l, kLipschitzFloor);
            p.lipschitz_g = std::move(lg);
        }
        p.validate();
        return p;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("problem file: ") + e.what());
    }
}

ProblemDefinition load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open problem file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem_json(ss.str());
}

}  // namespace ppbnb
