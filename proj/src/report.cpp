#include "evpos/report.hpp"

#include <chrono>
#include <numbers>

#include "evpos/parser.hpp"

namespace evpos {

namespace {

constexpr std::uint64_t kTagFunctionalEq = 0x66756571;
constexpr long long kFunctionalEquationPairs = 200;
constexpr double kFunctionalEquationTol = 1e-9;

bool refuted(const Verdict& v) { return v.status == VerdictStatus::CounterexampleFound; }

double functional_equation_spot_check(const HomogenizedPolynomial& hp, std::uint64_t seed,
                                      long long pairs) {
    const NormalFan& fan = hp.fan();
    RelationLattice rel = relation_lattice(fan);
    RngStream rng(seed, {kTagFunctionalEq});
    double worst = 0.0;
    std::vector<Complex> z(static_cast<std::size_t>(fan.ray_count()));
    std::vector<Complex> params(rel.basis.size());
    for (long long it = 0; it < pairs; ++it) {
        for (auto& zi : z) zi = std::polar(rng.log_uniform(0.5, 2.0), rng.angle());
        for (auto& pj : params)
            pj = Complex(rng.uniform(-0.5, 0.5), rng.uniform(-std::numbers::pi, std::numbers::pi));
        std::vector<Complex> g = group_element(rel, params);
        worst = std::max(worst, functional_equation_residual(hp, g, z));
    }
    return worst;
}

std::uint64_t per_cone_seed(std::uint64_t seed, std::size_t cone) {
    return seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(cone + 1));
}

nlohmann::json complex_to_json(const Complex& c) {
    return nlohmann::json::array({c.real(), c.imag()});
}

nlohmann::json witness_to_json(const Witness& w) {
    nlohmann::json j;
    j["kind"] = w.kind;
    if (!w.point.empty()) {
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& c : w.point) pts.push_back(complex_to_json(c));
        j["point"] = pts;
    }
    if (!w.point_b.empty()) {
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& c : w.point_b) pts.push_back(complex_to_json(c));
        j["point_b"] = pts;
    }
    if (!w.real_point.empty()) j["real_point"] = w.real_point;
    if (!w.lattice_point.empty()) j["lattice_point"] = w.lattice_point;
    if (!w.exact_value.empty()) j["exact_value"] = w.exact_value;
    j["lhs"] = w.lhs;
    j["rhs"] = w.rhs;
    j["margin"] = w.margin;
    if (w.cone >= 0) j["cone"] = w.cone;
    if (w.ray >= 0) j["ray"] = w.ray;
    j["equality_type"] = w.equality_type;
    if (w.orbit_residual >= 0) j["orbit_residual"] = w.orbit_residual;
    return j;
}

}  // namespace

std::string to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::CertifiedTrue:
            return "certified_true";
        case VerdictStatus::CounterexampleFound:
            return "counterexample_found";
        case VerdictStatus::Inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

nlohmann::json verdict_to_json(const Verdict& v) {
    nlohmann::json j;
    j["status"] = to_string(v.status);
    if (!v.certificate.empty()) j["certificate"] = v.certificate;
    j["witness"] = v.witness ? witness_to_json(*v.witness) : nlohmann::json();
    nlohmann::json stats;
    stats["samples"] = v.stats.samples;
    stats["restarts"] = v.stats.restarts;
    if (v.stats.best_margin_set) stats["best_margin"] = v.stats.best_margin;
    stats["skipped_excluded"] = v.stats.skipped_excluded;
    stats["near_orbit_discards"] = v.stats.near_orbit_discards;
    stats["borderline"] = v.stats.borderline;
    stats["certified_parts"] = v.stats.certified_parts;
    stats["total_parts"] = v.stats.total_parts;
    if (!v.stats.note.empty()) stats["note"] = v.stats.note;
    j["stats"] = stats;
    return j;
}

PositivityReport analyze(const LaurentPolynomial& p, const std::vector<std::string>& variables,
                         const SamplerConfig& cfg, bool with_timings) {
    PositivityReport r;
    r.variables = variables;
    r.input = format_polynomial(p, variables);
    r.config = cfg;

    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    auto lap = [&](const char* stage) {
        auto t1 = clock::now();
        if (with_timings)
            r.timings.emplace_back(stage,
                                   std::chrono::duration<double>(t1 - t0).count());
        t0 = t1;
    };

    LatticePolytope P = newton_polytope(p);
    NormalFan fan = build_normal_fan(P);
    r.dimension = P.affine_dimension();
    r.facets = P.facets();
    r.vertices = P.vertices();
    r.ray_count = fan.ray_count();
    r.cone_count = static_cast<int>(fan.cones().size());
    lap("polytope_and_fan");

    HomogenizedPolynomial hp = homogenize(p, P, fan);
    lap("homogenize");

    r.fully_positive = is_fully_positive(p, P);
    lap("fully_positive");

    r.functional_equation_pairs = kFunctionalEquationPairs;
    r.functional_equation_max_residual =
        functional_equation_spot_check(hp, cfg.seed, kFunctionalEquationPairs);
    lap("functional_equation");

    r.pos1 = check_vertex_positivity(hp);
    r.vertex_vals = vertex_values(hp);
    lap("pos1");

    r.pos2 = check_boundary_derivative_positivity(hp, cfg);
    lap("pos2");

    r.pos3 = check_modulus_dominance(hp, cfg);
    lap("pos3");

    r.orthant = check_positive_on_orthant(hp, cfg);
    lap("orthant");

    r.powers = find_positivity_threshold(p, cfg.k_max, cfg.power_budget);
    lap("powers");

    bool any_refuted = refuted(r.pos1) || refuted(r.pos2) || refuted(r.pos3) || refuted(r.orthant);
    if (any_refuted) {
        r.analysis.ran = false;
        r.analysis.skip_reason =
            "a positivity check was refuted; the convexity statements assume all of them";
    } else {
        r.analysis.ran = true;
        SamplerConfig acfg = cfg;
        acfg.sample_count = std::min(cfg.sample_count, 2000ll);
        for (int si = 0; si < r.cone_count; ++si) {
            LaurentPolynomial chart = hp.chart_polynomial(si);
            SamplerConfig ccfg = acfg;
            ccfg.seed = per_cone_seed(cfg.seed, static_cast<std::size_t>(si));
            r.analysis.chart_positive_definite.push_back(
                check_positive_definite_on_samples(chart, ccfg));
            r.analysis.chart_properties.push_back(check_monotone_logconvex(chart, ccfg));
            r.analysis.hessian_consistency =
                std::max(r.analysis.hessian_consistency,
                         hessian_consistency_sample(chart, ccfg.seed, 5));
        }
        r.analysis.pairwise_bound = check_pairwise_cauchy_schwarz(hp, acfg);
    }
    lap("analysis");

    if (r.functional_equation_max_residual > kFunctionalEquationTol) {
        r.flags.push_back("conflict: functional equation residual above tolerance");
        r.conflict = true;
    }
    if (r.powers.found_at && any_refuted) {
        r.flags.push_back(
            "conflict: power threshold found although a positivity condition was refuted");
        r.conflict = true;
    }
    if (r.fully_positive.fully_positive && any_refuted) {
        r.flags.push_back(
            "conflict: coefficients are fully positive but a positivity check was refuted");
        r.conflict = true;
    }
    for (std::size_t k = 1; k < r.powers.bitmap.size(); ++k) {
        if (r.powers.bitmap[k - 1] && !r.powers.bitmap[k]) {
            r.flags.push_back("power positivity bitmap is not monotone in the scanned range");
            break;
        }
    }
    if (r.powers.budget_exceeded)
        r.flags.push_back("power scan stopped early at k=" + std::to_string(r.powers.k_reached) +
                          ": multiplication budget exhausted");
    if (!r.powers.found_at && !any_refuted && !r.powers.budget_exceeded)
        r.flags.push_back(
            "no power threshold up to k_max while no condition was refuted; the threshold may "
            "exceed the scanned range");

    return r;
}

nlohmann::json report_to_json(const PositivityReport& r) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["tool"] = {{"name", "evpos"}, {"version", "0.1.0"}};

    nlohmann::json cfg;
    cfg["samples"] = r.config.sample_count;
    cfg["restarts"] = r.config.restart_count;
    cfg["eps"] = r.config.eps;
    cfg["compactify"] = r.config.compactify;
    cfg["seed"] = r.config.seed;
    cfg["chart_only"] = r.config.chart_only;
    cfg["k_max"] = r.config.k_max;
    cfg["power_budget"] = r.config.power_budget;
    j["input"] = {{"expression", r.input}, {"variables", r.variables}, {"config", cfg}};

    nlohmann::json facets = nlohmann::json::array();
    for (const auto& f : r.facets)
        facets.push_back({{"normal", f.normal}, {"offset", f.offset}});
    nlohmann::json vertices = nlohmann::json::array();
    for (const auto& v : r.vertices) vertices.push_back(v);
    j["polytope"] = {{"dimension", r.dimension},
                     {"facets", facets},
                     {"vertices", vertices},
                     {"lattice_point_count", r.fully_positive.lattice_point_count}};
    j["fan"] = {{"ray_count", r.ray_count}, {"cone_count", r.cone_count}};

    nlohmann::json fp;
    fp["value"] = r.fully_positive.fully_positive;
    fp["first_failing"] = r.fully_positive.first_failing
                              ? nlohmann::json(*r.fully_positive.first_failing)
                              : nlohmann::json();
    fp["failing_coefficient"] = r.fully_positive.first_failing
                                    ? nlohmann::json(rational_to_string(
                                          r.fully_positive.failing_coefficient))
                                    : nlohmann::json();
    j["fully_positive"] = fp;

    j["functional_equation"] = {{"pairs", r.functional_equation_pairs},
                                {"max_residual", r.functional_equation_max_residual}};

    j["pos1"] = verdict_to_json(r.pos1);
    nlohmann::json vv = nlohmann::json::array();
    for (const auto& q : r.vertex_vals) vv.push_back(rational_to_string(q));
    j["vertex_values"] = vv;
    j["pos2"] = verdict_to_json(r.pos2);
    j["pos3"] = verdict_to_json(r.pos3);
    j["orthant"] = verdict_to_json(r.orthant);

    nlohmann::json powers;
    powers["k_max"] = r.powers.k_max;
    powers["k_reached"] = r.powers.k_reached;
    powers["found_at"] = r.powers.found_at ? nlohmann::json(*r.powers.found_at) : nlohmann::json();
    std::vector<bool> bitmap;
    for (char b : r.powers.bitmap) bitmap.push_back(b != 0);
    powers["bitmap"] = bitmap;
    powers["budget_exceeded"] = r.powers.budget_exceeded;
    j["powers"] = powers;

    nlohmann::json analysis;
    analysis["ran"] = r.analysis.ran;
    if (!r.analysis.skip_reason.empty()) analysis["skip_reason"] = r.analysis.skip_reason;
    if (r.analysis.ran) {
        nlohmann::json pd = nlohmann::json::array();
        for (const auto& v : r.analysis.chart_positive_definite) pd.push_back(verdict_to_json(v));
        analysis["chart_positive_definite"] = pd;
        nlohmann::json props = nlohmann::json::array();
        for (const auto& v : r.analysis.chart_properties) props.push_back(verdict_to_json(v));
        analysis["chart_properties"] = props;
        analysis["pairwise_bound"] = verdict_to_json(r.analysis.pairwise_bound);
        analysis["hessian_consistency"] = r.analysis.hessian_consistency;
    }
    j["analysis"] = analysis;

    j["flags"] = r.flags;
    j["conflict"] = r.conflict;

    if (!r.timings.empty()) {
        nlohmann::json t;
        for (const auto& [name, seconds] : r.timings) t[name] = seconds;
        j["timings"] = t;
    }
    return j;
}

}  // namespace evpos
