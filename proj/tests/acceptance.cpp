// Acceptance suite: each criterion prints one PASS/FAIL line; the process
// exits with the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "evpos/analysis.hpp"
#include "evpos/family.hpp"
#include "evpos/markov.hpp"
#include "evpos/parser.hpp"
#include "evpos/report.hpp"

using namespace evpos;

namespace {

struct Checker {
    bool ok = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& what) {
        if (condition) return;
        if (!ok) detail << "; ";
        ok = false;
        detail << what;
    }
};

// Random Laurent polynomial with small support; the caller filters by the
// geometry it needs.
LaurentPolynomial random_poly(std::mt19937_64& gen, int max_support) {
    std::uniform_int_distribution<int> nd(1, 2), coord(-3, 3), coeff(-5, 5);
    int n = nd(gen);
    std::uniform_int_distribution<int> cnt(2, max_support);
    LaurentPolynomial p(n);
    int points = cnt(gen);
    for (int i = 0; i < points; ++i) {
        ExponentVector m(static_cast<std::size_t>(n));
        for (auto& e : m) e = coord(gen);
        int c = coeff(gen);
        if (c == 0) c = 1;
        p.add_term(m, c);
    }
    return p;
}

bool smooth_full_dimensional(const LaurentPolynomial& p) {
    if (p.is_zero()) return false;
    try {
        build_normal_fan(newton_polytope(p));
        return true;
    } catch (const DegenerateInputError&) {
        return false;
    } catch (const NonSmoothError&) {
        return false;
    }
}

LaurentPolynomial random_smooth_poly(std::mt19937_64& gen, int max_support) {
    for (;;) {
        auto p = random_poly(gen, max_support);
        if (smooth_full_dimensional(p)) return p;
    }
}

// All lattice points of a random smooth hull, each with a positive integer
// coefficient.
LaurentPolynomial random_fully_positive_poly(std::mt19937_64& gen, bool need_smooth) {
    std::uniform_int_distribution<int> coeff(1, 9);
    for (;;) {
        auto shape = random_poly(gen, 6);
        if (shape.is_zero()) continue;
        auto P = newton_polytope(shape);
        if (!P.full_dimensional()) continue;
        if (need_smooth && P.smoothness_obstruction().has_value()) continue;
        LaurentPolynomial f(shape.nvars());
        for (const auto& m : P.lattice_points()) f.add_term(m, coeff(gen));
        return f;
    }
}

std::string run_command(const std::string& cmd, int& exit_code) {
    std::string out;
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    if (!pipe) {
        exit_code = -1;
        return out;
    }
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int rc = pclose(pipe);
    exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return out;
}

void criterion_family_at_seven(Checker& c) {
    auto start = std::chrono::steady_clock::now();
    auto p = make_family_product(2, 7, 7);

    auto P = newton_polytope(p);
    c.require(P.facets() == std::vector<Facet>{{{-1, 0}, 4}, {{0, -1}, 4}, {{0, 1}, 0}, {{1, 0}, 0}},
              "Newton polytope is not the square [0,4]^2");

    c.require(p.coefficient({2, 0}) == -1, "coefficient at x1^2 is not -1");

    SamplerConfig cfg;
    cfg.seed = 42;
    auto r = analyze(p, {"x1", "x2"}, cfg);

    c.require(!r.fully_positive.fully_positive, "family reported as fully positive");
    c.require(r.fully_positive.first_failing.has_value() &&
                  r.fully_positive.failing_coefficient == -1,
              "failing coefficient is not -1");

    c.require(r.pos1.status == VerdictStatus::CertifiedTrue, "vertex positivity not certified");
    c.require(r.vertex_vals == std::vector<Rational>{1, 1, 1, 1}, "vertex values are not all 1");

    c.require(r.pos2.status != VerdictStatus::CounterexampleFound,
              "boundary derivative check falsified");
    c.require(r.pos3.status != VerdictStatus::CounterexampleFound,
              "modulus dominance check falsified");

    c.require(r.powers.found_at.has_value(), "no positivity threshold found");
    if (r.powers.found_at) c.require(*r.powers.found_at <= 20, "threshold exceeds 20");

    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.require(sec <= 300.0, "pipeline took longer than five minutes");
}

void criterion_family_at_eight(Checker& c) {
    auto start = std::chrono::steady_clock::now();
    auto p = make_family_product(2, 8, 8);

    auto r = find_positivity_threshold(p, 8, 2000000000LL);
    c.require(!r.found_at.has_value(), "a threshold was reported for the limiting case");
    c.require(r.k_reached == 8, "the scan did not reach k = 8");
    c.require(!r.budget_exceeded, "the scan ran out of budget");

    auto q = LaurentPolynomial::constant(2, 1);
    for (int k = 1; k <= 8; ++k) {
        q = q * p;
        bool has_negative = false;
        for (const auto& [m, cc] : q.terms())
            if (cc < 0) has_negative = true;
        c.require(has_negative,
                  "power " + std::to_string(k) + " has no strictly negative coefficient");
        c.require(!r.bitmap[static_cast<std::size_t>(k - 1)],
                  "power " + std::to_string(k) + " was marked fully positive");
    }

    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.require(sec <= 300.0, "limiting case took longer than five minutes");
}

void criterion_vertex_oracle(Checker& c) {
    std::mt19937_64 gen(12345);
    int agreements = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto p = random_smooth_poly(gen, 8);
        auto P = newton_polytope(p);
        auto hp = homogenize(p);

        bool oracle = true;
        for (const auto& v : P.vertices())
            if (p.coefficient(v) <= 0) oracle = false;

        auto verdict = check_vertex_positivity(hp);
        bool agree = oracle == (verdict.status == VerdictStatus::CertifiedTrue) &&
                     !oracle == (verdict.status == VerdictStatus::CounterexampleFound);
        if (agree && !oracle) {
            const auto& w = verdict.witness;
            agree = w.has_value() && p.coefficient(w->lattice_point) <= 0;
        }
        if (agree) ++agreements;
    }
    c.require(agreements == 100,
              "only " + std::to_string(agreements) + "/100 oracle agreements");
}

void criterion_no_false_refutations(Checker& c) {
    std::mt19937_64 gen(777);
    SamplerConfig cfg;
    cfg.sample_count = 5000;
    cfg.restart_count = 8;
    cfg.seed = 99;
    for (int trial = 0; trial < 50; ++trial) {
        auto f = random_fully_positive_poly(gen, true);
        auto hp = homogenize(f);
        auto pos2 = check_boundary_derivative_positivity(hp, cfg);
        auto pos3 = check_modulus_dominance(hp, cfg);
        auto orth = check_positive_on_orthant(hp, cfg);
        c.require(pos2.status != VerdictStatus::CounterexampleFound,
                  "pos2 falsified a fully positive polynomial (trial " + std::to_string(trial) + ")");
        c.require(pos3.status != VerdictStatus::CounterexampleFound,
                  "pos3 falsified a fully positive polynomial (trial " + std::to_string(trial) + ")");
        c.require(orth.status != VerdictStatus::CounterexampleFound,
                  "orthant check falsified a fully positive polynomial (trial " +
                      std::to_string(trial) + ")");
        if (!c.ok) return;
    }
}

void criterion_functional_equation(Checker& c) {
    std::mt19937_64 gen(555);
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(-3.141592653589793, 3.141592653589793);
    std::uniform_real_distribution<double> logmod(std::log(0.5), std::log(2.0)), arg(0.0, 6.283185307179586);

    std::vector<LaurentPolynomial> polys{
        make_family_product(2, 7, 7),
        parse_polynomial("1+x", {"x"}),
        parse_polynomial("1+x+x^2", {"x"}),
        parse_polynomial("(1+x1)*(2+x2)", {"x1", "x2"}),
        parse_polynomial("1+x1+x2", {"x1", "x2"}),
    };
    double worst = 0.0;
    for (const auto& p : polys) {
        auto hp = homogenize(p);
        auto rel = relation_lattice(hp.fan());
        for (int it = 0; it < 1000; ++it) {
            std::vector<Complex> params(rel.basis.size());
            for (auto& pr : params) pr = Complex(re(gen), im(gen));
            auto g = group_element(rel, params);
            std::vector<Complex> z(static_cast<std::size_t>(hp.ray_count()));
            for (auto& zi : z) zi = std::polar(std::exp(logmod(gen)), arg(gen));
            worst = std::max(worst, functional_equation_residual(hp, g, z));
        }
    }
    c.require(worst <= 1e-9,
              "functional equation residual " + std::to_string(worst) + " exceeds 1e-9");
}

void criterion_hessian_consistency(Checker& c) {
    std::mt19937_64 gen(2718);
    std::uniform_real_distribution<double> td(-1.0, 1.0);
    double worst_pair = 0.0, worst_fd = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        auto f = random_fully_positive_poly(gen, false);
        std::vector<double> t(static_cast<std::size_t>(f.nvars()));
        for (auto& ti : t) ti = td(gen);
        std::vector<double> s(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) s[i] = std::exp(t[i]);

        auto A = log_hessian(f, s);
        auto B = log_hessian_exp_coords(f, t);
        auto F = log_hessian_finite_difference(f, t);
        double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
        worst_pair = std::max(worst_pair, (A - B).cwiseAbs().maxCoeff() / scale);
        worst_fd = std::max(worst_fd, (A - F).cwiseAbs().maxCoeff() / scale);
    }
    c.require(worst_pair <= 1e-10,
              "the two symbolic routes disagree by " + std::to_string(worst_pair));
    c.require(worst_fd <= 1e-6, "finite differences disagree by " + std::to_string(worst_fd));
}

void criterion_modulus_witness(Checker& c) {
    auto target = parse_polynomial("1+x^2", {"x"});
    auto hp = homogenize(target);
    SamplerConfig cfg;
    cfg.seed = 42;
    auto v = check_modulus_dominance(hp, cfg);
    c.require(v.status == VerdictStatus::CounterexampleFound, "no counterexample for 1+x^2");
    if (v.status != VerdictStatus::CounterexampleFound) return;

    const auto& w = *v.witness;
    c.require(std::abs(w.margin) <= 1e-9, "witness ratio is not within 1e-9 of 1");
    c.require(w.equality_type, "witness not flagged as an equality case");
    c.require(w.orbit_residual >= 1e-3, "witness sits inside the excluded orbit margin");

    auto norm = normalize_to_chart(hp.fan(), w.cone, w.point);
    c.require(norm.chart_point.size() == 1 && std::abs(norm.chart_point[0] - Complex(-1, 0)) < 1e-6,
              "witness is not equivalent to z = (1, -1)");
}

void criterion_smoothness_gate(Checker& c) {
    c.require(smooth_full_dimensional(make_family_product(2, 7, 7)), "the square was rejected");
    c.require(smooth_full_dimensional(parse_polynomial("1+x1+x2", {"x1", "x2"})),
              "the standard simplex was rejected");

    auto tri = parse_polynomial("1 + x1^2*x2 + x1*x2^2", {"x1", "x2"});
    bool rejected = false;
    try {
        build_normal_fan(newton_polytope(tri));
    } catch (const NonSmoothError& e) {
        rejected = true;
        c.require(e.obstruction.vertex == ExponentVector{0, 0},
                  "obstruction vertex is not (0,0)");
        c.require(abs(e.obstruction.edge_determinant) == 3, "edge determinant is not 3");
    }
    c.require(rejected, "the singular triangle was accepted");
}

void criterion_markov(Checker& c) {
    auto p = parse_polynomial("1+x+x^2", {"x"});
    auto ptilde = homogenize(p).as_polynomial();
    auto q = ptilde * ptilde;
    PolyMatrix b(1, q.nvars());
    b.set_entry(0, 0, q);
    auto v = verify_beta_equals(b, q, 100, 1e-10, 7);
    c.require(v.status == VerdictStatus::CertifiedTrue, "1x1 identity not certified");
    c.require(v.stats.samples == 100, "fewer than 100 sample points");
    c.require(v.stats.best_margin <= 1e-10, "sampled identity error above 1e-10");

    PolyMatrix cyc(2, 1);
    cyc.set_entry(0, 1, parse_polynomial("x", {"x"}));
    cyc.set_entry(1, 0, parse_polynomial("1", {"x"}));
    c.require(is_irreducible(cyc), "two cycle not irreducible");
    c.require(!is_aperiodic(cyc), "two cycle reported aperiodic");
    auto sr = spectral_radius_at(cyc, {4.0});
    c.require(sr.converged && std::abs(sr.value - 2.0) <= 1e-10,
              "spectral radius at x = 4 is not 2");
}

void criterion_determinism(Checker& c) {
    std::string cmd = std::string(EVPOS_CLI_PATH) +
                      " analyze --family plambda --ell 2 --lambda1 7 --lambda2 7"
                      " --kmax 6 --samples 2000 --restarts 4 --seed 123";
    int rc1 = -1, rc2 = -1;
    std::string out1 = run_command(cmd, rc1);
    std::string out2 = run_command(cmd, rc2);
    c.require(rc1 == 0 && rc2 == 0, "analyze exited nonzero");
    c.require(!out1.empty(), "analyze produced no output");
    c.require(out1 == out2, "two identically seeded runs differ");
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        std::function<void(Checker&)> fn;
    };
    std::vector<Entry> criteria{
        {"family ell=2 lambda=7 full pipeline", criterion_family_at_seven},
        {"family ell=2 lambda=8 limiting case", criterion_family_at_eight},
        {"vertex positivity oracle on 100 random inputs", criterion_vertex_oracle},
        {"no false refutations on 50 fully positive inputs", criterion_no_false_refutations},
        {"functional equation residual over 1000 pairs per input", criterion_functional_equation},
        {"log Hessian route consistency on 200 inputs", criterion_hessian_consistency},
        {"modulus dominance witness for 1+x^2", criterion_modulus_witness},
        {"smoothness gate", criterion_smoothness_gate},
        {"markov spectral radius identities", criterion_markov},
        {"byte identical reports for a fixed seed", criterion_determinism},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Checker c;
        auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].fn(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("unexpected exception: ") + e.what());
        }
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("ACCEPTANCE %02zu %s (%s, %.1fs)%s%s\n", i + 1, c.ok ? "PASS" : "FAIL",
                    criteria[i].name, sec, c.ok ? "" : ": ", c.ok ? "" : c.detail.str().c_str());
        if (!c.ok) ++failed;
    }
    if (failed) std::printf("ACCEPTANCE SUMMARY %d criteria failed\n", failed);
    else std::printf("ACCEPTANCE SUMMARY all criteria passed\n");
    return failed;
}
