#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "evpos/family.hpp"
#include "evpos/parser.hpp"
#include "evpos/positivity.hpp"

using namespace evpos;

namespace {

SamplerConfig quick_config() {
    SamplerConfig cfg;
    cfg.sample_count = 1500;
    cfg.restart_count = 4;
    cfg.seed = 42;
    return cfg;
}

HomogenizedPolynomial hp_of(const std::string& text, const std::vector<std::string>& vars) {
    return homogenize(parse_polynomial(text, vars));
}

}  // namespace

TEST_CASE("exact evaluation at dyadic points") {
    auto p = parse_polynomial("1 + x", {"x"});
    CHECK(evaluate_exact_at_dyadic(p, {0.5}) == Rational(3, 2));
    auto q = make_family_product(2, 7, 7);
    Rational direct = q.evaluate<Rational>({exact_from_double(0.25), exact_from_double(0.125)});
    CHECK(evaluate_exact_at_dyadic(q, {0.25, 0.125}) == direct);
}

TEST_CASE("fully positive coefficient scan") {
    auto ok = parse_polynomial("1 + x + x^2", {"x"});
    auto r = is_fully_positive(ok);
    CHECK(r.fully_positive);
    CHECK(r.lattice_point_count == 3);
    CHECK_FALSE(r.first_failing.has_value());

    auto gap = parse_polynomial("1 + x^2", {"x"});
    auto rg = is_fully_positive(gap);
    CHECK_FALSE(rg.fully_positive);
    REQUIRE(rg.first_failing.has_value());
    CHECK(*rg.first_failing == ExponentVector{1});
    CHECK(rg.failing_coefficient == 0);

    auto neg = parse_polynomial("1 - x", {"x"});
    auto rn = is_fully_positive(neg);
    CHECK_FALSE(rn.fully_positive);
    CHECK(*rn.first_failing == ExponentVector{1});
    CHECK(rn.failing_coefficient == -1);

    CHECK_THROWS_AS(is_fully_positive(LaurentPolynomial(1)), std::invalid_argument);
}

TEST_CASE("the two parameter family at 7 is not fully positive") {
    auto p = make_family_product(2, 7, 7);
    auto r = is_fully_positive(p);
    CHECK_FALSE(r.fully_positive);
    CHECK(r.lattice_point_count == 25);
    CHECK(p.coefficient({2, 0}) == -1);
    CHECK(p.coefficient({0, 2}) == -1);
    REQUIRE(r.first_failing.has_value());
    CHECK(p.coefficient(*r.first_failing) == r.failing_coefficient);
    CHECK(r.failing_coefficient < 0);
}

TEST_CASE("vertex values of the family are the corner coefficients") {
    auto hp = homogenize(make_family_product(2, 7, 7));
    auto vals = vertex_values(hp);
    REQUIRE(vals.size() == 4);
    for (const auto& v : vals) CHECK(v == 1);
}

TEST_CASE("vertex positivity verdicts") {
    auto good = check_vertex_positivity(homogenize(make_family_product(2, 7, 7)));
    CHECK(good.status == VerdictStatus::CertifiedTrue);
    CHECK_FALSE(good.certificate.empty());

    auto bad = check_vertex_positivity(hp_of("-1 + x", {"x"}));
    CHECK(bad.status == VerdictStatus::CounterexampleFound);
    REQUIRE(bad.witness.has_value());
    CHECK(bad.witness->kind == "vertex_value_nonpositive");
    CHECK(bad.witness->exact_value == "-1");
    CHECK(bad.witness->lattice_point == ExponentVector{0});
}

TEST_CASE("boundary derivative certificates for positive inputs") {
    auto v = check_boundary_derivative_positivity(hp_of("1 + x", {"x"}), quick_config());
    CHECK(v.status == VerdictStatus::CertifiedTrue);
    CHECK(v.stats.certified_parts == v.stats.total_parts);
    CHECK(v.stats.total_parts == 2);

    auto w = check_boundary_derivative_positivity(hp_of("2 + x1 + x2 + x1*x2", {"x1", "x2"}),
                                                  quick_config());
    CHECK(w.status == VerdictStatus::CertifiedTrue);
}

TEST_CASE("boundary derivative refutation is exact") {
    auto v = check_boundary_derivative_positivity(hp_of("1 - x", {"x"}), quick_config());
    CHECK(v.status == VerdictStatus::CounterexampleFound);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->kind == "boundary_derivative_nonpositive");
    CHECK(Rational(v.witness->exact_value) < 0);
    CHECK(v.witness->cone >= 0);
    CHECK(v.witness->ray >= 0);
}

TEST_CASE("orthant positivity") {
    auto good = check_positive_on_orthant(hp_of("1 + x + x^2", {"x"}), quick_config());
    CHECK(good.status == VerdictStatus::CertifiedTrue);

    auto bad = check_positive_on_orthant(hp_of("1 - x", {"x"}), quick_config());
    CHECK(bad.status == VerdictStatus::CounterexampleFound);
    REQUIRE(bad.witness.has_value());
    CHECK(Rational(bad.witness->exact_value) <= 0);

    auto family = check_positive_on_orthant(homogenize(make_family_product(2, 7, 7)),
                                            quick_config());
    CHECK(family.status != VerdictStatus::CounterexampleFound);
}

TEST_CASE("modulus dominance certificate needs positive coefficients and full span") {
    auto v = check_modulus_dominance(hp_of("1 + x + x^2", {"x"}), quick_config());
    CHECK(v.status == VerdictStatus::CertifiedTrue);
    CHECK(v.certificate.find("lattice") != std::string::npos);
}

TEST_CASE("modulus dominance refutation for a sparse support") {
    auto v = check_modulus_dominance(hp_of("1 + x^2", {"x"}), quick_config());
    CHECK(v.status == VerdictStatus::CounterexampleFound);
    REQUIRE(v.witness.has_value());
    const auto& w = *v.witness;
    CHECK(w.kind == "modulus_dominance_violation");
    CHECK(std::abs(w.margin) <= 1e-9);
    CHECK(w.equality_type);
    CHECK(w.orbit_residual >= 1e-3);
    REQUIRE(w.point.size() == 2);
    CHECK(std::abs(std::abs(w.point[0]) - 1.0) < 1e-6);
    CHECK(std::abs(std::abs(w.point[1]) - 1.0) < 1e-6);
}

TEST_CASE("modulus dominance on the family is never refuted") {
    auto hp = homogenize(make_family_product(2, 7, 7));
    auto v = check_modulus_dominance(hp, quick_config());
    CHECK(v.status == VerdictStatus::Inconclusive);
    CHECK(v.stats.skipped_excluded > 0);
}

TEST_CASE("power positivity thresholds") {
    auto one_plus_x = parse_polynomial("1 + x", {"x"});
    auto r = find_positivity_threshold(one_plus_x, 5, 1000000);
    REQUIRE(r.found_at.has_value());
    CHECK(*r.found_at == 1);
    CHECK(r.k_reached == 5);
    CHECK(r.bitmap == std::vector<char>{1, 1, 1, 1, 1});

    auto q7 = make_family_factor(2, 7);
    auto r7 = find_positivity_threshold(q7, 6, 100000000);
    REQUIRE(r7.found_at.has_value());
    CHECK(*r7.found_at == 4);
    CHECK(r7.bitmap == std::vector<char>{0, 0, 0, 1, 1, 1});

    auto q8 = make_family_factor(2, 8);
    auto r8 = find_positivity_threshold(q8, 8, 100000000);
    CHECK_FALSE(r8.found_at.has_value());
    CHECK(r8.k_reached == 8);
    for (char b : r8.bitmap) CHECK(b == 0);
    CHECK_FALSE(r8.budget_exceeded);
}

TEST_CASE("power scan respects its budget") {
    auto p = make_family_product(2, 7, 7);
    auto r = find_positivity_threshold(p, 20, 50);
    CHECK(r.budget_exceeded);
    CHECK(r.k_reached < 20);
    CHECK_FALSE(r.found_at.has_value());
    CHECK(static_cast<int>(r.bitmap.size()) == r.k_reached);
}

TEST_CASE("power scan agrees with direct expansion") {
    auto p = make_family_product(2, 7, 7);
    auto r = find_positivity_threshold(p, 5, 100000000);
    for (int k = 1; k <= 5; ++k) {
        auto direct = is_fully_positive(p.pow(k));
        CHECK(direct.fully_positive == (r.bitmap[static_cast<std::size_t>(k - 1)] != 0));
    }
}
