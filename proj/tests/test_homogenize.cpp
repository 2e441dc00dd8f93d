#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "evpos/family.hpp"
#include "evpos/homogenize.hpp"
#include "evpos/parser.hpp"

using namespace evpos;

namespace {

HomogenizedPolynomial hp_of(const std::string& text, const std::vector<std::string>& vars) {
    return homogenize(parse_polynomial(text, vars));
}

std::vector<Complex> random_group(const RelationLattice& R, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(-3.2, 3.2);
    std::vector<Complex> params;
    for (std::size_t i = 0; i < R.basis.size(); ++i) params.emplace_back(re(gen), im(gen));
    return group_element(R, params);
}

std::vector<Complex> random_point(int count, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> mod(0.5, 2.0), arg(0.0, 6.28);
    std::vector<Complex> z;
    for (int i = 0; i < count; ++i) z.push_back(std::polar(mod(gen), arg(gen)));
    return z;
}

}  // namespace

TEST_CASE("terms of a segment homogenization") {
    auto hp = hp_of("2 + 3*x", {"x"});
    REQUIRE(hp.terms().size() == 2);
    CHECK(hp.terms()[0].point == ExponentVector{0});
    CHECK(hp.terms()[0].coeff == 2);
    CHECK(hp.terms()[0].exponents == ExponentVector{1, 0});
    CHECK(hp.terms()[1].point == ExponentVector{1});
    CHECK(hp.terms()[1].coeff == 3);
    CHECK(hp.terms()[1].exponents == ExponentVector{0, 1});

    LaurentPolynomial expect(2);
    expect.add_term({1, 0}, 2);
    expect.add_term({0, 1}, 3);
    CHECK(hp.as_polynomial() == expect);
}

TEST_CASE("exponent differences factor through the ray pairing") {
    auto p = make_family_product(2, 7, 7);
    auto hp = homogenize(p);
    const auto& terms = hp.terms();
    for (std::size_t a = 0; a < terms.size(); ++a)
        for (std::size_t b = a + 1; b < terms.size(); ++b)
            for (int r = 0; r < hp.ray_count(); ++r) {
                Int pair = 0;
                const auto& u = hp.fan().ray(r).normal;
                for (std::size_t i = 0; i < u.size(); ++i)
                    pair += (terms[a].point[i] - terms[b].point[i]) * u[i];
                CHECK(terms[a].exponents[static_cast<std::size_t>(r)] -
                          terms[b].exponents[static_cast<std::size_t>(r)] ==
                      pair);
            }
}

TEST_CASE("all homogenized exponents are nonnegative and vanish on the cone of their vertex") {
    auto hp = hp_of("1 + x1 + x2 + x1*x2 + x1^2", {"x1", "x2"});
    for (const auto& t : hp.terms())
        for (Int e : t.exponents) CHECK(e >= 0);
    for (int c = 0; c < static_cast<int>(hp.fan().cones().size()); ++c) {
        const auto& cone = hp.fan().cone(c);
        for (const auto& t : hp.terms()) {
            if (t.point != cone.vertex) continue;
            for (int r : cone.rays) CHECK(t.exponents[static_cast<std::size_t>(r)] == 0);
        }
    }
}

TEST_CASE("distinguished point values read vertex coefficients") {
    auto p = make_family_product(2, 7, 7);
    auto hp = homogenize(p);
    for (int c = 0; c < 4; ++c) {
        auto e = distinguished_point_as<Rational>(hp.fan(), c);
        CHECK(hp.evaluate<Rational>(e) == p.coefficient(hp.fan().cone(c).vertex));
    }

    auto q = parse_polynomial("5 - 2*x + 3*x^2", {"x"});
    auto hq = homogenize(q);
    for (int c = 0; c < 2; ++c) {
        auto e = distinguished_point_as<Rational>(hq.fan(), c);
        CHECK(hq.evaluate<Rational>(e) == q.coefficient(hq.fan().cone(c).vertex));
    }
}

TEST_CASE("homogenization validates its inputs") {
    auto p = parse_polynomial("1 + x", {"x"});
    auto wrongP = newton_polytope(parse_polynomial("1 + x^2", {"x"}));
    auto wrongFan = build_normal_fan(wrongP);
    CHECK_THROWS_AS(homogenize(p, wrongP, wrongFan), std::invalid_argument);
    CHECK_THROWS_AS(homogenize(LaurentPolynomial(1)), std::invalid_argument);
}

TEST_CASE("transformation law under the relation subgroup") {
    std::mt19937_64 gen(101);
    const char* inputs[] = {"(1+x1)*(1+x2)", "(1+x1)^2*(1+x2)", "(1+x1)*(2+x2)",
                            "1 + x1 + x2"};
    for (const char* text : inputs) {
        auto p = parse_polynomial(text, {"x1", "x2"});
        auto hp = homogenize(p);
        auto R = relation_lattice(hp.fan());
        for (int it = 0; it < 50; ++it) {
            auto g = random_group(R, gen);
            auto z = random_point(hp.ray_count(), gen);
            CHECK(functional_equation_residual(hp, g, z) < 1e-12);
        }
    }
}

TEST_CASE("offset character of a segment") {
    auto hp = hp_of("1 + x^2", {"x"});
    std::vector<Rational> g{Rational(3), Rational(5)};
    CHECK(offset_character(hp.fan(), g) == 9);
    CHECK_THROWS_AS(offset_character(hp.fan(), std::vector<Rational>{1}),
                    DimensionMismatchError);
}

TEST_CASE("polarized form is sesquilinear in the coordinates") {
    auto hp = hp_of("1 + x + x^2", {"x"});
    std::mt19937_64 gen(7);
    for (int it = 0; it < 200; ++it) {
        auto z = random_point(2, gen);
        auto w = random_point(2, gen);
        Complex fzz = hp.polarized(z, z);
        Complex fww = hp.polarized(w, w);
        Complex fzw = hp.polarized(z, w);
        CHECK(std::abs(fzz.imag()) < 1e-12 * std::abs(fzz));
        CHECK(fzz.real() > 0);
        CHECK(std::norm(fzw) <= fzz.real() * fww.real() * (1 + 1e-12));
    }
    auto z = random_point(2, gen);
    Complex diag = hp.polarized(z, z);
    std::vector<double> mods{std::abs(z[0]), std::abs(z[1])};
    double direct = hp.evaluate<double>({mods[0] * mods[0], mods[1] * mods[1]});
    CHECK(diag.real() == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("chart polynomial of the product family") {
    auto p = make_family_product(2, 7, 7);
    auto hp = homogenize(p);
    auto chart = hp.chart_polynomial(0);
    CHECK(chart.nvars() == 2);
    auto expect = make_family_product(2, 7, 7);
    bool match_direct = chart == expect;
    LaurentPolynomial swapped(2);
    for (const auto& [m, c] : expect.terms()) swapped.add_term({m[1], m[0]}, c);
    CHECK((match_direct || chart == swapped));
    CHECK(chart.coefficient({0, 0}) == 1);
    CHECK(chart.coefficient({2, 0}) == -1);
}

TEST_CASE("chart polynomial substitutes one off the cone") {
    auto hp = hp_of("2 + 3*x + 5*x^2", {"x"});
    auto chart0 = hp.chart_polynomial(0);
    CHECK(chart0.nvars() == 1);
    CHECK(chart0.coefficient({0}) == 2);
    CHECK(chart0.coefficient({1}) == 3);
    CHECK(chart0.coefficient({2}) == 5);
    auto chart1 = hp.chart_polynomial(1);
    CHECK(chart1.coefficient({0}) == 5);
    CHECK(chart1.coefficient({2}) == 2);
}

TEST_CASE("chart restriction pins dead coordinates to zero") {
    auto p = parse_polynomial("(1+x1)*(1+x2)", {"x1", "x2"});
    auto hp = homogenize(p);
    auto full = hp.chart_restriction(0, {0, 1}, 2);
    CHECK(full == hp.chart_polynomial(0));

    auto line = hp.chart_restriction(0, {0, 1}, 1);
    CHECK(line == hp.chart_polynomial(0).set_variable_to_zero(1));
    auto other = hp.chart_restriction(0, {1, 0}, 1);
    CHECK(other == hp.chart_polynomial(0).set_variable_to_zero(0));

    CHECK_THROWS_AS(hp.chart_restriction(0, {0, 0}, 2), std::invalid_argument);
    CHECK_THROWS_AS(hp.chart_restriction(0, {0, 1}, 3), std::invalid_argument);
}

TEST_CASE("ray derivative matches the symbolic derivative of the full polynomial") {
    auto hp = hp_of("1 + 2*x + 3*x^2", {"x"});
    for (int r = 0; r < hp.ray_count(); ++r)
        CHECK(hp.ray_derivative(r) == hp.as_polynomial().derivative(r));
}

TEST_CASE("original polynomial roundtrip") {
    auto p = make_family_product(2, 7, 7);
    CHECK(homogenize(p).original_polynomial() == p);
    auto q = parse_polynomial("x^-2 + 4 - x^3", {"x"});
    CHECK(homogenize(q).original_polynomial() == q);
}

TEST_CASE("homogenization turns products into products when the rays align") {
    auto a = parse_polynomial("1 + x", {"x"});
    auto b = parse_polynomial("2 + 3*x", {"x"});
    auto ha = homogenize(a).as_polynomial();
    auto hb = homogenize(b).as_polynomial();
    auto hab = homogenize(a * b).as_polynomial();
    CHECK(hab == ha * hb);
}

TEST_CASE("evaluation dimension checks") {
    auto hp = hp_of("1 + x", {"x"});
    CHECK_THROWS_AS(hp.evaluate<double>({1.0}), DimensionMismatchError);
    std::vector<Complex> one{Complex(1, 0)};
    CHECK_THROWS_AS(hp.polarized(one, one), DimensionMismatchError);
}
