#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "evpos/fan.hpp"
#include "evpos/parser.hpp"

using namespace evpos;

namespace {

NormalFan fan_of(const std::string& text, const std::vector<std::string>& vars) {
    return build_normal_fan(newton_polytope(parse_polynomial(text, vars)));
}

IntVec ray_combination(const NormalFan& fan, const IntVec& b) {
    IntVec s(static_cast<std::size_t>(fan.dimension()), 0);
    for (int r = 0; r < fan.ray_count(); ++r)
        for (int i = 0; i < fan.dimension(); ++i)
            s[static_cast<std::size_t>(i)] +=
                b[static_cast<std::size_t>(r)] * fan.ray(r).normal[static_cast<std::size_t>(i)];
    return s;
}

}  // namespace

TEST_CASE("fan of a segment") {
    auto fan = fan_of("1 + x^2", {"x"});
    CHECK(fan.dimension() == 1);
    REQUIRE(fan.ray_count() == 2);
    CHECK(fan.ray(0) == Facet{{-1}, 2});
    CHECK(fan.ray(1) == Facet{{1}, 0});

    REQUIRE(fan.cones().size() == 2);
    CHECK(fan.cone(0).vertex == ExponentVector{0});
    CHECK(fan.cone(0).rays == std::vector<int>{1});
    CHECK(fan.cone(1).vertex == ExponentVector{2});
    CHECK(fan.cone(1).rays == std::vector<int>{0});
    CHECK(fan.ray_in_cone(0, 1));
    CHECK_FALSE(fan.ray_in_cone(0, 0));
}

TEST_CASE("fan of the square") {
    auto fan = fan_of("(1+x1)^4*(1+x2)^4", {"x1", "x2"});
    REQUIRE(fan.ray_count() == 4);
    CHECK(fan.ray(0).normal == IntVec{-1, 0});
    CHECK(fan.ray(1).normal == IntVec{0, -1});
    CHECK(fan.ray(2).normal == IntVec{0, 1});
    CHECK(fan.ray(3).normal == IntVec{1, 0});

    REQUIRE(fan.cones().size() == 4);
    CHECK(fan.cone(0).vertex == ExponentVector{0, 0});
    CHECK(fan.cone(0).rays == std::vector<int>{2, 3});
    CHECK(fan.cone(1).vertex == ExponentVector{0, 4});
    CHECK(fan.cone(1).rays == std::vector<int>{1, 3});
    CHECK(fan.cone(2).vertex == ExponentVector{4, 0});
    CHECK(fan.cone(2).rays == std::vector<int>{0, 2});
    CHECK(fan.cone(3).vertex == ExponentVector{4, 4});
    CHECK(fan.cone(3).rays == std::vector<int>{0, 1});
}

TEST_CASE("geometry gates") {
    auto L = newton_polytope(parse_polynomial("x1 + x2", {"x1", "x2"}));
    CHECK_THROWS_AS(build_normal_fan(L), DegenerateInputError);

    auto T = newton_polytope(parse_polynomial("1 + x1^2*x2 + x1*x2^2", {"x1", "x2"}));
    CHECK_THROWS_AS(build_normal_fan(T), NonSmoothError);
}

TEST_CASE("distinguished points") {
    auto fan = fan_of("(1+x1)^4*(1+x2)^4", {"x1", "x2"});
    CHECK(distinguished_point(fan, 0) == IntVec{1, 1, 0, 0});
    CHECK(distinguished_point(fan, 1) == IntVec{1, 0, 1, 0});
    CHECK(distinguished_point(fan, 2) == IntVec{0, 1, 0, 1});
    CHECK(distinguished_point(fan, 3) == IntVec{0, 0, 1, 1});
    auto e = distinguished_point_as<Rational>(fan, 0);
    CHECK(e == std::vector<Rational>{1, 1, 0, 0});
}

TEST_CASE("irrelevant set membership") {
    auto fan = fan_of("(1+x1)*(1+x2)", {"x1", "x2"});
    CHECK_FALSE(in_irrelevant_set(fan, std::vector<double>{1, 1, 1, 1}));
    CHECK(in_irrelevant_set(fan, std::vector<double>{0, 1, 1, 0}));
    CHECK_FALSE(in_irrelevant_set(fan, std::vector<double>{0, 1, 1, 1}));
    CHECK_FALSE(in_irrelevant_set(fan, std::vector<double>{0, 0, 1, 1}));
    CHECK(in_irrelevant_set(fan, std::vector<double>{1, 0, 0, 1}));
    CHECK(in_irrelevant_set(fan, std::vector<Complex>{{1, 0}, {0, 0}, {0, 0}, {0, 1}}));
    CHECK_FALSE(in_irrelevant_set(fan, std::vector<Complex>{{0, 1}, {1, 0}, {1, 0}, {1, 0}}));
}

TEST_CASE("relation lattice rows kill the ray normals") {
    auto seg = fan_of("1 + x^2", {"x"});
    auto R = relation_lattice(seg);
    CHECK(R.ray_count == 2);
    REQUIRE(R.basis.size() == 1);
    CHECK(R.basis[0] == IntVec{1, 1});

    auto sq = fan_of("(1+x1)*(1+x2)", {"x1", "x2"});
    auto R2 = relation_lattice(sq);
    REQUIRE(R2.basis.size() == 2);
    for (const auto& b : R2.basis) {
        auto s = ray_combination(sq, b);
        CHECK(s == IntVec{0, 0});
    }
}

TEST_CASE("group elements from parameters") {
    auto fan = fan_of("1 + x^2", {"x"});
    auto R = relation_lattice(fan);

    auto g = positive_group_element(R, {0.7});
    REQUIRE(g.size() == 2);
    CHECK(g[0] == doctest::Approx(std::exp(0.7)).epsilon(1e-14));
    CHECK(g[1] == doctest::Approx(std::exp(0.7)).epsilon(1e-14));

    auto u = group_element(R, {Complex(0.0, std::numbers::pi)});
    REQUIRE(u.size() == 2);
    CHECK(std::abs(u[0] - Complex(-1.0, 0.0)) < 1e-14);
    CHECK(std::abs(u[1] - Complex(-1.0, 0.0)) < 1e-14);

    CHECK_THROWS_AS(positive_group_element(R, {0.1, 0.2}), DimensionMismatchError);
}

TEST_CASE("chart embedding") {
    auto fan = fan_of("(1+x1)*(1+x2)", {"x1", "x2"});
    auto z = chart_embedding<double>(fan, 0, {5.0, 7.0});
    const auto& rays = fan.cone(0).rays;
    REQUIRE(z.size() == 4);
    for (int r = 0; r < 4; ++r) {
        bool in_cone = r == rays[0] || r == rays[1];
        CHECK(z[static_cast<std::size_t>(r)] == (in_cone ? (r == rays[0] ? 5.0 : 7.0) : 1.0));
    }
    CHECK_THROWS_AS(chart_embedding<double>(fan, 0, {1.0}), DimensionMismatchError);
}

TEST_CASE("chart normalization undoes a group twist") {
    auto fan = fan_of("(1+x1)^2*(1+x2)", {"x1", "x2"});
    auto R = relation_lattice(fan);
    std::vector<Complex> s{Complex(0.4, 0.3), Complex(-1.2, 0.9)};
    auto z = chart_embedding<Complex>(fan, 2, s);
    auto g = group_element(R, {Complex(0.2, 1.1), Complex(-0.4, 2.5)});
    for (std::size_t r = 0; r < z.size(); ++r) z[r] *= g[r];

    auto norm = normalize_to_chart(fan, 2, z);
    REQUIRE(norm.chart_point.size() == 2);
    CHECK(std::abs(norm.chart_point[0] - s[0]) < 1e-12);
    CHECK(std::abs(norm.chart_point[1] - s[1]) < 1e-12);
    for (std::size_t r = 0; r < z.size(); ++r) {
        Complex back = norm.group_factor[r] * z[r];
        Complex expect = chart_embedding<Complex>(fan, 2, norm.chart_point)[r];
        CHECK(std::abs(back - expect) < 1e-12);
    }

    std::vector<Complex> bad(4, Complex(1, 0));
    for (int r = 0; r < 4; ++r)
        if (!fan.ray_in_cone(2, r)) {
            bad[static_cast<std::size_t>(r)] = Complex(0, 0);
            break;
        }
    CHECK_THROWS_AS(normalize_to_chart(fan, 2, bad), EvaluationDomainError);
}

TEST_CASE("orbit membership of twisted positive points") {
    auto fan = fan_of("(1+x1)*(1+x2)", {"x1", "x2"});
    auto R = relation_lattice(fan);

    std::vector<Complex> pos{Complex(0.3, 0), Complex(2.0, 0), Complex(1.5, 0), Complex(0.8, 0)};
    auto r0 = in_unitary_orbit_of_orthant(fan, pos);
    CHECK(r0.verdict == OrbitMembership::Yes);
    CHECK(r0.residual < 1e-9);

    auto u = group_element(R, {Complex(0.0, 1.3), Complex(0.0, -2.1)});
    auto twisted = pos;
    for (std::size_t r = 0; r < twisted.size(); ++r) twisted[r] *= u[r];
    auto r1 = in_unitary_orbit_of_orthant(fan, twisted);
    CHECK(r1.verdict == OrbitMembership::Yes);
    CHECK(r1.residual < 1e-8);
}

TEST_CASE("points off every orbit are rejected with a residual") {
    auto fan = fan_of("1 + x^2", {"x"});
    std::vector<Complex> z{Complex(1, 0), Complex(-1, 0)};
    auto r = in_unitary_orbit_of_orthant(fan, z);
    CHECK(r.verdict == OrbitMembership::No);
    CHECK(r.residual == doctest::Approx(std::numbers::pi).epsilon(1e-9));

    double res = r.residual;
    CHECK(in_unitary_orbit_of_orthant(fan, z, 2 * res).verdict == OrbitMembership::Yes);
    CHECK(in_unitary_orbit_of_orthant(fan, z, 0.9 * res).verdict == OrbitMembership::Borderline);
    CHECK(in_unitary_orbit_of_orthant(fan, z, res / 20).verdict == OrbitMembership::No);
}

TEST_CASE("zero coordinates have free phase") {
    auto fan = fan_of("(1+x1)*(1+x2)", {"x1", "x2"});
    std::vector<Complex> z{Complex(0, 0), Complex(1, 0), Complex(2, 0), Complex(3, 0)};
    auto r = in_unitary_orbit_of_orthant(fan, z);
    CHECK(r.verdict == OrbitMembership::Yes);
}
