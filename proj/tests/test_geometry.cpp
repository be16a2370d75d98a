#include "doctest.h"

#include <random>

#include "phaseq/geometry.hpp"

using namespace phaseq;

TEST_CASE("triangle area: unit right triangle and collinearity") {
    CHECK(signed_area_triangle({0, 0}, {1, 0}, {0, 1}) == doctest::Approx(0.5));
    CHECK(signed_area_triangle({0, 0}, {1, 0}, {2, 0}) == doctest::Approx(0.0));
}

TEST_CASE("triangle area: antisymmetry, translation and SL(2) invariance") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    for (int it = 0; it < 200; ++it) {
        const PhasePoint u{U(rng), U(rng)}, v{U(rng), U(rng)}, z{U(rng), U(rng)};
        const double a = signed_area_triangle(u, v, z);
        CHECK(signed_area_triangle(v, u, z) == doctest::Approx(-a).epsilon(1e-12));
        CHECK(signed_area_triangle(u, z, v) == doctest::Approx(-a).epsilon(1e-12));
        CHECK(signed_area_triangle(z, u, v) == doctest::Approx(a).epsilon(1e-12));

        const PhasePoint w{U(rng), U(rng)};
        CHECK(signed_area_triangle(u + w, v + w, z + w) == doctest::Approx(a).epsilon(1e-12));

        // random SL(2): a d - b c = 1
        const double ma = U(rng), mb = U(rng), mc = U(rng);
        const double eps = 0.7 + std::abs(U(rng));
        const double md = (1.0 + mb * mc) / (std::abs(ma) < 0.1 ? eps : ma);
        const double aa = (std::abs(ma) < 0.1 ? eps : ma);
        auto ap = [&](PhasePoint s) { return PhasePoint{aa * s.q + mb * s.p, mc * s.q + md * s.p}; };
        CHECK(signed_area_triangle(ap(u), ap(v), ap(z)) == doctest::Approx(a).epsilon(1e-10));
    }
}

TEST_CASE("fan identity around an arbitrary apex") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> U(-4.0, 4.0);
    for (int it = 0; it < 200; ++it) {
        const PhasePoint u{U(rng), U(rng)}, v{U(rng), U(rng)}, z{U(rng), U(rng)},
            w{U(rng), U(rng)};
        const double lhs = signed_area_triangle(u, v, z);
        const double rhs = signed_area_triangle(w, u, v) + signed_area_triangle(w, v, z) +
                           signed_area_triangle(w, z, u);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("polygon area: unit square and degenerate vertex") {
    CHECK(polygon_area({0, 0}, {1, 0}, {1, 1}, {0, 1}) == doctest::Approx(1.0));
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int it = 0; it < 50; ++it) {
        const PhasePoint u{U(rng), U(rng)}, z{U(rng), U(rng)};
        CHECK(polygon_area({0, 0}, u, u, z) ==
              doctest::Approx(signed_area_triangle({0, 0}, u, z)).epsilon(1e-12));
    }
}

TEST_CASE("transport exponent equals a polygon area") {
    // (1/2)[p(q1-q0) - q(p1-p0)] = polygon_area(0, (q1,p1), (q,p), (q0,p0))
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> U(-5.0, 5.0);
    for (int it = 0; it < 100; ++it) {
        const double q = U(rng), p = U(rng), q0 = U(rng), p0 = U(rng), q1 = U(rng), p1 = U(rng);
        const double lhs = 0.5 * (p * (q1 - q0) - q * (p1 - p0));
        const double rhs = polygon_area({0, 0}, {q1, p1}, {q, p}, {q0, p0});
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("Hbar validates") {
    CHECK_THROWS_AS(Hbar(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Hbar(-1.0), std::invalid_argument);
    CHECK(Hbar(0.5).value == 0.5);
}
