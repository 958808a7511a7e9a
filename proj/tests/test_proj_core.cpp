#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "test_helpers.hpp"
#include "projdyn/projective.hpp"

using namespace projdyn;

using testing::throws_kind;

TEST_SUITE("proj_core") {

TEST_CASE("normalize scales to unit norm") {
    const Lift a = normalize({2.0, 0.0, 0.0});
    CHECK(a[0] == cplx{1.0, 0.0});
    CHECK(a[1] == cplx{});
    const Lift b = normalize({1.0, 1.0, 1.0});
    for (const auto& c : b) CHECK(c.real() == doctest::Approx(0.57735026919).epsilon(1e-10));
    CHECK(lift_norm(b) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("normalize rejects zero and non-finite lifts") {
    CHECK(throws_kind(ErrorKind::ZeroVector, [] { normalize({0.0, 0.0, 0.0}); }));
    const double nan = std::nan("");
    CHECK(throws_kind(ErrorKind::ZeroVector, [&] { normalize({nan, nan, nan}); }));
    CHECK(throws_kind(ErrorKind::ZeroVector, [&] { ProjPoint(0.0, 0.0, 0.0); }));
}

TEST_CASE("normalize keeps the phase and is idempotent") {
    oracle::PointSource src(11);
    for (int k = 0; k < 10000; ++k) {
        Lift v{src.gaussian() * 1e3, src.gaussian(), src.gaussian() * 1e-3};
        const Lift once = normalize(v);
        const Lift twice = normalize(once);
        REQUIRE(once == twice);
        const cplx ratio = once[0] / v[0];
        CHECK(std::abs(ratio.imag()) <= 1e-12 * std::abs(ratio));
        CHECK(ratio.real() > 0.0);
        CHECK(std::abs(lift_norm(once) - 1.0) <= 1e-12);
    }
}

TEST_CASE("chordal distance examples") {
    const ProjPoint e0(1.0, 0.0, 0.0), e1(0.0, 1.0, 0.0), d(1.0, 1.0, 0.0);
    CHECK(chordal_distance(e0, e0) == 0.0);
    CHECK(chordal_distance(e0, e1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(chordal_distance(e0, d) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    // Same projective point, different phase.
    const ProjPoint p(cplx{1, 2}, cplx{3, -1}, 0.5);
    const ProjPoint q(cplx{1, 2} * cplx{0, 1}, cplx{3, -1} * cplx{0, 1}, 0.5 * cplx{0, 1});
    CHECK(chordal_distance(p, q) < 1e-15);
}

TEST_CASE("chordal distance is a symmetric metric on samples") {
    oracle::PointSource src(12);
    for (int k = 0; k < 10000; ++k) {
        const ProjPoint a = src.point(), b = src.point(), c = src.point();
        const double ab = chordal_distance(a, b), bc = chordal_distance(b, c), ac = chordal_distance(a, c);
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0 + 1e-15);
        CHECK(ab == doctest::Approx(chordal_distance(b, a)).epsilon(1e-14));
        CHECK(ac <= ab + bc + 1e-10);
    }
}

TEST_CASE("to_chart examples") {
    const auto c = to_chart(ProjPoint(2.0, 4.0, 1.0), kChartT);
    CHECK(std::abs(c[0] - cplx{2.0}) < 1e-14);
    CHECK(std::abs(c[1] - cplx{4.0}) < 1e-14);
    CHECK(throws_kind(ErrorKind::ChartSingular, [] { to_chart(ProjPoint(0.0, 1.0, 0.0), kChartT); }));
    const auto w = to_chart(ProjPoint(2.0, 4.0, 1.0), kChartW);
    CHECK(std::abs(w[0] - cplx{0.5}) < 1e-14);
    CHECK(std::abs(w[1] - cplx{0.25}) < 1e-14);
}

TEST_CASE("some chart is always well conditioned") {
    oracle::PointSource src(13);
    for (int k = 0; k < 10000; ++k) {
        const ProjPoint p = src.point();
        const AffineChart best = best_chart(p);
        CHECK(well_conditioned(p, best));
        for (int i = 0; i < 3; ++i) CHECK(std::abs(p[best.index]) >= std::abs(p[i]));
    }
}

TEST_CASE("chart round trip") {
    oracle::PointSource src(14);
    for (int k = 0; k < 10000; ++k) {
        const ProjPoint p = src.point();
        for (int i = 0; i < 3; ++i) {
            const AffineChart chart{i};
            if (!well_conditioned(p, chart)) continue;
            CHECK(chordal_distance(from_chart(to_chart(p, chart), chart), p) <= 1e-12);
        }
    }
}

TEST_CASE("chart transitions satisfy Cauchy-Riemann") {
    oracle::PointSource src(15);
    const double h = 1e-6;
    int checked = 0;
    for (int k = 0; k < 2000; ++k) {
        const ProjPoint p = src.point();
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                if (a == b || !well_conditioned(p, {a}) || !well_conditioned(p, {b})) continue;
                const auto c = to_chart(p, {a});
                auto transition = [&](ChartCoords x) { return to_chart(from_chart(x, {a}), {b}); };
                for (int col = 0; col < 2; ++col) {
                    auto xp = c, xm = c, yp = c, ym = c;
                    xp[col] += h;
                    xm[col] -= h;
                    yp[col] += cplx{0.0, h};
                    ym[col] -= cplx{0.0, h};
                    const auto fxp = transition(xp), fxm = transition(xm);
                    const auto fyp = transition(yp), fym = transition(ym);
                    for (int row = 0; row < 2; ++row) {
                        const cplx dx = (fxp[row] - fxm[row]) / (2.0 * h);
                        const cplx dy = (fyp[row] - fym[row]) / (2.0 * h);
                        // Holomorphic: d/dy = i d/dx.
                        const double scale = std::max(1.0, std::abs(dx));
                        CHECK(std::abs(dy - cplx{0.0, 1.0} * dx) / scale < 1e-6);
                    }
                }
                ++checked;
            }
    }
    CHECK(checked > 1000);
}

}
