#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "green_rate.hpp"
#include "oracles.hpp"
#include "projdyn/green.hpp"
#include "projdyn/siegel.hpp"
#include "test_helpers.hpp"

using namespace projdyn;
using testing::throws_kind;

using testing::decay_slope;

TEST_SUITE("green") {

TEST_CASE("u potential examples") {
    CHECK(u_potential(squaring_map(), ProjPoint(1.0, 0.0, 0.0)) == doctest::Approx(0.0));
    CHECK(u_potential(squaring_map(), ProjPoint(1.0, 1.0, 1.0)) ==
          doctest::Approx(-0.25 * std::log(3.0)).epsilon(1e-14));
    CHECK(u_potential(siegel_product_map(golden_mean()), ProjPoint(0.0, 0.0, 1.0)) == doctest::Approx(0.0));
}

TEST_CASE("green of the squaring map at a fixed point is a geometric series") {
    const GreenEvaluator ge(squaring_map(), 25);
    const auto g = ge(ProjPoint(1.0, 1.0, 1.0));
    CHECK(std::abs(g.value + 0.5 * std::log(3.0)) <= g.error_bound);
    CHECK(g.error_bound == doctest::Approx(ge.u_bound() * std::pow(2.0, -25) / 0.5));
}

TEST_CASE("green of the squaring map matches its closed form") {
    const GreenEvaluator ge(squaring_map(), 25);
    oracle::PointSource src(31);
    for (int k = 0; k < 1000; ++k) {
        const Lift z = src.unit_lift();
        CHECK(std::abs(ge(ProjPoint(z)).value - oracle::squaring_green(z)) <= ge.error_bound());
    }
}

TEST_CASE("u bound covers the sampled potential with headroom") {
    const auto f = squaring_map();
    // sup |u| = (1/4) log 3, attained at [1:1:1].
    const GreenEvaluator ge(f, 10);
    CHECK(ge.u_bound() >= 0.25 * std::log(3.0));
    CHECK(ge.u_bound() <= 1.05 * 0.25 * std::log(3.0) + 1e-12);
}

TEST_CASE("n_iter must be positive") {
    CHECK(throws_kind(ErrorKind::InvalidArgument, [] { GreenEvaluator(squaring_map(), 0); }));
}

TEST_CASE("functional equation residual") {
    const GreenEvaluator sq(squaring_map(), 25);
    CHECK(green_functional_equation_residual(sq, ProjPoint(1.0, 1.0, 1.0)) < 1e-10);

    for (const auto& f : {siegel_product_map(golden_mean()), oracle::random_quadratic_map(32)}) {
        const GreenEvaluator ge(f, 25);
        oracle::PointSource src(33);
        for (int k = 0; k < 100; ++k)
            CHECK(green_functional_equation_residual(ge, src.point()) <= 3.0 * f.degree() * ge.error_bound());
    }
}

TEST_CASE("partial sums increments obey the decay bound") {
    for (const auto& f : {squaring_map(), siegel_product_map(golden_mean()), oracle::random_quadratic_map(34)}) {
        const GreenEvaluator ge(f, 25);
        oracle::PointSource src(35);
        for (int k = 0; k < 1000; ++k) {
            const auto sums = ge.partial_sums(src.point(), 26);
            for (int n = 1; n < 26; ++n) CHECK(std::abs(sums[n] - sums[n - 1]) <= green_increment_bound(ge, n));
            CHECK(std::abs(sums[24]) <= ge.u_bound() * 2.0);
        }
    }
}

TEST_CASE("decay rate is log d for maps with non-superattracting dynamics") {
    for (const auto& f : {siegel_product_map(golden_mean()), oracle::random_quadratic_map(36)}) {
        const GreenEvaluator ge(f, 25);
        CHECK(decay_slope(ge, 37) == doctest::Approx(-std::log(2.0)).epsilon(0.10));
    }
}

TEST_CASE("homogeneous escape rate scales like log|W|") {
    const GreenEvaluator ge(siegel_product_map(golden_mean()), 25);
    oracle::PointSource src(38);
    for (int k = 0; k < 100; ++k) {
        const Lift z = src.unit_lift();
        const double s = 0.1 + 10.0 * src.uniform();
        const Lift w{s * z[0], s * z[1], s * z[2]};
        CHECK(ge.homogeneous(w) == doctest::Approx(ge(ProjPoint(z)).value + std::log(s)).epsilon(1e-12));
    }
}

}
