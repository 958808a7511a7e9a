#include <doctest.h>

#include <cmath>

#include "projdyn/siegel.hpp"
#include "test_helpers.hpp"

using namespace projdyn;
using testing::throws_kind;

TEST_SUITE("siegel") {

TEST_CASE("low-order coefficients") {
    const cplx lambda = rotation_multiplier(golden_mean());
    const auto lin = siegel_linearize(lambda);
    CHECK(lin.coeffs[0] == cplx{});
    CHECK(lin.coeffs[1] == cplx{1.0, 0.0});
    CHECK(std::abs(lin.coeffs[2] - 1.0 / (lambda - lambda * lambda)) < 1e-14);
    // z^3: (lambda - lambda^3) c_3 = 2 lambda c_2 ... from Phi(lambda z + z^2).
    const cplx c3 = 2.0 * lambda * lin.coeffs[2] / (lambda - lambda * lambda * lambda);
    CHECK(std::abs(lin.coeffs[3] - c3) < 1e-13);
}

TEST_CASE("functional equation holds on half the radius estimate") {
    const auto lin = siegel_linearize(rotation_multiplier(golden_mean()));
    CHECK(lin.radius_estimate > 0.0);
    CHECK(lin.n_terms() == 64);
    CHECK(lin.functional_equation_residual(lin.radius_estimate / 2.0) <= 1e-8);
}

TEST_CASE("resonant rotations overflow") {
    for (double theta : {0.5, 1.0 / 3.0, 0.4, 0.25})
        CHECK(throws_kind(ErrorKind::SmallDivisorOverflow, [&] { siegel_linearize(rotation_multiplier(theta)); }));
}

TEST_CASE("arguments are validated") {
    CHECK(throws_kind(ErrorKind::InvalidArgument, [] { siegel_linearize({1.1, 0.0}); }));
    CHECK(throws_kind(ErrorKind::InvalidArgument, [] { siegel_linearize(rotation_multiplier(golden_mean()), 65); }));
    CHECK(throws_kind(ErrorKind::InvalidArgument, [] { siegel_linearize(rotation_multiplier(golden_mean()), 1); }));
}

TEST_CASE("inverse linearization lands on the requested level") {
    const auto lin = siegel_linearize(rotation_multiplier(golden_mean()));
    for (double angle : {0.0, 1.0, 2.5, -2.0}) {
        const cplx a = invariant_curve_point(lin, 0.05, angle);
        CHECK(std::abs(lin.phi(a) - std::polar(0.05, angle)) < 1e-14);
    }
}

TEST_CASE("alpha samples at the fixed point") {
    const auto lin = siegel_linearize(rotation_multiplier(golden_mean()));
    const auto m = sample_alpha(lin, 0.0, 10, 100);
    CHECK(m.size() == 100);
    for (const auto& p : m.points) CHECK(std::abs(p[0]) == 0.0);
    CHECK(m.provenance == Provenance::Alpha);
    m.validate();
}

TEST_CASE("alpha samples stay on the invariant curve and rotate uniformly") {
    const cplx lambda = rotation_multiplier(golden_mean());
    const auto lin = siegel_linearize(lambda);
    REQUIRE(0.05 < lin.radius_estimate);
    const cplx a0 = invariant_curve_point(lin, 0.05);
    const std::size_t n = 100000;
    const auto orbit = rotation_orbit(lin, a0, 0, n);
    double log_derivative = 0.0;
    cplx weyl{};
    for (const cplx z : orbit) {
        CHECK(std::abs(std::abs(lin.phi(z)) - 0.05) <= 1e-6 * 0.05);
        log_derivative += std::log(std::abs(lambda + 2.0 * z));
        weyl += std::polar(1.0, std::arg(lin.phi(z)));
    }
    CHECK(std::abs(log_derivative / n) <= 0.01);
    CHECK(std::abs(weyl) / n <= 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("orbits leaving the disk are reported") {
    auto lin = siegel_linearize(rotation_multiplier(golden_mean()));
    CHECK(throws_kind(ErrorKind::InvalidArgument, [&] { rotation_orbit(lin, 2.0 * lin.radius_estimate, 0, 10); }));
    lin.radius_estimate = 1e25;  // claim a disk that is far too large
    CHECK(throws_kind(ErrorKind::EscapedSiegelDisk, [&] { rotation_orbit(lin, 0.6, 0, 100); }));
}

}
