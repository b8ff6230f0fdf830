#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ltorsion/error.hpp"
#include "ltorsion/mellin/mellin.hpp"
#include "ltorsion/zeta/coeff_table.hpp"

using namespace ltorsion;

namespace {
const CoeffTable& gaussian_table() {
    static const CoeffTable t = build_coeff_table(NumberField(quadratic_field_spec(-4)), 1000);
    return t;
}
const CoeffTable& golden_table() {
    static const CoeffTable t = build_coeff_table(NumberField(quadratic_field_spec(5)), 1000);
    return t;
}
}  // namespace

TEST_CASE("phi_k values") {
    CHECK(SmoothKernel(1).phi(std::exp(-1.0)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(SmoothKernel(2).phi(std::exp(-2.0)) == doctest::Approx(2 * std::exp(-2.0)).epsilon(1e-15));
    for (int k = 1; k <= 6; ++k) {
        CHECK(SmoothKernel(k).phi(1.0) == 0.0);
        CHECK(SmoothKernel(k).phi(0.0) == 0.0);
        CHECK(SmoothKernel(k).phi(1.5) == 0.0);
    }
    CHECK_THROWS_AS(SmoothKernel(0), Error);
}

TEST_CASE("phi_k is at most 1 and peaks at e^-k") {
    for (int k = 1; k <= 8; ++k) {
        const SmoothKernel K(k);
        const double peak = K.phi(std::exp(-double(k)));
        CHECK(peak <= 1.0);
        for (int i = 1; i <= 100000; ++i) REQUIRE(K.phi(i / 100000.0) <= peak * (1 + 1e-15));
    }
}

TEST_CASE("transform values") {
    CHECK(SmoothKernel(1).transform(0.0) == std::complex<double>(1.0));
    CHECK(SmoothKernel(1).transform(1.0) == std::complex<double>(0.25));
    CHECK(std::abs(SmoothKernel(3).transform({0, 1}) - std::complex<double>(-0.25)) < 1e-15);
    try {
        SmoothKernel(2).transform(-1.0);
        FAIL("expected pole");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::PoleAtMinusOne);
    }
}

TEST_CASE("transform against quadrature") {
    for (int k = 1; k <= 5; ++k) {
        const SmoothKernel K(k);
        for (std::complex<double> s : {std::complex<double>(0.5, 0), std::complex<double>(1, 0),
                                       std::complex<double>(2, 0), std::complex<double>(1, 1)}) {
            CAPTURE(k);
            CAPTURE(s);
            CHECK(std::abs(mellin_transform_numeric(K, s) - K.transform(s)) < 1e-8);
        }
    }
}

TEST_CASE("adaptive simpson") {
    CHECK(adaptive_simpson([](double t) { return std::sin(t); }, 0, std::numbers::pi, 1e-12) ==
          doctest::Approx(2.0).epsilon(1e-11));
    CHECK(adaptive_simpson([](double t) { return std::exp(-t * t); }, -6, 6, 1e-12) ==
          doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-11));
}

TEST_CASE("smoothed sums") {
    CHECK(smoothed_sum(gaussian_table(), SmoothKernel(1), 5, true) == doctest::Approx(std::log(5.0) / 5).epsilon(1e-14));
    CHECK(smoothed_sum(gaussian_table(), SmoothKernel(3), 0.5, true) == 0.0);
    CHECK_THROWS_AS(smoothed_sum(gaussian_table(), SmoothKernel(1), 1001, true), Error);
    for (const CoeffTable* t : {&gaussian_table(), &golden_table()})
        for (double x = 1; x <= 1000; x += 7.5) {
            REQUIRE(smoothed_sum(*t, SmoothKernel(1), x, true) <= static_cast<double>(count_N_flat(*t, x)));
            REQUIRE(smoothed_sum(*t, SmoothKernel(1), x, true) <= smoothed_sum(*t, SmoothKernel(1), x, false));
        }
}

TEST_CASE("Mellin inversion on the 2-line") {
    for (const CoeffTable* t : {&gaussian_table(), &golden_table()})
        for (int k : {2, 3})
            for (double x : {50.0, 100.0, 500.0}) {
                const auto r = verify_inversion(*t, SmoothKernel(k), x);
                CAPTURE(k);
                CAPTURE(x);
                CAPTURE(r.T);
                CHECK(r.tail_bound <= 1e-7);
                CHECK(r.abs_error <= 1e-6);
            }
}

TEST_CASE("inversion below x = 1 is empty") {
    const auto r = verify_inversion(gaussian_table(), SmoothKernel(2), 0.5);
    CHECK(r.lhs == 0.0);
    CHECK(std::fabs(r.rhs) < 1e-12);
}

TEST_CASE("T = 200 leaves a tail bound above the target") {
    // The n = 1 term alone contributes w/(pi u T^3) ~ 1e-4 at x = 100, k = 2.
    try {
        verify_inversion(gaussian_table(), SmoothKernel(2), 100, {.T = 200});
        FAIL("expected ToleranceNotMet");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ToleranceNotMet);
    }
    const auto r = verify_inversion(gaussian_table(), SmoothKernel(2), 100, {.T = 200, .target = 1.0});
    CHECK(r.abs_error <= r.tail_bound + 1e-8);
}

TEST_CASE("higher k converges faster at equal T") {
    const InversionOptions o{.T = 40, .target = 1e9};
    const auto e1 = verify_inversion(gaussian_table(), SmoothKernel(1), 50, o);
    const auto e6 = verify_inversion(gaussian_table(), SmoothKernel(6), 50, o);
    CHECK(e6.abs_error / e1.abs_error < 1.0);
    CHECK(e6.tail_bound < e1.tail_bound);
}
