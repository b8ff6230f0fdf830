#include <cmath>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "ltorsion/error.hpp"
#include "ltorsion/quad/forms.hpp"
#include "ltorsion/verify/oracles.hpp"
#include "ltorsion/zeta/coeff_table.hpp"
#include "ltorsion/zeta/kappa.hpp"

using namespace ltorsion;

namespace {
NumberField gaussian() { return NumberField(quadratic_field_spec(-4)); }

NumberField cube_root_two() {
    FieldSpec s;
    s.poly = IntPoly{-2, 0, 0, 1};
    s.label = "Q(cbrt 2)";
    return NumberField(s);
}

std::uint64_t partial_sum(const std::vector<std::uint32_t>& v, std::size_t N) {
    std::uint64_t s = 0;
    for (std::size_t n = 1; n <= N; ++n) s += v[n];
    return s;
}
}  // namespace

TEST_CASE("lambda and lambda-flat of Q(i)") {
    const auto t = build_coeff_table(gaussian(), 10);
    const std::vector<std::uint32_t> lam{1, 1, 0, 1, 2, 0, 0, 1, 1, 2};
    const std::vector<std::uint32_t> flat{1, 0, 0, 0, 2, 0, 0, 0, 0, 0};
    for (std::uint64_t n = 1; n <= 10; ++n) {
        CAPTURE(n);
        CHECK(t.lambda(n) == lam[n - 1]);
        CHECK(t.lambda_flat(n) == flat[n - 1]);
    }
    CHECK_THROWS_AS(t.lambda(11), Error);
}

TEST_CASE("local lambda from splitting types") {
    using V = std::vector<PrimeIdealType>;
    CHECK(lambda_prime_power(V{{1, 1}, {1, 1}}, 3) == 4);
    CHECK(lambda_prime_power(V{{1, 2}}, 3) == 0);
    CHECK(lambda_prime_power(V{{1, 2}}, 4) == 1);
    CHECK(lambda_prime_power(V{{2, 1}}, 5) == 1);
    CHECK(lambda_prime_power(V{{1, 1}, {1, 1}, {1, 1}}, 2) == 6);
    CHECK(lambda_flat_prime(V{{1, 1}, {2, 1}}) == 1);
    CHECK(lambda_flat_prime(V{{1, 1}, {1, 2}}) == 1);
}

TEST_CASE("pi-flat and N-flat") {
    const auto t = build_coeff_table(gaussian(), 100);
    CHECK(pi_flat(t, 10) == 2);
    CHECK(pi_flat(t, 4) == 0);
    CHECK(pi_flat(t, 1) == 0);
    CHECK(count_N_flat(t, 10) == 3);
    CHECK(count_N_flat(t, 4) == 1);
    CHECK(count_N_flat(t, 1) == 1);
    CHECK_THROWS_AS(pi_flat(t, 101), Error);
    CHECK(count_N_flat(t, 100.5) == count_N_flat(t, 100));
    CHECK_THROWS_AS(count_N_flat(t, 101), Error);
}

TEST_CASE("caps") {
    CHECK_THROWS_AS(build_coeff_table(gaussian(), 100, {.cap = 50}), Error);
    try {
        build_coeff_table(gaussian(), 1000, {.cap = 10'000'000, .memory_cap_bytes = 1000});
        FAIL("expected CapExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::CapExceeded);
    }
}

TEST_CASE("index divisor without certified data is MissingSplitting") {
    FieldSpec s;
    s.poly = IntPoly{-5, 0, 1};
    s.certified_disc = mpz_class(5);
    try {
        build_coeff_table(NumberField(s), 10);
        FAIL("expected MissingSplitting");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::MissingSplitting);
    }
    s.certified_splitting[2] = {{1, 2}};
    const auto t = build_coeff_table(NumberField(s), 10);
    CHECK(t.index_divisor_count() == 1);
    CHECK(t.lambda(4) == 1);
    CHECK(t.lambda(2) == 0);
}

TEST_CASE("H_K(s, x) examples") {
    const auto t = build_coeff_table(gaussian(), 100);
    const EulerFactorSet H(t);
    CHECK(H.eval_H(1.0, 3).real() == doctest::Approx(4.0 / 9).epsilon(1e-14));
    CHECK(H.eval_H(1.0, 5).real() == doctest::Approx(4.0 / 9 * 1.4 * 0.64).epsilon(1e-14));
    CHECK(H.eval_H(2.0, 1.5) == std::complex<double>(1.0));
    CHECK_THROWS_AS(H.eval_H(0.2, 10), Error);
    CHECK_THROWS_AS(H.eval_H(1.0, 200), Error);
    CHECK(std::exp(H.log_H_real(1.0, 5)) == doctest::Approx(H.eval_H(1.0, 5).real()).epsilon(1e-13));
}

TEST_CASE("product and series Euler factors agree at s = 2") {
    for (const NumberField& K : {gaussian(), NumberField(quadratic_field_spec(5)), NumberField(quadratic_field_spec(-23)),
                                 cube_root_two()}) {
        const auto t = build_coeff_table(K, 2000);
        const EulerFactorSet H(t);
        for (double x : {2.0, 10.0, 100.0, 2000.0}) {
            for (std::complex<double> s : {std::complex<double>(2, 0), std::complex<double>(2, 3)}) {
                const auto a = H.eval_H(s, x), b = H.eval_H_series(s, x);
                CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
            }
        }
    }
}

TEST_CASE("partial sums against the ideal enumeration oracles") {
    constexpr std::uint32_t N = 3000;
    for (std::int64_t d : {-4, -23, 5, -84, 40, 13, -3}) {
        CAPTURE(d);
        const auto t = build_coeff_table(NumberField(quadratic_field_spec(d)), N);
        const auto oracle_counts = oracle::quadratic_ideal_counts(d, N);
        for (std::uint32_t n = 1; n <= N; ++n) REQUIRE(t.lambda(n) == oracle_counts[n]);
    }
    {
        const auto t = build_coeff_table(cube_root_two(), 600);
        const auto oracle_counts = oracle::cubic_ideal_counts(IntPoly{-2, 0, 0, 1}, 600);
        CHECK(partial_sum(t.lambda_values(), 600) == partial_sum(oracle_counts, 600));
        for (std::uint32_t n = 1; n <= 600; ++n) REQUIRE(t.lambda(n) == oracle_counts[n]);
    }
}

TEST_CASE("table invariants") {
    for (const NumberField& K : {gaussian(), NumberField(quadratic_field_spec(5)), cube_root_two(),
                                 NumberField(quadratic_field_spec(-4420))}) {
        const auto t = build_coeff_table(K, 20000);
        const int n = t.degree();
        CHECK(t.lambda(1) == 1);
        CHECK(t.lambda_flat(1) == 1);
        for (std::uint64_t m = 1; m <= 20000; ++m) REQUIRE(t.lambda_flat(m) <= t.lambda(m));
        // multiplicativity on a coprime sample
        for (std::uint64_t a = 2; a < 140; ++a)
            for (std::uint64_t b = 2; a * b <= 20000 && b < 140; ++b)
                if (std::gcd(a, b) == 1) REQUIRE(t.lambda(a * b) == t.lambda(a) * t.lambda(b));
        for (const auto& l : t.locals()) {
            const auto D = K.invariants().abs_disc;
            const int gap = static_cast<int>(l.lambda_p) - static_cast<int>(l.lambda_flat_p);
            REQUIRE(gap >= 0);
            REQUIRE(2 * gap <= n);
            if (mpz_class(D % l.p) != 0) REQUIRE(l.lambda_p == l.lambda_flat_p);
            std::uint64_t q = l.p, bound = n;
            for (int j = 1; q <= 20000; ++j, q *= l.p, bound *= n) REQUIRE(t.lambda(q) <= bound);
            if (static_cast<std::uint64_t>(l.p) * l.p <= 20000) REQUIRE(t.lambda_flat(l.p * l.p) == 0);
        }
    }
}

TEST_CASE("exact kappa") {
    const auto gi = estimate_kappa(gaussian(), nullptr, KappaMethod::DirichletExact);
    CHECK(gi.value == doctest::Approx(std::numbers::pi / 4).epsilon(1e-12));
    CHECK(gi.source == KappaSource::DirichletExact);
    const auto q5 = estimate_kappa(NumberField(quadratic_field_spec(5)), nullptr, KappaMethod::Auto);
    CHECK(q5.value == doctest::Approx(2 * std::log(std::numbers::phi) / std::sqrt(5.0)).epsilon(1e-12));
    CHECK_THROWS_AS(estimate_kappa(cube_root_two(), nullptr, KappaMethod::Auto), Error);
    CHECK_THROWS_AS(estimate_kappa(cube_root_two(), nullptr, KappaMethod::DirichletExact), Error);

    // Certified route reproduces the Dirichlet value for Q(sqrt -23) and
    // the known residue of Q(cbrt 2): h = 1, R = log(1 + cbrt 2 + cbrt 4).
    FieldSpec s = quadratic_field_spec(-23);
    s.certified_class_group = AbelianGroup({3});
    s.roots_of_unity = 2;
    const auto c23 = estimate_kappa(NumberField(s), nullptr, KappaMethod::Certified);
    CHECK(c23.value == doctest::Approx(2 * std::numbers::pi * 3 / (2 * std::sqrt(23.0))).epsilon(1e-12));
    FieldSpec c = cube_root_two().spec();
    c.certified_class_group = AbelianGroup();
    c.certified_regulator = std::log(1 + std::cbrt(2.0) + std::cbrt(4.0));
    const auto k3 = estimate_kappa(NumberField(c), nullptr, KappaMethod::Certified);
    CHECK(k3.value == doctest::Approx(2 * 2 * std::numbers::pi * *c.certified_regulator / (2 * std::sqrt(108.0))));
    c.certified_regulator.reset();
    CHECK_THROWS_AS(estimate_kappa(NumberField(c), nullptr, KappaMethod::Certified), Error);
}

TEST_CASE("smoothed kappa of Q(i) at 1e5") {
    const auto K = gaussian();
    const auto t = build_coeff_table(K, 100000);
    const auto est = estimate_kappa(K, &t, KappaMethod::Smoothed);
    CHECK(est.source == KappaSource::Smoothed);
    CHECK(std::fabs(est.value / (std::numbers::pi / 4) - 1) < 0.05);
    CHECK(std::fabs(est.value - std::numbers::pi / 4) <= est.uncertainty);
}

TEST_CASE("smoothed kappa of Q(cbrt 2) against the certified residue") {
    const auto K = cube_root_two();
    const auto t = build_coeff_table(K, 200000);
    const double exact = 2 * 2 * std::numbers::pi * std::log(1 + std::cbrt(2.0) + std::cbrt(4.0)) / (2 * std::sqrt(108.0));
    const auto est = estimate_kappa(K, &t, KappaMethod::Smoothed);
    MESSAGE("cbrt2 smoothed ", est.value, " +- ", est.uncertainty, " exact ", exact);
    CHECK(std::fabs(est.value / exact - 1) < 0.1);
    CHECK(std::fabs(est.value - exact) <= est.uncertainty);
}
