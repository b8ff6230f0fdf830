#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ltorsion/algebra/primes.hpp"
#include "ltorsion/bounds/pipeline.hpp"
#include "ltorsion/error.hpp"
#include "ltorsion/quad/forms.hpp"

using namespace ltorsion;

namespace {
FieldInvariants quad_inv(std::int64_t D, int r) {
    FieldInvariants inv;
    inv.degree = 2;
    inv.abs_disc = D;
    inv.unit_rank = r;
    inv.r1 = r == 1 ? 2 : 0;
    inv.r2 = r == 1 ? 0 : 1;
    return inv;
}

FieldInvariants inv_with_log(double log_D, int n, int r, int rho) {
    FieldInvariants inv;
    inv.degree = n;
    inv.unit_rank = r;
    inv.rho = rho;
    mpz_class D;
    mpz_set_d(D.get_mpz_t(), std::exp(log_D));
    inv.abs_disc = D;
    return inv;
}

// y-smooth sum by scanning every m <= x and factoring it.
double smooth_sum_scan(const CoeffTable& t, std::uint64_t x, std::uint64_t y) {
    double s = 0;
    for (std::uint64_t m = 1; m <= x; ++m) {
        std::uint64_t r = m, largest = 1;
        for (std::uint64_t p = 2; p * p <= r; ++p)
            while (r % p == 0) {
                r /= p;
                largest = p;
            }
        if (r > 1) largest = std::max(largest, r);
        if (largest <= y) s += t.lambda_flat(m);
    }
    return s;
}
}  // namespace

TEST_CASE("trivial bounds") {
    const auto [t, refined] = trivial_bounds(quad_inv(1'000'000, 0));
    const double lD = std::log(1e6);
    CHECK(t == doctest::Approx(0.5 * lD + std::log(lD)).epsilon(1e-14));
    CHECK(t == doctest::Approx(9.534).epsilon(1e-3));
    CHECK(refined == doctest::Approx(t).epsilon(1e-14));
    const auto [t2, refined2] = trivial_bounds(quad_inv(1'000'000, 1));
    CHECK(refined2 == doctest::Approx(0.5 * lD).epsilon(1e-14));
    CHECK(refined2 <= t2);
}

TEST_CASE("EV bound") {
    const double v = ev_bound(std::numbers::pi / 4, "x", 1, std::log(4.0), "m").value;
    CHECK(v == doctest::Approx(std::log(std::numbers::pi / 4) + 0.5 * std::log(4.0)).epsilon(1e-14));
    CHECK(v == doctest::Approx(0.452).epsilon(1e-3));
    const auto z = ev_bound(1.0, "x", 0, 3.0, "m");
    CHECK(z.value == doctest::Approx(1.5));
    CHECK(z.source.find("degenerate") != std::string::npos);
    for (std::uint64_t M = 1; M < 50; ++M) CHECK(ev_bound(1.0, "x", M + 1, 5.0, "m").value < ev_bound(1.0, "x", M, 5.0, "m").value);
}

TEST_CASE("convexity rhs") {
    const auto inv = inv_with_log(4.0, 2, 0, 0);
    CHECK(convexity_rhs(inv, 0, 0.125) == doctest::Approx(0.375 * inv.log_disc()).epsilon(1e-14));
    const auto inv4 = quad_inv(55, 0);  // log 55 ~ 4.007
    CHECK(convexity_rhs(inv4, 0, 0.125) == doctest::Approx(0.375 * std::log(55.0)));
    double prev = -1e300;
    for (double t = 0; t < 100; t += 0.5) {
        const double v = convexity_rhs(inv4, t, 0.125);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("V_K") {
    const auto inv = quad_inv(23, 0);
    const double lD = std::log(23.0);
    const double expected = std::sqrt(3 / std::sqrt(23.0) * lD * std::pow(std::log(lD), -3.0));
    CHECK(solve_VK(3, inv) == doctest::Approx(expected).epsilon(1e-13));
    for (std::int64_t D : {16, 23, 1000, 99991}) {
        for (int r : {0, 1}) {
            const auto i = quad_inv(D, r);
            for (double h : {1.0, 3.0, 17.0, 1234.0}) CHECK(class_number_from_VK(solve_VK(h, i), i) == doctest::Approx(h).epsilon(1e-9));
            const double llD = std::log(std::log(static_cast<double>(D)));
            const double unit = std::sqrt(static_cast<double>(D)) * std::pow(std::log(static_cast<double>(D)), -r - 1) * std::pow(llD, 3.0);
            CHECK(solve_VK(unit, i) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    try {
        solve_VK(1, quad_inv(15, 0));
        FAIL("expected DomainTooSmall");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DomainTooSmall);
    }
}

TEST_CASE("smooth sums: DFS against a factoring scan, Rankin above both") {
    const auto K = NumberField(quadratic_field_spec(-4));
    const auto t = build_coeff_table(K, 20000);
    for (std::uint64_t y : {2, 5, 13, 30, 97}) {
        for (std::uint64_t x : {1, 10, 500, 20000}) {
            const double exact = smooth_sum_exact(t, static_cast<double>(x), static_cast<double>(y));
            CHECK(exact == smooth_sum_scan(t, x, y));
            for (double alpha : {0.75, 0.9, 0.99})
                CHECK(rankin_log_bound(t, std::log(static_cast<double>(x)), static_cast<double>(y), alpha) >= std::log(exact) - 1e-12);
        }
    }
}

TEST_CASE("residue pipeline on a large quadratic discriminant") {
    // d = -4 * 1000001: 1000001 = 101 * 9901 is squarefree and = 1 mod 4.
    const std::int64_t d = -4 * 1000001LL;
    const NumberField K(quadratic_field_spec(d));
    PipelineParams p;
    p.ell = 2;
    const auto t = build_coeff_table(K, pipeline_table_bound(K.invariants(), p));
    const auto s = section3_pipeline(K, t, p);
    const double lD = K.invariants().log_disc();
    CHECK(s.log_y == doctest::Approx(lD / 8).epsilon(1e-14));
    CHECK(s.log_x == doctest::Approx(4 * lD).epsilon(1e-14));
    CHECK_FALSE(s.x_in_D2_D3);  // x = D^4 for quadratic fields
    CHECK_FALSE(s.degenerate);
    CHECK(s.bracket_upper);
    CHECK(s.bracket_lower);
    CHECK(s.z_le_y);
    CHECK(2 * rational_prime_pi(static_cast<double>(s.z)) >= *s.pi_flat_y);
    if (s.z > 2) CHECK(2 * rational_prime_pi(static_cast<double>(s.z - 1)) < *s.pi_flat_y);
    CHECK(s.smooth_status == "rankin-bounded");
    CHECK(reassemble_section3(s, K.invariants()) == doctest::Approx(s.log_final).epsilon(1e-12));
}

TEST_CASE("x lies in [D^2, D^3] from degree 3 on") {
    for (int n = 2; n <= 8; ++n)
        for (int ell = 2; ell <= 7; ++ell) {
            const double lD = 50;
            const double ly = 0.5 / (2 * ell * (n - 1)) * lD;
            const double lx = 8.0 * ell * n * ly;
            CHECK(lx / lD == doctest::Approx(2.0 * n / (n - 1)));
            CHECK((lx <= 3 * lD + 1e-9) == (n >= 3));
        }
}

TEST_CASE("subconvexity pipeline case exponents") {
    FieldSpec s = quadratic_field_spec(-4 * 1000001LL);
    const NumberField K(s);
    PipelineParams p;
    p.ell = 2;
    const auto t = build_coeff_table(K, pipeline_table_bound(K.invariants(), p));
    const auto r = section4_pipeline(K, t, p);
    CHECK(r.exponent_iii_formula == doctest::Approx(0.453125).epsilon(1e-15));
    CHECK(r.k == 2);
    CHECK(*r.S_le_N);
    CHECK(r.case_i.tag == "ineffective");
    CHECK(r.case_ii.tag == "not-applicable");
    CHECK(r.case_iii.tag == "effective");
    p.delta = 0.3;
    CHECK_THROWS_AS(section4_pipeline(K, t, p), Error);
}

TEST_CASE("effectiveness tag follows the quadratic subfield flag") {
    FieldSpec c;
    c.poly = IntPoly{-2, 0, 0, 1};
    const NumberField K(c);
    PipelineParams p;
    const auto t = build_coeff_table(K, pipeline_table_bound(K.invariants(), p));
    const auto r = section4_pipeline(K, t, p);
    CHECK(r.case_i.tag == "effective");
    CHECK(r.case_ii.tag == "effective");
}

TEST_CASE("analyze Q(sqrt -23)") {
    PipelineParams p;
    p.ell = 3;
    const auto r = analyze_field(NumberField(quadratic_field_spec(-23)), p);
    CHECK(r.class_number == 3u);
    CHECK(r.torsion == 3u);
    CHECK(r.kappa == doctest::Approx(2 * std::numbers::pi * 3 / (2 * std::sqrt(23.0))));
    CHECK(r.kappa_source == "dirichlet-exact");
    CHECK(r.s3.degenerate);
    CHECK(r.degenerate());
    CHECK(r.V_K.has_value());
    CHECK(*r.log_class_rhs < std::log(3.0));
}

TEST_CASE("class-number rhs decreases in V_K") {
    const auto inv = quad_inv(99991, 0);
    double prev = 1e300;
    for (double h = 1; h < 2000; h *= 1.7) {
        const double V = solve_VK(h, inv);
        const double rhs_at_fixed_h = std::log(100.0) - V * std::log(inv.log_disc());
        CHECK(rhs_at_fixed_h < prev);
        prev = rhs_at_fixed_h;
    }
}

TEST_CASE("least squares") {
    const auto f = least_squares({0, 1, 2, 3}, {1, 3, 5, 7});
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK_THROWS_AS(least_squares({1}, {1}), Error);
}
