#include "doctest.h"
#include "ltorsion/algebra/integers.hpp"
#include "ltorsion/algebra/primes.hpp"
#include "ltorsion/error.hpp"
#include "ltorsion/field/number_field.hpp"
#include "ltorsion/verify/oracles.hpp"

using namespace ltorsion;

namespace {
FieldSpec spec_of(IntPoly f, std::string label = "") {
    FieldSpec s;
    s.poly = std::move(f);
    s.label = std::move(label);
    return s;
}

std::vector<PrimeIdealType> types(std::initializer_list<PrimeIdealType> l) { return l; }
}  // namespace

TEST_CASE("invariants of Q(i)") {
    const auto inv = compute_invariants(spec_of(IntPoly{1, 0, 1}));
    CHECK(inv.degree == 2);
    CHECK(inv.r1 == 0);
    CHECK(inv.r2 == 1);
    CHECK(inv.unit_rank == 0);
    CHECK(inv.abs_disc == 4);
    CHECK(inv.signed_disc() == -4);
    CHECK(inv.disc_source == DiscSource::PolyDiscMaximal);
    CHECK(inv.rho_source == RhoSource::DefaultZero);
    CHECK(inv.irreducibility == Irreducibility::Verified);
    CHECK(inv.quadratic_subfield == QuadraticSubfield::Yes);
}

TEST_CASE("x^2 - 5 needs a certified discriminant") {
    auto inv = compute_invariants(spec_of(IntPoly{-5, 0, 1}));
    CHECK(inv.r1 == 2);
    CHECK(inv.unit_rank == 1);
    CHECK(inv.abs_disc == 20);
    CHECK(inv.disc_source == DiscSource::PolyDiscUnverified);

    FieldSpec s = spec_of(IntPoly{-5, 0, 1});
    s.certified_disc = 5;
    inv = compute_invariants(s);
    CHECK(inv.abs_disc == 5);
    CHECK(inv.disc_source == DiscSource::Certified);

    inv = compute_invariants(spec_of(IntPoly{-1, -1, 1}));
    CHECK(inv.abs_disc == 5);
    CHECK(inv.disc_source == DiscSource::PolyDiscSquarefree);
}

TEST_CASE("invariants of Q(cbrt 2)") {
    const auto inv = compute_invariants(spec_of(IntPoly{-2, 0, 0, 1}));
    CHECK(inv.degree == 3);
    CHECK(inv.r1 == 1);
    CHECK(inv.r2 == 1);
    CHECK(inv.unit_rank == 1);
    CHECK(inv.abs_disc == 108);
    CHECK(inv.disc_sign == -1);
    CHECK(inv.disc_source == DiscSource::PolyDiscMaximal);
    CHECK(inv.quadratic_subfield == QuadraticSubfield::No);
}

TEST_CASE("spec validation") {
    FieldSpec s = spec_of(IntPoly{1, 0, 2});
    CHECK_THROWS_AS(s.validate(), Error);
    s = spec_of(IntPoly{1, 1});
    CHECK_THROWS_AS(s.validate(), Error);
    s = spec_of(IntPoly{-5, 0, 1});
    s.certified_disc = 7;
    CHECK_THROWS_AS(s.validate(), Error);
    s.certified_disc = -5;  // divides 20 but the quotient -4 is not a square
    CHECK_THROWS_AS(s.validate(), Error);
    s = spec_of(IntPoly{1, 0, 1});
    s.rho = 1;
    CHECK_THROWS_AS(compute_invariants(s), Error);
    s.rho = 0;
    CHECK(compute_invariants(s).rho_source == RhoSource::Certified);
    s = spec_of(IntPoly{1, 0, 1});
    s.certified_splitting[2] = types({{1, 1}});
    CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("reducible polynomials") {
    // (x^2+1)(x^2+2): n - r1 even, irreducibility never certified.
    auto inv = compute_invariants(spec_of(IntPoly{1, 0, 1} * IntPoly{2, 0, 1}));
    CHECK(inv.irreducibility == Irreducibility::Unverified);
    CHECK_THROWS_AS(compute_invariants(spec_of(IntPoly{1, 0, 1} * IntPoly{1, 0, 1})), Error);
}

TEST_CASE("Dedekind criterion examples") {
    CHECK(dedekind_index_test(IntPoly{1, 0, 1}, 2));
    CHECK(dedekind_index_test(IntPoly{1, 0, 1}, 5));
    CHECK(dedekind_index_test(IntPoly{-1, -1, 1}, 5));
    CHECK(dedekind_index_test(IntPoly{-2, 0, 0, 1}, 2));
    CHECK(dedekind_index_test(IntPoly{-2, 0, 0, 1}, 3));
    // Z[sqrt 5] has index 2 in the maximal order; Z[sqrt -3] likewise.
    CHECK_FALSE(dedekind_index_test(IntPoly{-5, 0, 1}, 2));
    CHECK_FALSE(dedekind_index_test(IntPoly{3, 0, 1}, 2));
    // x^3 - 10: 3 divides the index of Z[cbrt 10] since 10 = 1 mod 9.
    CHECK_FALSE(dedekind_index_test(IntPoly{-10, 0, 0, 1}, 3));
    CHECK(dedekind_index_test(IntPoly{-10, 0, 0, 1}, 2));
    CHECK_THROWS_AS(dedekind_index_test(IntPoly{1, 0, 1}, 4), Error);
}

TEST_CASE("splitting examples") {
    const NumberField K(spec_of(IntPoly{1, 0, 1}));
    auto s = K.splitting_at(5);
    CHECK(s.factors == types({{1, 1}, {1, 1}}));
    CHECK_FALSE(s.index_divisor);
    s = K.splitting_at(2);
    CHECK(s.factors == types({{2, 1}}));
    CHECK_FALSE(s.index_divisor);
    s = K.splitting_at(3);
    CHECK(s.factors == types({{1, 2}}));
    CHECK_THROWS_AS(K.splitting_at(15), Error);

    const NumberField C(spec_of(IntPoly{-2, 0, 0, 1}));
    CHECK(C.splitting_at(2).factors == types({{3, 1}}));
    CHECK(C.splitting_at(3).factors == types({{3, 1}}));
    CHECK(C.splitting_at(5).factors == types({{1, 1}, {1, 2}}));
    CHECK(C.splitting_at(31).factors == types({{1, 1}, {1, 1}, {1, 1}}));
}

TEST_CASE("index divisors need certified splitting") {
    FieldSpec s = spec_of(IntPoly{-5, 0, 1}, "Q(sqrt 5) via x^2-5");
    s.certified_disc = 5;
    CHECK_THROWS_AS(NumberField(s).splitting_at(2), Error);
    s.certified_splitting[2] = types({{1, 2}});
    const auto sp = NumberField(s).splitting_at(2);
    CHECK(sp.index_divisor);
    CHECK(sp.factors == types({{1, 2}}));
    CHECK(NumberField(s).splitting_at(11).factors == types({{1, 1}, {1, 1}}));
}

TEST_CASE("quadratic splitting follows the Kronecker symbol") {
    for (std::int64_t d : {-4, -3, -23, -84, 5, 8, 12, 40, -7, 13, 1001 * 4 + 1}) {
        if (!oracle::is_fundamental_discriminant(d)) continue;
        const NumberField K(quadratic_field_spec(d));
        CHECK(K.invariants().signed_disc() == d);
        for (std::uint32_t p : primes_up_to(10000)) {
            const auto s = K.splitting_at(p);
            const auto chi = kronecker_symbol(d, p);
            int sum = 0;
            for (auto t : s.factors) sum += t.e * t.f;
            REQUIRE(sum == 2);
            if (chi == 1) CHECK(s.factors == types({{1, 1}, {1, 1}}));
            if (chi == -1) CHECK(s.factors == types({{1, 2}}));
            if (chi == 0) CHECK(s.factors == types({{2, 1}}));
        }
    }
}

TEST_CASE("quadratic polynomials") {
    CHECK(quadratic_poly(-23) == IntPoly{6, -1, 1});
    CHECK(quadratic_poly(-4) == IntPoly{1, 0, 1});
    CHECK(quadratic_poly(5) == IntPoly{-1, -1, 1});
    CHECK(quadratic_poly(8) == IntPoly{-2, 0, 1});
    for (std::int64_t d = -2000; d < 2000; ++d)
        if (oracle::is_fundamental_discriminant(d)) REQUIRE(poly_discriminant(quadratic_poly(d)) == d);
}
