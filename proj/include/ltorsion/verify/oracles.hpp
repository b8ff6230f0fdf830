#pragma once

// Independent brute-force oracles. Each one deliberately avoids the
// algorithm it checks so that agreement means something.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "ltorsion/algebra/int_poly.hpp"
#include "ltorsion/quad/abelian_group.hpp"

namespace ltorsion::oracle {

// Determinant of the Sylvester matrix by permutation expansion. Only for
// deg f + deg g <= 8.
mpz_class leibniz_resultant(const IntPoly& f, const IntPoly& g);

// b^2 - 4ac for a quadratic.
mpz_class quadratic_discriminant(const IntPoly& f);

// Real roots counted as sign changes of f on the grid k/den, |k/den| <= B,
// B = 1 + max|coeff|/|lc|. Exact zeros on the grid count once. Correct when
// roots are simple and further apart than 1/den.
int sign_change_root_count(const IntPoly& f, long den);

// Residues r in [0, p) with f(r) = 0 mod p.
std::vector<std::uint64_t> roots_mod_p(const IntPoly& f, std::uint64_t p);

// out[n] = number of ideals of norm n in the maximal order of Q(sqrt d),
// d fundamental, for 0 <= n <= N (out[0] = 0). Ideals are g * (a, (b+sqrt d)/2)
// with b^2 = d mod 4a and 0 <= b < 2a.
std::vector<std::uint32_t> quadratic_ideal_counts(std::int64_t d, std::uint32_t N);

// out[n] = number of sublattices of index n of Z[theta] = Z[x]/(f) closed
// under multiplication by theta, for monic cubic f. Equals the ideal count
// when Z[theta] is the maximal order. Enumerates Hermite normal forms.
std::vector<std::uint32_t> cubic_ideal_counts(const IntPoly& f, std::uint32_t N);

// h(d) for d < 0 from the analytic formula h = w/(2|d|) * |sum chi(a) a|.
std::uint64_t class_number_analytic(std::int64_t d);

// h(d) for d < 0 by scanning every triple (a, b, c) with b^2 - 4ac = d in
// the reduction box, outer loop over c.
std::uint64_t class_number_box(std::int64_t d);

// h(d) R(d) for d > 0 from -1/2 sum_{0<a<d} chi(a) log sin(pi a / d).
double class_number_times_regulator(std::int64_t d);

// |G[ell]| by visiting every element of G.
std::uint64_t brute_torsion_count(const AbelianGroup& g, std::uint64_t ell);

// Fundamental discriminant test straight from the definition.
bool is_fundamental_discriminant(std::int64_t d);

}  // namespace ltorsion::oracle
