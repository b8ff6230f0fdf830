#include "ltorsion/algebra/integers.hpp"

#include <cmath>

#include "ltorsion/algebra/primes.hpp"
#include "ltorsion/error.hpp"

namespace ltorsion {

double log_abs(const mpz_class& n) {
    if (n == 0) fail("algebra_core", Errc::InvalidArgument, "log of zero");
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

bool is_perfect_square(const mpz_class& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

TrialFactorization trial_factor(const mpz_class& n, std::uint64_t bound) {
    TrialFactorization out;
    mpz_class m = abs(n);
    if (m == 0) fail("algebra_core", Errc::InvalidArgument, "cannot factor zero");

    mpz_class root = sqrt(m);
    const std::uint64_t limit =
        root.fits_ulong_p() ? std::min<std::uint64_t>(bound, root.get_ui()) : bound;
    for (std::uint32_t p : primes_up_to(limit)) {
        if (m == 1) break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), p) == 0) continue;
        unsigned e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        }
        out.factors.emplace_back(p, e);
        if (e >= 2) out.squarefree = Squarefree::No;
    }
    if (m == 1) return out;

    const mpz_class b = limit;
    if ((b + 1) * (b + 1) > m) {
        // No prime factor <= limit and m < (limit + 1)^2, hence prime.
        if (m.fits_ulong_p()) {
            out.factors.emplace_back(m.get_ui(), 1);
        } else {
            out.cofactor = m;
            out.complete = false;
        }
        return out;
    }
    out.cofactor = m;
    out.complete = false;
    if (is_perfect_square(m)) {
        out.cofactor_squarefree = Squarefree::No;
    } else if (b * b * b <= m) {
        out.cofactor_squarefree = Squarefree::Unknown;
    }
    // Otherwise at most two prime factors, both > b, and not a square.
    if (out.squarefree == Squarefree::Yes) out.squarefree = out.cofactor_squarefree;
    return out;
}

std::int64_t kronecker_symbol(std::int64_t a, std::uint64_t n) {
    mpz_class A = static_cast<long>(a);
    mpz_class N = static_cast<unsigned long>(n);
    return mpz_kronecker(A.get_mpz_t(), N.get_mpz_t());
}

}  // namespace ltorsion
