#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "ltorsion/algebra/int_poly.hpp"

namespace ltorsion {

// Polynomial over F_p, constant term first, coefficients in [0, p).
class ModPoly {
public:
    explicit ModPoly(std::uint64_t p) : p_(p) {}
    ModPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs);

    static ModPoly from_int(const IntPoly& f, std::uint64_t p);
    static ModPoly constant(std::uint64_t p, std::uint64_t c);
    static ModPoly x(std::uint64_t p);

    std::uint64_t modulus() const noexcept { return p_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
    const std::vector<std::uint64_t>& coeffs() const noexcept { return c_; }
    std::uint64_t coeff(int i) const { return (i < 0 || i > degree()) ? 0 : c_[static_cast<std::size_t>(i)]; }
    std::uint64_t leading() const { return c_.back(); }

    // Lift to Z with coefficients in [0, p).
    IntPoly lift() const;
    std::string to_string() const;

    friend bool operator==(const ModPoly& a, const ModPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
    friend bool operator<(const ModPoly& a, const ModPoly& b);

private:
    void trim();
    std::uint64_t p_;
    std::vector<std::uint64_t> c_;
};

namespace fp {
std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t inv(std::uint64_t a, std::uint64_t p);
std::uint64_t pow(std::uint64_t b, std::uint64_t e, std::uint64_t p);

ModPoly add(const ModPoly& a, const ModPoly& b);
ModPoly sub(const ModPoly& a, const ModPoly& b);
ModPoly mul(const ModPoly& a, const ModPoly& b);
ModPoly scale(const ModPoly& a, std::uint64_t c);
ModPoly monic(const ModPoly& a);
// a = q*b + r with deg r < deg b; b nonzero.
void divmod(const ModPoly& a, const ModPoly& b, ModPoly& q, ModPoly& r);
ModPoly rem(const ModPoly& a, const ModPoly& b);
ModPoly quot(const ModPoly& a, const ModPoly& b);
// Monic gcd; gcd(0, 0) = 0.
ModPoly gcd(const ModPoly& a, const ModPoly& b);
ModPoly derivative(const ModPoly& a);
ModPoly mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m);
ModPoly powmod(const ModPoly& base, const mpz_class& e, const ModPoly& m);
ModPoly powmod(const ModPoly& base, std::uint64_t e, const ModPoly& m);
}  // namespace fp

struct ModFactor {
    ModPoly factor;
    int multiplicity;
};

// Complete factorisation of f mod p into monic irreducibles. Output sorted by
// degree, then lexicographically on coefficients (constant term first).
// Equal-degree splitting draws from a generator seeded with `seed`.
// Throws NotPrime if p is not prime, InvalidArgument if f vanishes mod p.
std::vector<ModFactor> factor_mod_p(const IntPoly& f, std::uint64_t p, std::uint64_t seed = 0);

// Multiset of (degree, multiplicity) of irreducible factors of f mod p,
// sorted ascending. Uses only squarefree and distinct-degree steps, so it is
// deterministic and cheaper than factor_mod_p.
struct FactorShape {
    int degree;
    int multiplicity;
    friend bool operator==(const FactorShape&, const FactorShape&) = default;
    friend auto operator<=>(const FactorShape&, const FactorShape&) = default;
};
std::vector<FactorShape> factor_shape_mod_p(const IntPoly& f, std::uint64_t p);

// Squarefree decomposition of a monic polynomial: pairs (g_i, i) with
// f = prod g_i^i and each g_i squarefree.
std::vector<ModFactor> squarefree_decomposition(const ModPoly& f);

// Distinct-degree factorisation of a squarefree monic polynomial: h_d is the
// product of all irreducible factors of degree d.
struct DegreeBlock {
    ModPoly product;
    int degree;
};
std::vector<DegreeBlock> distinct_degree_factorization(const ModPoly& f);

}  // namespace ltorsion
