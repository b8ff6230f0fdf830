#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <vector>

namespace ltorsion {

// Dense polynomial over Z, constant term first. Trailing zero coefficients
// are stripped on construction so degree() is always exact.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs);
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly monomial(const mpz_class& coeff, int degree);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_monic() const;

    const std::vector<mpz_class>& coeffs() const noexcept { return coeffs_; }
    // Coefficient of x^i; zero beyond the degree.
    mpz_class coeff(int i) const;
    const mpz_class& leading() const;

    IntPoly derivative() const;
    mpz_class max_abs_coeff() const;

    // Evaluates sign(f(r)) for rational r = num/den, den > 0.
    int sign_at(const mpq_class& r) const;

    std::string to_string() const;

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);

private:
    void trim();
    std::vector<mpz_class> coeffs_;
};

// Res(f, g) as the determinant of the Sylvester matrix, computed with
// fraction-free (Bareiss) elimination.
mpz_class resultant(const IntPoly& f, const IntPoly& g);

// disc(f) = (-1)^{d(d-1)/2} Res(f, f') / lc(f). Requires deg f >= 1.
mpz_class poly_discriminant(const IntPoly& f);

// Number of distinct real roots via an exact Sturm sequence over Q.
// Throws NotSquarefree when gcd(f, f') is nonconstant.
int count_real_roots(const IntPoly& f);

// Exact division by a nonzero integer; every coefficient must be divisible.
IntPoly divide_exact(const IntPoly& f, const mpz_class& d);

}  // namespace ltorsion
