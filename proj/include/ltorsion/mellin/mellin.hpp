#pragma once

#include <complex>
#include <cstdint>
#include <functional>

#include "ltorsion/zeta/coeff_table.hpp"

namespace ltorsion {

// phi_k(t) = t log(1/t)^k / k! on (0, 1], zero elsewhere. Its Mellin
// transform is 1/(s+1)^{k+1}.
class SmoothKernel {
public:
    explicit SmoothKernel(int k);  // InvalidArgument unless k >= 1
    int k() const noexcept { return k_; }

    double phi(double t) const;
    // PoleAtMinusOne at s = -1.
    std::complex<double> transform(std::complex<double> s) const;

private:
    int k_;
    double inv_factorial_;
};

// Sum of coeff(n) phi_k(n/x) over n <= x, coeff = lambda-flat or lambda,
// with compensated summation. OutOfRange when x exceeds the table bound.
double smoothed_sum(const CoeffTable& table, const SmoothKernel& kernel, double x, bool sifted);

// Adaptive Simpson on [a, b] with absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, int max_depth = 50);

// Numerical int_0^1 phi_k(t) t^{s-1} dt via t = e^{-u}, for Re s > -1.
std::complex<double> mellin_transform_numeric(const SmoothKernel& kernel, std::complex<double> s, double tol = 1e-13);

struct InversionCheck {
    double lhs = 0;             // smoothed_sum
    double rhs = 0;             // truncated line integral on Re s = 2
    double abs_error = 0;       // |lhs - rhs|
    double T = 0;               // truncation height used
    double tail_bound = 0;      // rigorous bound on the |Im s| > T part
    double quadrature_tol = 0;  // absolute tolerance handed to the quadrature
    int terms = 0;              // nonzero Dirichlet terms n <= x
};

struct InversionOptions {
    double T = 0;                  // 0 picks T so that tail_bound <= tail_target
    double tail_target = 1e-7;
    double quadrature_tol = 1e-8;  // absolute, over the whole integral
    double target = 1e-6;          // ToleranceNotMet when tail_bound exceeds it
};

// Checks S(x) = (1/2 pi i) int_(2) Z(s) x^s / (s+1)^{k+1} ds with
// Z(s) = sum_{n <= x} lambda-flat(n) n^{-s}. Terms with n > x integrate to
// zero over the full line, so only the truncation in T is approximate.
InversionCheck verify_inversion(const CoeffTable& table, const SmoothKernel& kernel, double x,
                                const InversionOptions& options = {});

}  // namespace ltorsion
