#include "ltorsion/mellin/mellin.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <vector>

#include "ltorsion/error.hpp"

namespace ltorsion {

namespace {
constexpr std::string_view kModule = "mellin";

// Neumaier's variant of Kahan summation.
struct CompensatedSum {
    double sum = 0, comp = 0;
    void add(double v) {
        const double t = sum + v;
        if (std::fabs(sum) >= std::fabs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

double simpson_step(const std::function<double(double)>& f, double a, double fa, double b, double fb, double m,
                    double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    const double diff = left + right - whole;
    if (depth <= 0 || std::fabs(diff) <= 15 * tol || (b - a) < 1e-12) return left + right + diff / 15;
    return simpson_step(f, a, fa, m, fm, lm, flm, left, tol / 2, depth - 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, tol / 2, depth - 1);
}

// Adaptive Simpson with a floor on the tolerance at the rounding noise of
// the panel so deep recursion never chases floating-point dust.
double simpson_panel(const std::function<double(double)>& f, double a, double b, double tol, int max_depth) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    const double scale = std::max({std::fabs(fa), std::fabs(fb), std::fabs(fm)}) * (b - a);
    const double floor_tol = 64 * DBL_EPSILON * scale;
    return simpson_step(f, a, fa, b, fb, m, fm, whole, std::max(tol, floor_tol), max_depth);
}
}  // namespace

SmoothKernel::SmoothKernel(int k) : k_(k) {
    if (k < 1) fail(kModule, Errc::InvalidArgument, "kernel order k must be >= 1, got " + std::to_string(k));
    inv_factorial_ = 1.0 / std::tgamma(k + 1.0);
}

double SmoothKernel::phi(double t) const {
    if (!(t > 0) || t > 1) return 0;
    return t * std::pow(-std::log(t), k_) * inv_factorial_;
}

std::complex<double> SmoothKernel::transform(std::complex<double> s) const {
    const std::complex<double> z = s + 1.0;
    if (z == 0.0) fail(kModule, Errc::PoleAtMinusOne, "transform has a pole at s = -1");
    return 1.0 / std::pow(z, k_ + 1);
}

double smoothed_sum(const CoeffTable& table, const SmoothKernel& kernel, double x, bool sifted) {
    if (std::floor(x) > static_cast<double>(table.X()))
        fail(kModule, Errc::OutOfRange, "x = " + std::to_string(x) + " beyond table bound " + std::to_string(table.X()));
    if (x < 1) return 0;
    const auto& c = sifted ? table.lambda_flat_values() : table.lambda_values();
    const auto n_max = static_cast<std::uint64_t>(std::floor(x));
    CompensatedSum acc;
    for (std::uint64_t n = 1; n <= n_max; ++n)
        if (c[n]) acc.add(c[n] * kernel.phi(static_cast<double>(n) / x));
    return acc.value();
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, int max_depth) {
    return simpson_panel(f, a, b, tol, max_depth);
}

std::complex<double> mellin_transform_numeric(const SmoothKernel& kernel, std::complex<double> s, double tol) {
    const double sigma = s.real() + 1;
    if (!(sigma > 0)) fail(kModule, Errc::InvalidArgument, "numeric transform needs Re s > -1");
    // Integrand u^k e^{-u(s+1)} / k! after t = e^{-u}; cut where it is below 1e-30.
    const double U = (40.0 + 6.0 * kernel.k()) / std::min(1.0, sigma) + 20;
    const int panels = static_cast<int>(std::ceil(U * std::max(1.0, std::fabs(s.imag()))));
    const double width = U / panels;
    const double k_fact = std::tgamma(kernel.k() + 1.0);
    auto part = [&](bool imag) {
        return [&, imag](double u) {
            const std::complex<double> v = std::pow(u, kernel.k()) / k_fact * std::exp(-u * (s + 1.0));
            return imag ? v.imag() : v.real();
        };
    };
    CompensatedSum re, im;
    for (int i = 0; i < panels; ++i) {
        const double a = i * width, b = a + width;
        re.add(simpson_panel(part(false), a, b, tol / panels, 40));
        im.add(simpson_panel(part(true), a, b, tol / panels, 40));
    }
    return {re.value(), im.value()};
}

InversionCheck verify_inversion(const CoeffTable& table, const SmoothKernel& kernel, double x,
                                const InversionOptions& options) {
    InversionCheck out;
    out.lhs = smoothed_sum(table, kernel, x, true);
    const int k = kernel.k();

    std::vector<double> w, u;
    if (x >= 1) {
        const auto n_max = static_cast<std::uint64_t>(std::floor(x));
        for (std::uint64_t n = 1; n <= n_max; ++n) {
            const std::uint32_t c = table.lambda_flat(n);
            if (!c) continue;
            const double r = x / static_cast<double>(n);
            w.push_back(c * r * r);
            u.push_back(std::log(r));
        }
    }
    out.terms = static_cast<int>(w.size());

    // (1/pi) int_T^inf |e^{iut} (3+it)^{-(k+1)}| is at most T^-k/k, and
    // 2 T^-(k+1)/|u| after one integration by parts.
    auto tail = [&](double T) {
        CompensatedSum acc;
        for (std::size_t i = 0; i < w.size(); ++i) {
            double b = std::pow(T, -k) / k;
            if (u[i] > 0) b = std::min(b, 2 * std::pow(T, -(k + 1)) / u[i]);
            acc.add(w[i] * b);
        }
        return acc.value() / std::numbers::pi;
    };

    double T = options.T;
    if (T <= 0) {
        double hi = 8;
        while (tail(hi) > options.tail_target) hi *= 2;
        double lo = hi / 2;
        for (int i = 0; i < 30; ++i) {
            const double mid = 0.5 * (lo + hi);
            (tail(mid) > options.tail_target ? lo : hi) = mid;
        }
        T = hi;
    }
    out.T = T;
    out.tail_bound = tail(T);
    if (out.tail_bound > options.target)
        fail(kModule, Errc::ToleranceNotMet,
             "T = " + std::to_string(T) + " leaves a tail bound of " + std::to_string(out.tail_bound));

    auto integrand = [&](double t) {
        double re = 0, im = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double a = u[i] * t;
            re += w[i] * std::cos(a);
            im += w[i] * std::sin(a);
        }
        return (std::complex<double>(re, im) / std::pow(std::complex<double>(3, t), k + 1)).real();
    };

    // Panels a quarter oscillation wide at the fastest frequency log x.
    const double umax = u.empty() ? 1.0 : std::max(1.0, *std::max_element(u.begin(), u.end()));
    const double width = std::numbers::pi / (2 * umax);
    const auto panels = static_cast<std::size_t>(std::ceil(T / width));
    const double step = T / static_cast<double>(panels);
    out.quadrature_tol = options.quadrature_tol;
    const double panel_tol = options.quadrature_tol * std::numbers::pi / static_cast<double>(panels);
    CompensatedSum acc;
    if (!w.empty())
        for (std::size_t i = 0; i < panels; ++i)
            acc.add(simpson_panel(integrand, static_cast<double>(i) * step, static_cast<double>(i + 1) * step,
                                  panel_tol, 30));
    out.rhs = acc.value() / std::numbers::pi;
    out.abs_error = std::fabs(out.lhs - out.rhs);
    return out;
}

}  // namespace ltorsion
