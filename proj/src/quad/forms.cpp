#include "ltorsion/quad/forms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "ltorsion/algebra/integers.hpp"
#include "ltorsion/error.hpp"

namespace ltorsion {

namespace {
constexpr std::string_view kModule = "quad_classgroup";

using i128 = __int128;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) { return a - floor_div(a, m) * m; }

std::int64_t isqrt(std::int64_t n) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// u*a + v*b = g = gcd(a, b) >= 0.
std::int64_t xgcd(std::int64_t a, std::int64_t b, std::int64_t& u, std::int64_t& v) {
    std::int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        const std::int64_t q = floor_div(r0, r1);
        std::tie(r0, r1) = std::make_tuple(r1, r0 - q * r1);
        std::tie(s0, s1) = std::make_tuple(s1, s0 - q * s1);
        std::tie(t0, t1) = std::make_tuple(t1, t0 - q * t1);
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    u = s0;
    v = t0;
    return r0;
}

std::int64_t narrow(i128 v) {
    if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN))
        fail(kModule, Errc::CapExceeded, "form coefficient exceeds 64 bits");
    return static_cast<std::int64_t>(v);
}

// c from (a, b) and the discriminant.
std::int64_t third_coeff(std::int64_t a, std::int64_t b, std::int64_t d) {
    const i128 num = static_cast<i128>(b) * b - d;
    return narrow(num / (4 * static_cast<i128>(a)));
}

bool squarefree_u64(std::uint64_t m) {
    for (std::uint64_t q = 2; q * q <= m; ++q)
        if (m % (q * q) == 0) return false;
    return true;
}

void require_fundamental(std::int64_t d) {
    if (!is_fundamental_discriminant(d))
        fail(kModule, Errc::NotFundamental, std::to_string(d) + " is not a fundamental discriminant");
}

// Positive-a representative of an indefinite class for composition.
QuadForm positive_leading(QuadForm f) {
    f = reduce_indefinite(f);
    if (f.a < 0) f = rho(f);
    return f;
}

// Cohen, Algorithm 5.4.7, without the final reduction. Needs a1, a2 > 0.
QuadForm compose_raw(QuadForm f1, QuadForm f2) {
    const std::int64_t D = f1.discriminant();
    if (f1.a > f2.a) std::swap(f1, f2);
    const std::int64_t s = (f1.b + f2.b) / 2;
    const std::int64_t n = f2.b - s;
    std::int64_t y1, dd;
    if (f2.a % f1.a == 0) {
        y1 = 0;
        dd = f1.a;
    } else {
        std::int64_t u, v;
        dd = xgcd(f2.a, f1.a, u, v);
        y1 = u;
    }
    std::int64_t x2, y2, d1;
    if (s % dd == 0) {
        y2 = -1;
        x2 = 0;
        d1 = dd;
    } else {
        d1 = xgcd(s, dd, x2, y2);
        y2 = -y2;
    }
    const std::int64_t v1 = f1.a / d1, v2 = f2.a / d1;
    const i128 r128 = (static_cast<i128>(y1) * y2 % v1 * n - static_cast<i128>(x2) * f2.c % v1) % v1;
    std::int64_t r = static_cast<std::int64_t>(r128);
    if (r < 0) r += v1;
    const std::int64_t b3 = narrow(f2.b + 2 * static_cast<i128>(v2) * r);
    const std::int64_t a3 = narrow(static_cast<i128>(v1) * v2);
    return QuadForm{a3, b3, third_coeff(a3, b3, D)};
}

}  // namespace

std::int64_t QuadForm::discriminant() const { return narrow(static_cast<i128>(b) * b - 4 * static_cast<i128>(a) * c); }

std::string QuadForm::to_string() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

bool is_fundamental_discriminant(std::int64_t d) {
    if (d == 0 || d == 1) return false;
    const std::uint64_t m = static_cast<std::uint64_t>(d < 0 ? -d : d);
    if (floor_mod(d, 4) == 1) return squarefree_u64(m);
    if (floor_mod(d, 4) != 0) return false;
    const std::int64_t r = floor_mod(d / 4, 4);
    return (r == 2 || r == 3) && squarefree_u64(m / 4);
}

QuadForm principal_form(std::int64_t d) {
    const std::int64_t b0 = floor_mod(d, 2);
    return QuadForm{1, b0, third_coeff(1, b0, d)};
}

bool is_reduced_definite(const QuadForm& f) {
    if (f.a <= 0) return false;
    if (!(std::llabs(f.b) <= f.a && f.a <= f.c)) return false;
    if ((std::llabs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
}

QuadForm reduce_definite(QuadForm f) {
    const std::int64_t d = f.discriminant();
    if (d >= 0 || f.a <= 0) fail(kModule, Errc::InvalidArgument, "reduce_definite needs a positive definite form");
    while (true) {
        if (!(-f.a < f.b && f.b <= f.a)) {
            const std::int64_t r = floor_div(f.a - f.b, 2 * f.a);
            f.b = narrow(f.b + 2 * static_cast<i128>(r) * f.a);
            f.c = third_coeff(f.a, f.b, d);
        }
        if (f.a > f.c) {
            f = QuadForm{f.c, -f.b, f.a};
            continue;
        }
        if (f.a == f.c && f.b < 0) f.b = -f.b;
        return f;
    }
}

QuadForm rho(const QuadForm& f) {
    const std::int64_t d = f.discriminant();
    const std::int64_t s = isqrt(d);
    const std::int64_t cc = std::llabs(f.c);
    const std::int64_t m = 2 * cc;
    std::int64_t r;
    if (cc > s) {
        // -|c| < r <= |c|
        r = floor_mod(-f.b, m);
        if (r > cc) r -= m;
    } else {
        // s - 2|c| < r <= s
        const std::int64_t lo = s - m + 1;
        r = lo + floor_mod(-f.b - lo, m);
    }
    return QuadForm{f.c, r, third_coeff(f.c, r, d)};
}

bool is_reduced_indefinite(const QuadForm& f) {
    const std::int64_t d = f.discriminant();
    if (d <= 0) return false;
    const std::int64_t s = isqrt(d);
    const std::int64_t a = std::llabs(f.a);
    return f.b > 0 && f.b <= s && 2 * a - f.b <= s && 2 * a + f.b >= s + 1;
}

QuadForm reduce_indefinite(QuadForm f) {
    const std::int64_t d = f.discriminant();
    if (d <= 0 || is_perfect_square(mpz_class(static_cast<long>(d))))
        fail(kModule, Errc::InvalidArgument, "reduce_indefinite needs a non-square positive discriminant");
    for (int guard = 0; !is_reduced_indefinite(f); ++guard) {
        if (guard > 100000) fail(kModule, Errc::CapExceeded, "indefinite reduction did not terminate");
        f = rho(f);
    }
    return f;
}

std::vector<QuadForm> reduced_forms(std::int64_t d) {
    require_fundamental(d);
    if (d > 0) fail(kModule, Errc::InvalidArgument, "reduced_forms needs d < 0");
    std::vector<QuadForm> out;
    const std::int64_t m = -d;
    for (std::int64_t a = 1; 3 * a * a <= m; ++a)
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            const std::int64_t num = b * b - d;
            if (num % (4 * a) != 0) continue;
            const QuadForm f{a, b, num / (4 * a)};
            if (is_reduced_definite(f) && std::gcd(std::gcd(f.a, f.b), f.c) == 1) out.push_back(f);
        }
    std::sort(out.begin(), out.end());
    return out;
}

QuadForm compose(const QuadForm& f, const QuadForm& g) {
    const std::int64_t d = f.discriminant();
    if (g.discriminant() != d)
        fail(kModule, Errc::DiscriminantMismatch,
             f.to_string() + " and " + g.to_string() + " have different discriminants");
    if (d < 0) return reduce_definite(compose_raw(reduce_definite(f), reduce_definite(g)));
    return reduce_indefinite(compose_raw(positive_leading(f), positive_leading(g)));
}

int roots_of_unity(std::int64_t d) { return d == -3 ? 6 : d == -4 ? 4 : 2; }

FormClassTable::FormClassTable(std::int64_t d) : d_(d) {
    require_fundamental(d);
    if (d < 0) {
        reps_ = reduced_forms(d);
        for (std::size_t i = 0; i < reps_.size(); ++i) index_[reps_[i]] = i;
        return;
    }
    const std::int64_t s = isqrt(d);
    std::vector<QuadForm> all;
    for (std::int64_t b = 1; b <= s; ++b) {
        if (floor_mod(b - d, 2) != 0) continue;
        const std::int64_t m = (d - b * b) / 4;
        for (std::int64_t a = 1; a <= m; ++a) {
            if (m % a != 0) continue;
            for (std::int64_t sign : {1, -1}) {
                const QuadForm f{sign * a, b, -sign * (m / a)};
                if (is_reduced_indefinite(f) && std::gcd(std::gcd(f.a, f.b), f.c) == 1) all.push_back(f);
            }
        }
    }
    std::sort(all.begin(), all.end());
    auto walk = [&](const QuadForm& start) {
        const std::size_t id = reps_.size();
        QuadForm f = start;
        do {
            index_[f] = id;
            f = rho(f);
        } while (f != start);
        reps_.push_back(start);
    };
    walk(reduce_indefinite(principal_form(d)));
    for (const auto& f : all)
        if (!index_.count(f)) walk(f);
}

std::size_t FormClassTable::index_of(const QuadForm& f) const {
    if (f.discriminant() != d_) fail(kModule, Errc::DiscriminantMismatch, f.to_string() + " has the wrong discriminant");
    const QuadForm r = d_ < 0 ? reduce_definite(f) : reduce_indefinite(f);
    auto it = index_.find(r);
    if (it == index_.end()) fail(kModule, Errc::InvalidArgument, r.to_string() + " is not a primitive reduced form");
    return it->second;
}

std::size_t FormClassTable::compose(std::size_t i, std::size_t j) const {
    return index_of(ltorsion::compose(reps_[i], reps_[j]));
}

RealQuadData real_quad_data(std::int64_t d, std::int64_t cap, std::uint64_t op_cap) {
    require_fundamental(d);
    if (d < 0) fail(kModule, Errc::InvalidArgument, "real_quad_data needs d > 0");
    if (d > cap) fail(kModule, Errc::CapExceeded, "d = " + std::to_string(d) + " exceeds cap " + std::to_string(cap));
    RealQuadData out;
    out.d = d;
    const std::int64_t s = isqrt(d);
    const long double sqrt_d = std::sqrt(static_cast<long double>(d));

    // omega = (P0 + sqrt d)/2; the expansion is periodic from alpha_1.
    std::int64_t P = d % 2 != 0 ? 1 : 0, Q = 2;
    std::int64_t a = floor_div(P + s, Q);
    P = a * Q - P;
    Q = (d - P * P) / Q;
    const std::int64_t P1 = P, Q1 = Q;
    mpq_class X = 1, Y = 0;
    long double log_sum = 0;
    int k = 0;
    do {
        const mpq_class Pq(static_cast<long>(P)), Qq(static_cast<long>(Q));
        const mpq_class Xn = (X * Pq + Y * static_cast<long>(d)) / Qq;
        const mpq_class Yn = (X + Y * Pq) / Qq;
        X = Xn;
        Y = Yn;
        log_sum += std::log((P + sqrt_d) / Q);
        a = floor_div(P + s, Q);
        P = a * Q - P;
        Q = (d - P * P) / Q;
        if (++k > 10'000'000) fail(kModule, Errc::CapExceeded, "continued fraction period too long");
    } while (P != P1 || Q != Q1);

    X.canonicalize();
    Y.canonicalize();
    const mpq_class t2 = 2 * X, u2 = 2 * Y;
    if (t2.get_den() != 1 || u2.get_den() != 1)
        fail(kModule, Errc::InvalidArgument, "continued fraction product is not an algebraic integer");
    out.t = t2.get_num();
    out.u = u2.get_num();
    out.period = k;
    out.unit_norm = (k % 2 == 0) ? 1 : -1;
    const mpz_class norm4 = out.t * out.t - static_cast<long>(d) * out.u * out.u;
    if (norm4 != 4 * out.unit_norm) fail(kModule, Errc::InvalidArgument, "fundamental unit norm check failed");

    // log((t + u sqrt d)/2) = log t + log1p(-N/(t eps)); the correction is
    // below 2^-100 once t exceeds 2^50.
    long double exact_log;
    if (mpz_sizeinbase(out.t.get_mpz_t(), 2) <= 50) {
        const long double tl = out.t.get_d(), ul = out.u.get_d();
        exact_log = std::log((tl + ul * sqrt_d) / 2);
    } else {
        exact_log = log_abs(out.t);
    }
    out.regulator = static_cast<double>(exact_log);
    out.regulator_error = static_cast<double>(std::fabs(exact_log - log_sum)) + 4e-16 * out.regulator;

    const FormClassTable table(d);
    out.h_plus = table.size();
    out.narrow_class_group =
        group_structure(table.size(), 0, [&](std::size_t i, std::size_t j) { return table.compose(i, j); }, op_cap);
    if (out.unit_norm == -1) {
        out.h = out.h_plus;
        out.class_group = out.narrow_class_group;
        return out;
    }
    // Wide classes: narrow classes modulo the class of (-1, b0, (d - b0^2)/4).
    const std::int64_t b0 = d % 2;
    const std::size_t sigma = table.index_of(QuadForm{-1, b0, (d - b0 * b0) / 4});
    if (sigma == 0) fail(kModule, Errc::InvalidArgument, "N(eps) = +1 but the sign class is trivial");
    std::vector<std::size_t> coset_of(table.size(), SIZE_MAX);
    std::vector<std::size_t> coset_rep;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (coset_of[i] != SIZE_MAX) continue;
        coset_of[i] = coset_of[table.compose(i, sigma)] = coset_rep.size();
        coset_rep.push_back(i);
    }
    out.h = coset_rep.size();
    out.class_group = group_structure(
        coset_rep.size(), 0,
        [&](std::size_t i, std::size_t j) { return coset_of[table.compose(coset_rep[i], coset_rep[j])]; }, op_cap);
    return out;
}

QuadClassData quadratic_class_data(std::int64_t d, std::uint64_t op_cap) {
    QuadClassData out;
    out.d = d;
    out.w = roots_of_unity(d);
    if (d > 0) {
        const RealQuadData r = real_quad_data(d, INT64_MAX, op_cap);
        out.h = r.h;
        out.class_group = r.class_group;
        out.regulator = r.regulator;
        out.regulator_error = r.regulator_error;
        return out;
    }
    const FormClassTable table(d);
    out.h = table.size();
    out.class_group =
        group_structure(table.size(), 0, [&](std::size_t i, std::size_t j) { return table.compose(i, j); }, op_cap);
    return out;
}

double dirichlet_kappa(std::int64_t d, std::uint64_t h, double regulator, int w) {
    if (h == 0 || w <= 0 || !(regulator > 0)) fail(kModule, Errc::InvalidArgument, "dirichlet_kappa needs h, w, R > 0");
    const double hd = static_cast<double>(h);
    if (d < 0) return 2 * std::numbers::pi * hd / (w * std::sqrt(static_cast<double>(-d)));
    return 2 * hd * regulator / std::sqrt(static_cast<double>(d));
}

}  // namespace ltorsion
