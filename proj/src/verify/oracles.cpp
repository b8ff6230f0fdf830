#include "ltorsion/verify/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "ltorsion/algebra/integers.hpp"

namespace ltorsion::oracle {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// Inverse of a modulo m for gcd(a, m) = 1, m >= 1.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    if (m == 1) return 0;
    std::int64_t g = m, x = 0, r = floor_mod(a, m), y = 1;
    while (r != 0) {
        std::int64_t q = g / r;
        std::tie(g, r) = std::make_pair(r, g - q * r);
        std::tie(x, y) = std::make_pair(y, x - q * y);
    }
    return floor_mod(x, m);
}

bool squarefree_u64(std::uint64_t m) {
    for (std::uint64_t q = 2; q * q <= m; ++q)
        if (m % (q * q) == 0) return false;
    return true;
}

}  // namespace

mpz_class leibniz_resultant(const IntPoly& f, const IntPoly& g) {
    const int m = f.degree(), n = g.degree();
    const int size = m + n;
    if (size == 0) return 1;
    std::vector<std::vector<mpz_class>> s(size, std::vector<mpz_class>(size, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s[i][i + j] = f.coeff(m - j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s[n + i][i + j] = g.coeff(n - j);
    std::vector<int> perm(size);
    std::iota(perm.begin(), perm.end(), 0);
    mpz_class det = 0;
    do {
        int inversions = 0;
        for (int i = 0; i < size; ++i)
            for (int j = i + 1; j < size; ++j)
                if (perm[i] > perm[j]) ++inversions;
        mpz_class term = inversions % 2 ? -1 : 1;
        for (int i = 0; i < size && term != 0; ++i) term *= s[i][perm[i]];
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

mpz_class quadratic_discriminant(const IntPoly& f) {
    return f.coeff(1) * f.coeff(1) - 4 * f.coeff(2) * f.coeff(0);
}

int sign_change_root_count(const IntPoly& f, long den) {
    mpz_class lc = abs(f.leading());
    mpz_class bound = 1 + (f.max_abs_coeff() + lc - 1) / lc;
    const long B = bound.get_si();
    int count = 0;
    int prev = 0;
    for (long k = -B * den; k <= B * den; ++k) {
        const int s = f.sign_at(mpq_class(k, den));
        if (s == 0) {
            ++count;
        } else if (prev != 0 && s != prev) {
            ++count;
        }
        prev = s;
    }
    return count;
}

std::vector<std::uint64_t> roots_mod_p(const IntPoly& f, std::uint64_t p) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t r = 0; r < p; ++r) {
        mpz_class v = 0;
        for (int i = f.degree(); i >= 0; --i) v = v * static_cast<unsigned long>(r) + f.coeff(i);
        if (mpz_divisible_ui_p(v.get_mpz_t(), p)) out.push_back(r);
    }
    return out;
}

std::vector<std::uint32_t> quadratic_ideal_counts(std::int64_t d, std::uint32_t N) {
    std::vector<std::uint32_t> prim(N + 1, 0);
    for (std::int64_t a = 1; a <= N; ++a) {
        const std::int64_t m = 4 * a;
        for (std::int64_t b = 0; b < 2 * a; ++b)
            if (floor_mod(b * b - d, m) == 0) ++prim[a];
    }
    std::vector<std::uint32_t> out(N + 1, 0);
    for (std::uint64_t g = 1; g * g <= N; ++g)
        for (std::uint64_t a = 1; a * g * g <= N; ++a) out[a * g * g] += prim[a];
    return out;
}

std::vector<std::uint32_t> cubic_ideal_counts(const IntPoly& f, std::uint32_t N) {
    const std::int64_t p0 = f.coeff(0).get_si(), p1 = f.coeff(1).get_si(), p2 = f.coeff(2).get_si();
    struct V {
        std::int64_t x, y, z;
    };
    auto theta = [&](V v) { return V{-p0 * v.z, v.x - p1 * v.z, v.y - p2 * v.z}; };
    std::vector<std::uint32_t> out(N + 1, 0);
    const std::int64_t n = N;
    for (std::int64_t c = 1; c <= n; ++c)
        for (std::int64_t b = c; b * c <= n; b += c)
            for (std::int64_t a = b; a * b * c <= n; a += b) {
                // Lattice spanned by (a,0,0), (b1,b,0), (c1,c2,c).
                for (std::int64_t b1 = 0; b1 < a; b1 += b)
                    for (std::int64_t c2 = 0; c2 < b; c2 += c) {
                        // theta*(b1,b,0) = (0,b1,b) in L fixes c1 modulo a/g.
                        const std::int64_t t3 = b / c;
                        const std::int64_t y = b1 - t3 * c2;
                        if (floor_mod(y, b) != 0) continue;
                        const std::int64_t t2 = y / b;
                        const std::int64_t rhs = floor_mod(-t2 * b1, a);
                        const std::int64_t g = std::gcd(t3, a);
                        if (rhs % g != 0) continue;
                        const std::int64_t step = a / g;
                        const std::int64_t base = floor_mod((rhs / g) * inverse_mod(t3 / g, step), step);
                        for (std::int64_t c1 = base; c1 < a; c1 += step) {
                            auto member = [&](V v) {
                                if (floor_mod(v.z, c) != 0) return false;
                                const std::int64_t s3 = v.z / c;
                                const std::int64_t yy = v.y - s3 * c2;
                                if (floor_mod(yy, b) != 0) return false;
                                const std::int64_t s2 = yy / b;
                                return floor_mod(v.x - s3 * c1 - s2 * b1, a) == 0;
                            };
                            if (member(theta(V{a, 0, 0})) && member(theta(V{b1, b, 0})) &&
                                member(theta(V{c1, c2, c})))
                                ++out[a * b * c];
                        }
                    }
            }
    return out;
}

std::uint64_t class_number_analytic(std::int64_t d) {
    const std::uint64_t m = static_cast<std::uint64_t>(-d);
    std::int64_t sum = 0;
    for (std::uint64_t a = 1; a < m; ++a) sum += kronecker_symbol(d, a) * static_cast<std::int64_t>(a);
    const std::int64_t w = d == -3 ? 6 : d == -4 ? 4 : 2;
    return static_cast<std::uint64_t>(std::llabs(sum) * w / (2 * static_cast<std::int64_t>(m)));
}

std::uint64_t class_number_box(std::int64_t d) {
    const std::int64_t m = -d;
    std::uint64_t h = 0;
    for (std::int64_t c = 1; 4 * c <= m + 1; ++c) {
        for (std::int64_t a = 1; a <= c && 3 * a * a <= m; ++a) {
            const std::int64_t b2 = d + 4 * a * c;
            if (b2 < 0) continue;
            const std::int64_t b = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(b2))));
            if (b * b != b2 || b > a) continue;
            // (a, b, c) and (a, -b, c); the negative one is excluded on the boundary.
            ++h;
            if (b != 0 && b != a && a != c) ++h;
        }
    }
    return h;
}

double class_number_times_regulator(std::int64_t d) {
    long double sum = 0;
    for (std::int64_t a = 1; a < d; ++a) {
        const std::int64_t chi = kronecker_symbol(d, static_cast<std::uint64_t>(a));
        if (chi == 0) continue;
        sum += chi * std::log(std::sin(std::numbers::pi_v<long double> * a / d));
    }
    return static_cast<double>(-sum / 2);
}

std::uint64_t brute_torsion_count(const AbelianGroup& g, std::uint64_t ell) {
    const auto& d = g.invariant_factors();
    std::vector<std::uint64_t> e(d.size(), 0);
    std::uint64_t count = 0;
    while (true) {
        bool killed = true;
        for (std::size_t i = 0; i < d.size(); ++i)
            if ((e[i] * ell) % d[i] != 0) killed = false;
        if (killed) ++count;
        std::size_t i = 0;
        while (i < d.size() && ++e[i] == d[i]) e[i++] = 0;
        if (i == d.size()) break;
    }
    return count;
}

bool is_fundamental_discriminant(std::int64_t d) {
    if (d == 0 || d == 1) return false;
    const std::uint64_t m = static_cast<std::uint64_t>(std::llabs(d));
    if (floor_mod(d, 4) == 1) return squarefree_u64(m);
    if (floor_mod(d, 4) != 0) return false;
    const std::int64_t q = d / 4;
    const std::int64_t r = floor_mod(q, 4);
    return (r == 2 || r == 3) && squarefree_u64(m / 4);
}

}  // namespace ltorsion::oracle
