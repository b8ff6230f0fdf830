#include "ltorsion/algebra/mod_poly.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "ltorsion/algebra/primes.hpp"
#include "ltorsion/error.hpp"

namespace ltorsion {

namespace {
constexpr std::string_view kModule = "algebra_core";
using u128 = unsigned __int128;
}  // namespace

ModPoly::ModPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& c : c_) c %= p_;
    trim();
}

ModPoly ModPoly::from_int(const IntPoly& f, std::uint64_t p) {
    std::vector<std::uint64_t> c;
    c.reserve(f.coeffs().size());
    mpz_class r;
    for (const auto& a : f.coeffs()) {
        mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), p);
        c.push_back(r.get_ui());
    }
    return ModPoly(p, std::move(c));
}

ModPoly ModPoly::constant(std::uint64_t p, std::uint64_t c) { return ModPoly(p, {c}); }

ModPoly ModPoly::x(std::uint64_t p) { return ModPoly(p, {0, 1}); }

void ModPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly ModPoly::lift() const {
    std::vector<mpz_class> c;
    c.reserve(c_.size());
    for (auto v : c_) c.emplace_back(static_cast<unsigned long>(v));
    return IntPoly(std::move(c));
}

std::string ModPoly::to_string() const {
    std::ostringstream out;
    out << lift().to_string() << " (mod " << p_ << ")";
    return out.str();
}

bool operator<(const ModPoly& a, const ModPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.c_ < b.c_;
}

namespace fp {

std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    const std::uint64_t s = a + b;
    return (s >= p || s < a) ? s - p : s;
}

std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a >= b ? a - b : a + (p - b); }

std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t pow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = mul(r, b, p);
        b = mul(b, b, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) fail(kModule, Errc::InvalidArgument, "inverse of zero mod " + std::to_string(p));
    return pow(a, p - 2, p);
}

ModPoly add(const ModPoly& a, const ModPoly& b) {
    const std::uint64_t p = a.modulus();
    std::vector<std::uint64_t> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)), p);
    return ModPoly(p, std::move(c));
}

ModPoly sub(const ModPoly& a, const ModPoly& b) {
    const std::uint64_t p = a.modulus();
    std::vector<std::uint64_t> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = sub(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)), p);
    return ModPoly(p, std::move(c));
}

ModPoly mul(const ModPoly& a, const ModPoly& b) {
    const std::uint64_t p = a.modulus();
    if (a.is_zero() || b.is_zero()) return ModPoly(p);
    const auto& ac = a.coeffs();
    const auto& bc = b.coeffs();
    std::vector<std::uint64_t> c(ac.size() + bc.size() - 1, 0);
    for (std::size_t i = 0; i < ac.size(); ++i) {
        if (ac[i] == 0) continue;
        for (std::size_t j = 0; j < bc.size(); ++j) c[i + j] = add(c[i + j], mul(ac[i], bc[j], p), p);
    }
    return ModPoly(p, std::move(c));
}

ModPoly scale(const ModPoly& a, std::uint64_t s) {
    std::vector<std::uint64_t> c = a.coeffs();
    for (auto& v : c) v = mul(v, s, a.modulus());
    return ModPoly(a.modulus(), std::move(c));
}

ModPoly monic(const ModPoly& a) {
    if (a.is_zero() || a.leading() == 1) return a;
    return scale(a, inv(a.leading(), a.modulus()));
}

void divmod(const ModPoly& a, const ModPoly& b, ModPoly& q, ModPoly& r) {
    const std::uint64_t p = a.modulus();
    if (b.is_zero()) fail(kModule, Errc::InvalidArgument, "polynomial division by zero");
    std::vector<std::uint64_t> rc = a.coeffs();
    const auto& bc = b.coeffs();
    const int db = b.degree();
    const std::uint64_t lead_inv = inv(b.leading(), p);
    if (a.degree() < db) {
        q = ModPoly(p);
        r = a;
        return;
    }
    std::vector<std::uint64_t> qc(static_cast<std::size_t>(a.degree() - db + 1), 0);
    for (int i = a.degree(); i >= db; --i) {
        const std::uint64_t coef = mul(rc[static_cast<std::size_t>(i)], lead_inv, p);
        qc[static_cast<std::size_t>(i - db)] = coef;
        if (coef == 0) continue;
        for (int j = 0; j <= db; ++j) {
            auto& slot = rc[static_cast<std::size_t>(i - db + j)];
            slot = sub(slot, mul(coef, bc[static_cast<std::size_t>(j)], p), p);
        }
    }
    rc.resize(static_cast<std::size_t>(db));
    q = ModPoly(p, std::move(qc));
    r = ModPoly(p, std::move(rc));
}

ModPoly rem(const ModPoly& a, const ModPoly& b) {
    ModPoly q(a.modulus()), r(a.modulus());
    divmod(a, b, q, r);
    return r;
}

ModPoly quot(const ModPoly& a, const ModPoly& b) {
    ModPoly q(a.modulus()), r(a.modulus());
    divmod(a, b, q, r);
    return q;
}

ModPoly gcd(const ModPoly& a, const ModPoly& b) {
    ModPoly x = a;
    ModPoly y = b;
    while (!y.is_zero()) {
        ModPoly r = rem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return monic(x);
}

ModPoly derivative(const ModPoly& a) {
    const std::uint64_t p = a.modulus();
    if (a.degree() < 1) return ModPoly(p);
    std::vector<std::uint64_t> c(a.coeffs().size() - 1);
    for (std::size_t i = 1; i < a.coeffs().size(); ++i) c[i - 1] = mul(a.coeffs()[i], i % p, p);
    return ModPoly(p, std::move(c));
}

ModPoly mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m) { return rem(mul(a, b), m); }

ModPoly powmod(const ModPoly& base, const mpz_class& e, const ModPoly& m) {
    const std::uint64_t p = m.modulus();
    ModPoly result = rem(ModPoly::constant(p, 1), m);
    ModPoly b = rem(base, m);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = mulmod(result, result, m);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, b, m);
    }
    return result;
}

ModPoly powmod(const ModPoly& base, std::uint64_t e, const ModPoly& m) {
    return powmod(base, mpz_class(static_cast<unsigned long>(e)), m);
}

}  // namespace fp

namespace {

// f(x) = g(x^p) over F_p implies f = g^p with coefficients unchanged.
ModPoly pth_root(const ModPoly& f) {
    const std::uint64_t p = f.modulus();
    std::vector<std::uint64_t> c;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(f.coeffs()[i]);
    return ModPoly(p, std::move(c));
}

void squarefree_rec(const ModPoly& f, int scale, std::vector<ModFactor>& out) {
    const std::uint64_t p = f.modulus();
    if (f.degree() < 1) return;
    const ModPoly df = fp::derivative(f);
    if (df.is_zero()) {
        squarefree_rec(pth_root(f), scale * static_cast<int>(p), out);
        return;
    }
    ModPoly c = fp::gcd(f, df);
    ModPoly w = fp::quot(f, c);
    int i = 1;
    while (!w.is_one()) {
        ModPoly y = fp::gcd(w, c);
        ModPoly fac = fp::quot(w, y);
        if (fac.degree() >= 1) out.push_back({fp::monic(fac), i * scale});
        w = std::move(y);
        c = fp::quot(c, w);
        ++i;
    }
    if (c.degree() >= 1) squarefree_rec(pth_root(c), scale * static_cast<int>(p), out);
}

// Cantor-Zassenhaus splitting of a product of distinct degree-d irreducibles.
void equal_degree_split(const ModPoly& f, int d, std::mt19937_64& rng, std::vector<ModPoly>& out) {
    const std::uint64_t p = f.modulus();
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    std::uniform_int_distribution<std::uint64_t> coin(0, p - 1);
    mpz_class half_exp;
    if (p != 2) {
        mpz_ui_pow_ui(half_exp.get_mpz_t(), p, static_cast<unsigned long>(d));
        half_exp = (half_exp - 1) / 2;
    }
    while (true) {
        std::vector<std::uint64_t> c(static_cast<std::size_t>(f.degree()));
        for (auto& v : c) v = coin(rng);
        ModPoly a(p, std::move(c));
        if (a.degree() < 1) continue;
        ModPoly b(p);
        if (p == 2) {
            // Trace map a + a^2 + ... + a^{2^{d-1}} onto F_2.
            ModPoly term = a;
            b = a;
            for (int j = 1; j < d; ++j) {
                term = fp::mulmod(term, term, f);
                b = fp::add(b, term);
            }
        } else {
            b = fp::sub(fp::powmod(a, half_exp, f), ModPoly::constant(p, 1));
        }
        ModPoly g = fp::gcd(f, b);
        if (g.degree() >= 1 && g.degree() < f.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(fp::quot(f, g), d, rng, out);
            return;
        }
    }
}

ModPoly reduce_checked(const IntPoly& f, std::uint64_t p) {
    if (!is_prime(p)) fail(kModule, Errc::NotPrime, std::to_string(p) + " is not prime");
    ModPoly fb = ModPoly::from_int(f, p);
    if (fb.is_zero()) fail(kModule, Errc::InvalidArgument, f.to_string() + " vanishes mod " + std::to_string(p));
    return fb;
}

}  // namespace

std::vector<ModFactor> squarefree_decomposition(const ModPoly& f) {
    std::vector<ModFactor> out;
    squarefree_rec(fp::monic(f), 1, out);
    return out;
}

std::vector<DegreeBlock> distinct_degree_factorization(const ModPoly& f) {
    const std::uint64_t p = f.modulus();
    std::vector<DegreeBlock> out;
    ModPoly rest = fp::monic(f);
    ModPoly h = ModPoly::x(p);
    const ModPoly x = ModPoly::x(p);
    int i = 1;
    while (rest.degree() >= 2 * i) {
        h = fp::powmod(h, p, rest);
        ModPoly g = fp::gcd(rest, fp::sub(h, x));
        if (!g.is_one()) {
            out.push_back({g, i});
            rest = fp::quot(rest, g);
            h = fp::rem(h, rest);
        }
        ++i;
    }
    if (rest.degree() >= 1) out.push_back({rest, rest.degree()});
    return out;
}

std::vector<ModFactor> factor_mod_p(const IntPoly& f, std::uint64_t p, std::uint64_t seed) {
    const ModPoly fb = reduce_checked(f, p);
    std::mt19937_64 rng(seed ^ (p * 0x9E3779B97F4A7C15ULL));
    std::vector<ModFactor> out;
    for (const auto& [part, mult] : squarefree_decomposition(fb)) {
        for (const auto& block : distinct_degree_factorization(part)) {
            std::vector<ModPoly> pieces;
            equal_degree_split(block.product, block.degree, rng, pieces);
            for (auto& piece : pieces) out.push_back({fp::monic(piece), mult});
        }
    }
    std::sort(out.begin(), out.end(), [](const ModFactor& a, const ModFactor& b) {
        if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
        if (a.factor.coeffs() != b.factor.coeffs()) return a.factor.coeffs() < b.factor.coeffs();
        return a.multiplicity < b.multiplicity;
    });
    return out;
}

std::vector<FactorShape> factor_shape_mod_p(const IntPoly& f, std::uint64_t p) {
    const ModPoly fb = reduce_checked(f, p);
    std::vector<FactorShape> out;
    for (const auto& [part, mult] : squarefree_decomposition(fb))
        for (const auto& block : distinct_degree_factorization(part))
            for (int k = 0; k < block.product.degree() / block.degree; ++k) out.push_back({block.degree, mult});
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace ltorsion
