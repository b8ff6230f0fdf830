#include "ltorsion/algebra/int_poly.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "ltorsion/error.hpp"

namespace ltorsion {

namespace {
constexpr std::string_view kModule = "algebra_core";

using RatPoly = std::vector<mpq_class>;

void trim_rat(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of a by b over Q; b nonzero.
RatPoly rat_rem(RatPoly a, const RatPoly& b) {
    const std::size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const mpq_class q = a.back() / b.back();
        for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= q * b[i];
        a.pop_back();
        trim_rat(a);
    }
    return a;
}

// Scale by a positive rational so coefficients are coprime integers; the
// sign pattern used by Sturm's theorem is unchanged.
void make_primitive(RatPoly& p) {
    if (p.empty()) return;
    mpz_class den = 1;
    for (const auto& c : p) den = lcm(den, mpz_class(c.get_den()));
    mpz_class g = 0;
    for (auto& c : p) {
        c *= den;
        c.canonicalize();
        g = gcd(g, mpz_class(c.get_num()));
    }
    if (g > 1)
        for (auto& c : p) c /= g;
}

int sign_at_pos_inf(const RatPoly& p) { return sgn(p.back()); }
int sign_at_neg_inf(const RatPoly& p) {
    const int s = sgn(p.back());
    return ((p.size() - 1) % 2 == 0) ? s : -s;
}

int sign_changes(const std::vector<int>& signs) {
    int changes = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}
}  // namespace

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
}

IntPoly IntPoly::monomial(const mpz_class& coeff, int degree) {
    std::vector<mpz_class> c(static_cast<std::size_t>(degree) + 1, 0);
    c.back() = coeff;
    return IntPoly(std::move(c));
}

void IntPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

bool IntPoly::is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

mpz_class IntPoly::coeff(int i) const {
    if (i < 0 || i > degree()) return 0;
    return coeffs_[static_cast<std::size_t>(i)];
}

const mpz_class& IntPoly::leading() const {
    if (coeffs_.empty()) fail(kModule, Errc::InvalidArgument, "leading coefficient of zero polynomial");
    return coeffs_.back();
}

IntPoly IntPoly::derivative() const {
    if (coeffs_.size() <= 1) return IntPoly();
    std::vector<mpz_class> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return IntPoly(std::move(d));
}

mpz_class IntPoly::max_abs_coeff() const {
    mpz_class m = 0;
    for (const auto& c : coeffs_) m = std::max(m, mpz_class(abs(c)));
    return m;
}

int IntPoly::sign_at(const mpq_class& r) const {
    mpq_class acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + *it;
    return sgn(acc);
}

std::string IntPoly::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpz_class& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        mpz_class mag = abs(c);
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        if (i == 0 || mag != 1) out << mag.get_str();
        if (i >= 1) out << "x";
        if (i >= 2) out << "^" << i;
        first = false;
    }
    return out.str();
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<mpz_class> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<mpz_class> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
    return IntPoly(std::move(c));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<mpz_class> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPoly(std::move(c));
}

IntPoly divide_exact(const IntPoly& f, const mpz_class& d) {
    if (d == 0) fail(kModule, Errc::InvalidArgument, "division by zero");
    std::vector<mpz_class> c = f.coeffs();
    for (auto& x : c) {
        if (!mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()))
            fail(kModule, Errc::InvalidArgument, "inexact division of " + f.to_string() + " by " + d.get_str());
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    }
    return IntPoly(std::move(c));
}

mpz_class resultant(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero()) return 0;
    const int m = f.degree();
    const int n = g.degree();
    if (m == 0 && n == 0) return 1;
    if (m == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), f.leading().get_mpz_t(), static_cast<unsigned long>(n));
        return r;
    }
    if (n == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), g.leading().get_mpz_t(), static_cast<unsigned long>(m));
        return r;
    }

    // Sylvester matrix: n rows of f's coefficients, m rows of g's, highest degree first.
    const int size = m + n;
    std::vector<std::vector<mpz_class>> mat(size, std::vector<mpz_class>(size, 0));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) mat[r][r + i] = f.coeff(m - i);
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) mat[n + r][r + i] = g.coeff(n - i);

    // Bareiss fraction-free elimination.
    int sign = 1;
    mpz_class prev = 1;
    for (int k = 0; k < size - 1; ++k) {
        if (mat[k][k] == 0) {
            int swap_row = -1;
            for (int r = k + 1; r < size; ++r)
                if (mat[r][k] != 0) {
                    swap_row = r;
                    break;
                }
            if (swap_row < 0) return 0;
            std::swap(mat[k], mat[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < size; ++i) {
            for (int j = k + 1; j < size; ++j) {
                mpz_class v = mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                mat[i][j] = std::move(v);
            }
            mat[i][k] = 0;
        }
        prev = mat[k][k];
    }
    mpz_class det = mat[size - 1][size - 1];
    return sign < 0 ? mpz_class(-det) : det;
}

mpz_class poly_discriminant(const IntPoly& f) {
    const int d = f.degree();
    if (d < 1) fail(kModule, Errc::InvalidArgument, "discriminant needs degree >= 1");
    if (d == 1) return 1;
    mpz_class res = resultant(f, f.derivative());
    if ((static_cast<long>(d) * (d - 1) / 2) % 2 != 0) res = -res;
    mpz_class lc = f.leading();
    mpz_divexact(res.get_mpz_t(), res.get_mpz_t(), lc.get_mpz_t());
    return res;
}

int count_real_roots(const IntPoly& f) {
    if (f.degree() < 1) fail(kModule, Errc::InvalidArgument, "real root count needs degree >= 1");
    std::vector<RatPoly> seq;
    RatPoly p0(f.coeffs().begin(), f.coeffs().end());
    IntPoly df = f.derivative();
    RatPoly p1(df.coeffs().begin(), df.coeffs().end());
    seq.push_back(p0);
    seq.push_back(p1);
    while (true) {
        RatPoly r = rat_rem(seq[seq.size() - 2], seq.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        make_primitive(r);
        seq.push_back(std::move(r));
    }
    if (seq.back().size() > 1)
        fail(kModule, Errc::NotSquarefree, f.to_string() + " shares a factor with its derivative");

    std::vector<int> at_neg;
    std::vector<int> at_pos;
    for (const auto& p : seq) {
        at_neg.push_back(sign_at_neg_inf(p));
        at_pos.push_back(sign_at_pos_inf(p));
    }
    return sign_changes(at_neg) - sign_changes(at_pos);
}

}  // namespace ltorsion
