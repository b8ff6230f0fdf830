#include "ltorsion/zeta/coeff_table.hpp"

#include <cmath>
#include <limits>

#include "ltorsion/algebra/primes.hpp"
#include "ltorsion/error.hpp"

namespace ltorsion {

namespace {
constexpr std::string_view kModule = "zeta_arith";

std::uint64_t floor_bound(double x) { return x < 1 ? 0 : static_cast<std::uint64_t>(std::floor(x)); }
}  // namespace

std::uint64_t lambda_prime_power(const std::vector<PrimeIdealType>& splitting, int j) {
    if (j < 0) return 0;
    std::vector<std::uint64_t> c(static_cast<std::size_t>(j) + 1, 0);
    c[0] = 1;
    for (const auto& t : splitting)
        for (int m = t.f; m <= j; ++m) {
            if (c[m] > std::numeric_limits<std::uint64_t>::max() - c[m - t.f])
                fail(kModule, Errc::CapExceeded, "lambda(p^j) overflows 64 bits");
            c[m] += c[m - t.f];
        }
    return c[j];
}

std::uint32_t lambda_flat_prime(const std::vector<PrimeIdealType>& splitting) {
    std::uint32_t n = 0;
    for (const auto& t : splitting)
        if (t.e == 1 && t.f == 1) ++n;
    return n;
}

std::uint32_t CoeffTable::lambda(std::uint64_t n) const {
    if (n > X_) fail(kModule, Errc::OutOfRange, "n = " + std::to_string(n) + " beyond table bound " + std::to_string(X_));
    return lambda_[n];
}

std::uint32_t CoeffTable::lambda_flat(std::uint64_t n) const {
    if (n > X_) fail(kModule, Errc::OutOfRange, "n = " + std::to_string(n) + " beyond table bound " + std::to_string(X_));
    return flat_[n];
}

std::size_t CoeffTable::index_divisor_count() const {
    std::size_t n = 0;
    for (const auto& l : locals_) n += l.index_divisor ? 1 : 0;
    return n;
}

CoeffTable build_coeff_table(const NumberField& field, std::uint64_t X, const CoeffTableOptions& options) {
    if (X < 1) fail(kModule, Errc::InvalidArgument, "table bound must be at least 1");
    if (X > options.cap)
        fail(kModule, Errc::CapExceeded, "X = " + std::to_string(X) + " exceeds cap " + std::to_string(options.cap));
    const std::uint64_t bytes = 2 * sizeof(std::uint32_t) * (X + 1);
    if (bytes > options.memory_cap_bytes)
        fail(kModule, Errc::CapExceeded, "tables need " + std::to_string(bytes) + " bytes, cap is " +
                                             std::to_string(options.memory_cap_bytes));

    CoeffTable t;
    t.X_ = X;
    t.degree_ = field.degree();
    t.inv_ = field.invariants();
    t.label_ = field.spec().label;
    t.lambda_.assign(X + 1, 1);
    t.flat_.assign(X + 1, 1);
    t.lambda_[0] = t.flat_[0] = 0;

    for (std::uint32_t p : primes_up_to(X)) {
        LocalData local;
        local.p = p;
        try {
            const SplittingData s = field.splitting_at(p);
            local.factors = s.factors;
            local.index_divisor = s.index_divisor;
        } catch (const Error& e) {
            if (e.code() != Errc::IndexDivisorUnsupported) throw;
            fail(kModule, Errc::MissingSplitting, e.detail());
        }
        local.lambda_p = static_cast<std::uint32_t>(lambda_prime_power(local.factors, 1));
        local.lambda_flat_p = lambda_flat_prime(local.factors);

        // lambda(p^a) for every a with p^a <= X.
        std::vector<std::uint64_t> powers{1};
        for (std::uint64_t q = p; q <= X; q *= p) powers.push_back(lambda_prime_power(local.factors, static_cast<int>(powers.size())));

        for (std::uint64_t m = p; m <= X; m += p) {
            std::uint64_t k = m / p;
            std::size_t v = 1;
            while (k % p == 0) {
                k /= p;
                ++v;
            }
            const std::uint64_t prod = static_cast<std::uint64_t>(t.lambda_[m]) * powers[v];
            if (prod > std::numeric_limits<std::uint32_t>::max())
                fail(kModule, Errc::CapExceeded, "lambda(" + std::to_string(m) + ") overflows 32 bits");
            t.lambda_[m] = static_cast<std::uint32_t>(prod);
            t.flat_[m] = v == 1 ? t.flat_[m] * local.lambda_flat_p : 0;
        }
        t.locals_.push_back(std::move(local));
    }
    return t;
}

std::uint64_t pi_flat(const CoeffTable& table, double y) {
    if (std::floor(y) > static_cast<double>(table.X()))
        fail(kModule, Errc::OutOfRange, "y = " + std::to_string(y) + " beyond table bound " + std::to_string(table.X()));
    const std::uint64_t yy = floor_bound(y);
    std::uint64_t s = 0;
    for (const auto& l : table.locals()) {
        if (l.p > yy) break;
        s += l.lambda_flat_p;
    }
    return s;
}

std::uint64_t count_N_flat(const CoeffTable& table, double x) {
    if (std::floor(x) > static_cast<double>(table.X()))
        fail(kModule, Errc::OutOfRange, "x = " + std::to_string(x) + " beyond table bound " + std::to_string(table.X()));
    const std::uint64_t xx = floor_bound(x);
    std::uint64_t s = 0;
    const auto& f = table.lambda_flat_values();
    for (std::uint64_t n = 1; n <= xx; ++n) s += f[n];
    return s;
}

EulerFactorSet::EulerFactorSet(const CoeffTable& table) : bound_(table.X()), locals_(table.locals()) {}

std::complex<double> EulerFactorSet::eval_H(std::complex<double> s, double x) const {
    if (std::floor(x) > static_cast<double>(bound_))
        fail(kModule, Errc::OutOfRange, "x = " + std::to_string(x) + " beyond Euler data bound " + std::to_string(bound_));
    if (s.real() < 0.25) fail(kModule, Errc::InvalidArgument, "eval_H needs Re s >= 1/4");
    std::complex<double> h = 1.0;
    for (const auto& l : locals_) {
        if (static_cast<double>(l.p) > x) break;
        const std::complex<double> ps = std::exp(-s * std::log(static_cast<double>(l.p)));
        std::complex<double> local = 1.0 + static_cast<double>(l.lambda_flat_p) * ps;
        for (const auto& t : l.factors) local *= 1.0 - std::pow(ps, t.f);
        h *= local;
    }
    return h;
}

std::complex<double> EulerFactorSet::eval_H_series(std::complex<double> s, double x) const {
    if (std::floor(x) > static_cast<double>(bound_))
        fail(kModule, Errc::OutOfRange, "x = " + std::to_string(x) + " beyond Euler data bound " + std::to_string(bound_));
    if (s.real() < 1.0) fail(kModule, Errc::InvalidArgument, "series form needs Re s >= 1");
    std::complex<double> h = 1.0;
    for (const auto& l : locals_) {
        if (static_cast<double>(l.p) > x) break;
        const std::complex<double> ps = std::exp(-s * std::log(static_cast<double>(l.p)));
        std::complex<double> zeta_p = 1.0, pjs = 1.0;
        for (int j = 1; j < 400; ++j) {
            pjs *= ps;
            const std::complex<double> term = static_cast<double>(lambda_prime_power(l.factors, j)) * pjs;
            zeta_p += term;
            if (std::abs(term) < 1e-18 * std::abs(zeta_p) && std::abs(pjs) * std::pow(j + 1.0, 8) < 1e-18) break;
        }
        h *= (1.0 + static_cast<double>(l.lambda_flat_p) * ps) / zeta_p;
    }
    return h;
}

double EulerFactorSet::log_H_real(double sigma, double x) const {
    if (std::floor(x) > static_cast<double>(bound_))
        fail(kModule, Errc::OutOfRange, "x = " + std::to_string(x) + " beyond Euler data bound " + std::to_string(bound_));
    if (sigma < 0.25) fail(kModule, Errc::InvalidArgument, "log_H_real needs sigma >= 1/4");
    double acc = 0;
    for (const auto& l : locals_) {
        if (static_cast<double>(l.p) > x) break;
        const double lp = std::log(static_cast<double>(l.p));
        acc += std::log1p(l.lambda_flat_p * std::exp(-sigma * lp));
        for (const auto& t : l.factors) acc += std::log1p(-std::exp(-sigma * t.f * lp));
    }
    return acc;
}

}  // namespace ltorsion
