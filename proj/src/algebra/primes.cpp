#include "ltorsion/algebra/primes.hpp"

#include <cmath>
#include <string>

#include "ltorsion/error.hpp"

namespace ltorsion {

namespace {
constexpr std::string_view kModule = "algebra_core";

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, b, m);
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}
}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL})
        if (miller_rabin_witness(n, a, d, s)) return false;
    return true;
}

PrimeSieve::PrimeSieve(std::uint64_t limit) : limit_(limit), composite_(limit + 1, false) {
    for (std::uint64_t i = 2; i <= limit_; ++i) {
        if (composite_[i]) continue;
        primes_.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit_; j += i) composite_[j] = true;
    }
}

bool PrimeSieve::is_prime(std::uint64_t n) const {
    if (n > limit_) fail(kModule, Errc::CapExceeded, std::to_string(n) + " exceeds sieve limit " + std::to_string(limit_));
    return n >= 2 && !composite_[n];
}

std::uint64_t PrimeSieve::pi(double z) const {
    if (!(z >= 0.0)) fail(kModule, Errc::InvalidArgument, "pi(z) needs z >= 0");
    if (z > static_cast<double>(limit_))
        fail(kModule, Errc::CapExceeded, "z = " + std::to_string(z) + " exceeds sieve limit " + std::to_string(limit_));
    const auto n = static_cast<std::uint64_t>(std::floor(z));
    // primes_ is sorted; count entries <= n.
    std::size_t lo = 0;
    std::size_t hi = primes_.size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (primes_[mid] <= n)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

std::uint64_t rational_prime_pi(double z, std::uint64_t cap) {
    if (!(z >= 0.0)) fail(kModule, Errc::InvalidArgument, "pi(z) needs z >= 0");
    if (z > static_cast<double>(cap))
        fail(kModule, Errc::CapExceeded, "z = " + std::to_string(z) + " exceeds configured cap " + std::to_string(cap));
    return PrimeSieve(static_cast<std::uint64_t>(std::floor(z))).primes().size();
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t n) { return PrimeSieve(n).primes(); }

}  // namespace ltorsion
