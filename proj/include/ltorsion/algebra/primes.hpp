#pragma once

#include <cstdint>
#include <vector>

namespace ltorsion {

inline constexpr std::uint64_t kDefaultSieveCap = 100'000'000;

// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(std::uint64_t n);

// Sieve of Eratosthenes up to a fixed limit.
class PrimeSieve {
public:
    explicit PrimeSieve(std::uint64_t limit);

    std::uint64_t limit() const noexcept { return limit_; }
    bool is_prime(std::uint64_t n) const;
    const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

    // pi_Q(z) for 0 <= z <= limit; CapExceeded above.
    std::uint64_t pi(double z) const;

private:
    std::uint64_t limit_;
    std::vector<bool> composite_;
    std::vector<std::uint32_t> primes_;
};

// pi_Q(z) by sieving up to floor(z); CapExceeded when z > cap.
std::uint64_t rational_prime_pi(double z, std::uint64_t cap = kDefaultSieveCap);

std::vector<std::uint32_t> primes_up_to(std::uint64_t n);

}  // namespace ltorsion
