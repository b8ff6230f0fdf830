#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace ltorsion {

// Natural log of a positive big integer without overflowing a double.
double log_abs(const mpz_class& n);

bool is_perfect_square(const mpz_class& n);

// Squarefreeness of |n| decided by trial division up to `bound`.
enum class Squarefree { Yes, No, Unknown };

struct TrialFactorization {
    std::vector<std::pair<std::uint64_t, unsigned>> factors;
    mpz_class cofactor = 1;  // unfactored part, 1 when complete
    bool complete = true;
    Squarefree squarefree = Squarefree::Yes;           // of |n|
    Squarefree cofactor_squarefree = Squarefree::Yes;  // of the unfactored part
};

TrialFactorization trial_factor(const mpz_class& n, std::uint64_t bound);

std::int64_t kronecker_symbol(std::int64_t a, std::uint64_t n);

}  // namespace ltorsion
