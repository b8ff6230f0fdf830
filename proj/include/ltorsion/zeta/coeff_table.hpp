#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "ltorsion/field/number_field.hpp"

namespace ltorsion {

// lambda_K(p^j): number of multisets of primes above p with norm p^j, i.e.
// the T^j coefficient of prod (1 - T^f)^{-1} over the splitting.
std::uint64_t lambda_prime_power(const std::vector<PrimeIdealType>& splitting, int j);

// lambda-flat(p): the degree-one primes above p that do not divide the
// different, i.e. the (e, f) = (1, 1) factors.
std::uint32_t lambda_flat_prime(const std::vector<PrimeIdealType>& splitting);

struct LocalData {
    std::uint32_t p = 0;
    std::vector<PrimeIdealType> factors;
    bool index_divisor = false;
    std::uint32_t lambda_p = 0;
    std::uint32_t lambda_flat_p = 0;
};

struct CoeffTableOptions {
    std::uint64_t cap = 10'000'000;               // largest admissible X
    std::uint64_t memory_cap_bytes = 512ull << 20;
};

// Sieved Dirichlet coefficients of zeta_K and the sifted variant up to X.
class CoeffTable {
public:
    std::uint64_t X() const noexcept { return X_; }
    int degree() const noexcept { return degree_; }
    const FieldInvariants& invariants() const noexcept { return inv_; }
    const std::string& label() const noexcept { return label_; }

    std::uint32_t lambda(std::uint64_t n) const;
    std::uint32_t lambda_flat(std::uint64_t n) const;
    const std::vector<std::uint32_t>& lambda_values() const noexcept { return lambda_; }
    const std::vector<std::uint32_t>& lambda_flat_values() const noexcept { return flat_; }

    // Local data for every prime p <= X, ascending.
    const std::vector<LocalData>& locals() const noexcept { return locals_; }
    // Number of primes at which splitting came from certified data.
    std::size_t index_divisor_count() const;

private:
    friend CoeffTable build_coeff_table(const NumberField& field, std::uint64_t X, const CoeffTableOptions& options);
    std::uint64_t X_ = 0;
    int degree_ = 0;
    FieldInvariants inv_;
    std::string label_;
    std::vector<std::uint32_t> lambda_;
    std::vector<std::uint32_t> flat_;
    std::vector<LocalData> locals_;
};

// CapExceeded when X exceeds the cap or the tables exceed the memory cap;
// MissingSplitting when an index divisor p <= X has no certified splitting.
CoeffTable build_coeff_table(const NumberField& field, std::uint64_t X, const CoeffTableOptions& options = {});

// pi-flat(y) = sum_{p <= y} lambda-flat(p). OutOfRange when y > X.
std::uint64_t pi_flat(const CoeffTable& table, double y);

// N-flat(x) = sum_{n <= x} lambda-flat(n). OutOfRange when x > X.
std::uint64_t count_N_flat(const CoeffTable& table, double x);

// Local Euler data for H_K(s, x) = prod_{p <= x} (1 + lambda-flat(p) p^-s)
// prod_{P | p} (1 - N P^-s).
class EulerFactorSet {
public:
    explicit EulerFactorSet(const CoeffTable& table);
    std::uint64_t bound() const noexcept { return bound_; }

    // Product form over the primes above each p. OutOfRange when x exceeds
    // the table bound; InvalidArgument when Re s < 1/4.
    std::complex<double> eval_H(std::complex<double> s, double x) const;
    // Same quantity from the series 1 + sum_j lambda(p^j) p^{-js}, summed
    // until the terms drop below 1e-18 relative. Only for Re s >= 1.
    std::complex<double> eval_H_series(std::complex<double> s, double x) const;
    // log H_K(sigma, x) for real sigma, summed in log space.
    double log_H_real(double sigma, double x) const;

private:
    std::uint64_t bound_;
    std::vector<LocalData> locals_;
};

}  // namespace ltorsion
