#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ltorsion {

// Finite abelian group in invariant-factor form d_1 | d_2 | ... | d_k, all
// d_i >= 2. The empty list is the trivial group.
class AbelianGroup {
public:
    AbelianGroup() = default;
    // Throws InvalidArgument unless the list is a divisibility chain of
    // integers >= 2.
    explicit AbelianGroup(std::vector<std::uint64_t> invariant_factors);

    const std::vector<std::uint64_t>& invariant_factors() const noexcept { return factors_; }
    std::uint64_t order() const;
    bool is_trivial() const noexcept { return factors_.empty(); }
    std::string to_string() const;  // "[2,4]"

    static bool is_valid_chain(const std::vector<std::uint64_t>& factors);

    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

private:
    std::vector<std::uint64_t> factors_;
};

// |G[ell]| = prod gcd(ell, d_i).
std::uint64_t torsion_count(const AbelianGroup& group, std::uint64_t ell);

// Structure of a finite abelian group presented by its elements 0..size-1,
// an identity index and a composition law. Element orders are found by
// repeated composition; CapExceeded once more than `op_cap` compositions
// would be needed.
AbelianGroup group_structure(std::size_t size, std::size_t identity,
                             const std::function<std::size_t(std::size_t, std::size_t)>& compose,
                             std::uint64_t op_cap = 1'000'000);

// Invariant factors from the multiset of element orders.
AbelianGroup structure_from_orders(const std::vector<std::uint64_t>& orders);

}  // namespace ltorsion
