#include "ltorsion/quad/abelian_group.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ltorsion/error.hpp"

namespace ltorsion {

namespace {
constexpr std::string_view kModule = "quad_classgroup";

std::vector<std::pair<std::uint64_t, unsigned>> factor_small(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t q = 2; q * q <= n; ++q) {
        if (n % q) continue;
        unsigned e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        out.emplace_back(q, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}
}  // namespace

AbelianGroup::AbelianGroup(std::vector<std::uint64_t> invariant_factors) : factors_(std::move(invariant_factors)) {
    if (!is_valid_chain(factors_)) {
        std::string s = "[";
        for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? "," : "") + std::to_string(factors_[i]);
        fail(kModule, Errc::InvalidArgument, "not an invariant-factor chain: " + s + "]");
    }
}

bool AbelianGroup::is_valid_chain(const std::vector<std::uint64_t>& factors) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i] < 2) return false;
        if (i > 0 && factors[i] % factors[i - 1] != 0) return false;
    }
    return true;
}

std::uint64_t AbelianGroup::order() const {
    std::uint64_t n = 1;
    for (auto d : factors_) n *= d;
    return n;
}

std::string AbelianGroup::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? "," : "") + std::to_string(factors_[i]);
    return s + "]";
}

std::uint64_t torsion_count(const AbelianGroup& group, std::uint64_t ell) {
    if (ell < 2) fail(kModule, Errc::InvalidArgument, "torsion_count needs ell >= 2");
    std::uint64_t n = 1;
    for (auto d : group.invariant_factors()) n *= std::gcd(ell, d);
    return n;
}

AbelianGroup structure_from_orders(const std::vector<std::uint64_t>& orders) {
    const std::uint64_t size = orders.size();
    if (size == 0) fail(kModule, Errc::InvalidArgument, "empty group");
    // For each prime q | size, #{g : ord(g) | q^j} = q^{sum_i min(e_i, j)}.
    std::vector<std::vector<unsigned>> exponents_by_prime;
    std::vector<std::uint64_t> primes;
    for (const auto& [q, e] : factor_small(size)) {
        std::vector<unsigned> rank_at;  // rank_at[j-1] = #{i : e_i >= j}
        unsigned prev_log = 0;
        std::uint64_t qj = 1;
        for (unsigned j = 1; j <= e; ++j) {
            qj *= q;
            std::uint64_t count = 0;
            for (auto o : orders)
                if (qj % o == 0) ++count;
            unsigned log_count = 0;
            for (std::uint64_t c = count; c > 1; c /= q) ++log_count;
            rank_at.push_back(log_count - prev_log);
            prev_log = log_count;
            if (log_count == e) break;
        }
        // Convert ranks into the descending list of exponents.
        std::vector<unsigned> exps;
        for (std::size_t j = 0; j < rank_at.size(); ++j) {
            const unsigned next = (j + 1 < rank_at.size()) ? rank_at[j + 1] : 0;
            for (unsigned t = 0; t < rank_at[j] - next; ++t) exps.push_back(static_cast<unsigned>(j + 1));
        }
        std::sort(exps.rbegin(), exps.rend());
        primes.push_back(q);
        exponents_by_prime.push_back(std::move(exps));
    }
    std::size_t k = 0;
    for (const auto& e : exponents_by_prime) k = std::max(k, e.size());
    std::vector<std::uint64_t> factors(k, 1);
    // factors[k-1] is the largest invariant factor.
    for (std::size_t i = 0; i < primes.size(); ++i)
        for (std::size_t t = 0; t < exponents_by_prime[i].size(); ++t)
            for (unsigned r = 0; r < exponents_by_prime[i][t]; ++r) factors[k - 1 - t] *= primes[i];
    return AbelianGroup(std::move(factors));
}

AbelianGroup group_structure(std::size_t size, std::size_t identity,
                             const std::function<std::size_t(std::size_t, std::size_t)>& compose,
                             std::uint64_t op_cap) {
    if (size == 0 || identity >= size) fail(kModule, Errc::InvalidArgument, "bad group presentation");
    std::vector<std::uint64_t> orders(size, 0);
    std::uint64_t ops = 0;
    for (std::size_t g = 0; g < size; ++g) {
        std::size_t acc = g;
        std::uint64_t ord = 1;
        while (acc != identity) {
            acc = compose(acc, g);
            ++ord;
            if (++ops > op_cap)
                fail(kModule, Errc::CapExceeded,
                     "group of order " + std::to_string(size) + " needs more than " + std::to_string(op_cap) +
                         " compositions");
            if (ord > size) fail(kModule, Errc::InvalidArgument, "composition law does not close on a group");
        }
        orders[g] = ord;
    }
    return structure_from_orders(orders);
}

}  // namespace ltorsion
