#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ltorsion/algebra/int_poly.hpp"
#include "ltorsion/quad/abelian_group.hpp"

namespace ltorsion {

// One prime ideal above p: ramification index e and inertia degree f.
struct PrimeIdealType {
    int e;
    int f;
    friend bool operator==(const PrimeIdealType&, const PrimeIdealType&) = default;
    friend auto operator<=>(const PrimeIdealType&, const PrimeIdealType&) = default;
};

struct SplittingData {
    std::uint64_t p = 0;
    std::vector<PrimeIdealType> factors;  // sorted ascending
    bool index_divisor = false;          // splitting came from certified data
};

// A number field K = Q[x]/(poly) plus optional externally certified data.
struct FieldSpec {
    IntPoly poly;
    std::optional<mpz_class> certified_disc;  // signed field discriminant
    std::optional<AbelianGroup> certified_class_group;
    std::optional<double> certified_regulator;
    std::optional<int> rho;             // max unit rank over proper subfields
    std::optional<int> roots_of_unity;  // w_K
    std::map<std::uint64_t, std::vector<PrimeIdealType>> certified_splitting;
    std::string label;
    std::string source;

    // Throws InvalidArgument on any violated invariant.
    void validate() const;
};

enum class DiscSource { Certified, PolyDiscSquarefree, PolyDiscMaximal, PolyDiscUnverified };
enum class RhoSource { Certified, DefaultZero };
enum class Irreducibility { Verified, Unverified };
enum class QuadraticSubfield { Yes, No, Unknown };

std::string_view to_string(DiscSource s);
std::string_view to_string(RhoSource s);
std::string_view to_string(Irreducibility s);
std::string_view to_string(QuadraticSubfield s);

struct FieldInvariants {
    int degree = 0;
    int r1 = 0;
    int r2 = 0;
    int unit_rank = 0;
    mpz_class abs_disc;
    int disc_sign = 1;  // (-1)^{r2}
    DiscSource disc_source = DiscSource::PolyDiscUnverified;
    int rho = 0;
    RhoSource rho_source = RhoSource::DefaultZero;
    Irreducibility irreducibility = Irreducibility::Unverified;
    QuadraticSubfield quadratic_subfield = QuadraticSubfield::Unknown;

    double log_disc() const;
    // Signed field discriminant, the fundamental discriminant when degree 2.
    mpz_class signed_disc() const { return disc_sign < 0 ? mpz_class(-abs_disc) : abs_disc; }
};

// Dedekind's criterion: true iff p provably does not divide [O_K : Z[theta]].
// Passes trivially when p^2 does not divide disc(f).
bool dedekind_index_test(const IntPoly& f, std::uint64_t p);

// Options that bound the trial division used on discriminants.
struct FieldOptions {
    std::uint64_t trial_division_bound = 10'000'000;
    std::uint64_t irreducibility_prime_bound = 1000;
};

FieldInvariants compute_invariants(const FieldSpec& spec, const FieldOptions& options = {});

// Immutable field context: validated spec, invariants and the polynomial
// discriminant, shared by every splitting query.
class NumberField {
public:
    explicit NumberField(FieldSpec spec, const FieldOptions& options = {});

    const FieldSpec& spec() const noexcept { return spec_; }
    const FieldInvariants& invariants() const noexcept { return inv_; }
    const mpz_class& poly_disc() const noexcept { return poly_disc_; }
    int degree() const noexcept { return inv_.degree; }

    // Splitting of p read from f mod p when Dedekind's criterion passes,
    // otherwise from certified data; IndexDivisorUnsupported if neither.
    SplittingData splitting_at(std::uint64_t p) const;

private:
    FieldSpec spec_;
    FieldInvariants inv_;
    mpz_class poly_disc_;
};

SplittingData splitting_at(const FieldSpec& spec, std::uint64_t p);

// Defining polynomial of the quadratic field of fundamental discriminant d:
// x^2 - d/4 when 4 | d, else x^2 - x + (1 - d)/4. Both generate O_K.
IntPoly quadratic_poly(std::int64_t d);

FieldSpec quadratic_field_spec(std::int64_t d);

}  // namespace ltorsion
