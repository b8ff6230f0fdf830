#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "ltorsion/quad/abelian_group.hpp"

namespace ltorsion {

// Binary quadratic form a x^2 + b xy + c y^2.
struct QuadForm {
    std::int64_t a = 1;
    std::int64_t b = 0;
    std::int64_t c = 0;

    std::int64_t discriminant() const;
    std::string to_string() const;  // "(a,b,c)"

    friend bool operator==(const QuadForm&, const QuadForm&) = default;
    friend auto operator<=>(const QuadForm&, const QuadForm&) = default;
};

bool is_fundamental_discriminant(std::int64_t d);

// Principal form (1, b0, (b0^2 - d)/4) with b0 = d mod 2.
QuadForm principal_form(std::int64_t d);

// Reduced representative of a positive definite form: |b| <= a <= c with
// b >= 0 when |b| = a or a = c.
QuadForm reduce_definite(QuadForm f);
bool is_reduced_definite(const QuadForm& f);

// One rho step on an indefinite form (normalises b against c, swaps).
QuadForm rho(const QuadForm& f);
// |sqrt d - 2|a|| < b < sqrt d.
bool is_reduced_indefinite(const QuadForm& f);
QuadForm reduce_indefinite(QuadForm f);

// All reduced positive definite forms of a negative fundamental
// discriminant, sorted; the principal form comes first. NotFundamental.
std::vector<QuadForm> reduced_forms(std::int64_t d);

// Composition followed by reduction. For d < 0 the result is the reduced
// representative; for d > 0 it is some reduced form in the product class.
// DiscriminantMismatch when the discriminants differ.
QuadForm compose(const QuadForm& f, const QuadForm& g);

// w_K for a quadratic field: 6, 4 or 2.
int roots_of_unity(std::int64_t d);

// Classes of forms as indices 0..h-1 with identity 0, ready for
// group_structure.
class FormClassTable {
public:
    // d < 0: reduced forms; d > 0: rho-cycles of reduced indefinite forms,
    // i.e. the narrow class group.
    explicit FormClassTable(std::int64_t d);

    std::int64_t discriminant() const noexcept { return d_; }
    std::size_t size() const noexcept { return reps_.size(); }
    const QuadForm& representative(std::size_t i) const { return reps_[i]; }
    // Class of any primitive form of this discriminant.
    std::size_t index_of(const QuadForm& f) const;
    std::size_t compose(std::size_t i, std::size_t j) const;

private:
    std::int64_t d_;
    std::vector<QuadForm> reps_;
    std::map<QuadForm, std::size_t> index_;  // every reduced form -> class
};

struct RealQuadData {
    std::int64_t d = 0;
    std::uint64_t h = 0;          // wide class number
    std::uint64_t h_plus = 0;     // narrow class number (number of rho-cycles)
    double regulator = 0;         // log of the fundamental unit
    double regulator_error = 0;   // |exact-unit log - summed partial quotient logs| plus rounding
    int period = 0;               // continued fraction period of omega
    int unit_norm = 0;            // N(epsilon) = (-1)^period
    mpz_class t, u;               // epsilon = (t + u sqrt d) / 2
    AbelianGroup class_group;     // wide class group
    AbelianGroup narrow_class_group;
};

// Fundamental unit by the continued fraction of omega = (P0 + sqrt d)/2 and
// class groups from rho-cycles. NotFundamental; CapExceeded when d > cap.
RealQuadData real_quad_data(std::int64_t d, std::int64_t cap = 100'000'000, std::uint64_t op_cap = 1'000'000);

// Exact class data for a quadratic field of fundamental discriminant d.
struct QuadClassData {
    std::int64_t d = 0;
    std::uint64_t h = 0;
    AbelianGroup class_group;
    double regulator = 1.0;  // 1 for d < 0
    double regulator_error = 0.0;
    int w = 2;
};

QuadClassData quadratic_class_data(std::int64_t d, std::uint64_t op_cap = 1'000'000);

// Residue of zeta_K at s = 1: 2 pi h / (w sqrt|d|) for d < 0, 2 h R / sqrt d
// for d > 0.
double dirichlet_kappa(std::int64_t d, std::uint64_t h, double regulator, int w);

}  // namespace ltorsion
