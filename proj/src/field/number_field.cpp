#include "ltorsion/field/number_field.hpp"

#include <algorithm>
#include <cmath>

#include "ltorsion/algebra/integers.hpp"
#include "ltorsion/algebra/mod_poly.hpp"
#include "ltorsion/algebra/primes.hpp"
#include "ltorsion/error.hpp"
#include "ltorsion/quad/forms.hpp"

namespace ltorsion {

namespace {
constexpr std::string_view kModule = "number_field";

bool p_squared_divides(const mpz_class& n, std::uint64_t p) {
    mpz_class p2 = static_cast<unsigned long>(p);
    p2 *= p2;
    return mpz_divisible_p(n.get_mpz_t(), p2.get_mpz_t()) != 0;
}

// Dedekind's criterion proper, assuming p^2 | disc(f).
bool dedekind_core(const IntPoly& f, std::uint64_t p) {
    const ModPoly fb = ModPoly::from_int(f, p);
    ModPoly radical = ModPoly::constant(p, 1);
    for (const auto& part : squarefree_decomposition(fb)) radical = fp::mul(radical, part.factor);
    const ModPoly cofactor = fp::quot(fb, radical);
    const IntPoly lifted = radical.lift() * cofactor.lift();
    const IntPoly F = divide_exact(f - lifted, mpz_class(static_cast<unsigned long>(p)));
    const ModPoly Fb = ModPoly::from_int(F, p);
    const ModPoly common = fp::gcd(Fb, fp::gcd(radical, cofactor));
    return common.degree() == 0;
}

int sum_ef(const std::vector<PrimeIdealType>& v) {
    int s = 0;
    for (const auto& t : v) s += t.e * t.f;
    return s;
}
}  // namespace

std::string_view to_string(DiscSource s) {
    switch (s) {
        case DiscSource::Certified: return "certified";
        case DiscSource::PolyDiscSquarefree: return "poly-disc-squarefree";
        case DiscSource::PolyDiscMaximal: return "poly-disc-maximal";
        case DiscSource::PolyDiscUnverified: return "poly-disc-unverified";
    }
    return "?";
}

std::string_view to_string(RhoSource s) { return s == RhoSource::Certified ? "certified" : "default-zero"; }

std::string_view to_string(Irreducibility s) { return s == Irreducibility::Verified ? "verified" : "unverified"; }

std::string_view to_string(QuadraticSubfield s) {
    switch (s) {
        case QuadraticSubfield::Yes: return "yes";
        case QuadraticSubfield::No: return "no";
        case QuadraticSubfield::Unknown: return "unknown";
    }
    return "?";
}

double FieldInvariants::log_disc() const { return log_abs(abs_disc); }

void FieldSpec::validate() const {
    const std::string who = label.empty() ? poly.to_string() : label;
    if (!poly.is_monic()) fail(kModule, Errc::InvalidArgument, who + ": defining polynomial must be monic");
    if (poly.degree() < 2) fail(kModule, Errc::InvalidArgument, who + ": degree must be at least 2");
    if (certified_disc) {
        const mpz_class pd = poly_discriminant(poly);
        if (*certified_disc == 0 || !mpz_divisible_p(pd.get_mpz_t(), certified_disc->get_mpz_t()))
            fail(kModule, Errc::InvalidArgument,
                 who + ": certified discriminant " + certified_disc->get_str() + " does not divide " + pd.get_str());
        mpz_class q = pd / *certified_disc;
        if (!is_perfect_square(q))
            fail(kModule, Errc::InvalidArgument, who + ": disc(poly)/certified_disc = " + q.get_str() + " is not a square");
    }
    if (rho && *rho < 0) fail(kModule, Errc::InvalidArgument, who + ": rho must be nonnegative");
    if (roots_of_unity && (*roots_of_unity < 2 || *roots_of_unity % 2 != 0))
        fail(kModule, Errc::InvalidArgument, who + ": roots of unity count must be even and >= 2");
    if (certified_regulator && !(*certified_regulator > 0.0))
        fail(kModule, Errc::InvalidArgument, who + ": regulator must be positive");
    for (const auto& [p, types] : certified_splitting) {
        if (!is_prime(p)) fail(kModule, Errc::InvalidArgument, who + ": certified splitting at non-prime " + std::to_string(p));
        if (sum_ef(types) != poly.degree())
            fail(kModule, Errc::InvalidArgument, who + ": certified splitting at " + std::to_string(p) + " violates sum e*f = n");
    }
}

bool dedekind_index_test(const IntPoly& f, std::uint64_t p) {
    if (!is_prime(p)) fail(kModule, Errc::NotPrime, std::to_string(p) + " is not prime");
    if (!p_squared_divides(poly_discriminant(f), p)) return true;
    return dedekind_core(f, p);
}

FieldInvariants compute_invariants(const FieldSpec& spec, const FieldOptions& options) {
    spec.validate();
    FieldInvariants inv;
    const IntPoly& f = spec.poly;
    inv.degree = f.degree();
    inv.r1 = count_real_roots(f);
    if ((inv.degree - inv.r1) % 2 != 0)
        fail(kModule, Errc::OddComplexCount, spec.label + ": n - r1 is odd; polynomial is not squarefree");
    inv.r2 = (inv.degree - inv.r1) / 2;
    inv.unit_rank = inv.r1 + inv.r2 - 1;
    inv.disc_sign = (inv.r2 % 2 == 0) ? 1 : -1;

    const mpz_class pd = poly_discriminant(f);
    if (spec.certified_disc) {
        if (sgn(*spec.certified_disc) != inv.disc_sign)
            fail(kModule, Errc::InvalidArgument, spec.label + ": certified discriminant sign disagrees with (-1)^r2");
        inv.abs_disc = abs(*spec.certified_disc);
        inv.disc_source = DiscSource::Certified;
    } else {
        inv.abs_disc = abs(pd);
        const TrialFactorization tf = trial_factor(pd, options.trial_division_bound);
        if (tf.squarefree == Squarefree::Yes) {
            inv.disc_source = DiscSource::PolyDiscSquarefree;
        } else if (tf.cofactor_squarefree == Squarefree::Yes) {
            bool maximal = true;
            for (const auto& [p, e] : tf.factors)
                if (e >= 2 && !dedekind_core(f, p)) {
                    maximal = false;
                    break;
                }
            inv.disc_source = maximal ? DiscSource::PolyDiscMaximal : DiscSource::PolyDiscUnverified;
        } else {
            inv.disc_source = DiscSource::PolyDiscUnverified;
        }
    }
    if (inv.abs_disc < 3)
        fail(kModule, Errc::InvalidArgument, spec.label + ": |disc| = " + inv.abs_disc.get_str() + " < 3");

    if (spec.rho) {
        if (*spec.rho > inv.unit_rank)
            fail(kModule, Errc::InvalidArgument, spec.label + ": rho exceeds the unit rank");
        inv.rho = *spec.rho;
        inv.rho_source = RhoSource::Certified;
    }

    for (std::uint32_t p : primes_up_to(options.irreducibility_prime_bound)) {
        const auto shape = factor_shape_mod_p(f, p);
        if (shape.size() == 1 && shape[0].degree == inv.degree && shape[0].multiplicity == 1) {
            inv.irreducibility = Irreducibility::Verified;
            break;
        }
    }

    if (inv.degree == 2)
        inv.quadratic_subfield = QuadraticSubfield::Yes;
    else if (inv.degree % 2 != 0)
        inv.quadratic_subfield = QuadraticSubfield::No;
    else
        inv.quadratic_subfield = QuadraticSubfield::Unknown;
    return inv;
}

NumberField::NumberField(FieldSpec spec, const FieldOptions& options)
    : spec_(std::move(spec)), inv_(compute_invariants(spec_, options)), poly_disc_(poly_discriminant(spec_.poly)) {}

SplittingData NumberField::splitting_at(std::uint64_t p) const {
    if (!is_prime(p)) fail(kModule, Errc::NotPrime, std::to_string(p) + " is not prime");
    SplittingData out;
    out.p = p;
    const bool maximal_at_p = !p_squared_divides(poly_disc_, p) || dedekind_core(spec_.poly, p);
    if (maximal_at_p) {
        for (const auto& s : factor_shape_mod_p(spec_.poly, p)) out.factors.push_back({s.multiplicity, s.degree});
        std::sort(out.factors.begin(), out.factors.end());
        return out;
    }
    auto it = spec_.certified_splitting.find(p);
    if (it == spec_.certified_splitting.end())
        fail(kModule, Errc::IndexDivisorUnsupported,
             spec_.label + ": " + std::to_string(p) + " may divide the index [O_K : Z[theta]] and no certified splitting is given");
    out.factors = it->second;
    std::sort(out.factors.begin(), out.factors.end());
    out.index_divisor = true;
    return out;
}

SplittingData splitting_at(const FieldSpec& spec, std::uint64_t p) { return NumberField(spec).splitting_at(p); }

IntPoly quadratic_poly(std::int64_t d) {
    if (!is_fundamental_discriminant(d))
        fail(kModule, Errc::NotFundamental, std::to_string(d) + " is not a fundamental discriminant");
    const long dd = static_cast<long>(d);
    if (d % 4 == 0) return IntPoly{-dd / 4, 0, 1};
    return IntPoly{(1 - dd) / 4, -1, 1};
}

FieldSpec quadratic_field_spec(std::int64_t d) {
    FieldSpec spec;
    spec.poly = quadratic_poly(d);
    spec.label = "Q(sqrt(" + std::to_string(d) + "))";
    spec.source = "generated";
    return spec;
}

}  // namespace ltorsion
