#include "ltorsion/zeta/kappa.hpp"

#include <cmath>
#include <numbers>

#include "ltorsion/error.hpp"
#include "ltorsion/mellin/mellin.hpp"
#include "ltorsion/quad/forms.hpp"

namespace ltorsion {

namespace {
constexpr std::string_view kModule = "zeta_arith";

bool trusted_disc(const FieldInvariants& inv) { return inv.disc_source != DiscSource::PolyDiscUnverified; }

std::optional<KappaEstimate> certified(const NumberField& field) {
    const FieldSpec& s = field.spec();
    const FieldInvariants& inv = field.invariants();
    if (!s.certified_class_group || !trusted_disc(inv)) return std::nullopt;
    double R = 1;
    if (inv.unit_rank > 0) {
        if (!s.certified_regulator) return std::nullopt;
        R = *s.certified_regulator;
    }
    int w = 2;
    if (inv.r1 == 0) {
        if (!s.roots_of_unity) return std::nullopt;
        w = *s.roots_of_unity;
    }
    const double h = static_cast<double>(s.certified_class_group->order());
    const double log_k = inv.r1 * std::log(2.0) + inv.r2 * std::log(2 * std::numbers::pi) + std::log(h * R) -
                         std::log(static_cast<double>(w)) - 0.5 * inv.log_disc();
    return KappaEstimate{std::exp(log_k), 0.0, KappaSource::Certified, 0};
}

std::optional<KappaEstimate> dirichlet(const NumberField& field) {
    const FieldInvariants& inv = field.invariants();
    if (inv.degree != 2 || !trusted_disc(inv)) return std::nullopt;
    const mpz_class d = inv.signed_disc();
    if (!d.fits_slong_p() || !is_fundamental_discriminant(d.get_si())) return std::nullopt;
    const QuadClassData q = quadratic_class_data(d.get_si());
    return KappaEstimate{dirichlet_kappa(q.d, q.h, q.regulator, q.w), q.regulator_error * 2 * q.h / std::sqrt(std::fabs(q.d)),
                         KappaSource::DirichletExact, 0};
}

KappaEstimate smoothed(const CoeffTable& table, const KappaOptions& options) {
    const double x = options.x > 0 ? options.x : static_cast<double>(table.X());
    const double v = smoothed_kappa_at(table, x);
    double spread = 0;
    for (int i = 1; i <= options.dyadic_steps; ++i) {
        const double xi = x / std::ldexp(1.0, i);
        if (xi < 2) break;
        spread = std::max(spread, std::fabs(smoothed_kappa_at(table, xi) - v));
    }
    return {v, spread, KappaSource::Smoothed, x};
}
}  // namespace

std::string_view to_string(KappaMethod m) {
    switch (m) {
        case KappaMethod::Auto: return "auto";
        case KappaMethod::Certified: return "certified";
        case KappaMethod::DirichletExact: return "dirichlet-exact";
        case KappaMethod::Smoothed: return "smoothed";
    }
    return "?";
}

std::string_view to_string(KappaSource s) {
    switch (s) {
        case KappaSource::Certified: return "certified";
        case KappaSource::DirichletExact: return "dirichlet-exact";
        case KappaSource::Smoothed: return "smoothed";
    }
    return "?";
}

double smoothed_kappa_at(const CoeffTable& table, double x) {
    const SmoothKernel kernel(std::max(1, table.degree() - 1));
    const double S = smoothed_sum(table, kernel, x, true);
    const double H = EulerFactorSet(table).eval_H(1.0, x).real();
    return std::ldexp(S, kernel.k() + 1) / (x * H);
}

KappaEstimate estimate_kappa(const NumberField& field, const CoeffTable* table, KappaMethod method,
                             const KappaOptions& options) {
    switch (method) {
        case KappaMethod::Certified:
            if (auto k = certified(field)) return *k;
            fail(kModule, Errc::NoMethodAvailable, "certified kappa needs class group, regulator and (if totally complex) w");
        case KappaMethod::DirichletExact:
            if (auto k = dirichlet(field)) return *k;
            fail(kModule, Errc::NoMethodAvailable, "dirichlet-exact kappa needs a quadratic field of trusted discriminant");
        case KappaMethod::Smoothed:
            if (!table) fail(kModule, Errc::NoMethodAvailable, "smoothed kappa needs a coefficient table");
            return smoothed(*table, options);
        case KappaMethod::Auto:
            if (auto k = certified(field)) return *k;
            if (auto k = dirichlet(field)) return *k;
            if (table) return smoothed(*table, options);
            fail(kModule, Errc::NoMethodAvailable, "no certified data, not quadratic, and no table");
    }
    fail(kModule, Errc::InvalidArgument, "unknown kappa method");
}

}  // namespace ltorsion
