#include "ltorsion/bounds/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "ltorsion/algebra/primes.hpp"
#include "ltorsion/error.hpp"
#include "ltorsion/mellin/mellin.hpp"
#include "ltorsion/quad/forms.hpp"

namespace ltorsion {

namespace {
constexpr std::string_view kModule = "bounds_pipeline";

double log_add(double a, double b) {
    const double m = std::max(a, b);
    if (m == -std::numeric_limits<double>::infinity()) return m;
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

std::uint64_t floor_exp(double log_v) {
    if (log_v < 0) return 0;
    if (log_v > 60) return std::numeric_limits<std::uint64_t>::max();
    auto v = static_cast<std::uint64_t>(std::floor(std::exp(log_v)));
    // exp may land a hair below an exact integer power.
    if (std::log(static_cast<double>(v + 1)) <= log_v + 1e-13) ++v;
    return v;
}

// (n - 1) with the guard n >= 2 made explicit.
double lift(const FieldInvariants& inv) { return static_cast<double>(std::max(1, inv.degree - 1)); }

std::uint64_t nth_prime(std::uint64_t m) {
    if (m == 0) return 2;
    // p_m < m (log m + log log m) for m >= 6.
    const double mm = static_cast<double>(m);
    const double bound = m < 6 ? 15.0 : mm * (std::log(mm) + std::log(std::log(mm))) + 3;
    const auto ps = primes_up_to(static_cast<std::uint64_t>(bound));
    return ps.at(m - 1);
}

void smooth_dfs(const std::vector<std::pair<double, std::uint32_t>>& ps, std::size_t from, double m, double x,
                double weight, double& acc, std::uint64_t& nodes, std::uint64_t cap) {
    for (std::size_t i = from; i < ps.size(); ++i) {
        const double mp = m * ps[i].first;
        if (mp > x) break;
        if (++nodes > cap) fail(kModule, Errc::CapExceeded, "smooth-number enumeration exceeded node cap");
        const double w = weight * ps[i].second;
        acc += w;
        smooth_dfs(ps, i + 1, mp, x, w, acc, nodes, cap);
    }
}
}  // namespace

void PipelineParams::validate() const {
    if (ell < 2) fail(kModule, Errc::InvalidArgument, "ell must be >= 2");
    if (!(eta > 0 && eta < 1)) fail(kModule, Errc::InvalidArgument, "eta must lie in (0, 1)");
    if (!(A >= 1)) fail(kModule, Errc::InvalidArgument, "A must be >= 1");
    if (k < 0) fail(kModule, Errc::InvalidArgument, "k must be >= 0 (0 selects the default)");
    if (!(class_delta > 0)) fail(kModule, Errc::InvalidArgument, "class_delta must be positive");
}

void PipelineParams::validate_section4() const {
    validate();
    if (!(delta > 0 && delta < eta / 2))
        fail(kModule, Errc::InvalidArgument, "need 0 < delta < eta/2, got delta = " + std::to_string(delta));
}

std::pair<double, double> trivial_bounds(const FieldInvariants& inv) {
    const double lD = inv.log_disc();
    const double llD = std::log(lD);
    return {0.5 * lD + (inv.degree - 1) * llD, 0.5 * lD + (inv.degree - inv.unit_rank + inv.rho - 1) * llD};
}

LogValue ev_bound(double kappa, std::string_view kappa_source, std::uint64_t M, double log_D,
                  std::string_view m_variant) {
    if (!(kappa > 0)) fail(kModule, Errc::InvalidArgument, "kappa must be positive");
    LogValue out;
    out.value = std::log(kappa) + 0.5 * log_D - std::log(static_cast<double>(std::max<std::uint64_t>(M, 1)));
    out.source = std::string(m_variant) + ";kappa=" + std::string(kappa_source);
    if (M == 0) out.source += ";degenerate";
    return out;
}

double convexity_rhs(const FieldInvariants& inv, double t, double delta) {
    if (!(delta > 0)) fail(kModule, Errc::InvalidArgument, "convexity exponent needs delta > 0");
    return (0.25 + delta) * (inv.log_disc() + inv.degree * 0.5 * std::log1p(t * t));
}

double solve_VK(double class_number, const FieldInvariants& inv) {
    if (inv.abs_disc < 16) fail(kModule, Errc::DomainTooSmall, "V_K needs D_K >= 16 so that log log D > 1");
    if (!(class_number > 0)) fail(kModule, Errc::InvalidArgument, "class number must be positive");
    const double lD = inv.log_disc(), llD = std::log(lD), lllD = std::log(llD);
    const int n = inv.degree;
    return std::exp((std::log(class_number) - 0.5 * lD + (inv.unit_rank - inv.rho + 1) * llD - 1.5 * n * lllD) / n);
}

double class_number_from_VK(double V, const FieldInvariants& inv) {
    const double lD = inv.log_disc(), llD = std::log(lD), lllD = std::log(llD);
    const int n = inv.degree;
    return std::exp(n * std::log(V) + 0.5 * lD + (-inv.unit_rank + inv.rho - 1) * llD + 1.5 * n * lllD);
}

double smooth_sum_exact(const CoeffTable& table, double x, double y, std::uint64_t node_cap) {
    if (y > static_cast<double>(table.X()))
        fail(kModule, Errc::OutOfRange, "smoothness bound beyond the coefficient table");
    std::vector<std::pair<double, std::uint32_t>> ps;
    for (const auto& l : table.locals()) {
        if (static_cast<double>(l.p) > y) break;
        if (l.lambda_flat_p) ps.emplace_back(static_cast<double>(l.p), l.lambda_flat_p);
    }
    double acc = x >= 1 ? 1 : 0;
    std::uint64_t nodes = 0;
    if (x >= 1) smooth_dfs(ps, 0, 1.0, x, 1.0, acc, nodes, node_cap);
    return acc;
}

double rankin_log_bound(const CoeffTable& table, double log_x, double y, double alpha) {
    if (y > static_cast<double>(table.X()))
        fail(kModule, Errc::OutOfRange, "smoothness bound beyond the coefficient table");
    double acc = alpha * log_x;
    for (const auto& l : table.locals()) {
        if (static_cast<double>(l.p) > y) break;
        acc += std::log1p(l.lambda_flat_p * std::pow(static_cast<double>(l.p), -alpha));
    }
    return acc;
}

std::uint64_t pipeline_table_bound(const FieldInvariants& inv, const PipelineParams& params) {
    const double lD = inv.log_disc();
    const double log_y = (1 - params.eta) / (2 * params.ell * lift(inv)) * lD;
    const double log_x4 = (1 - params.delta / 2) / (2 * params.ell * lift(inv)) * lD;
    return std::max<std::uint64_t>({2, floor_exp(log_y), floor_exp(log_x4)});
}

Section3 section3_pipeline(const NumberField& field, const CoeffTable& table, const PipelineParams& params) {
    params.validate();
    const FieldInvariants& inv = field.invariants();
    const int n = inv.degree;
    const double lD = inv.log_disc(), llD = std::log(lD), lllD = std::log(llD);
    Section3 s;
    s.log_y = (1 - params.eta) / (2 * params.ell * lift(inv)) * lD;
    s.log_x = 8.0 * params.ell * n * s.log_y;
    s.x_in_D2_D3 = 2 * lD <= s.log_x * (1 + 1e-12) && s.log_x <= 3 * lD * (1 + 1e-12);
    s.degenerate = s.log_y < std::log(2.0);
    const double y = std::exp(s.log_y);
    const std::uint64_t y_floor = floor_exp(s.log_y);

    if (y_floor > table.X())
        fail(kModule, Errc::CapExceeded, "y = " + std::to_string(y) + " lies beyond the coefficient table");
    const std::uint64_t pf = pi_flat(table, static_cast<double>(y_floor));
    s.pi_flat_y = pf;
    s.N_flat_y = count_N_flat(table, static_cast<double>(y_floor));
    // Canonical z: the m-th prime with m = ceil(pi-flat / n), so pi(z) = m.
    const std::uint64_t m = (pf + n - 1) / n;
    s.z = nth_prime(m);
    s.pi_Q_z = std::max<std::uint64_t>(m, 1);
    s.bracket_upper = pf <= static_cast<std::uint64_t>(n) * s.pi_Q_z;
    s.bracket_lower = static_cast<std::uint64_t>(n) * (s.pi_Q_z - 1) <= pf;
    s.z_le_y = static_cast<double>(s.z) <= y * (1 + 1e-12);

    const double lz = std::log(static_cast<double>(s.z));
    s.alpha = std::max(1 - 1 / lz, 0.75);
    s.log_rankin = rankin_log_bound(table, s.log_x, static_cast<double>(y_floor), s.alpha);
    s.log_rough = s.log_x - std::log(s.log_x);
    for (const auto& l : table.locals()) {
        if (static_cast<double>(l.p) > y) break;
        s.log_rough += std::log1p(l.lambda_flat_p / static_cast<double>(l.p));
    }
    if (s.log_x <= std::log(static_cast<double>(params.enum_cap))) {
        s.log_smooth_exact = std::log(smooth_sum_exact(table, std::exp(s.log_x), static_cast<double>(y_floor)));
        s.log_smooth = *s.log_smooth_exact;
        s.smooth_status = "exact";
    } else {
        s.log_smooth = s.log_rankin;
        s.smooth_status = "rankin-bounded";
    }
    s.log_S_bound = log_add(s.log_smooth, s.log_rough);
    // S(x) itself is out of reach at this x; only the split bound is known.
    s.S_status = s.smooth_status == "exact" ? "exact" : "rankin-bounded";

    s.log_residue_factor = std::log(lz) - lz;
    s.log_kappa_upper = n * std::log(lz) - llD + 0.5 * n * lllD;
    s.log_final = -lz + (n + 1) * std::log(lz) + 0.5 * lD - llD + 0.5 * n * lllD;
    return s;
}

double reassemble_section3(const Section3& s, const FieldInvariants& inv) {
    return s.log_residue_factor + s.log_kappa_upper + 0.5 * inv.log_disc();
}

Section4 section4_pipeline(const NumberField& field, const CoeffTable& table, const PipelineParams& params) {
    params.validate_section4();
    const FieldInvariants& inv = field.invariants();
    const int n = inv.degree;
    const double lD = inv.log_disc(), llD = std::log(lD), lllD = std::log(llD);
    const double denom = 4.0 * params.ell * lift(inv);
    Section4 s;
    s.k = params.k > 0 ? params.k : static_cast<int>(std::ceil(params.A)) + 1;
    s.log_x = (1 - params.delta / 2) / (2 * params.ell * lift(inv)) * lD;
    s.degenerate = s.log_x < 0;
    const double x = std::exp(s.log_x);
    const std::uint64_t x_floor = floor_exp(s.log_x);

    if (x_floor <= table.X()) {
        s.N_flat_x = count_N_flat(table, static_cast<double>(x_floor));
        s.S_x = smoothed_sum(table, SmoothKernel(s.k), x, true);
        s.S_le_N = *s.S_x <= static_cast<double>(*s.N_flat_x);
        s.H_source = "table";
        s.log_H = x >= 2 ? std::log(EulerFactorSet(table).eval_H(1.0, x).real()) : 0.0;
    } else {
        s.H_source = "lower-bound-shape";
        s.log_H = -0.5 * n * lllD;
    }
    const double log_err = (params.delta - params.eta) / denom * lD;
    s.log_kappa_lower_i = -params.delta / denom * lD;
    s.log_kappa_lower_ii = -llD;
    const double base = 0.5 * lD - s.log_x;

    s.case_i.log_bound = base - log_add(s.log_H, log_err - s.log_kappa_lower_i);
    s.case_ii.log_bound = base - log_add(s.log_H, log_err - s.log_kappa_lower_ii);
    s.exponent_iii_formula = 0.5 - (params.eta - params.delta) / denom;
    const double log_ratio =
        (s.S_x && s.N_flat_x && *s.N_flat_x > 0 && *s.S_x > 0) ? std::log(*s.S_x / *s.N_flat_x) : 0.0;
    s.case_iii.log_bound = log_add(base + log_ratio + 0.5 * n * lllD, s.exponent_iii_formula * lD);
    for (Section4Case* c : {&s.case_i, &s.case_ii, &s.case_iii}) c->exponent = c->log_bound / lD;

    switch (inv.quadratic_subfield) {
        case QuadraticSubfield::Yes:
            s.case_i.tag = "ineffective";
            s.case_ii.tag = "not-applicable";
            break;
        case QuadraticSubfield::No:
            s.case_i.tag = "effective";
            s.case_ii.tag = "effective";
            break;
        case QuadraticSubfield::Unknown:
            s.case_i.tag = "unknown";
            s.case_ii.tag = "unknown";
            break;
    }
    s.case_iii.tag = "effective";
    return s;
}

BoundReport analyze_field(const NumberField& field, const PipelineParams& params) {
    params.validate();
    const FieldInvariants& inv = field.invariants();
    const FieldSpec& spec = field.spec();
    BoundReport r;
    r.label = spec.label;
    r.source = spec.source;
    r.n = inv.degree;
    r.D = inv.abs_disc.get_str();
    r.log_D = inv.log_disc();
    r.r = inv.unit_rank;
    r.rho = inv.rho;
    r.ell = params.ell;
    r.disc_source = to_string(inv.disc_source);
    r.rho_source = to_string(inv.rho_source);
    r.irreducibility = to_string(inv.irreducibility);
    r.quadratic_subfield = to_string(inv.quadratic_subfield);
    std::tie(r.log_trivial, r.log_refined) = trivial_bounds(inv);
    if (inv.disc_source == DiscSource::PolyDiscUnverified) r.warnings.push_back("disc-unverified");
    if (inv.irreducibility == Irreducibility::Unverified) r.warnings.push_back("irreducibility-unverified");

    // Exact class data for quadratic fields; certified data otherwise.
    std::optional<QuadClassData> quad;
    if (inv.degree == 2 && inv.disc_source != DiscSource::PolyDiscUnverified) {
        const mpz_class d = inv.signed_disc();
        if (d.fits_slong_p() && is_fundamental_discriminant(d.get_si())) quad = quadratic_class_data(d.get_si());
    }
    if (spec.certified_class_group) {
        r.class_number = spec.certified_class_group->order();
        r.torsion = torsion_count(*spec.certified_class_group, params.ell);
        r.class_source = spec.source.empty() ? "certified" : "certified:" + spec.source;
    } else if (quad) {
        r.class_number = quad->h;
        r.torsion = torsion_count(quad->class_group, params.ell);
        r.class_source = "forms";
    } else {
        r.class_source = "none";
    }

    const std::uint64_t X = std::min(pipeline_table_bound(inv, params), params.table_cap);
    const CoeffTable table = build_coeff_table(field, X, {.cap = params.table_cap});

    const bool quad_route = quad && !spec.certified_class_group &&
                            (params.kappa_method == KappaMethod::Auto || params.kappa_method == KappaMethod::DirichletExact);
    if (quad_route) {
        r.kappa = dirichlet_kappa(quad->d, quad->h, quad->regulator, quad->w);
        r.kappa_uncertainty = quad->regulator_error * 2 * quad->h / std::sqrt(std::fabs(static_cast<double>(quad->d)));
        r.kappa_source = "dirichlet-exact";
    } else {
        std::optional<CoeffTable> big;
        const bool needs_table = params.kappa_method == KappaMethod::Smoothed ||
                                 (params.kappa_method == KappaMethod::Auto && !spec.certified_class_group && !quad);
        if (needs_table)
            big = build_coeff_table(field, std::min(params.kappa_table_bound, params.table_cap), {.cap = params.table_cap});
        const KappaEstimate k = estimate_kappa(field, big ? &*big : nullptr, params.kappa_method);
        r.kappa = k.value;
        r.kappa_uncertainty = k.uncertainty;
        r.kappa_source = std::string(to_string(k.source));
    }

    r.s3 = section3_pipeline(field, table, params);
    if (r.s3.degenerate) r.warnings.push_back("empty-range:y<2");
    if (!r.s3.x_in_D2_D3) r.warnings.push_back("x-outside-[D^2,D^3]");
    if (!r.s3.bracket_lower) r.warnings.push_back("bracket-lower-slack");
    const std::uint64_t pf = r.s3.pi_flat_y.value_or(0);
    r.ev_prime = ev_bound(r.kappa, r.kappa_source, 1 + pf, r.log_D, "M=1+pi_flat(y)");
    if (r.s3.N_flat_y) r.ev_full = ev_bound(r.kappa, r.kappa_source, *r.s3.N_flat_y, r.log_D, "M=N_flat(y)");

    try {
        params.validate_section4();
        r.s4 = section4_pipeline(field, table, params);
        if (r.s4->S_le_N && !*r.s4->S_le_N) r.warnings.push_back("S>N_flat");
    } catch (const Error& e) {
        if (e.code() != Errc::InvalidArgument) throw;
        r.warnings.push_back("section4-skipped");
    }

    if (r.class_number && inv.abs_disc >= 16) {
        r.V_K = solve_VK(static_cast<double>(*r.class_number), inv);
        const double llD = std::log(r.log_D);
        r.log_class_rhs = std::log(static_cast<double>(*r.class_number)) - params.class_delta * *r.V_K * llD;
        r.log_z_lower = 3 * params.class_delta * *r.V_K * llD;
    } else if (r.class_number) {
        r.warnings.push_back("V_K-domain-too-small");
    }
    return r;
}

std::vector<FamilyFit> fit_families(const std::vector<BoundReport>& reports) {
    std::map<std::pair<std::string, int>, std::vector<double>> residuals;
    for (const auto& r : reports) {
        if (!r.class_number || !r.torsion) continue;
        residuals[{"trivial", r.ell}].push_back(std::log(static_cast<double>(*r.class_number)) - r.log_trivial);
        residuals[{"ev", r.ell}].push_back(std::log(static_cast<double>(*r.torsion)) - r.ev_prime.value);
        residuals[{"ev-ratio", r.ell}].push_back(r.ev_prime.value - std::log(static_cast<double>(*r.torsion)));
    }
    std::vector<FamilyFit> out;
    for (const auto& [key, v] : residuals) {
        FamilyFit f;
        f.family = key.first;
        f.ell = key.second;
        f.fields = v.size();
        if (f.family == "ev-ratio") {
            // Lower bound: the constant is the minimum.
            f.log_C = *std::min_element(v.begin(), v.end());
            for (double x : v) f.violations += x < f.log_C ? 1 : 0;
            f.min_margin = 0;
        } else {
            f.log_C = *std::max_element(v.begin(), v.end());
            f.min_margin = std::numeric_limits<double>::infinity();
            for (double x : v) {
                f.violations += x > f.log_C ? 1 : 0;
                f.min_margin = std::min(f.min_margin, f.log_C - x);
            }
        }
        out.push_back(f);
    }
    return out;
}

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) fail(kModule, Errc::InvalidArgument, "least squares needs equal-length data");
    LineFit f;
    f.points = x.size();
    if (x.size() < 2) fail(kModule, Errc::InvalidArgument, "least squares needs at least two points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) fail(kModule, Errc::InvalidArgument, "least squares needs two distinct x values");
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    return f;
}

}  // namespace ltorsion
