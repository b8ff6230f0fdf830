#include "ltorsion/verify/suites.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ltorsion/algebra/int_poly.hpp"
#include "ltorsion/algebra/integers.hpp"
#include "ltorsion/algebra/mod_poly.hpp"
#include "ltorsion/algebra/primes.hpp"
#include "ltorsion/bounds/pipeline.hpp"
#include "ltorsion/error.hpp"
#include "ltorsion/io/corpus.hpp"
#include "ltorsion/mellin/mellin.hpp"
#include "ltorsion/quad/forms.hpp"
#include "ltorsion/verify/oracles.hpp"
#include "ltorsion/zeta/coeff_table.hpp"
#include "ltorsion/zeta/kappa.hpp"

namespace ltorsion::verify {

namespace {

// Accumulates one check: every case either passes or records its error.
class Check {
public:
    Check(std::string suite, std::string name, double tolerance) {
        r_.suite = std::move(suite);
        r_.name = std::move(name);
        r_.tolerance = tolerance;
    }

    // A measured error held to the tolerance.
    void error(double e, const std::string& what) {
        ++r_.cases;
        if (!(e <= r_.tolerance)) note_failure(what);
        if (std::isnan(e) || e > r_.measured) r_.measured = e;
    }
    // A yes/no case; failures are counted into `measured`.
    void expect(bool ok, const std::string& what) {
        ++r_.cases;
        if (!ok) {
            r_.measured += 1;
            note_failure(what);
        }
    }
    void set_detail(std::string d) {
        if (r_.detail.empty()) r_.detail = std::move(d);
    }
    CheckResult done() {
        r_.passed = !failed_ && r_.cases > 0;
        if (r_.cases == 0) r_.detail = "no cases ran";
        return r_;
    }

private:
    void note_failure(const std::string& what) {
        if (!failed_) r_.detail = "first failure: " + what;
        failed_ = true;
    }
    CheckResult r_;
    bool failed_ = false;
};

std::string str(std::int64_t v) { return std::to_string(v); }

IntPoly random_monic(std::mt19937_64& rng, int degree, long span) {
    std::vector<mpz_class> c(static_cast<std::size_t>(degree) + 1);
    for (auto& x : c) x = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * span + 1)) - span;
    c.back() = 1;
    return IntPoly(std::move(c));
}

NumberField cube_root_two() {
    FieldSpec s;
    s.poly = IntPoly{-2, 0, 0, 1};
    s.label = "Q(cbrt 2)";
    return NumberField(s);
}

// Q(i), Q(sqrt -23), Q(sqrt 5), Q(cbrt 2).
std::vector<NumberField> reference_fields() {
    std::vector<NumberField> out;
    for (std::int64_t d : {-4, -23, 5}) out.emplace_back(quadratic_field_spec(d));
    out.push_back(cube_root_two());
    return out;
}

// ---- algebra ----

std::vector<CheckResult> algebra_suite(std::uint64_t seed) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed ^ 0xa1);
    const auto primes = primes_up_to(60);

    Check prod("algebra", "factor-product-and-degrees", 0);
    for (int t = 0; t < 300; ++t) {
        const int deg = 2 + static_cast<int>(rng() % 7);
        const IntPoly f = random_monic(rng, deg, 20);
        const std::uint64_t p = primes[rng() % primes.size()];
        const auto fs = factor_mod_p(f, p, seed);
        ModPoly acc = ModPoly::constant(p, 1);
        int total = 0;
        for (const auto& x : fs) {
            for (int i = 0; i < x.multiplicity; ++i) acc = fp::mul(acc, x.factor);
            total += x.factor.degree() * x.multiplicity;
        }
        prod.expect(acc == ModPoly::from_int(f, p) && total == deg, f.to_string() + " mod " + str(static_cast<std::int64_t>(p)));
    }
    out.push_back(prod.done());

    Check disc("algebra", "disc-vanishes-iff-repeated-factor", 0);
    for (int t = 0; t < 150; ++t) {
        const IntPoly f = random_monic(rng, 2 + static_cast<int>(rng() % 4), 12);
        const mpz_class d = poly_discriminant(f);
        for (std::uint32_t p : primes_up_to(100)) {
            bool repeated = false;
            for (const auto& x : factor_mod_p(f, p, seed)) repeated = repeated || x.multiplicity > 1;
            const bool divides = mpz_divisible_ui_p(d.get_mpz_t(), p) != 0;
            disc.expect(repeated == divides, f.to_string() + " mod " + str(p));
        }
    }
    out.push_back(disc.done());

    // Built from rational roots a/b at least 1/b apart times quadratics with
    // no real roots, so a grid of step 1/(8b) cannot miss or merge a root.
    Check sturm("algebra", "sturm-vs-sign-changes", 0);
    for (int t = 0; t < 100; ++t) {
        const long b = 1 + static_cast<long>(rng() % 3);
        std::vector<long> roots;
        const int nroots = static_cast<int>(rng() % 5);
        while (static_cast<int>(roots.size()) < nroots) {
            const long a = static_cast<long>(rng() % 15) - 7;
            if (std::find(roots.begin(), roots.end(), a) == roots.end()) roots.push_back(a);
        }
        IntPoly f{1};
        for (long a : roots) f = f * IntPoly{-a, b};
        const long shift = static_cast<long>(rng() % 5);
        for (int i = 0, q = static_cast<int>(rng() % 3); i < q; ++i)
            f = f * IntPoly{2 + shift + i, static_cast<long>(rng() % 3), 1};
        if (f.degree() < 1) continue;
        const int sturm_count = count_real_roots(f);
        const int grid = oracle::sign_change_root_count(f, 8 * b);
        sturm.expect(sturm_count == grid, f.to_string());
    }
    out.push_back(sturm.done());

    Check repro("algebra", "factorisation-reproducible-under-seed", 0);
    for (int t = 0; t < 50; ++t) {
        const IntPoly f = random_monic(rng, 4 + static_cast<int>(rng() % 5), 30);
        const std::uint64_t p = std::vector<std::uint64_t>{101, 1009, 10007}[rng() % 3];
        const auto a = factor_mod_p(f, p, seed), b = factor_mod_p(f, p, seed);
        bool same = a.size() == b.size();
        for (std::size_t i = 0; same && i < a.size(); ++i)
            same = a[i].factor == b[i].factor && a[i].multiplicity == b[i].multiplicity;
        repro.expect(same, f.to_string());
    }
    out.push_back(repro.done());
    return out;
}

// ---- field ----

std::vector<CheckResult> field_suite(std::uint64_t seed) {
    std::vector<CheckResult> out;
    constexpr std::uint64_t kCap = 10'000;
    const auto primes = primes_up_to(kCap);

    std::vector<NumberField> fields = reference_fields();
    for (const IntPoly& f : {IntPoly{-1, -1, 0, 1}, IntPoly{1, 0, 0, 0, 1}, IntPoly{1, 1, 1, 1, 1}, IntPoly{-3, 1, 0, 1}}) {
        FieldSpec s;
        s.poly = f;
        fields.emplace_back(s);
    }
    for (std::int64_t d : sample_fundamental_discriminants(10, 100'000, seed)) fields.emplace_back(quadratic_field_spec(d));

    Check sum("field", "sum-ef-equals-degree", 0);
    for (const auto& K : fields) {
        for (std::uint32_t p : primes) {
            SplittingData s;
            try {
                s = K.splitting_at(p);
            } catch (const Error& e) {
                if (e.code() == Errc::IndexDivisorUnsupported) continue;
                throw;
            }
            if (s.index_divisor) continue;
            int total = 0;
            for (const auto& t : s.factors) total += t.e * t.f;
            sum.expect(total == K.degree(), K.spec().poly.to_string() + " at " + str(p));
        }
    }
    out.push_back(sum.done());

    Check kron("field", "quadratic-splitting-vs-kronecker", 0);
    auto ds = sample_fundamental_discriminants(20, 1'000'000, seed + 1);
    for (std::int64_t d : {-4, -3, -23, 5, 8, 12}) ds.push_back(d);
    for (std::int64_t d : ds) {
        const NumberField K(quadratic_field_spec(d));
        for (std::uint32_t p : primes) {
            const auto s = K.splitting_at(p);
            const std::int64_t chi = kronecker_symbol(d, p);
            const std::vector<PrimeIdealType> expect = chi == 1    ? std::vector<PrimeIdealType>{{1, 1}, {1, 1}}
                                                       : chi == -1 ? std::vector<PrimeIdealType>{{1, 2}}
                                                                   : std::vector<PrimeIdealType>{{2, 1}};
            kron.expect(s.factors == expect, "d = " + str(d) + ", p = " + str(p));
        }
    }
    out.push_back(kron.done());

    Check trusted("field", "squarefree-poly-disc-used-without-flag", 0);
    PipelineParams params;
    for (const IntPoly& f : {IntPoly{-1, -1, 0, 1}, IntPoly{1, 1, 1}, IntPoly{1, 1, 0, 1}, IntPoly{-1, 1, 1}}) {
        FieldSpec s;
        s.poly = f;
        const NumberField K(s);
        const bool squarefree_source = K.invariants().disc_source == DiscSource::PolyDiscSquarefree;
        trusted.expect(squarefree_source, f.to_string() + " not classified poly-disc-squarefree");
        if (!squarefree_source) continue;
        const BoundReport r = analyze_field(K, params);
        const bool flagged = std::find(r.warnings.begin(), r.warnings.end(), "disc-unverified") != r.warnings.end();
        trusted.expect(!flagged && r.disc_source == "poly-disc-squarefree", f.to_string() + " flagged downstream");
    }
    out.push_back(trusted.done());
    return out;
}

// ---- coeffs ----

std::vector<CheckResult> coeffs_suite(std::uint64_t seed) {
    std::vector<CheckResult> out;
    constexpr std::uint64_t kX = 10'000;
    std::vector<NumberField> fields = reference_fields();
    for (std::int64_t d : sample_fundamental_discriminants(8, 100'000, seed)) fields.emplace_back(quadratic_field_spec(d));

    Check gap("coeffs", "lambda-minus-flat-in-0-to-n/2", 0);
    Check off("coeffs", "flat-equals-lambda-off-disc", 0);
    Check pow("coeffs", "lambda-prime-power-le-n^j", 0);
    Check hser("coeffs", "H-series-vs-product-at-2", 1e-12);
    Check hpos("coeffs", "H-positive-at-1", 0);
    for (const auto& K : fields) {
        const auto t = build_coeff_table(K, kX);
        const int n = t.degree();
        const mpz_class& D = K.invariants().abs_disc;
        const std::string name = K.spec().label.empty() ? K.spec().poly.to_string() : K.spec().label;
        for (const auto& l : t.locals()) {
            const long g = static_cast<long>(l.lambda_p) - static_cast<long>(l.lambda_flat_p);
            gap.expect(g >= 0 && 2 * g <= n, name + " at " + str(l.p));
            if (mpz_divisible_ui_p(D.get_mpz_t(), l.p) == 0)
                off.expect(l.lambda_p == l.lambda_flat_p, name + " at " + str(l.p));
            std::uint64_t q = l.p, bound = static_cast<std::uint64_t>(n);
            for (int j = 1; q <= kX; ++j, q *= l.p, bound *= static_cast<std::uint64_t>(n))
                pow.expect(t.lambda(q) <= bound, name + " at " + str(l.p) + "^" + str(j));
        }
        const EulerFactorSet H(t);
        for (double x : {2.0, 10.0, 100.0, 1000.0, 10000.0}) {
            for (std::complex<double> s : {std::complex<double>(2, 0), std::complex<double>(2, 5)}) {
                const auto a = H.eval_H(s, x), b = H.eval_H_series(s, x);
                hser.error(std::abs(a - b) / std::abs(a), name + " x = " + std::to_string(x));
            }
            hpos.expect(H.eval_H(1.0, x).real() > 0, name + " x = " + std::to_string(x));
        }
    }
    for (Check* c : {&gap, &off, &pow, &hser, &hpos}) out.push_back(c->done());

    Check sums("coeffs", "partial-sums-vs-ideal-enumeration", 0);
    std::vector<std::int64_t> ds{-4, -23, 5, -3, 8, -84};
    for (std::int64_t d : sample_fundamental_discriminants(6, 100'000, seed + 2)) ds.push_back(d);
    for (std::int64_t d : ds) {
        const auto t = build_coeff_table(NumberField(quadratic_field_spec(d)), kX);
        const auto oracle_counts = oracle::quadratic_ideal_counts(d, static_cast<std::uint32_t>(kX));
        std::uint64_t a = 0, b = 0;
        bool pointwise = true;
        for (std::uint64_t m = 1; m <= kX; ++m) {
            a += t.lambda(m);
            b += oracle_counts[m];
            pointwise = pointwise && t.lambda(m) == oracle_counts[m];
        }
        sums.expect(a == b && pointwise, "d = " + str(d));
    }
    {
        constexpr std::uint32_t N = 2000;
        const auto t = build_coeff_table(cube_root_two(), N);
        const auto oracle_counts = oracle::cubic_ideal_counts(IntPoly{-2, 0, 0, 1}, N);
        bool pointwise = true;
        for (std::uint32_t m = 1; m <= N; ++m) pointwise = pointwise && t.lambda(m) == oracle_counts[m];
        sums.expect(pointwise, "Q(cbrt 2) to 2000");
    }
    out.push_back(sums.done());
    return out;
}

// ---- classgroup ----

std::vector<CheckResult> classgroup_suite(std::uint64_t seed) {
    std::vector<CheckResult> out;

    Check law("classgroup", "composition-associative-commutative", 0);
    Check ident("classgroup", "identity-and-mirror-inverse", 0);
    std::vector<std::int64_t> ds{-23, -47, -84, -420, 40, 136, 229, 1345};
    for (std::int64_t d : sample_fundamental_discriminants(40, 20'000, seed)) ds.push_back(d);
    std::size_t tables = 0;
    for (std::int64_t d : ds) {
        const FormClassTable T(d);
        const std::size_t h = T.size();
        if (h > 50) continue;
        ++tables;
        bool ok_law = true;
        for (std::size_t i = 0; i < h && ok_law; ++i)
            for (std::size_t j = 0; j < h && ok_law; ++j) {
                ok_law = T.compose(i, j) == T.compose(j, i);
                for (std::size_t k = 0; k < h && ok_law; ++k)
                    ok_law = T.compose(T.compose(i, j), k) == T.compose(i, T.compose(j, k));
            }
        law.expect(ok_law, "d = " + str(d));
        bool ok_id = true;
        for (std::size_t i = 0; i < h; ++i) {
            const QuadForm& f = T.representative(i);
            ok_id = ok_id && T.compose(0, i) == i && T.index_of(compose(f, principal_form(d))) == i;
            const QuadForm mirror{f.a, -f.b, f.c};
            ok_id = ok_id && T.index_of(compose(f, mirror)) == 0;
        }
        ident.expect(ok_id, "d = " + str(d));
    }
    law.set_detail(std::to_string(tables) + " full tables");
    out.push_back(law.done());
    out.push_back(ident.done());

    Check tors("classgroup", "torsion-count-vs-brute-force", 0);
    std::mt19937_64 rng(seed ^ 0xc3);
    for (int t = 0; t < 300; ++t) {
        std::vector<std::uint64_t> chain;
        std::uint64_t order = 1;
        std::uint64_t prev = 1;
        while (true) {
            const std::uint64_t next = prev * (1 + rng() % 6);
            if (next < 2 || order * next > 10'000) break;
            // Invariant factors ascend, each dividing the next.
            chain.push_back(next);
            order *= next;
            prev = next;
            if (rng() % 3 == 0) break;
        }
        const AbelianGroup G(chain);
        for (std::uint64_t ell : {2, 3, 4, 5, 6, 7, 12}) {
            tors.expect(torsion_count(G, ell) == oracle::brute_torsion_count(G, ell), G.to_string() + " ell " + str(static_cast<std::int64_t>(ell)));
        }
    }
    out.push_back(tors.done());

    Check le("classgroup", "torsion-le-class-number", 0);
    for (std::int64_t d : sample_fundamental_discriminants(60, 100'000, seed + 3)) {
        const auto q = quadratic_class_data(d);
        for (std::uint64_t ell : {2, 3, 5, 7}) le.expect(torsion_count(q.class_group, ell) <= q.h, "d = " + str(d));
    }
    out.push_back(le.done());

    // Smoothed estimate against the exact residue, held to the estimator's
    // own uncertainty (tolerance 1 on the normalised deviation).
    Check kap("classgroup", "dirichlet-vs-smoothed-within-uncertainty", 1);
    for (std::int64_t d : sample_fundamental_discriminants(50, 2'000, seed + 4)) {
        const NumberField K(quadratic_field_spec(d));
        const auto q = quadratic_class_data(d);
        const double exact = dirichlet_kappa(d, q.h, q.regulator, q.w);
        const auto t = build_coeff_table(K, 100'000);
        const auto est = estimate_kappa(K, &t, KappaMethod::Smoothed);
        kap.error(std::fabs(est.value - exact) / est.uncertainty, "d = " + str(d));
    }
    out.push_back(kap.done());
    return out;
}

// ---- mellin ----

std::vector<CheckResult> mellin_suite(std::uint64_t) {
    std::vector<CheckResult> out;

    Check phi("mellin", "phi-le-1-peak-at-e^-k", 0);
    for (int k = 1; k <= 8; ++k) {
        const SmoothKernel K(k);
        const double peak = K.phi(std::exp(-static_cast<double>(k)));
        bool ok = peak <= 1;
        for (int i = 1; i <= 100'000; ++i) {
            const double v = K.phi(i / 100'000.0);
            ok = ok && v <= 1 && v <= peak;
        }
        phi.expect(ok, "k = " + str(k));
    }
    out.push_back(phi.done());

    Check quad("mellin", "transform-vs-quadrature", 1e-8);
    for (int k = 1; k <= 5; ++k) {
        const SmoothKernel K(k);
        for (std::complex<double> s : {std::complex<double>(0.5, 0), std::complex<double>(1, 0), std::complex<double>(2, 0),
                                       std::complex<double>(1, 1)}) {
            quad.error(std::abs(K.transform(s) - mellin_transform_numeric(K, s)),
                       "k = " + str(k) + ", s = " + std::to_string(s.real()) + "+" + std::to_string(s.imag()) + "i");
        }
    }
    out.push_back(quad.done());

    Check inv("mellin", "inversion-on-the-2-line", 1e-6);
    for (std::int64_t d : {-4, 5}) {
        const auto t = build_coeff_table(NumberField(quadratic_field_spec(d)), 600);
        for (int k : {2, 3})
            for (double x : {50.0, 100.0, 500.0}) {
                const auto r = verify_inversion(t, SmoothKernel(k), x);
                inv.error(r.abs_error, "d = " + str(d) + ", k = " + str(k) + ", x = " + std::to_string(x));
            }
    }
    out.push_back(inv.done());

    Check snf("mellin", "smoothed-sum-le-N-flat", 0);
    for (const auto& K : reference_fields()) {
        const auto t = build_coeff_table(K, 3000);
        for (int k : {1, 2, 3}) {
            const SmoothKernel ker(k);
            for (double x = 1; x <= 3000; x += 0.5)
                snf.expect(smoothed_sum(t, ker, x, true) <= static_cast<double>(count_N_flat(t, x)),
                           K.spec().poly.to_string() + " x = " + std::to_string(x));
        }
    }
    out.push_back(snf.done());
    return out;
}

// ---- pipeline and io share one small corpus ----

struct CorpusRun {
    std::vector<BoundReport> reports;
    std::vector<FieldInvariants> invariants;
};

CorpusRun run_corpus(std::uint64_t seed) {
    CorpusRun run;
    for (std::int64_t d : sample_fundamental_discriminants(40, 100'000, seed + 5)) {
        const NumberField K(to_field_spec(quadratic_record(d)));
        for (int ell : {2, 3, 5}) {
            PipelineParams p;
            p.ell = ell;
            run.reports.push_back(analyze_field(K, p));
            run.invariants.push_back(K.invariants());
        }
    }
    return run;
}

std::vector<CheckResult> pipeline_suite(std::uint64_t seed, const CorpusRun& run) {
    std::vector<CheckResult> out;

    Check chain("pipeline", "torsion-le-class-number-le-trivial-fit", 0);
    for (const auto& r : run.reports)
        if (r.class_number && r.torsion) chain.expect(*r.torsion <= *r.class_number, r.label);
    for (const auto& f : fit_families(run.reports))
        if (f.family == "trivial") {
            chain.expect(f.violations == 0, "trivial fit ell " + str(f.ell));
            std::ostringstream os;
            os << "fitted log C0 per ell:";
            for (const auto& g : fit_families(run.reports))
                if (g.family == "trivial") os << ' ' << g.ell << '=' << g.log_C;
            chain.set_detail(os.str());
        }
    out.push_back(chain.done());

    Check ratio("pipeline", "ev-ratio-bounded-below", 0);
    std::ostringstream os;
    os << "fitted lower bound per ell:";
    for (const auto& f : fit_families(run.reports))
        if (f.family == "ev-ratio") {
            ratio.expect(f.violations == 0 && std::isfinite(f.log_C), "ev-ratio ell " + str(f.ell));
            os << ' ' << f.ell << '=' << f.log_C;
        }
    ratio.set_detail(os.str());
    out.push_back(ratio.done());

    Check re("pipeline", "section3-reassembly", 1e-9);
    for (std::size_t i = 0; i < run.reports.size(); ++i) {
        const auto& s = run.reports[i].s3;
        re.error(std::fabs(reassemble_section3(s, run.invariants[i]) - s.log_final) / std::max(1.0, std::fabs(s.log_final)),
                 run.reports[i].label);
    }
    out.push_back(re.done());

    Check mono("pipeline", "class-rhs-decreasing-in-V", 0);
    for (std::size_t i = 0; i < run.reports.size(); ++i) {
        const auto& r = run.reports[i];
        if (!r.V_K || !r.class_number) continue;
        const double llD = std::log(r.log_D);
        const double lh = std::log(static_cast<double>(*r.class_number));
        double prev = INFINITY;
        bool ok = true;
        for (double V = 0.25 * std::fabs(*r.V_K) + 0.01; V <= 4 * std::fabs(*r.V_K) + 1; V *= 1.3) {
            const double rhs = lh - PipelineParams{}.class_delta * V * llD;
            ok = ok && rhs < prev;
            prev = rhs;
        }
        // The report's own value sits on the same line.
        ok = ok && std::fabs(*r.log_class_rhs - (lh - PipelineParams{}.class_delta * *r.V_K * llD)) < 1e-9;
        mono.expect(ok, r.label);
    }
    out.push_back(mono.done());

    Check br("pipeline", "canonical-z-bracket", 0);
    for (const auto& r : run.reports) br.expect(r.s3.bracket_lower && r.s3.bracket_upper, r.label + " ell " + str(r.ell));
    out.push_back(br.done());

    Check rank("pipeline", "rankin-ge-exact-smooth-sum", 0);
    std::mt19937_64 rng(seed ^ 0x5e);
    for (std::int64_t d : {-4, 5, -23}) {
        const auto t = build_coeff_table(NumberField(quadratic_field_spec(d)), 100'000);
        for (int i = 0; i < 20; ++i) {
            const double y = 2 + static_cast<double>(rng() % 200);
            const double x = std::exp(std::log(2.0) + (std::log(1e7) - std::log(2.0)) * static_cast<double>(rng() % 1000) / 999);
            const double exact = smooth_sum_exact(t, x, y);
            for (double alpha : {0.6, 0.75, 0.9})
                rank.expect(rankin_log_bound(t, std::log(x), y, alpha) >= std::log(exact) - 1e-12,
                            "d = " + str(d) + " x = " + std::to_string(x) + " y = " + std::to_string(y));
        }
    }
    out.push_back(rank.done());
    return out;
}

bool same_cell(const Cell* a, const Cell* b) {
    const bool a_null = !a || std::holds_alternative<std::monostate>(*a);
    const bool b_null = !b || std::holds_alternative<std::monostate>(*b);
    if (a_null || b_null) return a_null == b_null;
    return *a == *b;
}

std::vector<CheckResult> io_suite(std::uint64_t seed, const CorpusRun& run) {
    std::vector<CheckResult> out;

    Check rt("io", "report-round-trip", 0);
    std::vector<ReportRecord> recs;
    PipelineParams p;
    for (const auto& r : run.reports) {
        p.ell = r.ell;
        recs.push_back(flatten(r, p, {seed, "verify"}));
    }
    for (ReportFormat fmt : {ReportFormat::Jsonl, ReportFormat::Csv}) {
        const std::string text = format_reports(recs, fmt);
        const auto back = parse_reports(text, fmt);
        rt.expect(back.size() == recs.size(), "record count");
        for (std::size_t i = 0; i < std::min(back.size(), recs.size()); ++i)
            for (const auto& [k, v] : recs[i].columns)
                rt.expect(same_cell(&v, back[i].find(k)), (fmt == ReportFormat::Csv ? "csv " : "jsonl ") + k);
        rt.expect(format_reports(back, fmt) == text, "re-serialisation differs");
    }
    out.push_back(rt.done());

    // Good lines interleaved with one violation of each kind.
    Check val("io", "corpus-validation-exact", 0);
    const std::vector<std::pair<std::string, bool>> lines = {
        {to_json_line(quadratic_record(-23)), true},
        {R"({"label":"nonmonic","coeffs":[1,0,2],"source":"t"})", false},
        {R"({"label":"chain","coeffs":[1,0,1],"class_group":[4,2],"source":"t"})", false},
        {to_json_line(quadratic_record(5)), true},
        {R"({"label":"disc","coeffs":[1,0,1],"disc":-3,"source":"t"})", false},
        {R"({"label":"sig","coeffs":[-2,0,1],"r1r2":[0,1],"source":"t"})", false},
        {R"({"label":"key","coeffs":[1,0,1],"extra":0,"source":"t"})", false},
        {R"({"label":"nosource","coeffs":[1,0,1]})", false},
        {"{not json", false},
        {R"({"label":"cbrt2","coeffs":[-2,0,0,1],"source":"t"})", true},
        {R"({"label":"deg0","coeffs":[1],"source":"t"})", false},
        {R"({"label":"split","coeffs":[1,0,1],"splitting":{"3":[[1,1]]},"source":"t"})", false},
    };
    std::string text;
    std::set<int> expected_bad;
    std::size_t good = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        text += lines[i].first + "\n";
        if (lines[i].second)
            ++good;
        else
            expected_bad.insert(static_cast<int>(i) + 1);
    }
    const auto load = parse_corpus(text);
    std::set<int> got;
    for (const auto& v : load.violations) {
        got.insert(v.line);
        val.expect(!v.message.empty(), "empty message on line " + str(v.line));
    }
    val.expect(got == expected_bad, "violating lines differ from the planted ones");
    val.expect(load.records.size() == good, "good records lost");
    try {
        load.throw_if_invalid();
        val.expect(false, "throw_if_invalid did not raise");
    } catch (const Error& e) {
        val.expect(e.code() == Errc::SchemaViolation && e.detail().find("line 2") != std::string::npos,
                   "diagnostic lacks line numbers");
    }
    out.push_back(val.done());
    return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"algebra", "field", "coeffs", "classgroup", "mellin", "pipeline", "io"};
    return names;
}

std::vector<CheckResult> run_suite(std::string_view suite, std::uint64_t seed) {
    const bool all = suite == "all";
    if (!all && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
        fail("verify", Errc::InvalidArgument, "unknown suite '" + std::string(suite) + "'");
    std::vector<CheckResult> out;
    auto add = [&](std::vector<CheckResult> v) { out.insert(out.end(), v.begin(), v.end()); };
    if (all || suite == "algebra") add(algebra_suite(seed));
    if (all || suite == "field") add(field_suite(seed));
    if (all || suite == "coeffs") add(coeffs_suite(seed));
    if (all || suite == "classgroup") add(classgroup_suite(seed));
    if (all || suite == "mellin") add(mellin_suite(seed));
    if (all || suite == "pipeline" || suite == "io") {
        const CorpusRun run = run_corpus(seed);
        if (all || suite == "pipeline") add(pipeline_suite(seed, run));
        if (all || suite == "io") add(io_suite(seed, run));
    }
    return out;
}

std::string to_jsonl(const CheckResult& r) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["check"] = r.name;
    j["passed"] = r.passed;
    j["measured"] = std::isfinite(r.measured) ? nlohmann::ordered_json(r.measured) : nlohmann::ordered_json(nullptr);
    j["tolerance"] = r.tolerance;
    j["cases"] = r.cases;
    j["detail"] = r.detail;
    return j.dump();
}

}  // namespace ltorsion::verify
