#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ltorsion/field/number_field.hpp"
#include "ltorsion/zeta/coeff_table.hpp"
#include "ltorsion/zeta/kappa.hpp"

namespace ltorsion {

// Every value below is a natural log and omits the unspecified implied
// constants; reports carry modulo_constant = true to say so.

struct PipelineParams {
    int ell = 2;
    double eta = 0.5;
    double delta = 0.125;          // second pipeline, 0 < delta < eta/2
    double A = 1.0;                // subconvexity exponent
    int k = 0;                     // 0: n - 1 for the first pipeline, ceil(A) + 1 for the second
    double class_delta = 1.0;   // unspecified small constant in the class-number bound
    std::uint64_t table_cap = 10'000'000;
    std::uint64_t enum_cap = 10'000'000;   // exact smooth-sum enumeration up to this x
    std::uint64_t kappa_table_bound = 100'000;
    KappaMethod kappa_method = KappaMethod::Auto;

    // InvalidArgument on ell < 2, eta outside (0, 1), A < 1, k < 0.
    void validate() const;
    // Additionally 0 < delta < eta/2.
    void validate_section4() const;
};

struct LogValue {
    double value = 0;
    std::string source;
};

// (trivial shape, refined shape): 1/2 log D + (n-1) log log D and
// 1/2 log D + (n - r + rho - 1) log log D.
std::pair<double, double> trivial_bounds(const FieldInvariants& inv);

// log kappa + 1/2 log D - log max(M, 1). The tag names the M variant and
// kappa source and gains "degenerate" when M = 0.
LogValue ev_bound(double kappa, std::string_view kappa_source, std::uint64_t M, double log_D,
                  std::string_view m_variant);

// (1/4 + delta)(log D + n log|1 + it|).
double convexity_rhs(const FieldInvariants& inv, double t, double delta);

// V_K from |Cl_K| = V^n D^{1/2} (log D)^{-r+rho-1} (log log D)^{3n/2}.
// DomainTooSmall when D < 16.
double solve_VK(double class_number, const FieldInvariants& inv);
// Inverse of solve_VK, for round trips.
double class_number_from_VK(double V, const FieldInvariants& inv);

// Sum of lambda-flat(m) over y-smooth m <= x, by depth-first search over
// the primes p <= y with lambda-flat(p) > 0. CapExceeded past `node_cap`.
double smooth_sum_exact(const CoeffTable& table, double x, double y, std::uint64_t node_cap = 50'000'000);
// Rankin: alpha log x + sum_{p <= y} log(1 + lambda-flat(p) p^-alpha).
double rankin_log_bound(const CoeffTable& table, double log_x, double y, double alpha);

struct Section3 {
    double log_y = 0;
    double log_x = 0;
    bool degenerate = false;   // y < 2: the prime range is empty
    bool x_in_D2_D3 = false;   // the 2 log D <= log x <= 3 log D note
    std::optional<std::uint64_t> pi_flat_y;
    std::optional<std::uint64_t> N_flat_y;
    std::uint64_t z = 2;       // canonical bracket: smallest z with n pi(z) >= pi-flat(y)
    std::uint64_t pi_Q_z = 1;
    bool bracket_lower = false;
    bool bracket_upper = false;
    bool z_le_y = false;
    double alpha = 0.75;
    std::string smooth_status;  // exact | rankin-bounded
    double log_smooth = 0;      // exact log sum when enumerable, else Rankin
    std::optional<double> log_smooth_exact;
    double log_rankin = 0;
    double log_rough = 0;       // (x / log x) prod_{p <= y}(1 + lambda-flat(p)/p)
    std::string S_status;       // exact | rankin-bounded | log-estimated
    double log_S_bound = 0;
    double log_residue_factor = 0;  // log(log z / z)
    double log_kappa_upper = 0;     // n log log z - log log D + (n/2) log log log D
    double log_final = 0;           // z^-1 (log z)^{n+1} D^{1/2} (log D)^-1 (log log D)^{n/2}
};

struct Section4Case {
    double log_bound = 0;
    double exponent = 0;  // log_bound / log D
    std::string tag;      // effective | ineffective | not-applicable | unknown
};

struct Section4 {
    int k = 0;
    double log_x = 0;
    bool degenerate = false;
    std::optional<std::uint64_t> N_flat_x;
    std::optional<double> S_x;
    std::optional<bool> S_le_N;
    std::string H_source;       // table | lower-bound-shape
    double log_H = 0;
    double log_kappa_lower_i = 0;   // -delta/(4 ell (n-1)) log D
    double log_kappa_lower_ii = 0;  // -log log D
    Section4Case case_i, case_ii, case_iii;
    double exponent_iii_formula = 0;  // 1/2 - (eta - delta)/(4 ell (n-1))
};

struct BoundReport {
    std::string label;
    std::string source;
    int n = 0;
    std::string D;  // decimal
    double log_D = 0;
    int r = 0;
    int rho = 0;
    int ell = 0;
    std::string disc_source, rho_source, irreducibility, quadratic_subfield;
    bool modulo_constant = true;

    double log_trivial = 0;
    double log_refined = 0;
    double kappa = 0;
    double kappa_uncertainty = 0;
    std::string kappa_source;
    LogValue ev_prime;  // M = 1 + pi-flat(y)
    std::optional<LogValue> ev_full;  // M = N-flat(y)

    Section3 s3;
    std::optional<Section4> s4;

    std::optional<std::uint64_t> class_number;
    std::optional<std::uint64_t> torsion;
    std::string class_source;  // certified | forms | none
    std::optional<double> V_K;
    std::optional<double> log_class_rhs;  // log |Cl| - delta V log log D
    std::optional<double> log_z_lower;   // 3 delta V log log D

    std::vector<std::string> warnings;
    bool degenerate() const { return s3.degenerate || (s4 && s4->degenerate); }
};

Section3 section3_pipeline(const NumberField& field, const CoeffTable& table, const PipelineParams& params);
Section4 section4_pipeline(const NumberField& field, const CoeffTable& table, const PipelineParams& params);

// Table bound the pipelines need: max(y, x_4) floored, at least 2.
std::uint64_t pipeline_table_bound(const FieldInvariants& inv, const PipelineParams& params);

// Full report for one field and ell. The second pipeline is included when
// its parameters validate.
BoundReport analyze_field(const NumberField& field, const PipelineParams& params);

// Recomputes log_final from its logged components.
double reassemble_section3(const Section3& s, const FieldInvariants& inv);

struct FamilyFit {
    std::string family;
    int ell = 0;
    std::size_t fields = 0;
    double log_C = 0;          // max residual: fitted constant
    std::size_t violations = 0;  // residuals above log_C after fitting
    double min_margin = 0;     // smallest log_C - residual
};

// Fitted constants per (family, ell): trivial (log|Cl| vs the trivial shape),
// ev (log|Cl[ell]| vs ev_prime) and ev-ratio (ev_prime - log|Cl[ell]|,
// reported as the lower bound).
std::vector<FamilyFit> fit_families(const std::vector<BoundReport>& reports);

struct LineFit {
    double slope = 0;
    double intercept = 0;
    std::size_t points = 0;
};
LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ltorsion
