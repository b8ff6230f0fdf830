#pragma once

#include <string_view>

#include "ltorsion/field/number_field.hpp"
#include "ltorsion/zeta/coeff_table.hpp"

namespace ltorsion {

enum class KappaMethod { Auto, Certified, DirichletExact, Smoothed };
enum class KappaSource { Certified, DirichletExact, Smoothed };

std::string_view to_string(KappaMethod m);
std::string_view to_string(KappaSource s);

struct KappaEstimate {
    double value = 0;
    double uncertainty = 0;  // reported half-width, not a proof
    KappaSource source = KappaSource::Smoothed;
    double x = 0;            // smoothing length, smoothed method only
};

struct KappaOptions {
    double x = 0;          // 0 uses the table bound
    int dyadic_steps = 4;  // uncertainty from x / 2^i, i = 1..steps
};

// Residue of zeta_K at s = 1.
//   Certified: 2^{r1} (2 pi)^{r2} h R / (w sqrt D) from corpus class data.
//   DirichletExact: quadratic fields, exact h and R from forms.
//   Smoothed: 2^{k+1} S(x) / (x H_K(1, x)) with k = n - 1.
//   Auto: the first of these that applies.
// NoMethodAvailable when the requested method lacks its inputs.
KappaEstimate estimate_kappa(const NumberField& field, const CoeffTable* table, KappaMethod method,
                             const KappaOptions& options = {});

// The smoothed estimator at a single x.
double smoothed_kappa_at(const CoeffTable& table, double x);

}  // namespace ltorsion
