#pragma once

#include <span>
#include <string>

namespace trapbench {

enum class Verdict { Plus, Minus, Tilde };

const char* verdict_symbol(Verdict v);

/// Outcome of one pairwise comparison at significance level alpha.
/// Plus means the first sample is significantly better (higher mean).
struct ComparisonVerdict {
    double t_statistic = 0.0;
    int degrees_of_freedom = 0;
    double p_value = 1.0;
    bool significant = false;
    Verdict verdict = Verdict::Tilde;
};

/// Regularized incomplete beta function I_x(a, b), evaluated with the
/// standard continued-fraction expansion (modified Lentz) plus the
/// symmetry transform for x past the central cut. Accurate to ~1e-14.
double regularized_incomplete_beta(double a, double b, double x);

/// Two-tailed p-value of Student's t with df degrees of freedom:
/// I_{df/(df+t^2)}(df/2, 1/2).
double student_t_two_tailed_p(double t, int df);

/// |t| threshold at which the two-tailed p equals alpha (bisection).
double t_critical_two_tailed(int df, double alpha);

/// Pooled-variance two-sample t-test, df = 2R - 2. Zero pooled variance
/// degenerates to tilde when the means agree and to a p = 0 verdict
/// otherwise.
ComparisonVerdict t_test_two_sample(std::span<const double> a, std::span<const double> b,
                                    double alpha = 0.05);

/// Paired t-test on the difference vector, df = R - 1.
ComparisonVerdict t_test_paired(std::span<const double> a, std::span<const double> b,
                                double alpha = 0.05);

} // namespace trapbench
