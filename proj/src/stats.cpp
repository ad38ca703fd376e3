#include "trapbench/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace trapbench {

const char* verdict_symbol(Verdict v) {
    switch (v) {
    case Verdict::Plus:
        return "+";
    case Verdict::Minus:
        return "-";
    default:
        return "~";
    }
}

namespace {

/// Continued fraction for the incomplete beta function (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int max_iterations = 300;
    constexpr double eps = 1e-15;
    constexpr double tiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny)
        d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iterations; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny)
            d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny)
            d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps)
            break;
    }
    return h;
}

double sample_mean(std::span<const double> v) {
    double total = 0.0;
    for (double x : v)
        total += x;
    return total / static_cast<double>(v.size());
}

double sum_sq_dev(std::span<const double> v, double mean) {
    double total = 0.0;
    for (double x : v)
        total += (x - mean) * (x - mean);
    return total;
}

ComparisonVerdict classify(double t, int df, double mean_diff, double alpha) {
    ComparisonVerdict out;
    out.t_statistic = t;
    out.degrees_of_freedom = df;
    if (std::isinf(t)) {
        out.p_value = 0.0;
    } else {
        out.p_value = student_t_two_tailed_p(t, df);
    }
    out.significant = out.p_value < alpha;
    if (!out.significant)
        out.verdict = Verdict::Tilde;
    else
        out.verdict = mean_diff > 0.0 ? Verdict::Plus : Verdict::Minus;
    return out;
}

} // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0)
        throw std::invalid_argument("regularized_incomplete_beta: a, b must be positive");
    if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("regularized_incomplete_beta: x must lie in [0, 1]");
    if (x == 0.0)
        return 0.0;
    if (x == 1.0)
        return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_tailed_p(double t, int df) {
    if (df < 1)
        throw std::invalid_argument("student_t_two_tailed_p: df must be >= 1");
    const double nu = static_cast<double>(df);
    const double x = nu / (nu + t * t);
    return regularized_incomplete_beta(nu / 2.0, 0.5, x);
}

double t_critical_two_tailed(int df, double alpha) {
    double lo = 0.0;
    double hi = 1.0;
    while (student_t_two_tailed_p(hi, df) > alpha)
        hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (student_t_two_tailed_p(mid, df) > alpha)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

ComparisonVerdict t_test_two_sample(std::span<const double> a, std::span<const double> b,
                                    double alpha) {
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("t_test_two_sample: need two equal samples of size >= 2");
    const auto n = static_cast<double>(a.size());
    const double ma = sample_mean(a);
    const double mb = sample_mean(b);
    const int df = static_cast<int>(2 * a.size() - 2);
    const double pooled_var = (sum_sq_dev(a, ma) + sum_sq_dev(b, mb)) / static_cast<double>(df);
    const double diff = ma - mb;
    if (pooled_var == 0.0) {
        if (diff == 0.0)
            return classify(0.0, df, 0.0, alpha);
        const double inf = std::numeric_limits<double>::infinity();
        return classify(diff > 0.0 ? inf : -inf, df, diff, alpha);
    }
    const double t = diff / std::sqrt(pooled_var * 2.0 / n);
    return classify(t, df, diff, alpha);
}

ComparisonVerdict t_test_paired(std::span<const double> a, std::span<const double> b,
                                double alpha) {
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("t_test_paired: need two equal samples of size >= 2");
    std::vector<double> delta(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        delta[i] = a[i] - b[i];
    const double md = sample_mean(delta);
    const int df = static_cast<int>(a.size() - 1);
    const double var = sum_sq_dev(delta, md) / static_cast<double>(df);
    if (var == 0.0) {
        if (md == 0.0)
            return classify(0.0, df, 0.0, alpha);
        const double inf = std::numeric_limits<double>::infinity();
        return classify(md > 0.0 ? inf : -inf, df, md, alpha);
    }
    const double t = md / std::sqrt(var / static_cast<double>(a.size()));
    return classify(t, df, md, alpha);
}

} // namespace trapbench
