#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "trapbench/stats.hpp"
#include "trapbench/rng.hpp"

using namespace trapbench;

namespace {

// Independent oracle: two-tailed p computed by adaptive Simpson
// quadrature of the t density, using only lgamma from the standard
// library (no shared code with the implementation under test).
double t_pdf(double x, double nu) {
    const double log_norm = std::lgamma((nu + 1.0) / 2.0) - std::lgamma(nu / 2.0) -
                            0.5 * std::log(nu * std::acos(-1.0));
    return std::exp(log_norm - (nu + 1.0) / 2.0 * std::log1p(x * x / nu));
}

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(double a, double b, double fa, double fm, double fb, double whole,
                        double tol, double nu, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = t_pdf(lm, nu);
    const double frm = t_pdf(rm, nu);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(a, m, fa, flm, fm, left, tol / 2.0, nu, depth - 1) +
           adaptive_simpson(m, b, fm, frm, fb, right, tol / 2.0, nu, depth - 1);
}

double oracle_two_tailed_p(double t, int df) {
    const double nu = df;
    const double hi = std::fabs(t);
    const double fa = t_pdf(0.0, nu);
    const double fb = t_pdf(hi, nu);
    const double fm = t_pdf(hi / 2.0, nu);
    const double central =
        adaptive_simpson(0.0, hi, fa, fm, fb, simpson(0.0, hi, fa, fm, fb), 1e-12, nu, 40);
    return 1.0 - 2.0 * central;
}

} // namespace

TEST_CASE("two-tailed p-values match the quadrature oracle to 1e-6") {
    for (double t : {0.5, 1.0, 2.0, 3.0})
        for (int df : {29, 58})
            CHECK(std::fabs(student_t_two_tailed_p(t, df) - oracle_two_tailed_p(t, df)) < 1e-6);
}

TEST_CASE("critical values at the 0.05 level") {
    CHECK(std::fabs(t_critical_two_tailed(58, 0.05) - 2.0017) < 1e-3);
    CHECK(std::fabs(t_critical_two_tailed(29, 0.05) - 2.0452) < 1e-3);
}

TEST_CASE("identical samples are statistically equivalent") {
    const std::vector<double> a{3.0, 4.0, 5.0, 4.5, 3.5};
    const auto two = t_test_two_sample(a, a);
    CHECK(two.t_statistic == doctest::Approx(0.0));
    CHECK(two.degrees_of_freedom == 8);
    CHECK(two.verdict == Verdict::Tilde);
    const auto paired = t_test_paired(a, a);
    CHECK(paired.degrees_of_freedom == 4);
    CHECK(paired.verdict == Verdict::Tilde);
}

TEST_CASE("overwhelming separation yields plus") {
    Rng rng(81);
    std::vector<double> low, high;
    for (int i = 0; i < 30; ++i) {
        const double noise = (rng.next_double() - 0.5) * 0.2; // std ~ 0.1
        low.push_back(20.0 + noise);
        high.push_back(30.0 + noise * 0.7);
    }
    const auto verdict = t_test_two_sample(high, low);
    CHECK(verdict.degrees_of_freedom == 58);
    CHECK(verdict.verdict == Verdict::Plus);
    CHECK(t_test_two_sample(low, high).verdict == Verdict::Minus);
}

TEST_CASE("degenerate variance cases") {
    const std::vector<double> flat_a(10, 5.0);
    const std::vector<double> flat_b(10, 7.0);
    const auto unequal = t_test_two_sample(flat_b, flat_a);
    CHECK(unequal.p_value == doctest::Approx(0.0));
    CHECK(unequal.verdict == Verdict::Plus);
    const auto equal = t_test_two_sample(flat_a, flat_a);
    CHECK(equal.verdict == Verdict::Tilde);

    // constant positive difference: zero-variance differences, p = 0
    std::vector<double> base{1.0, 2.0, 3.0, 4.0};
    std::vector<double> shifted{2.0, 3.0, 4.0, 5.0};
    const auto paired = t_test_paired(shifted, base);
    CHECK(paired.p_value == doctest::Approx(0.0));
    CHECK(paired.verdict == Verdict::Plus);
}

TEST_CASE("verdicts are antisymmetric and shift invariant") {
    Rng rng(82);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<double> a, b;
        for (int i = 0; i < 30; ++i) {
            a.push_back(rng.next_double() * 10.0);
            b.push_back(rng.next_double() * 10.0 + (trial % 3 == 0 ? 2.0 : 0.0));
        }
        const auto ab = t_test_two_sample(a, b);
        const auto ba = t_test_two_sample(b, a);
        CHECK(ab.t_statistic == doctest::Approx(-ba.t_statistic));
        if (ab.verdict == Verdict::Tilde)
            CHECK(ba.verdict == Verdict::Tilde);
        if (ab.verdict == Verdict::Plus)
            CHECK(ba.verdict == Verdict::Minus);
        if (ab.verdict == Verdict::Minus)
            CHECK(ba.verdict == Verdict::Plus);

        std::vector<double> a_shift = a, b_shift = b;
        for (auto& v : a_shift)
            v += 100.0;
        for (auto& v : b_shift)
            v += 100.0;
        const auto shifted = t_test_two_sample(a_shift, b_shift);
        CHECK(shifted.verdict == ab.verdict);
        CHECK(shifted.t_statistic == doctest::Approx(ab.t_statistic).epsilon(1e-9));

        const auto paired_ab = t_test_paired(a, b);
        const auto paired_ba = t_test_paired(b, a);
        CHECK(paired_ab.t_statistic == doctest::Approx(-paired_ba.t_statistic));
    }
}

TEST_CASE("incomplete beta sanity") {
    CHECK(regularized_incomplete_beta(2.0, 3.0, 0.0) == doctest::Approx(0.0));
    CHECK(regularized_incomplete_beta(2.0, 3.0, 1.0) == doctest::Approx(1.0));
    // I_x(1,1) is the identity
    for (double x : {0.1, 0.25, 0.5, 0.9})
        CHECK(regularized_incomplete_beta(1.0, 1.0, x) == doctest::Approx(x).epsilon(1e-12));
    // symmetry: I_x(a,b) = 1 - I_{1-x}(b,a)
    CHECK(regularized_incomplete_beta(3.5, 1.25, 0.37) ==
          doctest::Approx(1.0 - regularized_incomplete_beta(1.25, 3.5, 0.63)).epsilon(1e-12));
    CHECK_THROWS_AS(regularized_incomplete_beta(0.0, 1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(regularized_incomplete_beta(1.0, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("input validation for the tests themselves") {
    const std::vector<double> one{1.0};
    const std::vector<double> two{1.0, 2.0};
    CHECK_THROWS_AS(t_test_two_sample(one, one), std::invalid_argument);
    CHECK_THROWS_AS(t_test_paired(two, one), std::invalid_argument);
}
