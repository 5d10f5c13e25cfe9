#pragma once

#include <span>
#include <vector>

namespace mna {

double mean(std::span<const double> x);
// Sample standard deviation, n-1 denominator. Throws on n < 2.
double sample_sd(std::span<const double> x);
double pearson_corr(std::span<const double> x, std::span<const double> y);

// Nearest-rank percentile: the ceil(p*n)-th smallest value, p in (0, 1].
double percentile_nearest_rank(std::vector<double> values, double p);

double normal_cdf(double z);
// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);
double student_t_cdf(double t, double df);

struct WelchResult {
    double t = 0;
    double df = 0;
    double p = 1;  // two-sided
};

// Welch two-sample t-test with Satterthwaite degrees of freedom.
// Throws when both samples have zero variance (statistic undefined).
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

struct MannWhitneyResult {
    double u = 0;   // U statistic for the first sample, ties counted 1/2
    double p = 1;   // two-sided
    bool exact = false;
};

// Two-sided Mann-Whitney-Wilcoxon. Exact permutation distribution (ties
// included) when both n <= exact_limit, otherwise normal approximation with
// tie correction and continuity correction. p = min(1, 2*min(P(U<=u), P(U>=u)))
// under the permutation null in the exact branch.
MannWhitneyResult mann_whitney(std::span<const double> a, std::span<const double> b,
                               size_t exact_limit = 12);

}  // namespace mna
