#include "mna/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mna {

double mean(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("mean of empty sample");
    double s = 0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double sample_sd(std::span<const double> x) {
    if (x.size() < 2) throw std::invalid_argument("sample sd needs at least 2 observations");
    double m = mean(x);
    double ss = 0;
    for (double v : x) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

double pearson_corr(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("correlation needs two equal-length samples, n >= 2");
    double mx = mean(x), my = mean(y);
    double sxy = 0, sxx = 0, syy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0 || syy == 0)
        throw std::invalid_argument("correlation undefined: constant series");
    return sxy / std::sqrt(sxx * syy);
}

double percentile_nearest_rank(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("percentile of empty sample");
    if (p <= 0 || p > 1) throw std::invalid_argument("percentile p must be in (0, 1]");
    std::sort(values.begin(), values.end());
    // Guard against FP fuzz in p*n landing a hair above an exact integer.
    auto rank = static_cast<size_t>(std::ceil(p * static_cast<double>(values.size()) - 1e-9));
    if (rank < 1) rank = 1;
    if (rank > values.size()) rank = values.size();
    return values[rank - 1];
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;
    double qab = a + b, qap = a + 1, qam = a - 1;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (x < 0 || x > 1) throw std::invalid_argument("incomplete_beta: x outside [0,1]");
    if (x == 0) return 0;
    if (x == 1) return 1;
    double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                      a * std::log(x) + b * std::log1p(-x);
    if (x < (a + 1) / (a + b + 2))
        return std::exp(ln_front) * beta_cf(a, b, x) / a;
    return 1.0 - std::exp(ln_front) * beta_cf(b, a, 1 - x) / b;
}

double student_t_cdf(double t, double df) {
    if (df <= 0) throw std::invalid_argument("student_t_cdf: df must be positive");
    if (t == 0) return 0.5;
    double x = df / (df + t * t);
    double tail = 0.5 * incomplete_beta(df / 2.0, 0.5, x);
    return t > 0 ? 1.0 - tail : tail;
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument("welch_t_test needs at least 2 observations per sample");
    double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    double sa = sample_sd(a), sb = sample_sd(b);
    double va = sa * sa / na, vb = sb * sb / nb;
    if (va + vb == 0)
        throw std::invalid_argument("welch_t_test undefined: zero variance in both samples");
    WelchResult r;
    r.t = (mean(a) - mean(b)) / std::sqrt(va + vb);
    double denom = 0;
    if (va > 0) denom += va * va / (na - 1);
    if (vb > 0) denom += vb * vb / (nb - 1);
    r.df = (va + vb) * (va + vb) / denom;
    r.p = 2.0 * (1.0 - student_t_cdf(std::fabs(r.t), r.df));
    return r;
}

namespace {

// Doubled midranks of the pooled sample (doubling makes them integers).
std::vector<long> doubled_midranks(std::vector<double> pooled) {
    size_t n = pooled.size();
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t i, size_t j) { return pooled[i] < pooled[j]; });
    std::vector<long> dr(n);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        // positions i..j (0-based) share midrank ((i+1)+(j+1))/2; doubled: i+j+2
        long doubled = static_cast<long>(i + j + 2);
        for (size_t k = i; k <= j; ++k) dr[order[k]] = doubled;
        i = j + 1;
    }
    return dr;
}

}  // namespace

MannWhitneyResult mann_whitney(std::span<const double> a, std::span<const double> b,
                               size_t exact_limit) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("mann_whitney needs non-empty samples");
    size_t n1 = a.size(), n2 = b.size(), n = n1 + n2;

    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::vector<long> dr = doubled_midranks(pooled);

    long w2 = 0;  // doubled rank sum of the first sample
    for (size_t i = 0; i < n1; ++i) w2 += dr[i];

    MannWhitneyResult r;
    r.u = 0.5 * static_cast<double>(w2) -
          0.5 * static_cast<double>(n1) * static_cast<double>(n1 + 1);

    if (n1 <= exact_limit && n2 <= exact_limit) {
        // Permutation distribution of the doubled rank sum by subset-sum DP.
        long total = 0;
        for (long v : dr) total += v;
        std::vector<std::vector<double>> dp(n1 + 1, std::vector<double>(total + 1, 0.0));
        dp[0][0] = 1.0;
        for (size_t item = 0; item < n; ++item) {
            long v = dr[item];
            for (size_t k = std::min(item + 1, n1); k >= 1; --k)
                for (long s = total; s >= v; --s)
                    if (dp[k - 1][s - v] > 0) dp[k][s] += dp[k - 1][s - v];
        }
        double count_le = 0, count_ge = 0, count_all = 0;
        for (long s = 0; s <= total; ++s) {
            double c = dp[n1][s];
            count_all += c;
            if (s <= w2) count_le += c;
            if (s >= w2) count_ge += c;
        }
        r.p = std::min(1.0, 2.0 * std::min(count_le, count_ge) / count_all);
        r.exact = true;
        return r;
    }

    // Normal approximation with tie correction and continuity correction.
    double mu = 0.5 * static_cast<double>(n1) * static_cast<double>(n2);
    double tie_sum = 0;
    {
        std::vector<double> sorted(pooled);
        std::sort(sorted.begin(), sorted.end());
        size_t i = 0;
        while (i < sorted.size()) {
            size_t j = i;
            while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
            double t = static_cast<double>(j - i + 1);
            tie_sum += t * t * t - t;
            i = j + 1;
        }
    }
    double nn = static_cast<double>(n);
    double var = (static_cast<double>(n1) * static_cast<double>(n2) / 12.0) *
                 ((nn + 1.0) - tie_sum / (nn * (nn - 1.0)));
    if (var <= 0) {  // every observation tied
        r.p = 1.0;
        return r;
    }
    double diff = r.u - mu;
    double adj = std::max(0.0, std::fabs(diff) - 0.5);  // continuity correction
    double z = adj / std::sqrt(var);
    r.p = std::min(1.0, 2.0 * normal_cdf(-z));
    return r;
}

}  // namespace mna
