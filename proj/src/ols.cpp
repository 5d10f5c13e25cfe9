#include "mna/ols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mna/stats.hpp"

namespace mna {

namespace {

size_t index_of_term(const RegressionResult& r, const std::string& term) {
    auto it = std::find(r.terms.begin(), r.terms.end(), term);
    if (it == r.terms.end()) throw std::invalid_argument("no term '" + term + "' in regression");
    return static_cast<size_t>(it - r.terms.begin());
}

}  // namespace

double RegressionResult::coef_of(const std::string& term) const {
    return coef[index_of_term(*this, term)];
}
double RegressionResult::se_of(const std::string& term) const {
    return se[index_of_term(*this, term)];
}
double RegressionResult::t_of(const std::string& term) const {
    return tstat[index_of_term(*this, term)];
}

RegressionResult fit_ols(const Matrix& x, std::span<const double> y,
                         std::vector<std::string> term_names, SeMode se_mode) {
    const size_t n = x.rows(), k = x.cols();
    if (term_names.size() != k)
        throw std::invalid_argument("fit_ols: term_names size does not match design columns");
    if (y.size() != n) throw std::invalid_argument("fit_ols: y length does not match design rows");
    if (n <= k)
        throw std::invalid_argument("fit_ols: need more observations than terms (n=" +
                                    std::to_string(n) + ", k=" + std::to_string(k) + ")");

    // Householder QR on the augmented matrix (X | y).
    Matrix a(n, k + 1);
    double max_colnorm = 0;
    for (size_t j = 0; j < k; ++j) {
        double ss = 0;
        for (size_t i = 0; i < n; ++i) {
            a(i, j) = x(i, j);
            ss += x(i, j) * x(i, j);
        }
        max_colnorm = std::max(max_colnorm, std::sqrt(ss));
    }
    for (size_t i = 0; i < n; ++i) a(i, k) = y[i];

    const double rank_tol = 1e-10 * max_colnorm * std::sqrt(static_cast<double>(k));
    std::vector<double> v(n);
    for (size_t j = 0; j < k; ++j) {
        double sigma = 0;
        for (size_t i = j; i < n; ++i) sigma += a(i, j) * a(i, j);
        sigma = std::sqrt(sigma);
        if (sigma <= rank_tol)
            throw std::invalid_argument("fit_ols: design matrix is rank deficient at column '" +
                                        term_names[j] + "'");
        double alpha = a(j, j) >= 0 ? -sigma : sigma;
        v[j] = a(j, j) - alpha;
        double vtv = v[j] * v[j];
        for (size_t i = j + 1; i < n; ++i) {
            v[i] = a(i, j);
            vtv += v[i] * v[i];
        }
        for (size_t c = j; c <= k; ++c) {
            double dot = 0;
            for (size_t i = j; i < n; ++i) dot += v[i] * a(i, c);
            double f = 2.0 * dot / vtv;
            for (size_t i = j; i < n; ++i) a(i, c) -= f * v[i];
        }
        a(j, j) = alpha;  // guard against residual rounding below the diagonal
        for (size_t i = j + 1; i < n; ++i) a(i, j) = 0;
        if (std::fabs(a(j, j)) <= rank_tol)
            throw std::invalid_argument("fit_ols: design matrix is rank deficient at column '" +
                                        term_names[j] + "'");
    }

    // Back-substitute R beta = Q'y.
    std::vector<double> beta(k);
    for (size_t jj = k; jj-- > 0;) {
        double s = a(jj, k);
        for (size_t c = jj + 1; c < k; ++c) s -= a(jj, c) * beta[c];
        beta[jj] = s / a(jj, jj);
    }

    RegressionResult r;
    r.terms = std::move(term_names);
    r.coef = beta;
    r.n = n;
    r.fitted.resize(n);
    r.residuals.resize(n);
    double rss = 0;
    for (size_t i = 0; i < n; ++i) {
        double f = 0;
        for (size_t j = 0; j < k; ++j) f += x(i, j) * beta[j];
        r.fitted[i] = f;
        r.residuals[i] = y[i] - f;
        rss += r.residuals[i] * r.residuals[i];
    }

    // (X'X)^-1 = Rinv Rinv' from the triangular factor.
    Matrix rinv(k, k);
    for (size_t j = 0; j < k; ++j) {
        rinv(j, j) = 1.0 / a(j, j);
        for (size_t i = j; i-- > 0;) {
            double s = 0;
            for (size_t l = i + 1; l <= j; ++l) s += a(i, l) * rinv(l, j);
            rinv(i, j) = -s / a(i, i);
        }
    }
    Matrix xtx_inv(k, k);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            double s = 0;
            for (size_t l = std::max(i, j); l < k; ++l) s += rinv(i, l) * rinv(j, l);
            xtx_inv(i, j) = s;
        }

    r.se.resize(k);
    if (se_mode == SeMode::classical) {
        double s2 = rss / static_cast<double>(n - k);
        for (size_t j = 0; j < k; ++j) r.se[j] = std::sqrt(s2 * xtx_inv(j, j));
    } else {
        // HC1: (n/(n-k)) * (X'X)^-1 X' diag(e^2) X (X'X)^-1
        Matrix meat(k, k);
        for (size_t i = 0; i < n; ++i) {
            double e2 = r.residuals[i] * r.residuals[i];
            for (size_t p = 0; p < k; ++p)
                for (size_t q = 0; q < k; ++q) meat(p, q) += e2 * x(i, p) * x(i, q);
        }
        double scale = static_cast<double>(n) / static_cast<double>(n - k);
        for (size_t j = 0; j < k; ++j) {
            double var = 0;
            for (size_t p = 0; p < k; ++p)
                for (size_t q = 0; q < k; ++q) var += xtx_inv(j, p) * meat(p, q) * xtx_inv(q, j);
            r.se[j] = std::sqrt(scale * var);
        }
    }

    r.tstat.resize(k);
    for (size_t j = 0; j < k; ++j) r.tstat[j] = r.se[j] > 0 ? beta[j] / r.se[j] : 0.0;

    double ybar = 0;
    for (double yi : y) ybar += yi;
    ybar /= static_cast<double>(n);
    double tss = 0;
    for (double yi : y) tss += (yi - ybar) * (yi - ybar);
    if (tss > 0) {
        r.r2 = 1.0 - rss / tss;
        r.adj_r2 = 1.0 - (1.0 - r.r2) * static_cast<double>(n - 1) / static_cast<double>(n - k);
    } else {
        r.r2 = rss <= 1e-28 ? 1.0 : 0.0;
        r.adj_r2 = r.r2;
    }
    return r;
}

RegressionResult simple_ols(std::span<const double> x, std::span<const double> y,
                            const std::string& x_name, SeMode se_mode) {
    if (x.size() != y.size()) throw std::invalid_argument("simple_ols: length mismatch");
    Matrix design(x.size(), 2);
    for (size_t i = 0; i < x.size(); ++i) {
        design(i, 0) = 1.0;
        design(i, 1) = x[i];
    }
    return fit_ols(design, y, {"const", x_name}, se_mode);
}

std::string term_name(Term t) {
    switch (t) {
        case Term::surprise: return "Surprise";
        case Term::mu: return "MU";
        case Term::cfnai: return "CFNAI";
        case Term::meu: return "MEU";
        case Term::surprise_x_mu: return "Surprise*MU";
        case Term::surprise_x_cfnai: return "Surprise*CFNAI";
        case Term::surprise_x_meu: return "Surprise*MEU";
    }
    throw std::logic_error("unknown term");
}

Term parse_term(const std::string& name) {
    for (Term t : {Term::surprise, Term::mu, Term::cfnai, Term::meu, Term::surprise_x_mu,
                   Term::surprise_x_cfnai, Term::surprise_x_meu})
        if (term_name(t) == name) return t;
    throw std::invalid_argument("unknown regression term '" + name + "'");
}

namespace {

bool term_needs_mu(Term t) { return t == Term::mu || t == Term::surprise_x_mu; }
bool term_needs_cfnai(Term t) { return t == Term::cfnai || t == Term::surprise_x_cfnai; }
bool term_needs_meu(Term t) { return t == Term::meu || t == Term::surprise_x_meu; }

double term_value(Term t, const EventRow& row) {
    switch (t) {
        case Term::surprise: return row.surprise;
        case Term::mu: return *row.mu;
        case Term::cfnai: return *row.cfnai;
        case Term::meu: return *row.meu;
        case Term::surprise_x_mu: return row.surprise * *row.mu;
        case Term::surprise_x_cfnai: return row.surprise * *row.cfnai;
        case Term::surprise_x_meu: return row.surprise * *row.meu;
    }
    throw std::logic_error("unknown term");
}

}  // namespace

InteractionFit interaction_regression(const DesignSpec& spec, std::span<const EventRow> rows) {
    bool needs_mu = false, needs_cfnai = false, needs_meu = false;
    for (Term t : spec.terms) {
        needs_mu |= term_needs_mu(t);
        needs_cfnai |= term_needs_cfnai(t);
        needs_meu |= term_needs_meu(t);
    }

    std::vector<const EventRow*> usable;
    usable.reserve(rows.size());
    for (const EventRow& row : rows) {
        if ((needs_mu && !row.mu) || (needs_cfnai && !row.cfnai) || (needs_meu && !row.meu))
            continue;
        usable.push_back(&row);
    }

    InteractionFit out;
    out.dropped = rows.size() - usable.size();

    const size_t k = spec.terms.size() + 1;
    Matrix design(usable.size(), k);
    std::vector<double> y(usable.size());
    std::vector<std::string> names{"const"};
    for (Term t : spec.terms) names.push_back(term_name(t));
    for (size_t i = 0; i < usable.size(); ++i) {
        design(i, 0) = 1.0;
        for (size_t j = 0; j < spec.terms.size(); ++j)
            design(i, j + 1) = term_value(spec.terms[j], *usable[i]);
        y[i] = usable[i]->y;
    }
    out.result = fit_ols(design, y, std::move(names), spec.se_mode);
    return out;
}

RegressionResult response_regression(std::span<const double> surprises,
                                     std::span<const double> event_returns, SeMode se_mode) {
    return simple_ols(surprises, event_returns, "Surprise", se_mode);
}

SplitFit split_regression(std::span<const SplitRow> rows, Splitter splitter, SeMode se_mode) {
    std::vector<double> lo_x, lo_y, hi_x, hi_y;
    if (splitter == Splitter::recession_flag) {
        for (const SplitRow& r : rows) {
            if (r.split_value != 0.0 && r.split_value != 1.0)
                throw std::invalid_argument("recession split expects a 0/1 flag");
            (r.split_value == 0.0 ? lo_x : hi_x).push_back(r.surprise);
            (r.split_value == 0.0 ? lo_y : hi_y).push_back(r.y);
        }
    } else {
        std::vector<double> values;
        values.reserve(rows.size());
        for (const SplitRow& r : rows) values.push_back(r.split_value);
        if (values.empty()) throw std::invalid_argument("split_regression: no rows");
        double med = percentile_nearest_rank(values, 0.5);
        for (const SplitRow& r : rows) {
            // ties go to the low half
            (r.split_value <= med ? lo_x : hi_x).push_back(r.surprise);
            (r.split_value <= med ? lo_y : hi_y).push_back(r.y);
        }
    }
    SplitFit out;
    out.low = simple_ols(lo_x, lo_y, "Surprise", se_mode);
    out.high = simple_ols(hi_x, hi_y, "Surprise", se_mode);
    return out;
}

std::vector<TermStructurePoint> term_structure_curve(
    const std::vector<std::pair<double, std::vector<std::optional<double>>>>& dy_bps_by_maturity,
    std::span<const double> surprises, SeMode se_mode) {
    std::vector<TermStructurePoint> out;
    out.reserve(dy_bps_by_maturity.size());
    for (const auto& [maturity, dys] : dy_bps_by_maturity) {
        if (dys.size() != surprises.size())
            throw std::invalid_argument("term_structure_curve: length mismatch at maturity " +
                                        std::to_string(maturity));
        std::vector<double> xs, ys;
        for (size_t i = 0; i < dys.size(); ++i) {
            if (!dys[i]) continue;
            xs.push_back(surprises[i]);
            ys.push_back(*dys[i]);
        }
        out.push_back({maturity, simple_ols(xs, ys, "Surprise", se_mode)});
    }
    return out;
}

}  // namespace mna
