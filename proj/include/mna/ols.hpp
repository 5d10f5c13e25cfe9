#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mna {

// Dense row-major matrix, just enough for regression design matrices.
class Matrix {
public:
    Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), d_(rows * cols, 0.0) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    double& operator()(size_t i, size_t j) { return d_[i * cols_ + j]; }
    double operator()(size_t i, size_t j) const { return d_[i * cols_ + j]; }

private:
    size_t rows_, cols_;
    std::vector<double> d_;
};

enum class SeMode { classical, hc1 };

struct RegressionResult {
    std::vector<std::string> terms;
    std::vector<double> coef;
    std::vector<double> se;
    std::vector<double> tstat;
    double r2 = 0;
    double adj_r2 = 0;
    size_t n = 0;
    std::vector<double> fitted;
    std::vector<double> residuals;

    double coef_of(const std::string& term) const;
    double se_of(const std::string& term) const;
    double t_of(const std::string& term) const;
};

// Least squares via Householder QR of the design matrix. The caller includes
// the intercept column; rank deficiency reports the offending term name.
// Classical (homoskedastic) standard errors by default, HC1 optional.
RegressionResult fit_ols(const Matrix& x, std::span<const double> y,
                         std::vector<std::string> term_names, SeMode se_mode = SeMode::classical);

// Convenience: y = a + b*x with term names {"const", x_name}.
RegressionResult simple_ols(std::span<const double> x, std::span<const double> y,
                            const std::string& x_name = "Surprise",
                            SeMode se_mode = SeMode::classical);

// Event-level observation for the announcement regressions. Covariates are
// already lagged (most recent daily value strictly before the announcement).
struct EventRow {
    int64_t id = 0;
    double y = 0;         // window return (%) or rate change (bps)
    double surprise = 0;  // normalized
    std::optional<double> mu;
    std::optional<double> cfnai;
    std::optional<double> meu;
};

enum class Term {
    surprise,
    mu,
    cfnai,
    meu,
    surprise_x_mu,
    surprise_x_cfnai,
    surprise_x_meu,
};

std::string term_name(Term t);
Term parse_term(const std::string& name);

// Term list for one regression column; the intercept is always included.
struct DesignSpec {
    std::vector<Term> terms;
    SeMode se_mode = SeMode::classical;
};

struct InteractionFit {
    RegressionResult result;
    size_t dropped = 0;  // events missing a required covariate
};

// R_t (or delta-i_t) on Surprise, covariates, and interactions.
InteractionFit interaction_regression(const DesignSpec& spec, std::span<const EventRow> rows);

// R_t = a + b*Surprise_t, one row per event.
RegressionResult response_regression(std::span<const double> surprises,
                                     std::span<const double> event_returns,
                                     SeMode se_mode = SeMode::classical);

enum class Splitter { recession_flag, median_mu, median_cfnai };

struct SplitRow {
    double y = 0;
    double surprise = 0;
    double split_value = 0;  // USREC flag, MU level, or CFNAI level
};

struct SplitFit {
    RegressionResult low;   // expansion / low-MU / low-growth half (ties to low)
    RegressionResult high;
};

SplitFit split_regression(std::span<const SplitRow> rows, Splitter splitter,
                          SeMode se_mode = SeMode::classical);

struct TermStructurePoint {
    double maturity_years = 0;
    RegressionResult fit;
};

// One Eq.-(6)-form regression of daily yield changes (bps) per maturity;
// events missing the yield change at a maturity are dropped there.
std::vector<TermStructurePoint> term_structure_curve(
    const std::vector<std::pair<double, std::vector<std::optional<double>>>>& dy_bps_by_maturity,
    std::span<const double> surprises, SeMode se_mode = SeMode::classical);

}  // namespace mna
