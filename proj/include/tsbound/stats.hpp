#ifndef TSBOUND_STATS_HPP
#define TSBOUND_STATS_HPP

#include <cstddef>
#include <vector>

namespace tsbound::stats {

// Least-squares fit. Coefficients are ordered intercept first when an
// intercept was requested. k counts non-intercept regressors.
struct RegressionFit {
    std::vector<double> coefficients;
    std::vector<double> std_errors; // same order as coefficients
    double r_squared = 0.0;
    std::vector<double> residuals;
    std::size_t n = 0;
    std::size_t k = 0;
};

struct ResetResult {
    double f_statistic = 0.0;
    double p_value = 1.0;
    std::size_t m = 1;
    std::size_t df1 = 0;
    std::size_t df2 = 0;
};

// Sample Pearson correlation. Requires equal lengths >= 3 and non-constant
// inputs (DegenerateError otherwise).
double pearson(const std::vector<double>& x, const std::vector<double>& y);

// Ordinary least squares of y on the columns of x (row-major, n rows of k
// regressors each). R^2 uses centered total sum of squares when an intercept
// is present, uncentered otherwise. Rank deficiency raises
// DegenerateRegressionError naming the offending column of the full design.
RegressionFit ols(const std::vector<std::vector<double>>& x, const std::vector<double>& y,
                  bool include_intercept = true);

// Ramsey RESET specification test: fits the base linear model, augments with
// yhat^2 ... yhat^(m+1) and compares fits via the F statistic
// ((R2_new - R2_old)/m) / ((1 - R2_new)/(n - k - m - 1)). A high p-value
// means no evidence of missing higher-order terms.
ResetResult reset_test(const std::vector<double>& x, const std::vector<double>& y,
                       std::size_t m = 1);

// General-design form: x holds n rows of k regressors (intercept added).
ResetResult reset_test(const std::vector<std::vector<double>>& x, const std::vector<double>& y,
                       std::size_t m = 1);

// Regularized incomplete beta I_x(a,b) by modified Lentz continued fraction
// with the symmetry switch at x > (a+1)/(a+b+2).
double regularized_incomplete_beta(double x, double a, double b);

// F-distribution CDF with d1, d2 degrees of freedom.
double f_cdf(double x, std::size_t d1, std::size_t d2);

// log(v + 1); maps zero error to zero and preserves ordering.
double log_metric(double v);

} // namespace tsbound::stats

#endif
