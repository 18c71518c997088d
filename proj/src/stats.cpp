#include "tsbound/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tsbound/errors.hpp"

namespace tsbound::stats {

namespace {

// Householder QR on a column-major matrix (n x p). Returns false in *ok for a
// rank-deficient column; deficient_col receives its index.
struct Qr {
    std::vector<double> a; // column-major, overwritten with R and reflectors
    std::vector<double> tau;
    std::size_t n = 0, p = 0;
};

bool qr_decompose(Qr& qr, std::size_t& deficient_col) {
    const std::size_t n = qr.n, p = qr.p;
    auto& a = qr.a;
    qr.tau.assign(p, 0.0);

    double max_norm = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += a[j * n + i] * a[j * n + i];
        max_norm = std::max(max_norm, std::sqrt(s));
    }
    const double tol = std::max(max_norm, 1.0) * 1e-10;

    for (std::size_t j = 0; j < p; ++j) {
        double norm = 0.0;
        for (std::size_t i = j; i < n; ++i) norm += a[j * n + i] * a[j * n + i];
        norm = std::sqrt(norm);
        if (norm < tol) {
            deficient_col = j;
            return false;
        }
        double alpha = a[j * n + j] >= 0 ? -norm : norm;
        const double v0 = a[j * n + j] - alpha;
        a[j * n + j] = alpha;
        // Store the reflector below the diagonal, scaled so v[j] = 1.
        for (std::size_t i = j + 1; i < n; ++i) a[j * n + i] /= v0;
        qr.tau[j] = -v0 / alpha;

        for (std::size_t c = j + 1; c < p; ++c) {
            double dot = a[c * n + j];
            for (std::size_t i = j + 1; i < n; ++i) dot += a[j * n + i] * a[c * n + i];
            dot *= qr.tau[j];
            a[c * n + j] -= dot;
            for (std::size_t i = j + 1; i < n; ++i) a[c * n + i] -= dot * a[j * n + i];
        }
    }
    return true;
}

// Applies Q^T to a vector in place.
void qr_apply_qt(const Qr& qr, std::vector<double>& v) {
    const std::size_t n = qr.n, p = qr.p;
    for (std::size_t j = 0; j < p; ++j) {
        double dot = v[j];
        for (std::size_t i = j + 1; i < n; ++i) dot += qr.a[j * n + i] * v[i];
        dot *= qr.tau[j];
        v[j] -= dot;
        for (std::size_t i = j + 1; i < n; ++i) v[i] -= dot * qr.a[j * n + i];
    }
}

// Solves R beta = qty[0..p) by back substitution.
std::vector<double> qr_back_solve(const Qr& qr, const std::vector<double>& qty) {
    const std::size_t n = qr.n, p = qr.p;
    std::vector<double> beta(p, 0.0);
    for (std::size_t jj = p; jj-- > 0;) {
        double s = qty[jj];
        for (std::size_t c = jj + 1; c < p; ++c) s -= qr.a[c * n + jj] * beta[c];
        beta[jj] = s / qr.a[jj * n + jj];
    }
    return beta;
}

// Diagonal of (X^T X)^{-1} = R^{-1} R^{-T} from the R factor.
std::vector<double> xtx_inverse_diagonal(const Qr& qr) {
    const std::size_t n = qr.n, p = qr.p;
    // rinv is upper triangular, column-major p x p.
    std::vector<double> rinv(p * p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        rinv[j * p + j] = 1.0 / qr.a[j * n + j];
        for (std::size_t i = j; i-- > 0;) {
            double s = 0.0;
            for (std::size_t l = i + 1; l <= j; ++l) s += qr.a[l * n + i] * rinv[j * p + l];
            rinv[j * p + i] = -s / qr.a[i * n + i];
        }
    }
    std::vector<double> diag(p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        double s = 0.0;
        for (std::size_t j = i; j < p; ++j) s += rinv[j * p + i] * rinv[j * p + i];
        diag[i] = s;
    }
    return diag;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

} // namespace

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size())
        throw InvalidInputError("pearson: length mismatch (" + std::to_string(x.size()) +
                                " vs " + std::to_string(y.size()) + ")");
    if (x.size() < 3) throw InvalidInputError("pearson: need at least 3 observations");

    const double mx = mean_of(x), my = mean_of(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw DegenerateError("pearson: correlation undefined for constant input");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

RegressionFit ols(const std::vector<std::vector<double>>& x, const std::vector<double>& y,
                  bool include_intercept) {
    const std::size_t n = y.size();
    if (x.size() != n) throw InvalidInputError("ols: design rows must match response length");
    const std::size_t k = n > 0 ? x[0].size() : 0;
    const std::size_t p = k + (include_intercept ? 1 : 0);
    if (p == 0) throw InvalidInputError("ols: empty design");
    if (n <= p)
        throw InvalidInputError("ols: need more rows (" + std::to_string(n) +
                                ") than coefficients (" + std::to_string(p) + ")");

    Qr qr;
    qr.n = n;
    qr.p = p;
    qr.a.assign(n * p, 0.0);
    std::size_t col = 0;
    if (include_intercept) {
        for (std::size_t i = 0; i < n; ++i) qr.a[i] = 1.0;
        col = 1;
    }
    for (std::size_t j = 0; j < k; ++j, ++col) {
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i].size() != k) throw InvalidInputError("ols: ragged design matrix");
            qr.a[col * n + i] = x[i][j];
        }
    }

    std::size_t bad = 0;
    if (!qr_decompose(qr, bad))
        throw DegenerateRegressionError(
            "ols: design matrix is rank deficient at column " + std::to_string(bad), bad);

    std::vector<double> qty = y;
    qr_apply_qt(qr, qty);
    std::vector<double> beta = qr_back_solve(qr, qty);

    RegressionFit fit;
    fit.coefficients = beta;
    fit.n = n;
    fit.k = k;
    fit.residuals.resize(n);
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double pred = include_intercept ? beta[0] : 0.0;
        for (std::size_t j = 0; j < k; ++j) pred += beta[j + (include_intercept ? 1 : 0)] * x[i][j];
        fit.residuals[i] = y[i] - pred;
        ss_res += fit.residuals[i] * fit.residuals[i];
    }

    double ss_tot = 0.0;
    if (include_intercept) {
        const double my = mean_of(y);
        for (double v : y) ss_tot += (v - my) * (v - my);
    } else {
        for (double v : y) ss_tot += v * v;
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
    fit.r_squared = std::clamp(fit.r_squared, 0.0, 1.0);

    const std::size_t df = n - p;
    const double sigma2 = df > 0 ? ss_res / static_cast<double>(df) : 0.0;
    const auto diag = xtx_inverse_diagonal(qr);
    fit.std_errors.resize(p);
    for (std::size_t j = 0; j < p; ++j) fit.std_errors[j] = std::sqrt(sigma2 * diag[j]);
    return fit;
}

ResetResult reset_test(const std::vector<std::vector<double>>& x, const std::vector<double>& y,
                       std::size_t m) {
    const std::size_t n = y.size();
    if (m < 1) throw InvalidInputError("reset_test: m must be >= 1");
    if (x.size() != n) throw InvalidInputError("reset_test: length mismatch");
    const std::size_t k = n > 0 ? x[0].size() : 0;
    if (k == 0) throw InvalidInputError("reset_test: empty design");
    if (n <= k + m + 2)
        throw InvalidInputError("reset_test: need n > k + m + 2 observations");

    RegressionFit base_fit;
    try {
        base_fit = ols(x, y, true);
    } catch (const DegenerateRegressionError&) {
        throw DegenerateError("reset_test: degenerate base design (constant predictor?)");
    }

    std::vector<double> yhat(n);
    for (std::size_t i = 0; i < n; ++i) yhat[i] = y[i] - base_fit.residuals[i];

    // Augmentation columns yhat^2 .. yhat^(m+1), standardized for conditioning.
    // With the intercept present this leaves the column space (and R^2)
    // unchanged.
    std::vector<std::vector<double>> aug(n, std::vector<double>(k + m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) aug[i][j] = x[i][j];
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> powcol(n);
        for (std::size_t i = 0; i < n; ++i) powcol[i] = std::pow(yhat[i], static_cast<double>(j + 2));
        const double mu = mean_of(powcol);
        double var = 0.0;
        for (double v : powcol) var += (v - mu) * (v - mu);
        var /= static_cast<double>(n);
        if (var <= 0.0)
            throw DegenerateError("reset_test: fitted-value power " + std::to_string(j + 2) +
                                  " is collinear with the base regressors");
        const double sd = std::sqrt(var);
        for (std::size_t i = 0; i < n; ++i) aug[i][k + j] = (powcol[i] - mu) / sd;
    }

    RegressionFit aug_fit;
    try {
        aug_fit = ols(aug, y, true);
    } catch (const DegenerateRegressionError& e) {
        throw DegenerateError(std::string("reset_test: augmented design is degenerate (") +
                              e.what() + ")");
    }

    ResetResult res;
    res.m = m;
    res.df1 = m;
    res.df2 = n - k - m - 1;
    const double r2_old = base_fit.r_squared;
    const double r2_new = aug_fit.r_squared;
    double f = ((r2_new - r2_old) / static_cast<double>(m)) /
               ((1.0 - r2_new) / static_cast<double>(res.df2));
    if (!(f > 0.0)) f = 0.0; // clamp numerical noise (and NaN from r2_new == 1)
    res.f_statistic = f;
    res.p_value = 1.0 - f_cdf(f, res.df1, res.df2);
    return res;
}

ResetResult reset_test(const std::vector<double>& x, const std::vector<double>& y, std::size_t m) {
    std::vector<std::vector<double>> design(x.size(), std::vector<double>(1));
    for (std::size_t i = 0; i < x.size(); ++i) design[i][0] = x[i];
    return reset_test(design, y, m);
}

double regularized_incomplete_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw InvalidInputError("regularized_incomplete_beta: a and b must be positive");
    if (!(x >= 0.0 && x <= 1.0))
        throw InvalidInputError("regularized_incomplete_beta: x must be in [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    // Modified Lentz continued fraction (Numerical Recipes form).
    auto contfrac = [](double aa, double bb, double xx) {
        constexpr double tiny = 1e-300;
        constexpr int max_iter = 500;
        const double qab = aa + bb, qap = aa + 1.0, qam = aa - 1.0;
        double c = 1.0;
        double d = 1.0 - qab * xx / qap;
        if (std::fabs(d) < tiny) d = tiny;
        d = 1.0 / d;
        double h = d;
        for (int mi = 1; mi <= max_iter; ++mi) {
            const int m2 = 2 * mi;
            double num = mi * (bb - mi) * xx / ((qam + m2) * (aa + m2));
            d = 1.0 + num * d;
            if (std::fabs(d) < tiny) d = tiny;
            c = 1.0 + num / c;
            if (std::fabs(c) < tiny) c = tiny;
            d = 1.0 / d;
            h *= d * c;
            num = -(aa + mi) * (qab + mi) * xx / ((aa + m2) * (qap + m2));
            d = 1.0 + num * d;
            if (std::fabs(d) < tiny) d = tiny;
            c = 1.0 + num / c;
            if (std::fabs(c) < tiny) c = tiny;
            d = 1.0 / d;
            const double del = d * c;
            h *= del;
            if (std::fabs(del - 1.0) < 1e-15) break;
        }
        return h;
    };

    const double log_prefix =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    double result;
    if (x < (a + 1.0) / (a + b + 2.0))
        result = std::exp(log_prefix) * contfrac(a, b, x) / a;
    else
        result = 1.0 - std::exp(log_prefix) * contfrac(b, a, 1.0 - x) / b;
    return std::clamp(result, 0.0, 1.0);
}

double f_cdf(double x, std::size_t d1, std::size_t d2) {
    if (d1 < 1 || d2 < 1) throw InvalidInputError("f_cdf: degrees of freedom must be >= 1");
    if (!(x >= 0.0)) throw InvalidInputError("f_cdf: x must be non-negative");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    const double a = static_cast<double>(d1) / 2.0;
    const double b = static_cast<double>(d2) / 2.0;
    const double z = static_cast<double>(d1) * x /
                     (static_cast<double>(d1) * x + static_cast<double>(d2));
    return regularized_incomplete_beta(z, a, b);
}

double log_metric(double v) {
    if (!(v >= 0.0)) throw InvalidInputError("log_metric: value must be non-negative");
    return std::log1p(v);
}

} // namespace tsbound::stats
