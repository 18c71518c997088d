#include "tsbound/law.hpp"

#include <cmath>
#include <limits>

#include "tsbound/errors.hpp"
#include "tsbound/stats.hpp"

namespace tsbound::law {

LawFit fit_law(const std::vector<LawPoint>& points, std::size_t reset_m) {
    if (points.size() < 3) throw InvalidInputError("fit_law: need at least 3 points");

    std::vector<double> c(points.size()), y(points.size());
    double scy = 0.0, scc = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        if (!(p.complexity >= 0.0) || !(p.best_mse >= 0.0))
            throw InvalidInputError("fit_law: negative complexity or error for series '" +
                                    p.series_id + "'");
        c[i] = p.complexity;
        y[i] = stats::log_metric(p.best_mse);
        scy += c[i] * y[i];
        scc += c[i] * c[i];
    }
    if (scc == 0.0)
        throw DegenerateError("fit_law: all complexities are zero, slope is undefined");

    LawFit fit;
    fit.alpha = scy / scc;
    fit.n = points.size();
    fit.c_min = c[0];
    fit.c_max = c[0];
    for (double v : c) {
        if (v < fit.c_min) fit.c_min = v;
        if (v > fit.c_max) fit.c_max = v;
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    try {
        fit.pearson_logmse = stats::pearson(c, y);
    } catch (const Error&) {
        fit.pearson_logmse = nan;
    }
    try {
        fit.reset_p = stats::reset_test(c, y, reset_m).p_value;
    } catch (const Error&) {
        fit.reset_p = nan;
    }

    // Free-intercept diagnostic fit of the same pairs.
    try {
        std::vector<std::vector<double>> x(points.size(), std::vector<double>(1));
        for (std::size_t i = 0; i < points.size(); ++i) x[i][0] = c[i];
        const auto diag = stats::ols(x, y, true);
        fit.diag_intercept = diag.coefficients[0];
        fit.diag_slope = diag.coefficients[1];
    } catch (const Error&) {
        fit.diag_intercept = nan;
        fit.diag_slope = nan;
    }
    return fit;
}

bool pure_linear_relation(const LawFit& fit) {
    return fit.pearson_logmse >= 0.6 && fit.reset_p >= 0.05; // NaN compares false
}

double predict_bound(const LawFit& fit, double complexity) {
    if (!(complexity >= 0.0))
        throw InvalidInputError("predict_bound: complexity must be non-negative");
    return std::expm1(fit.alpha * complexity);
}

SaturationReport classify_saturation(const LawFit& fit, const std::vector<LawPoint>& points,
                                     double ratio_threshold) {
    if (points.empty()) throw InvalidInputError("classify_saturation: no points");
    if (!(ratio_threshold >= 0.0 && ratio_threshold <= 1.0))
        throw InvalidInputError("classify_saturation: ratio_threshold must be in [0,1]");

    SaturationReport report;
    report.entries.reserve(points.size());
    for (const auto& p : points) {
        SaturationEntry e;
        e.series_id = p.series_id;
        e.complexity = p.complexity;
        e.best_mse = p.best_mse;
        e.bound = predict_bound(fit, p.complexity);
        e.saturated = p.best_mse < e.bound; // strict: a point on the curve is not saturated
        e.extrapolated = !fit.covers(p.complexity);
        if (e.saturated) ++report.saturated_count;
        report.entries.push_back(std::move(e));
    }
    report.total = points.size();
    report.saturated_ratio =
        static_cast<double>(report.saturated_count) / static_cast<double>(report.total);
    report.verdict = report.saturated_ratio >= ratio_threshold ? "saturated" : "not_saturated";
    return report;
}

} // namespace tsbound::law
