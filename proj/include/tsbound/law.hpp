#ifndef TSBOUND_LAW_HPP
#define TSBOUND_LAW_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace tsbound::law {

// One statistical sample: a series' pattern complexity and the lowest
// forecasting error observed for it.
struct LawPoint {
    std::string series_id;
    double complexity = 0.0;
    double best_mse = 0.0;
    double best_mae = 0.0;
};

// Fitted accuracy law MSE = exp(alpha * C) - 1, valid on [c_min, c_max].
// alpha comes from a zero-intercept least-squares fit of log(MSE+1) on C; the
// free-intercept diagnostic fit is reported alongside so the zero-intercept
// assumption can be checked.
struct LawFit {
    double alpha = 0.0;
    double c_min = 0.0;
    double c_max = 0.0;
    double pearson_logmse = 0.0; // NaN when undefined (e.g. constant inputs)
    double reset_p = 0.0;        // NaN when the sample is too small
    std::size_t n = 0;
    double diag_intercept = 0.0;
    double diag_slope = 0.0;

    bool covers(double complexity) const { return complexity >= c_min && complexity <= c_max; }
};

struct SaturationEntry {
    std::string series_id;
    double complexity = 0.0;
    double best_mse = 0.0;
    double bound = 0.0;
    bool saturated = false;
    bool extrapolated = false; // complexity outside [c_min, c_max]
};

struct SaturationReport {
    std::vector<SaturationEntry> entries;
    std::size_t total = 0;
    std::size_t saturated_count = 0;
    double saturated_ratio = 0.0;
    std::string verdict; // "saturated" or "not_saturated"
};

// Requires >= 3 points with at least one positive complexity.
LawFit fit_law(const std::vector<LawPoint>& points, std::size_t reset_m = 1);

// Reporting rule: the fitted relation counts as purely linear only when the
// Pearson coefficient reaches 0.6 and the RESET p-value stays above 0.05.
bool pure_linear_relation(const LawFit& fit);

// exp(alpha * complexity) - 1; exactly 0 at complexity 0. Use fit.covers() to
// check whether the law interval applies.
double predict_bound(const LawFit& fit, double complexity);

// A series is saturated iff its best MSE lies strictly below the law bound;
// the benchmark verdict is "saturated" iff the saturated ratio reaches
// ratio_threshold.
SaturationReport classify_saturation(const LawFit& fit, const std::vector<LawPoint>& points,
                                     double ratio_threshold = 0.9);

} // namespace tsbound::law

#endif
