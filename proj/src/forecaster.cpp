#include "tsbound/forecaster.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tsbound/core.hpp"
#include "tsbound/errors.hpp"
#include "tsbound/metrics.hpp"
#include "tsbound/stats.hpp"

namespace tsbound::forecaster {

namespace {

const char* split_name(Split s) {
    switch (s) {
        case Split::Train: return "train";
        case Split::Val: return "val";
        case Split::Test: return "test";
    }
    return "?";
}

struct SplitBounds {
    std::size_t begin = 0;
    std::size_t end = 0;
};

SplitBounds split_bounds(std::size_t n, const EvalProtocol& p, Split split) {
    // Train and test lengths are floored independently; the validation split
    // absorbs the remainder. Summing ratios first would compound rounding.
    const auto train_end = static_cast<std::size_t>(std::floor(p.train_ratio * static_cast<double>(n)));
    const auto test_len = static_cast<std::size_t>(std::floor(p.test_ratio * static_cast<double>(n)));
    const std::size_t test_begin = n >= test_len ? n - test_len : 0;
    switch (split) {
        case Split::Train: return {0, train_end};
        case Split::Val: return {train_end, test_begin};
        case Split::Test: return {test_begin, n};
    }
    return {0, 0};
}

// Gram matrix and right-hand side of the normal equations for z = [past; 1].
struct NormalEq {
    std::size_t p = 0; // past length
    std::size_t f = 0; // horizon
    std::vector<double> gram; // (p+1) x (p+1), row-major
    std::vector<double> rhs;  // (p+1) x f, row-major
};

NormalEq build_normal_eq(const std::vector<Sample>& samples) {
    NormalEq eq;
    eq.p = samples[0].past.size();
    eq.f = samples[0].future.size();
    const std::size_t d = eq.p + 1;
    eq.gram.assign(d * d, 0.0);
    eq.rhs.assign(d * eq.f, 0.0);
    for (const auto& s : samples) {
        if (s.past.size() != eq.p || s.future.size() != eq.f)
            throw InvalidInputError("fit_linear: inconsistent sample shapes");
        for (std::size_t i = 0; i < eq.p; ++i) {
            const double zi = s.past[i];
            for (std::size_t j = i; j < eq.p; ++j) eq.gram[i * d + j] += zi * s.past[j];
            eq.gram[i * d + eq.p] += zi;
            for (std::size_t t = 0; t < eq.f; ++t) eq.rhs[i * eq.f + t] += zi * s.future[t];
        }
        eq.gram[eq.p * d + eq.p] += 1.0;
        for (std::size_t t = 0; t < eq.f; ++t) eq.rhs[eq.p * eq.f + t] += s.future[t];
    }
    // Mirror the upper triangle.
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < i; ++j) eq.gram[i * d + j] = eq.gram[j * d + i];
    return eq;
}

LinearForecaster solve_normal_eq(const NormalEq& eq, double lambda) {
    const std::size_t d = eq.p + 1;
    std::vector<double> a = eq.gram;
    for (std::size_t i = 0; i < eq.p; ++i) a[i * d + i] += lambda; // bias unpenalized

    // Cholesky a = L L^T.
    std::vector<double> chol(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a[i * d + j];
            for (std::size_t l = 0; l < j; ++l) s -= chol[i * d + l] * chol[j * d + l];
            if (i == j) {
                if (!(s > 0.0))
                    throw DegenerateError(
                        "fit_linear: singular normal equations; use lambda > 0");
                chol[i * d + i] = std::sqrt(s);
            } else {
                chol[i * d + j] = s / chol[j * d + j];
            }
        }
    }

    LinearForecaster model;
    model.past_len = eq.p;
    model.horizon = eq.f;
    model.weights.assign(eq.f * eq.p, 0.0);
    model.bias.assign(eq.f, 0.0);
    std::vector<double> col(d);
    for (std::size_t t = 0; t < eq.f; ++t) {
        for (std::size_t i = 0; i < d; ++i) {
            double s = eq.rhs[i * eq.f + t];
            for (std::size_t l = 0; l < i; ++l) s -= chol[i * d + l] * col[l];
            col[i] = s / chol[i * d + i];
        }
        for (std::size_t ii = d; ii-- > 0;) {
            double s = col[ii];
            for (std::size_t l = ii + 1; l < d; ++l) s -= chol[l * d + ii] * col[l];
            col[ii] = s / chol[ii * d + ii];
        }
        for (std::size_t i = 0; i < eq.p; ++i) model.weights[t * eq.p + i] = col[i];
        model.bias[t] = col[eq.p];
    }
    return model;
}

struct ErrorAccum {
    double se = 0.0;
    double ae = 0.0;
    std::size_t count = 0;

    void add(const LinearForecaster& model, const std::vector<Sample>& samples) {
        for (const auto& s : samples) {
            const auto pred = model.predict(s.past);
            for (std::size_t t = 0; t < pred.size(); ++t) {
                const double e = s.future[t] - pred[t];
                se += e * e;
                ae += std::fabs(e);
                ++count;
            }
        }
    }
    double mse() const { return count ? se / static_cast<double>(count) : 0.0; }
    double mae() const { return count ? ae / static_cast<double>(count) : 0.0; }
};

} // namespace

void EvalProtocol::validate() const {
    if (past_len < 1 || horizon < 1)
        throw InvalidInputError("protocol: past_len and horizon must be >= 1");
    if (!(train_ratio > 0.0) || !(val_ratio > 0.0) || !(test_ratio > 0.0))
        throw InvalidInputError("protocol: split ratios must be positive");
    if (std::fabs(train_ratio + val_ratio + test_ratio - 1.0) > 1e-9)
        throw InvalidInputError("protocol: split ratios must sum to 1");
    if (lambda_grid.empty()) throw InvalidInputError("protocol: lambda grid is empty");
    for (double l : lambda_grid)
        if (!(l >= 0.0)) throw InvalidInputError("protocol: ridge lambda must be >= 0");
}

std::vector<double> LinearForecaster::predict(const std::vector<double>& past) const {
    if (past.size() != past_len)
        throw InvalidInputError("predict: expected past of length " + std::to_string(past_len));
    std::vector<double> out(horizon);
    for (std::size_t t = 0; t < horizon; ++t) {
        double s = bias[t];
        const double* w = &weights[t * past_len];
        for (std::size_t i = 0; i < past_len; ++i) s += w[i] * past[i];
        out[t] = s;
    }
    return out;
}

std::vector<Sample> make_samples(const TimeSeries& series, const EvalProtocol& protocol,
                                 Split split) {
    protocol.validate();
    const std::size_t n = series.length();
    const auto bounds = split_bounds(n, protocol, split);
    const std::size_t p = protocol.past_len, f = protocol.horizon;

    // Forecast origins: future [o, o+f) inside the split, past [o-p, o) may
    // reach back into the preceding split but not before the series start.
    std::size_t first = bounds.begin < p ? p : bounds.begin;
    if (bounds.end < f || first + f > bounds.end)
        throw TooShortError("make_samples: " + std::string(split_name(split)) + " split of '" +
                                series.id + "' is too short for past " + std::to_string(p) +
                                " / horizon " + std::to_string(f),
                            p + f);

    // Train-split normalization statistics, reused verbatim for val and test.
    const auto train = split_bounds(n, protocol, Split::Train);
    if (train.end < 2)
        throw TooShortError("make_samples: train split of '" + series.id + "' is empty", p + f);
    double mean = 0.0;
    for (std::size_t i = 0; i < train.end; ++i) mean += series.values[i];
    mean /= static_cast<double>(train.end);
    double var = 0.0;
    for (std::size_t i = 0; i < train.end; ++i)
        var += (series.values[i] - mean) * (series.values[i] - mean);
    var /= static_cast<double>(train.end);
    const double sd = var > 0.0 ? std::sqrt(var) : 1.0;

    std::vector<Sample> samples;
    samples.reserve(bounds.end - f - first + 1);
    for (std::size_t o = first; o + f <= bounds.end; ++o) {
        Sample s;
        s.past.resize(p);
        s.future.resize(f);
        for (std::size_t i = 0; i < p; ++i) s.past[i] = (series.values[o - p + i] - mean) / sd;
        for (std::size_t i = 0; i < f; ++i) s.future[i] = (series.values[o + i] - mean) / sd;
        samples.push_back(std::move(s));
    }
    return samples;
}

LinearForecaster fit_linear(const std::vector<Sample>& samples, double lambda) {
    if (samples.empty()) throw InvalidInputError("fit_linear: no samples");
    if (!(lambda >= 0.0)) throw InvalidInputError("fit_linear: lambda must be >= 0");
    return solve_normal_eq(build_normal_eq(samples), lambda);
}

EvalResult evaluate(const TimeSeries& series, const EvalProtocol& protocol) {
    const auto train = make_samples(series, protocol, Split::Train);
    const auto val = make_samples(series, protocol, Split::Val);
    const auto test = make_samples(series, protocol, Split::Test);
    const auto eq = build_normal_eq(train);

    // Validation selection; ties go to the larger lambda. Lambdas whose
    // normal equations are singular are skipped.
    std::vector<double> grid = protocol.lambda_grid;
    std::sort(grid.begin(), grid.end());
    bool have_model = false;
    LinearForecaster best_model;
    double best_val_mse = 0.0, best_lambda = 0.0;
    std::string last_error;
    for (double lambda : grid) {
        LinearForecaster model;
        try {
            model = solve_normal_eq(eq, lambda);
        } catch (const DegenerateError& e) {
            last_error = e.what();
            continue;
        }
        ErrorAccum acc;
        acc.add(model, val);
        const double val_mse = acc.mse();
        if (!have_model || val_mse <= best_val_mse) {
            have_model = true;
            best_val_mse = val_mse;
            best_lambda = lambda;
            best_model = std::move(model);
        }
    }
    if (!have_model)
        throw DegenerateError("evaluate: every ridge lambda failed for series '" + series.id +
                              "' (" + last_error + ")");

    ErrorAccum acc;
    acc.add(best_model, test);

    EvalResult res;
    res.mse = acc.mse();
    res.mae = acc.mae();
    res.log_mse = stats::log_metric(res.mse);
    res.log_mae = stats::log_metric(res.mae);
    res.n_train = train.size();
    res.n_val = val.size();
    res.n_test = test.size();
    res.selected_lambda = best_lambda;

    // Recover the train stats for callers that need raw-unit errors.
    const auto bounds = split_bounds(series.length(), protocol, Split::Train);
    double mean = 0.0;
    for (std::size_t i = 0; i < bounds.end; ++i) mean += series.values[i];
    mean /= static_cast<double>(bounds.end);
    double var = 0.0;
    for (std::size_t i = 0; i < bounds.end; ++i)
        var += (series.values[i] - mean) * (series.values[i] - mean);
    var /= static_cast<double>(bounds.end);
    res.train_mean = mean;
    res.train_std = var > 0.0 ? std::sqrt(var) : 1.0;
    return res;
}

law::LawPoint best_error(const TimeSeries& series, const std::vector<EvalProtocol>& protocols) {
    if (protocols.empty()) throw InvalidInputError("best_error: no protocol variants");

    bool have = false;
    EvalResult best;
    std::string errors;
    for (const auto& protocol : protocols) {
        try {
            const auto res = evaluate(series, protocol);
            if (!have || res.mse < best.mse) {
                have = true;
                best = res;
            }
        } catch (const Error& e) {
            if (!errors.empty()) errors += "; ";
            errors += e.what();
        }
    }
    if (!have)
        throw Error("best_error: all protocol variants failed for series '" + series.id + "': " +
                    errors);

    WindowConfig cfg;
    cfg.past_len = protocols.front().past_len;
    cfg.horizon = protocols.front().horizon;
    cfg.stride = protocols.front().horizon;
    cfg.mode = WindowMode::PastPlusForecast;

    law::LawPoint point;
    point.series_id = series.id;
    point.complexity = metrics::complexity(zscore_normalize(series), cfg).value;
    point.best_mse = best.mse;
    point.best_mae = best.mae;
    return point;
}

} // namespace tsbound::forecaster
