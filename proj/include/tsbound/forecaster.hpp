#ifndef TSBOUND_FORECASTER_HPP
#define TSBOUND_FORECASTER_HPP

#include <cstddef>
#include <vector>

#include "tsbound/law.hpp"
#include "tsbound/series.hpp"

namespace tsbound::forecaster {

enum class Split { Train, Val, Test };

// Training/evaluation protocol: chronological train/val/test splits,
// input-96-predict-96 by default. The ridge penalty is selected on the
// validation split from lambda_grid, ties broken toward the larger value.
struct EvalProtocol {
    std::size_t past_len = 96;
    std::size_t horizon = 96;
    double train_ratio = 0.7;
    double val_ratio = 0.1;
    double test_ratio = 0.2;
    std::vector<double> lambda_grid = {0.0, 1e-4, 1e-2, 1.0};

    void validate() const;
};

// One supervised pair: length-P past, length-F future.
struct Sample {
    std::vector<double> past;
    std::vector<double> future;
};

// Direct multi-step linear map future = W * past + b.
struct LinearForecaster {
    std::size_t past_len = 0;
    std::size_t horizon = 0;
    std::vector<double> weights; // horizon x past_len, row-major
    std::vector<double> bias;    // horizon

    std::vector<double> predict(const std::vector<double>& past) const;
};

struct EvalResult {
    double mse = 0.0;
    double mae = 0.0;
    double log_mse = 0.0;
    double log_mae = 0.0;
    std::size_t n_train = 0;
    std::size_t n_val = 0;
    std::size_t n_test = 0;
    double selected_lambda = 0.0;
    double train_mean = 0.0; // normalization statistics, train split only
    double train_std = 1.0;
};

// All (past, future) pairs whose future lies inside the split, at stride 1.
// Boundary pairs may reach back into the preceding split for context. Values
// are normalized with the train split's mean/std.
std::vector<Sample> make_samples(const TimeSeries& series, const EvalProtocol& protocol,
                                 Split split);

// Ridge regression by normal equations: minimizes
// sum ||future - (W past + b)||^2 + lambda ||W||_F^2 (bias unpenalized).
// A singular system with lambda = 0 raises DegenerateError.
LinearForecaster fit_linear(const std::vector<Sample>& samples, double lambda);

// Fit on train, select lambda on val, report test MSE/MAE (in train-normalized
// units) plus their log transforms.
EvalResult evaluate(const TimeSeries& series, const EvalProtocol& protocol);

// Lowest test MSE across protocol variants, reported together with the
// series' window-wise complexity (window geometry from the first variant,
// stride = horizon, past+forecast mode, z-scored series).
law::LawPoint best_error(const TimeSeries& series, const std::vector<EvalProtocol>& protocols);

} // namespace tsbound::forecaster

#endif
