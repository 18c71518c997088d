#ifndef TSBOUND_COMMANDS_HPP
#define TSBOUND_COMMANDS_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tsbound/corpus.hpp"
#include "tsbound/forecaster.hpp"
#include "tsbound/law.hpp"
#include "tsbound/series.hpp"

namespace tsbound::cli {

// Declarative run parameters shared by all subcommands. Every field has a
// documented default; the effective configuration is echoed next to every
// output so reruns are reproducible.
struct RunConfig {
    // window geometry
    std::size_t past_len = 96;
    std::size_t horizon = 96;
    std::size_t stride = 0; // 0 tracks the horizon
    std::string mode = "past+forecast";
    bool normalize = true; // z-score each series before metric computation

    std::size_t effective_stride() const { return stride == 0 ? horizon : stride; }

    // forecaster protocol
    double train_ratio = 0.7;
    double val_ratio = 0.1;
    double test_ratio = 0.2;
    std::vector<double> lambda_grid = {0.0, 1e-4, 1e-2, 1.0};

    // classical metrics
    std::size_t acf_max_lag = 500; // clipped to length - 1
    long adf_lag = -1;             // -1 selects the Schwert rule

    // law fitting / saturation
    std::size_t reset_m = 1;
    double ratio_threshold = 0.9;
    std::string complexity_column = "complexity_joint";

    // corpus tooling
    double beta = 1.0;
    std::size_t bins = 50;
    std::size_t subsample = 0;  // 0 = no cap on pooled corpus windows
    bool all_pairs = false;     // pairwise divergences instead of pooled

    // generator
    std::size_t gen_count = 100;
    std::size_t gen_length = 1280;
    std::size_t gen_max_components = 3;
    double period_min = 8.0;
    double period_max = 256.0;
    double trend_slope_min = -0.01;
    double trend_slope_max = 0.01;
    double noise_min = 0.0;
    double noise_max = 1.0;
    double changepoint_prob = 0.005;
    std::string gen_components = "sinusoid,trend,level_shift,noise";

    // run control
    std::uint64_t seed = 0;
    std::size_t threads = 0; // 0 = hardware concurrency; 1 = serial reference

    WindowConfig window_config() const;
    WindowConfig window_config(WindowMode mode_override) const;
    forecaster::EvalProtocol protocol() const;
    corpus::GeneratorSpec generator_spec() const;

    std::map<std::string, std::string> to_map() const;
    void apply(const std::string& key, const std::string& value);
};

std::string effective_config_text(const RunConfig& config);
void load_config_file(RunConfig& config, const std::string& path);

// Per-series metric bundle produced by the analyze command. Metrics that
// could not be computed are NaN (or -1 for integer fields) with the reason
// appended to `error`.
struct MetricRecord {
    std::string series_id;
    std::string domain_tag;
    std::size_t length = 0;
    double complexity_joint;
    double complexity_past;
    double complexity_forecast;
    std::size_t window_count = 0; // past+forecast mode
    double adf_stat;
    long adf_lag = -1;
    long half_life = -1;
    bool half_life_censored = false;
    double foreca_value;
    double mse, mae, log_mse, log_mae;
    double selected_lambda;
    std::string error;

    MetricRecord();
    bool failed() const; // no metric at all could be computed
};

// Runs every per-series metric (complexity in all three window modes, ADF,
// ACF half-life, ForeCA, linear-forecaster evaluation). Parallel across
// series; records keep input order regardless of thread count.
std::vector<MetricRecord> analyze(const std::vector<TimeSeries>& series, const RunConfig& config);

std::string metrics_csv(const std::vector<MetricRecord>& records);
std::string metrics_json(const std::vector<MetricRecord>& records, const RunConfig& config);
std::vector<MetricRecord> read_metrics_csv(const std::string& path);

law::LawFit fit_law_from_records(const std::vector<MetricRecord>& records,
                                 const RunConfig& config, std::vector<law::LawPoint>* points_out);

// Orchestrated commands. Each writes its outputs under out_prefix (parent
// directories are created) plus an effective-config echo at
// <out_prefix>config.txt, and returns the primary result.
std::vector<MetricRecord> run_analyze(const std::vector<std::string>& input_paths,
                                      const std::string& input_tag, const std::string& out_prefix,
                                      const RunConfig& config);

law::LawFit run_fit_law(const std::string& metrics_csv_path, const std::string& out_prefix,
                        const RunConfig& config);

std::map<std::string, law::SaturationReport> run_saturation(const std::string& metrics_csv_path,
                                                            const std::string& lawfit_json_path,
                                                            const std::string& out_prefix,
                                                            const RunConfig& config);

corpus::DivergenceHistogram run_divergence(const std::string& benchmark_path,
                                           const std::string& corpus_path,
                                           const std::string& out_prefix, const RunConfig& config);

std::vector<double> run_weights(const std::string& metrics_csv_path, const std::string& out_prefix,
                                const RunConfig& config);

std::vector<TimeSeries> run_generate(const std::string& out_prefix, const RunConfig& config);

law::LawFit read_lawfit_json(const std::string& path);

} // namespace tsbound::cli

#endif
