#include <cstdio>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "tsbound/commands.hpp"
#include "tsbound/errors.hpp"
#include "tsbound/io.hpp"

namespace {

using tsbound::cli::RunConfig;

// Deferred key=value assignments: defaults, then the config file, then flags.
struct ConfigArgs {
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> overrides;

    RunConfig build() const {
        RunConfig cfg;
        if (!config_path.empty()) tsbound::cli::load_config_file(cfg, config_path);
        for (const auto& [key, value] : overrides) cfg.apply(key, value);
        return cfg;
    }
};

void add_config_options(CLI::App* cmd, ConfigArgs& args) {
    cmd->add_option("--config", args.config_path,
                    "Key-value config file; command-line flags override its values");

    struct Flag {
        const char* name;
        const char* key;
        const char* help;
    };
    static const Flag flags[] = {
        {"--past-len", "past_len", "Past window length P [default 96, input-96-predict-96 protocol]"},
        {"--horizon", "horizon", "Forecast horizon F [default 96]"},
        {"--stride", "stride",
         "Window stride; 0 tracks the horizon so consecutive windows align with consecutive "
         "forecast origins [default 0]"},
        {"--mode", "mode",
         "Complexity window mode: past, forecast or past+forecast [default past+forecast]"},
        {"--normalize", "normalize",
         "Z-score each series before metric computation [default true; absolute complexity is "
         "scale-dependent, so a fixed convention keeps values comparable]"},
        {"--train-ratio", "train_ratio", "Chronological train split ratio [default 0.7]"},
        {"--val-ratio", "val_ratio", "Validation split ratio [default 0.1]"},
        {"--test-ratio", "test_ratio", "Test split ratio [default 0.2]"},
        {"--lambda-grid", "lambda_grid",
         "Ridge penalties tried on the validation split, comma separated [default 0,1e-4,1e-2,1; "
         "ties break toward the larger penalty]"},
        {"--acf-max-lag", "acf_max_lag", "Maximum ACF lag, clipped to length-1 [default 500]"},
        {"--adf-lag", "adf_lag",
         "ADF lag order; -1 selects the Schwert rule floor(12*(n/100)^(1/4)) [default -1]"},
        {"--reset-m", "reset_m", "RESET power terms added beyond linear [default 1, tests the "
                                 "second-order relation]"},
        {"--ratio-threshold", "ratio_threshold",
         "Saturated-series ratio that marks a benchmark saturated [default 0.9]"},
        {"--complexity-column", "complexity_column",
         "Metrics-table column used as the complexity axis [default complexity_joint]"},
        {"--beta", "beta", "Sampling-weight temperature: w_i ~ C_i^beta [default 1; 0 = uniform]"},
        {"--bins", "bins", "Histogram bin count [default 50]"},
        {"--subsample", "subsample",
         "Cap on pooled corpus windows for divergence, 0 = no cap [default 0]"},
        {"--all-pairs", "all_pairs",
         "Divergence per (benchmark, corpus) series pair instead of against the pooled corpus "
         "[default false]"},
        {"--gen-count", "gen_count", "Number of synthetic series to generate [default 100]"},
        {"--gen-length", "gen_length", "Length of each synthetic series [default 1280]"},
        {"--gen-max-components", "gen_max_components",
         "Maximum component draws per synthetic series [default 3]"},
        {"--period-min", "period_min", "Sinusoid period range lower bound [default 8]"},
        {"--period-max", "period_max", "Sinusoid period range upper bound [default 256]"},
        {"--trend-slope-min", "trend_slope_min", "Trend slope range lower bound [default -0.01]"},
        {"--trend-slope-max", "trend_slope_max", "Trend slope range upper bound [default 0.01]"},
        {"--noise-min", "noise_min", "Noise scale range lower bound [default 0]"},
        {"--noise-max", "noise_max", "Noise scale range upper bound [default 1]"},
        {"--changepoint-prob", "changepoint_prob",
         "Per-point probability of a level shift [default 0.005]"},
        {"--gen-components", "gen_components",
         "Enabled component pool, comma separated [default sinusoid,trend,level_shift,noise]"},
        {"--seed", "seed", "Top-level seed; all randomness derives from it [default 0]"},
        {"--threads", "threads",
         "Worker threads; 0 = hardware concurrency, 1 = serial reference path [default 0]"},
    };
    for (const auto& f : flags) {
        const std::string key = f.key;
        cmd->add_option_function<std::string>(
            f.name,
            [&args, key](const std::string& value) { args.overrides.emplace_back(key, value); },
            f.help);
    }
    cmd->add_option_function<std::string>(
        "--set",
        [&args](const std::string& kv) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw CLI::ValidationError("--set expects key=value");
            args.overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
        },
        "Set any config key directly (key=value), repeatable");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "tsbound: window-wise pattern complexity, forecast-error lower bounds and benchmark "
        "saturation analysis for univariate time series"};
    app.require_subcommand(1);

    std::string out_prefix = "tsbound_out/";
    std::string tag;
    std::vector<std::string> inputs;
    std::string metrics_path, lawfit_path, benchmark_path, corpus_path;

    auto* analyze = app.add_subcommand(
        "analyze", "Compute complexity (all window modes), ADF, ACF half-life, ForeCA and "
                   "linear-forecaster errors per series");
    analyze->add_option("inputs", inputs, "Input CSV files (wide or long format)")->required();
    analyze->add_option("--tag", tag, "Domain/benchmark tag applied to all ingested series");
    analyze->add_option("--out", out_prefix, "Output prefix [default tsbound_out/]");
    ConfigArgs analyze_cfg;
    add_config_options(analyze, analyze_cfg);

    auto* fitlaw = app.add_subcommand("fit-law",
                                      "Fit the zero-intercept accuracy law log(MSE+1) = alpha*C "
                                      "to an analyze metrics table");
    fitlaw->add_option("metrics", metrics_path, "metrics.csv from analyze")->required();
    fitlaw->add_option("--out", out_prefix, "Output prefix [default tsbound_out/]");
    ConfigArgs fitlaw_cfg;
    add_config_options(fitlaw, fitlaw_cfg);

    auto* saturation = app.add_subcommand(
        "saturation", "Classify series and benchmarks against a fitted accuracy-law bound");
    saturation->add_option("metrics", metrics_path, "metrics.csv from analyze")->required();
    saturation->add_option("lawfit", lawfit_path, "lawfit.json from fit-law")->required();
    saturation->add_option("--out", out_prefix, "Output prefix [default tsbound_out/]");
    ConfigArgs saturation_cfg;
    add_config_options(saturation, saturation_cfg);

    auto* divergence = app.add_subcommand(
        "divergence", "Histogram of per-series divergence between a benchmark and a corpus");
    divergence->add_option("benchmark", benchmark_path, "Benchmark series CSV")->required();
    divergence->add_option("corpus", corpus_path, "Corpus series CSV")->required();
    divergence->add_option("--out", out_prefix, "Output prefix [default tsbound_out/]");
    ConfigArgs divergence_cfg;
    add_config_options(divergence, divergence_cfg);

    auto* weights = app.add_subcommand(
        "weights", "Complexity-weighted sampling probabilities for corpus curation");
    weights->add_option("metrics", metrics_path, "metrics.csv from analyze")->required();
    weights->add_option("--out", out_prefix, "Output prefix [default tsbound_out/]");
    ConfigArgs weights_cfg;
    add_config_options(weights, weights_cfg);

    auto* generate = app.add_subcommand(
        "generate", "Generate a seeded synthetic evaluation corpus (wide CSV + manifest)");
    generate->add_option("--out", out_prefix, "Output prefix [default tsbound_out/]");
    ConfigArgs generate_cfg;
    add_config_options(generate, generate_cfg);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            const auto records = tsbound::cli::run_analyze(inputs, tag, out_prefix,
                                                           analyze_cfg.build());
            std::size_t failed = 0;
            for (const auto& r : records) {
                if (r.failed()) ++failed;
                if (!r.error.empty())
                    std::fprintf(stderr, "warning: %s: %s\n", r.series_id.c_str(),
                                 r.error.c_str());
            }
            std::printf("analyzed %zu series (%zu failed) -> %smetrics.csv\n", records.size(),
                        failed, out_prefix.c_str());
            if (failed == records.size()) {
                std::fprintf(stderr, "error: all series failed\n");
                return 3;
            }
        } else if (fitlaw->parsed()) {
            const auto fit = tsbound::cli::run_fit_law(metrics_path, out_prefix,
                                                       fitlaw_cfg.build());
            std::printf("alpha=%s pearson_logmse=%s reset_p=%s n=%zu -> %slawfit.json\n",
                        tsbound::io::fmt_double(fit.alpha).c_str(),
                        tsbound::io::fmt_double(fit.pearson_logmse).c_str(),
                        tsbound::io::fmt_double(fit.reset_p).c_str(), fit.n, out_prefix.c_str());
            if (!tsbound::law::pure_linear_relation(fit))
                std::printf("note: no pure linear relation (Pearson < 0.6 or RESET p < 0.05)\n");
        } else if (saturation->parsed()) {
            const auto reports = tsbound::cli::run_saturation(metrics_path, lawfit_path,
                                                              out_prefix, saturation_cfg.build());
            for (const auto& [tagname, report] : reports)
                std::printf("%s: %zu/%zu saturated (%.2f%%) -> %s\n", tagname.c_str(),
                            report.saturated_count, report.total, 100.0 * report.saturated_ratio,
                            report.verdict.c_str());
        } else if (divergence->parsed()) {
            const auto hist = tsbound::cli::run_divergence(benchmark_path, corpus_path, out_prefix,
                                                           divergence_cfg.build());
            std::printf("divergence over %zu series vs %zu pooled windows -> "
                        "%sdivergence_hist.csv\n",
                        hist.per_series.size(), hist.pool_windows, out_prefix.c_str());
        } else if (weights->parsed()) {
            const auto w = tsbound::cli::run_weights(metrics_path, out_prefix,
                                                     weights_cfg.build());
            std::printf("wrote %zu sampling weights -> %sweights.csv\n", w.size(),
                        out_prefix.c_str());
        } else if (generate->parsed()) {
            const auto series = tsbound::cli::run_generate(out_prefix, generate_cfg.build());
            std::printf("generated %zu series -> %sgenerated.csv\n", series.size(),
                        out_prefix.c_str());
        }
    } catch (const tsbound::InvalidInputError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    } catch (const tsbound::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
