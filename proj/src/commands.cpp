#include "tsbound/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tsbound/core.hpp"
#include "tsbound/errors.hpp"
#include "tsbound/io.hpp"
#include "tsbound/metrics.hpp"
#include "tsbound/parallel.hpp"
#include "tsbound/stats.hpp"

namespace tsbound::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

double to_double(const std::string& key, const std::string& value) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw InvalidInputError("config: bad number '" + value + "' for key '" + key + "'");
    return v;
}

std::size_t to_size(const std::string& key, const std::string& value) {
    const double v = to_double(key, value);
    if (v < 0 || v != std::floor(v))
        throw InvalidInputError("config: expected a non-negative integer for key '" + key + "'");
    return static_cast<std::size_t>(v);
}

long to_long(const std::string& key, const std::string& value) {
    const double v = to_double(key, value);
    if (v != std::floor(v))
        throw InvalidInputError("config: expected an integer for key '" + key + "'");
    return static_cast<long>(v);
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw InvalidInputError("config: expected true/false for key '" + key + "'");
}

std::vector<double> to_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double(key, item));
    }
    if (out.empty()) throw InvalidInputError("config: empty list for key '" + key + "'");
    return out;
}

std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += io::fmt_double(v[i]);
    }
    return out;
}

// NaN-aware CSV cell: NaN prints as empty.
std::string num_cell(double v) { return std::isnan(v) ? std::string() : io::fmt_double(v); }

double cell_num(const std::string& s) {
    const std::string t = trim(s);
    if (t.empty()) return kNaN;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size())
        throw InvalidInputError("metrics csv: unparsable number '" + t + "'");
    return v;
}

std::string out_path(const std::string& prefix, const std::string& name) {
    const std::string path = prefix + name;
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    return path;
}

nlohmann::json config_json(const RunConfig& config) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : config.to_map()) j[k] = v;
    return j;
}

double json_num(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return kNaN;
    return j[key].get<double>();
}

void append_error(std::string& error, const std::string& what, const std::string& message) {
    if (!error.empty()) error += "; ";
    error += what + ": " + message;
}

} // namespace

// ---------------------------------------------------------------------------
// RunConfig
// ---------------------------------------------------------------------------

WindowConfig RunConfig::window_config() const {
    return window_config(parse_window_mode(mode));
}

WindowConfig RunConfig::window_config(WindowMode mode_override) const {
    WindowConfig wc;
    wc.past_len = past_len;
    wc.horizon = horizon;
    wc.stride = effective_stride();
    wc.mode = mode_override;
    return wc;
}

forecaster::EvalProtocol RunConfig::protocol() const {
    forecaster::EvalProtocol p;
    p.past_len = past_len;
    p.horizon = horizon;
    p.train_ratio = train_ratio;
    p.val_ratio = val_ratio;
    p.test_ratio = test_ratio;
    p.lambda_grid = lambda_grid;
    return p;
}

corpus::GeneratorSpec RunConfig::generator_spec() const {
    corpus::GeneratorSpec spec;
    spec.count = gen_count;
    spec.length = gen_length;
    spec.seed = seed;
    spec.period_min = period_min;
    spec.period_max = period_max;
    spec.trend_slope_min = trend_slope_min;
    spec.trend_slope_max = trend_slope_max;
    spec.noise_scale_min = noise_min;
    spec.noise_scale_max = noise_max;
    spec.changepoint_prob = changepoint_prob;
    spec.max_components = gen_max_components;
    spec.use_sinusoid = gen_components.find("sinusoid") != std::string::npos;
    spec.use_trend = gen_components.find("trend") != std::string::npos;
    spec.use_level_shift = gen_components.find("level_shift") != std::string::npos;
    spec.use_noise = gen_components.find("noise") != std::string::npos;
    return spec;
}

std::map<std::string, std::string> RunConfig::to_map() const {
    std::map<std::string, std::string> m;
    m["past_len"] = std::to_string(past_len);
    m["horizon"] = std::to_string(horizon);
    m["stride"] = std::to_string(effective_stride());
    m["mode"] = mode;
    m["normalize"] = normalize ? "true" : "false";
    m["train_ratio"] = io::fmt_double(train_ratio);
    m["val_ratio"] = io::fmt_double(val_ratio);
    m["test_ratio"] = io::fmt_double(test_ratio);
    m["lambda_grid"] = join_doubles(lambda_grid);
    m["acf_max_lag"] = std::to_string(acf_max_lag);
    m["adf_lag"] = std::to_string(adf_lag);
    m["reset_m"] = std::to_string(reset_m);
    m["ratio_threshold"] = io::fmt_double(ratio_threshold);
    m["complexity_column"] = complexity_column;
    m["beta"] = io::fmt_double(beta);
    m["bins"] = std::to_string(bins);
    m["subsample"] = std::to_string(subsample);
    m["all_pairs"] = all_pairs ? "true" : "false";
    m["gen_count"] = std::to_string(gen_count);
    m["gen_length"] = std::to_string(gen_length);
    m["gen_max_components"] = std::to_string(gen_max_components);
    m["period_min"] = io::fmt_double(period_min);
    m["period_max"] = io::fmt_double(period_max);
    m["trend_slope_min"] = io::fmt_double(trend_slope_min);
    m["trend_slope_max"] = io::fmt_double(trend_slope_max);
    m["noise_min"] = io::fmt_double(noise_min);
    m["noise_max"] = io::fmt_double(noise_max);
    m["changepoint_prob"] = io::fmt_double(changepoint_prob);
    m["gen_components"] = gen_components;
    m["seed"] = std::to_string(seed);
    // threads is an execution knob that cannot affect any output and is not
    // part of the echoed configuration.
    return m;
}

void RunConfig::apply(const std::string& key, const std::string& value) {
    if (key == "past_len") past_len = to_size(key, value);
    else if (key == "horizon") horizon = to_size(key, value);
    else if (key == "stride") stride = to_size(key, value);
    else if (key == "mode") mode = value;
    else if (key == "normalize") normalize = to_bool(key, value);
    else if (key == "train_ratio") train_ratio = to_double(key, value);
    else if (key == "val_ratio") val_ratio = to_double(key, value);
    else if (key == "test_ratio") test_ratio = to_double(key, value);
    else if (key == "lambda_grid") lambda_grid = to_double_list(key, value);
    else if (key == "acf_max_lag") acf_max_lag = to_size(key, value);
    else if (key == "adf_lag") adf_lag = to_long(key, value);
    else if (key == "reset_m") reset_m = to_size(key, value);
    else if (key == "ratio_threshold") ratio_threshold = to_double(key, value);
    else if (key == "complexity_column") complexity_column = value;
    else if (key == "beta") beta = to_double(key, value);
    else if (key == "bins") bins = to_size(key, value);
    else if (key == "subsample") subsample = to_size(key, value);
    else if (key == "all_pairs") all_pairs = to_bool(key, value);
    else if (key == "gen_count") gen_count = to_size(key, value);
    else if (key == "gen_length") gen_length = to_size(key, value);
    else if (key == "gen_max_components") gen_max_components = to_size(key, value);
    else if (key == "period_min") period_min = to_double(key, value);
    else if (key == "period_max") period_max = to_double(key, value);
    else if (key == "trend_slope_min") trend_slope_min = to_double(key, value);
    else if (key == "trend_slope_max") trend_slope_max = to_double(key, value);
    else if (key == "noise_min") noise_min = to_double(key, value);
    else if (key == "noise_max") noise_max = to_double(key, value);
    else if (key == "changepoint_prob") changepoint_prob = to_double(key, value);
    else if (key == "gen_components") gen_components = value;
    else if (key == "seed") seed = static_cast<std::uint64_t>(to_double(key, value));
    else if (key == "threads") threads = to_size(key, value);
    else throw InvalidInputError("config: unknown key '" + key + "'");
}

std::string effective_config_text(const RunConfig& config) {
    std::string out;
    for (const auto& [k, v] : config.to_map()) out += k + " = " + v + "\n";
    return out;
}

void load_config_file(RunConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open config file '" + path + "'");
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidInputError("config '" + path + "': line " + std::to_string(row) +
                                    " is not key = value");
        config.apply(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

MetricRecord::MetricRecord()
    : complexity_joint(kNaN),
      complexity_past(kNaN),
      complexity_forecast(kNaN),
      adf_stat(kNaN),
      foreca_value(kNaN),
      mse(kNaN),
      mae(kNaN),
      log_mse(kNaN),
      log_mae(kNaN),
      selected_lambda(kNaN) {}

bool MetricRecord::failed() const {
    return std::isnan(complexity_joint) && std::isnan(complexity_past) &&
           std::isnan(complexity_forecast) && std::isnan(adf_stat) && half_life < 0 &&
           std::isnan(foreca_value) && std::isnan(mse);
}

std::vector<MetricRecord> analyze(const std::vector<TimeSeries>& series, const RunConfig& config) {
    std::vector<MetricRecord> records(series.size());
    parallel_for(series.size(), config.threads, [&](std::size_t idx) {
        const TimeSeries& raw = series[idx];
        MetricRecord& rec = records[idx];
        rec.series_id = raw.id;
        rec.domain_tag = raw.domain_tag;
        rec.length = raw.length();

        TimeSeries base = raw;
        if (config.normalize) {
            try {
                base = zscore_normalize(raw);
            } catch (const Error& e) {
                append_error(rec.error, "normalize", e.what());
                return;
            }
        }

        struct ModeSlot {
            WindowMode mode;
            double* target;
            const char* label;
        };
        const ModeSlot slots[] = {
            {WindowMode::PastPlusForecast, &rec.complexity_joint, "complexity[past+forecast]"},
            {WindowMode::PastOnly, &rec.complexity_past, "complexity[past]"},
            {WindowMode::ForecastOnly, &rec.complexity_forecast, "complexity[forecast]"},
        };
        for (const auto& slot : slots) {
            try {
                const auto res = metrics::complexity(base, config.window_config(slot.mode));
                *slot.target = res.value;
                if (slot.mode == WindowMode::PastPlusForecast) rec.window_count = res.window_count;
            } catch (const Error& e) {
                append_error(rec.error, slot.label, e.what());
            }
        }

        try {
            std::optional<std::size_t> lag;
            if (config.adf_lag >= 0) lag = static_cast<std::size_t>(config.adf_lag);
            rec.adf_stat = metrics::adf_statistic(base, lag);
            rec.adf_lag = static_cast<long>(lag.value_or(metrics::schwert_lag(base.length())));
        } catch (const Error& e) {
            append_error(rec.error, "adf", e.what());
        }

        try {
            const std::size_t max_lag =
                std::min(config.acf_max_lag, base.length() > 1 ? base.length() - 1 : 1);
            const auto hl = metrics::acf_half_life(base, max_lag);
            rec.half_life = static_cast<long>(hl.lag);
            rec.half_life_censored = hl.censored;
        } catch (const Error& e) {
            append_error(rec.error, "acf_half_life", e.what());
        }

        try {
            rec.foreca_value = metrics::foreca(base);
        } catch (const Error& e) {
            append_error(rec.error, "foreca", e.what());
        }

        try {
            // The protocol applies its own train-split normalization.
            const auto eval = forecaster::evaluate(raw, config.protocol());
            rec.mse = eval.mse;
            rec.mae = eval.mae;
            rec.log_mse = eval.log_mse;
            rec.log_mae = eval.log_mae;
            rec.selected_lambda = eval.selected_lambda;
        } catch (const Error& e) {
            append_error(rec.error, "forecaster", e.what());
        }
    });
    return records;
}

std::string metrics_csv(const std::vector<MetricRecord>& records) {
    std::string out =
        "series_id,domain_tag,length,complexity_joint,complexity_past,complexity_forecast,"
        "window_count,adf_stat,adf_lag,acf_half_life,acf_half_life_censored,foreca,"
        "mse,mae,log_mse,log_mae,selected_lambda,error\n";
    for (const auto& r : records) {
        out += io::csv_field(r.series_id) + ',' + io::csv_field(r.domain_tag) + ',' +
               std::to_string(r.length) + ',' + num_cell(r.complexity_joint) + ',' +
               num_cell(r.complexity_past) + ',' + num_cell(r.complexity_forecast) + ',' +
               std::to_string(r.window_count) + ',' + num_cell(r.adf_stat) + ',' +
               (r.adf_lag < 0 ? std::string() : std::to_string(r.adf_lag)) + ',' +
               (r.half_life < 0 ? std::string() : std::to_string(r.half_life)) + ',' +
               (r.half_life < 0 ? std::string() : (r.half_life_censored ? "true" : "false")) + ',' +
               num_cell(r.foreca_value) + ',' + num_cell(r.mse) + ',' + num_cell(r.mae) + ',' +
               num_cell(r.log_mse) + ',' + num_cell(r.log_mae) + ',' +
               num_cell(r.selected_lambda) + ',' + io::csv_field(r.error) + '\n';
    }
    return out;
}

std::string metrics_json(const std::vector<MetricRecord>& records, const RunConfig& config) {
    nlohmann::json j;
    j["config"] = config_json(config);
    auto& arr = j["records"] = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json e;
        e["series_id"] = r.series_id;
        e["domain_tag"] = r.domain_tag;
        e["length"] = r.length;
        e["complexity_joint"] = r.complexity_joint;
        e["complexity_past"] = r.complexity_past;
        e["complexity_forecast"] = r.complexity_forecast;
        e["window_count"] = r.window_count;
        e["adf_stat"] = r.adf_stat;
        e["adf_lag"] = r.adf_lag;
        e["acf_half_life"] = r.half_life;
        e["acf_half_life_censored"] = r.half_life_censored;
        e["foreca"] = r.foreca_value;
        e["mse"] = r.mse;
        e["mae"] = r.mae;
        e["log_mse"] = r.log_mse;
        e["log_mae"] = r.log_mae;
        e["selected_lambda"] = r.selected_lambda;
        e["error"] = r.error;
        arr.push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

std::vector<MetricRecord> read_metrics_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open metrics file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw InvalidInputError("metrics csv: empty file '" + path + "'");
    const auto header = io::split_csv_line(line);
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) col[trim(header[i])] = i;
    for (const char* required : {"series_id", "complexity_joint", "mse"})
        if (!col.count(required))
            throw InvalidInputError("metrics csv: missing column '" + std::string(required) + "'");

    auto field = [&](const std::vector<std::string>& fields, const char* name) -> std::string {
        const auto it = col.find(name);
        if (it == col.end() || it->second >= fields.size()) return "";
        return fields[it->second];
    };

    std::vector<MetricRecord> records;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto fields = io::split_csv_line(line);
        MetricRecord r;
        r.series_id = trim(field(fields, "series_id"));
        r.domain_tag = trim(field(fields, "domain_tag"));
        const std::string len = trim(field(fields, "length"));
        r.length = len.empty() ? 0 : to_size("length", len);
        r.complexity_joint = cell_num(field(fields, "complexity_joint"));
        r.complexity_past = cell_num(field(fields, "complexity_past"));
        r.complexity_forecast = cell_num(field(fields, "complexity_forecast"));
        r.adf_stat = cell_num(field(fields, "adf_stat"));
        const std::string hl = trim(field(fields, "acf_half_life"));
        r.half_life = hl.empty() ? -1 : to_long("acf_half_life", hl);
        r.half_life_censored = trim(field(fields, "acf_half_life_censored")) == "true";
        r.foreca_value = cell_num(field(fields, "foreca"));
        r.mse = cell_num(field(fields, "mse"));
        r.mae = cell_num(field(fields, "mae"));
        r.log_mse = cell_num(field(fields, "log_mse"));
        r.log_mae = cell_num(field(fields, "log_mae"));
        r.selected_lambda = cell_num(field(fields, "selected_lambda"));
        r.error = trim(field(fields, "error"));
        records.push_back(std::move(r));
    }
    return records;
}

// ---------------------------------------------------------------------------
// law fitting and saturation
// ---------------------------------------------------------------------------

namespace {

double record_complexity(const MetricRecord& r, const std::string& column) {
    if (column == "complexity_joint") return r.complexity_joint;
    if (column == "complexity_past") return r.complexity_past;
    if (column == "complexity_forecast") return r.complexity_forecast;
    throw InvalidInputError("unknown complexity column '" + column + "'");
}

} // namespace

law::LawFit fit_law_from_records(const std::vector<MetricRecord>& records,
                                 const RunConfig& config,
                                 std::vector<law::LawPoint>* points_out) {
    std::vector<law::LawPoint> points;
    for (const auto& r : records) {
        const double c = record_complexity(r, config.complexity_column);
        if (std::isnan(c) || std::isnan(r.mse)) continue;
        law::LawPoint p;
        p.series_id = r.series_id;
        p.complexity = c;
        p.best_mse = r.mse;
        p.best_mae = std::isnan(r.mae) ? 0.0 : r.mae;
        points.push_back(std::move(p));
    }
    if (points.size() < 3)
        throw InvalidInputError("fit-law: only " + std::to_string(points.size()) +
                                " usable rows; need at least 3");
    const auto fit = law::fit_law(points, config.reset_m);
    if (points_out) *points_out = std::move(points);
    return fit;
}

// ---------------------------------------------------------------------------
// orchestrated commands
// ---------------------------------------------------------------------------

std::vector<MetricRecord> run_analyze(const std::vector<std::string>& input_paths,
                                      const std::string& input_tag, const std::string& out_prefix,
                                      const RunConfig& config) {
    if (input_paths.empty()) throw InvalidInputError("analyze: no input files");
    std::vector<TimeSeries> series;
    for (const auto& path : input_paths) {
        auto part = io::load_series_csv(path, input_tag);
        series.insert(series.end(), std::make_move_iterator(part.begin()),
                      std::make_move_iterator(part.end()));
    }
    std::set<std::string> ids;
    for (const auto& s : series)
        if (!ids.insert(s.id).second)
            throw InvalidInputError("analyze: duplicate series id '" + s.id + "' across inputs");

    auto records = analyze(series, config);
    io::write_file(out_path(out_prefix, "metrics.csv"), metrics_csv(records));
    io::write_file(out_path(out_prefix, "metrics.json"), metrics_json(records, config));
    io::write_file(out_path(out_prefix, "config.txt"), effective_config_text(config));
    return records;
}

law::LawFit run_fit_law(const std::string& metrics_csv_path, const std::string& out_prefix,
                        const RunConfig& config) {
    const auto records = read_metrics_csv(metrics_csv_path);
    std::vector<law::LawPoint> points;
    const auto fit = fit_law_from_records(records, config, &points);

    nlohmann::json j;
    j["config"] = config_json(config);
    auto& f = j["law_fit"];
    f["alpha"] = fit.alpha;
    f["c_min"] = fit.c_min;
    f["c_max"] = fit.c_max;
    f["pearson_logmse"] = fit.pearson_logmse;
    f["reset_p"] = fit.reset_p;
    f["n"] = fit.n;
    f["diag_intercept"] = fit.diag_intercept;
    f["diag_slope"] = fit.diag_slope;
    f["pure_linear_relation"] = law::pure_linear_relation(fit);
    io::write_file(out_path(out_prefix, "lawfit.json"), j.dump(2) + "\n");

    std::string scatter = "series_id,complexity,log_mse,fitted_log_mse\n";
    for (const auto& p : points) {
        scatter += io::csv_field(p.series_id) + ',' + io::fmt_double(p.complexity) + ',' +
                   io::fmt_double(stats::log_metric(p.best_mse)) + ',' +
                   io::fmt_double(fit.alpha * p.complexity) + '\n';
    }
    io::write_file(out_path(out_prefix, "law_scatter.csv"), scatter);
    io::write_file(out_path(out_prefix, "config.txt"), effective_config_text(config));
    return fit;
}

law::LawFit read_lawfit_json(const std::string& path) {
    const auto text = io::read_file(path);
    nlohmann::json j = nlohmann::json::parse(text, nullptr, true, true);
    if (!j.contains("law_fit")) throw InvalidInputError("lawfit json: missing 'law_fit' object");
    const auto& f = j["law_fit"];
    law::LawFit fit;
    fit.alpha = json_num(f, "alpha");
    fit.c_min = json_num(f, "c_min");
    fit.c_max = json_num(f, "c_max");
    fit.pearson_logmse = json_num(f, "pearson_logmse");
    fit.reset_p = json_num(f, "reset_p");
    fit.n = f.contains("n") && !f["n"].is_null() ? f["n"].get<std::size_t>() : 0;
    fit.diag_intercept = json_num(f, "diag_intercept");
    fit.diag_slope = json_num(f, "diag_slope");
    if (std::isnan(fit.alpha)) throw InvalidInputError("lawfit json: missing alpha");
    return fit;
}

std::map<std::string, law::SaturationReport> run_saturation(const std::string& metrics_csv_path,
                                                            const std::string& lawfit_json_path,
                                                            const std::string& out_prefix,
                                                            const RunConfig& config) {
    const auto records = read_metrics_csv(metrics_csv_path);
    const auto fit = read_lawfit_json(lawfit_json_path);

    std::map<std::string, std::vector<law::LawPoint>> groups;
    for (const auto& r : records) {
        const double c = record_complexity(r, config.complexity_column);
        if (std::isnan(c) || std::isnan(r.mse)) continue;
        law::LawPoint p;
        p.series_id = r.series_id;
        p.complexity = c;
        p.best_mse = r.mse;
        p.best_mae = std::isnan(r.mae) ? 0.0 : r.mae;
        groups[r.domain_tag.empty() ? "default" : r.domain_tag].push_back(std::move(p));
    }
    if (groups.empty()) throw InvalidInputError("saturation: no usable rows in metrics table");

    std::map<std::string, law::SaturationReport> reports;
    for (const auto& [tag, points] : groups)
        reports[tag] = law::classify_saturation(fit, points, config.ratio_threshold);

    nlohmann::json j;
    j["config"] = config_json(config);
    auto& benchmarks = j["benchmarks"] = nlohmann::json::object();
    std::string csv = "benchmark,series_id,complexity,best_mse,bound,saturated,extrapolated\n";
    for (const auto& [tag, report] : reports) {
        nlohmann::json b;
        b["total"] = report.total;
        b["saturated_count"] = report.saturated_count;
        b["saturated_ratio"] = report.saturated_ratio;
        b["verdict"] = report.verdict;
        auto& arr = b["series"] = nlohmann::json::array();
        for (const auto& e : report.entries) {
            nlohmann::json s;
            s["series_id"] = e.series_id;
            s["complexity"] = e.complexity;
            s["best_mse"] = e.best_mse;
            s["bound"] = e.bound;
            s["saturated"] = e.saturated;
            s["extrapolated"] = e.extrapolated;
            arr.push_back(std::move(s));
            csv += io::csv_field(tag) + ',' + io::csv_field(e.series_id) + ',' +
                   io::fmt_double(e.complexity) + ',' + io::fmt_double(e.best_mse) + ',' +
                   io::fmt_double(e.bound) + ',' + (e.saturated ? "true" : "false") + ',' +
                   (e.extrapolated ? "true" : "false") + '\n';
        }
        benchmarks[tag] = std::move(b);
    }
    io::write_file(out_path(out_prefix, "saturation.json"), j.dump(2) + "\n");
    io::write_file(out_path(out_prefix, "saturation.csv"), csv);
    io::write_file(out_path(out_prefix, "config.txt"), effective_config_text(config));
    return reports;
}

corpus::DivergenceHistogram run_divergence(const std::string& benchmark_path,
                                           const std::string& corpus_path,
                                           const std::string& out_prefix,
                                           const RunConfig& config) {
    const auto benchmark = io::load_series_csv(benchmark_path);
    const auto pool = io::load_series_csv(corpus_path);
    std::optional<std::size_t> cap;
    if (config.subsample > 0) cap = config.subsample;
    const auto hist =
        config.all_pairs
            ? corpus::divergence_histogram_all_pairs(benchmark, pool, config.window_config(),
                                                     config.bins, config.threads)
            : corpus::divergence_histogram(benchmark, pool, config.window_config(), config.bins,
                                           cap, config.seed, config.threads);

    std::string csv = "bin_left,bin_right,count\n";
    for (std::size_t b = 0; b < hist.counts.size(); ++b)
        csv += io::fmt_double(hist.edges[b]) + ',' + io::fmt_double(hist.edges[b + 1]) + ',' +
               std::to_string(hist.counts[b]) + '\n';
    io::write_file(out_path(out_prefix, "divergence_hist.csv"), csv);

    nlohmann::json j;
    j["config"] = config_json(config);
    j["pool_windows"] = hist.pool_windows;
    auto& arr = j["per_series"] = nlohmann::json::array();
    for (std::size_t i = 0; i < hist.per_series.size(); ++i) {
        nlohmann::json e;
        if (config.all_pairs) {
            e["series_id"] = benchmark[i / pool.size()].id;
            e["corpus_id"] = pool[i % pool.size()].id;
        } else {
            e["series_id"] = benchmark[i].id;
        }
        e["divergence"] = hist.per_series[i];
        arr.push_back(std::move(e));
    }
    io::write_file(out_path(out_prefix, "divergence.json"), j.dump(2) + "\n");
    io::write_file(out_path(out_prefix, "config.txt"), effective_config_text(config));
    return hist;
}

std::vector<double> run_weights(const std::string& metrics_csv_path, const std::string& out_prefix,
                                const RunConfig& config) {
    const auto records = read_metrics_csv(metrics_csv_path);
    std::vector<std::size_t> rows;
    std::vector<double> complexities;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const double c = record_complexity(records[i], config.complexity_column);
        if (std::isnan(c)) continue;
        rows.push_back(i);
        complexities.push_back(c);
    }
    if (complexities.empty())
        throw InvalidInputError("weights: no rows with a finite complexity");
    const auto weights = corpus::sampling_weights(complexities, config.beta);

    std::string csv = "series_id,complexity,weight\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
        csv += io::csv_field(records[rows[i]].series_id) + ',' + io::fmt_double(complexities[i]) +
               ',' + io::fmt_double(weights[i]) + '\n';
    io::write_file(out_path(out_prefix, "weights.csv"), csv);
    io::write_file(out_path(out_prefix, "config.txt"), effective_config_text(config));
    return weights;
}

std::vector<TimeSeries> run_generate(const std::string& out_prefix, const RunConfig& config) {
    if (config.gen_length < config.past_len + config.horizon)
        throw InvalidInputError("generate: gen_length must cover one past+forecast window (" +
                                std::to_string(config.past_len + config.horizon) + " points)");
    const auto spec = config.generator_spec();
    const auto series = corpus::generate_synthetic(spec);
    io::write_wide_csv_file(series, out_path(out_prefix, "generated.csv"));

    // Cache complexity in the manifest where the series admits enough windows.
    const auto wc = config.window_config(WindowMode::PastPlusForecast);
    std::vector<double> complexity_cache(series.size(), kNaN);
    parallel_for(series.size(), config.threads, [&](std::size_t i) {
        try {
            complexity_cache[i] = metrics::complexity(series[i], wc).value;
        } catch (const Error&) {
            // left uncached
        }
    });

    nlohmann::json j;
    j["config"] = config_json(config);
    auto& arr = j["entries"] = nlohmann::json::array();
    for (std::size_t i = 0; i < series.size(); ++i) {
        nlohmann::json e;
        e["series_id"] = series[i].id;
        e["source"] = "generated.csv";
        e["domain_tag"] = series[i].domain_tag;
        e["length"] = series[i].length();
        if (!std::isnan(complexity_cache[i])) e["complexity"] = complexity_cache[i];
        arr.push_back(std::move(e));
    }
    io::write_file(out_path(out_prefix, "manifest.json"), j.dump(2) + "\n");
    io::write_file(out_path(out_prefix, "config.txt"), effective_config_text(config));
    return series;
}

} // namespace tsbound::cli
