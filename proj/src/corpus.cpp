#include "tsbound/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "tsbound/core.hpp"
#include "tsbound/errors.hpp"
#include "tsbound/metrics.hpp"
#include "tsbound/parallel.hpp"
#include "tsbound/rng.hpp"

namespace tsbound::corpus {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string padded_index(std::size_t i, std::size_t width) {
    std::string s = std::to_string(i);
    while (s.size() < width) s.insert(s.begin(), '0');
    return s;
}

enum class Component { Sinusoid, Trend, LevelShift, Noise };

std::vector<Component> enabled_components(const GeneratorSpec& spec) {
    std::vector<Component> pool;
    if (spec.use_sinusoid) pool.push_back(Component::Sinusoid);
    if (spec.use_trend) pool.push_back(Component::Trend);
    if (spec.use_level_shift) pool.push_back(Component::LevelShift);
    if (spec.use_noise) pool.push_back(Component::Noise);
    return pool;
}

std::vector<double> draw_component(Component kind, const GeneratorSpec& spec, Rng& rng) {
    const std::size_t n = spec.length;
    std::vector<double> v(n, 0.0);
    switch (kind) {
        case Component::Sinusoid: {
            const double period = rng.uniform(spec.period_min, spec.period_max);
            const double amplitude = rng.uniform(0.5, 1.5);
            const double phase = rng.uniform(0.0, 2.0 * kPi);
            for (std::size_t t = 0; t < n; ++t)
                v[t] = amplitude * std::sin(2.0 * kPi * static_cast<double>(t) / period + phase);
            break;
        }
        case Component::Trend: {
            const double slope = rng.uniform(spec.trend_slope_min, spec.trend_slope_max);
            for (std::size_t t = 0; t < n; ++t) v[t] = slope * static_cast<double>(t);
            break;
        }
        case Component::LevelShift: {
            double level = 0.0;
            for (std::size_t t = 0; t < n; ++t) {
                if (rng.uniform() < spec.changepoint_prob) level += rng.normal();
                v[t] = level;
            }
            break;
        }
        case Component::Noise: {
            const double scale = rng.uniform(spec.noise_scale_min, spec.noise_scale_max);
            for (std::size_t t = 0; t < n; ++t) v[t] = scale * rng.normal();
            break;
        }
    }
    return v;
}

} // namespace

void GeneratorSpec::validate() const {
    if (count < 1) throw InvalidInputError("generator: count must be >= 1");
    if (length < 2) throw InvalidInputError("generator: length must be >= 2");
    if (max_components < 1) throw InvalidInputError("generator: max_components must be >= 1");
    if (!(period_min > 0.0) || period_max < period_min)
        throw InvalidInputError("generator: bad period range");
    if (trend_slope_max < trend_slope_min) throw InvalidInputError("generator: bad slope range");
    if (!(noise_scale_min >= 0.0) || noise_scale_max < noise_scale_min)
        throw InvalidInputError("generator: bad noise scale range");
    if (!(changepoint_prob >= 0.0 && changepoint_prob <= 1.0))
        throw InvalidInputError("generator: changepoint_prob must be in [0,1]");
    if (enabled_components(*this).empty())
        throw InvalidInputError("generator: no components enabled");
}

std::vector<double> sampling_weights(const std::vector<double>& complexities, double beta) {
    if (complexities.empty()) throw InvalidInputError("sampling_weights: empty input");
    if (!(beta >= 0.0)) throw InvalidInputError("sampling_weights: beta must be >= 0");

    const std::size_t n = complexities.size();
    std::vector<double> w(n);
    if (beta == 0.0) {
        std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(n));
        return w;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(complexities[i] >= 0.0))
            throw InvalidInputError("sampling_weights: negative complexity");
        w[i] = std::pow(complexities[i], beta);
        total += w[i];
    }
    if (total == 0.0)
        throw DegenerateError("sampling_weights: all complexities are zero with beta > 0");
    for (double& v : w) v /= total;
    return w;
}

DivergenceHistogram divergence_histogram(const std::vector<TimeSeries>& benchmark,
                                         const std::vector<TimeSeries>& corpus,
                                         const WindowConfig& config, std::size_t bins,
                                         std::optional<std::size_t> subsample_cap,
                                         std::uint64_t seed, std::size_t threads) {
    if (benchmark.empty() || corpus.empty())
        throw InvalidInputError("divergence_histogram: empty benchmark or corpus");
    if (bins < 1) throw InvalidInputError("divergence_histogram: bins must be >= 1");
    if (subsample_cap && *subsample_cap < 1)
        throw InvalidInputError("divergence_histogram: subsample cap must be >= 1");
    config.validate();
    const std::size_t len = config.window_length();

    // Pool spectra gathered in id-sorted order so corpus permutations cannot
    // change the floating-point accumulation.
    std::vector<std::size_t> order(corpus.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return corpus[a].id < corpus[b].id;
    });

    std::vector<AmplitudeSpectrum> pool;
    std::vector<double> window(len);
    for (std::size_t idx : order) {
        const auto& series = corpus[idx];
        for (std::size_t off : window_offsets(series.length(), config)) {
            for (std::size_t i = 0; i < len; ++i) window[i] = series.values[off + i];
            pool.push_back(dft_amplitude(window));
        }
    }

    if (subsample_cap && pool.size() > *subsample_cap) {
        // Partial Fisher-Yates: the first cap entries become the sample.
        Rng rng(seed);
        for (std::size_t i = 0; i < *subsample_cap; ++i) {
            const std::size_t j = static_cast<std::size_t>(
                rng.uniform_int(i, pool.size() - 1));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(*subsample_cap);
    }

    std::vector<double> pool_sum(len, 0.0);
    double pool_sum_sq = 0.0;
    for (const auto& a : pool) {
        for (std::size_t i = 0; i < len; ++i) pool_sum[i] += a[i];
        for (std::size_t i = 0; i < len; ++i) pool_sum_sq += a[i] * a[i];
    }
    const double m = static_cast<double>(pool.size());

    DivergenceHistogram hist;
    hist.pool_windows = pool.size();
    hist.per_series.assign(benchmark.size(), 0.0);
    parallel_for(benchmark.size(), threads, [&](std::size_t s) {
        const auto& series = benchmark[s];
        const auto offsets = window_offsets(series.length(), config);
        std::vector<double> win(len);
        std::vector<double> own_sum(len, 0.0);
        double own_sum_sq = 0.0;
        for (std::size_t off : offsets) {
            for (std::size_t i = 0; i < len; ++i) win[i] = series.values[off + i];
            const auto amp = dft_amplitude(win);
            for (std::size_t i = 0; i < len; ++i) {
                own_sum[i] += amp[i];
                own_sum_sq += amp[i] * amp[i];
            }
        }
        const double nw = static_cast<double>(offsets.size());
        double cross = 0.0;
        for (std::size_t i = 0; i < len; ++i) cross += own_sum[i] * pool_sum[i];
        double d = own_sum_sq / nw + pool_sum_sq / m - 2.0 * cross / (nw * m);
        hist.per_series[s] = d < 0.0 ? 0.0 : d;
    });

    const auto [mn_it, mx_it] = std::minmax_element(hist.per_series.begin(), hist.per_series.end());
    const double lo = *mn_it, hi = *mx_it;
    const double width = (hi - lo) / static_cast<double>(bins);
    hist.edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) hist.edges[i] = lo + width * static_cast<double>(i);
    hist.counts.assign(bins, 0);
    for (double d : hist.per_series) {
        std::size_t b = 0;
        if (width > 0.0) {
            b = static_cast<std::size_t>((d - lo) / width);
            if (b >= bins) b = bins - 1; // top edge inclusive
        }
        ++hist.counts[b];
    }
    return hist;
}

namespace {

// Per-series spectrum moments, enough to evaluate pairwise divergences.
struct SeriesMoments {
    std::vector<double> sum;
    double sum_sq = 0.0;
    std::size_t windows = 0;
};

SeriesMoments series_moments(const TimeSeries& series, const WindowConfig& config) {
    const std::size_t len = config.window_length();
    SeriesMoments m;
    m.sum.assign(len, 0.0);
    std::vector<double> window(len);
    for (std::size_t off : window_offsets(series.length(), config)) {
        for (std::size_t i = 0; i < len; ++i) window[i] = series.values[off + i];
        const auto amp = dft_amplitude(window);
        for (std::size_t i = 0; i < len; ++i) {
            m.sum[i] += amp[i];
            m.sum_sq += amp[i] * amp[i];
        }
        ++m.windows;
    }
    return m;
}

DivergenceHistogram bin_values(std::vector<double> values, std::size_t bins) {
    DivergenceHistogram hist;
    const auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *mn_it, hi = *mx_it;
    const double width = (hi - lo) / static_cast<double>(bins);
    hist.edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) hist.edges[i] = lo + width * static_cast<double>(i);
    hist.counts.assign(bins, 0);
    for (double d : values) {
        std::size_t b = 0;
        if (width > 0.0) {
            b = static_cast<std::size_t>((d - lo) / width);
            if (b >= bins) b = bins - 1;
        }
        ++hist.counts[b];
    }
    hist.per_series = std::move(values);
    return hist;
}

} // namespace

DivergenceHistogram divergence_histogram_all_pairs(const std::vector<TimeSeries>& benchmark,
                                                   const std::vector<TimeSeries>& corpus,
                                                   const WindowConfig& config, std::size_t bins,
                                                   std::size_t threads) {
    if (benchmark.empty() || corpus.empty())
        throw InvalidInputError("divergence_histogram: empty benchmark or corpus");
    if (bins < 1) throw InvalidInputError("divergence_histogram: bins must be >= 1");
    config.validate();
    const std::size_t len = config.window_length();

    std::vector<SeriesMoments> bm(benchmark.size()), cm(corpus.size());
    parallel_for(benchmark.size(), threads,
                 [&](std::size_t i) { bm[i] = series_moments(benchmark[i], config); });
    parallel_for(corpus.size(), threads,
                 [&](std::size_t j) { cm[j] = series_moments(corpus[j], config); });

    std::vector<double> pairs(benchmark.size() * corpus.size(), 0.0);
    parallel_for(benchmark.size(), threads, [&](std::size_t i) {
        for (std::size_t j = 0; j < corpus.size(); ++j) {
            const double n = static_cast<double>(bm[i].windows);
            const double m = static_cast<double>(cm[j].windows);
            double cross = 0.0;
            for (std::size_t k = 0; k < len; ++k) cross += bm[i].sum[k] * cm[j].sum[k];
            double d = bm[i].sum_sq / n + cm[j].sum_sq / m - 2.0 * cross / (n * m);
            pairs[i * corpus.size() + j] = d < 0.0 ? 0.0 : d;
        }
    });

    std::size_t total_windows = 0;
    for (const auto& m : cm) total_windows += m.windows;
    auto hist = bin_values(std::move(pairs), bins);
    hist.pool_windows = total_windows;
    return hist;
}

std::vector<TimeSeries> generate_synthetic(const GeneratorSpec& spec) {
    spec.validate();
    const auto pool = enabled_components(spec);
    const std::size_t width = std::to_string(spec.count - 1).size() < 4
                                  ? 4
                                  : std::to_string(spec.count - 1).size();

    std::vector<TimeSeries> out;
    out.reserve(spec.count);
    for (std::size_t s = 0; s < spec.count; ++s) {
        Rng rng(Rng::derive(spec.seed, s)); // per-series sub-seed
        const std::size_t n_comp =
            static_cast<std::size_t>(rng.uniform_int(1, spec.max_components));

        std::vector<double> values;
        for (std::size_t c = 0; c < n_comp; ++c) {
            const auto kind = pool[static_cast<std::size_t>(rng.uniform_int(0, pool.size() - 1))];
            auto comp = draw_component(kind, spec, rng);
            if (c == 0) {
                values = std::move(comp);
            } else if (rng.uniform() < 0.5) {
                for (std::size_t t = 0; t < spec.length; ++t) values[t] += comp[t];
            } else {
                for (std::size_t t = 0; t < spec.length; ++t) values[t] *= comp[t];
            }
        }

        TimeSeries series;
        series.id = spec.id_prefix + "_" + padded_index(s, width);
        series.domain_tag = spec.domain_tag;
        series.values = zscore_normalize(values);
        out.push_back(std::move(series));
    }
    return out;
}

void validate_manifest(const CorpusManifest& manifest, const std::vector<TimeSeries>& series,
                       const WindowConfig& config) {
    std::set<std::string> ids;
    for (const auto& e : manifest.entries)
        if (!ids.insert(e.series_id).second)
            throw InvalidInputError("manifest: duplicate series id '" + e.series_id + "'");

    for (const auto& e : manifest.entries) {
        const auto it = std::find_if(series.begin(), series.end(),
                                     [&](const TimeSeries& s) { return s.id == e.series_id; });
        if (it == series.end())
            throw InvalidInputError("manifest: series '" + e.series_id + "' not found");
        if (it->length() != e.length)
            throw InvalidInputError("manifest: length mismatch for '" + e.series_id + "'");
        if (e.complexity) {
            const double actual = metrics::complexity(*it, config).value;
            if (std::fabs(actual - *e.complexity) > 1e-9)
                throw InvalidInputError("manifest: cached complexity for '" + e.series_id +
                                        "' does not match recomputation");
        }
    }
}

} // namespace tsbound::corpus
