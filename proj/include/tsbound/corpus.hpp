#ifndef TSBOUND_CORPUS_HPP
#define TSBOUND_CORPUS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsbound/series.hpp"

namespace tsbound::corpus {

struct ManifestEntry {
    std::string series_id;
    std::string source;
    std::string domain_tag;
    std::size_t length = 0;
    std::optional<double> complexity; // cached; must match recomputation within 1e-9
};

struct CorpusManifest {
    std::vector<ManifestEntry> entries;
};

// Synthetic series recipe: each series mixes 1..max_components draws from the
// enabled component pool (sinusoid / linear trend / piecewise level shifts /
// white noise), combined by a random choice of sum or pointwise product, then
// z-scored. Fully determined by seed.
struct GeneratorSpec {
    std::size_t count = 1;
    std::size_t length = 1280;
    std::uint64_t seed = 0;
    double period_min = 8.0;
    double period_max = 256.0;
    double trend_slope_min = -0.01;
    double trend_slope_max = 0.01;
    double noise_scale_min = 0.0;
    double noise_scale_max = 1.0;
    double changepoint_prob = 0.005;
    std::size_t max_components = 3;
    bool use_sinusoid = true;
    bool use_trend = true;
    bool use_level_shift = true;
    bool use_noise = true;
    std::string id_prefix = "synthetic";
    std::string domain_tag = "synthetic";

    void validate() const;
};

struct DivergenceHistogram {
    std::vector<double> edges;        // bins + 1 equal-width edges over the observed range
    std::vector<std::size_t> counts;  // per bin; sums to the benchmark series count
    std::vector<double> per_series;   // divergence per benchmark series, input order
    std::size_t pool_windows = 0;     // corpus windows used (after any subsampling)
};

// w_i proportional to complexity_i^beta, normalized to sum 1; beta = 0 gives
// uniform weights. All-zero complexities with beta > 0 are degenerate.
std::vector<double> sampling_weights(const std::vector<double>& complexities, double beta);

// Divergence of each benchmark series against the pooled corpus window
// spectra, binned into equal-width bins. The pool is accumulated in
// id-sorted order so the result is independent of corpus ordering; when
// subsample_cap is set the pool windows are uniformly subsampled with the
// given seed. Benchmark series are processed in parallel against the shared
// read-only pool; the thread count never changes the result.
DivergenceHistogram divergence_histogram(const std::vector<TimeSeries>& benchmark,
                                         const std::vector<TimeSeries>& corpus,
                                         const WindowConfig& config, std::size_t bins,
                                         std::optional<std::size_t> subsample_cap = {},
                                         std::uint64_t seed = 0, std::size_t threads = 1);

// All-pairs variant: one divergence value per (benchmark series, corpus
// series) pair instead of one per benchmark series against the pooled
// corpus. per_series holds the pair values row-major (benchmark outer).
DivergenceHistogram divergence_histogram_all_pairs(const std::vector<TimeSeries>& benchmark,
                                                   const std::vector<TimeSeries>& corpus,
                                                   const WindowConfig& config, std::size_t bins,
                                                   std::size_t threads = 1);

std::vector<TimeSeries> generate_synthetic(const GeneratorSpec& spec);

// Checks id uniqueness and cached complexities against recomputation.
void validate_manifest(const CorpusManifest& manifest, const std::vector<TimeSeries>& series,
                       const WindowConfig& config);

} // namespace tsbound::corpus

#endif
