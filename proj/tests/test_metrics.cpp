#include <doctest.h>

#include <cmath>
#include <vector>

#include "adf_reference.hpp"
#include "oracles.hpp"
#include "tsbound/core.hpp"
#include "tsbound/errors.hpp"
#include "tsbound/metrics.hpp"
#include "tsbound/rng.hpp"

using namespace tsbound;
using namespace tsbound::metrics;

namespace {

constexpr double kPi = 3.14159265358979323846;

WindowConfig joint_config(std::size_t p, std::size_t f, std::size_t stride) {
    WindowConfig cfg;
    cfg.past_len = p;
    cfg.horizon = f;
    cfg.stride = stride;
    cfg.mode = WindowMode::PastPlusForecast;
    return cfg;
}

TimeSeries ar1_series(std::uint64_t seed, std::size_t n, double phi) {
    Rng rng(seed);
    std::vector<double> x(n);
    x[0] = rng.normal();
    for (std::size_t t = 1; t < n; ++t) x[t] = phi * x[t - 1] + rng.normal();
    return {"ar1", x, ""};
}

TimeSeries noise_series(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    std::vector<double> x(n);
    for (auto& v : x) v = rng.normal();
    return {"noise", x, ""};
}

} // namespace

TEST_CASE("complexity is zero for a constant series") {
    const TimeSeries s{"c", std::vector<double>(40, 3.7), ""};
    const auto res = complexity(s, joint_config(4, 4, 2));
    CHECK(res.value >= 0.0);
    CHECK(res.value < 1e-12);
}

TEST_CASE("complexity is zero for an exact-period sinusoid") {
    // window length 16 == period: every window is a circular shift of every
    // other, so all amplitude spectra coincide
    const std::size_t n = 120, period = 16;
    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t)
        x[t] = std::sin(2.0 * kPi * static_cast<double>(t) / static_cast<double>(period));
    const TimeSeries s{"tone", x, ""};
    for (std::size_t stride : {1u, 3u, 5u}) {
        const auto res = complexity(s, joint_config(8, 8, stride));
        CHECK(res.value < 1e-9);
    }
}

TEST_CASE("complexity matches the direct evaluation on a small pattern") {
    const TimeSeries s{"p", {1, 2, 1, 3, 1, 2, 1, 4, 1, 2, 1, 3, 1, 2}, ""};
    const auto cfg = joint_config(2, 2, 2);
    const auto res = complexity(s, cfg);
    const double expected = oracles::complexity(s.values, 4, 2);
    CHECK(std::fabs(res.value - expected) < 1e-9);
    CHECK(res.window_count == oracles::split(s.values, 4, 2).size());
}

TEST_CASE("complexity matches the brute-force oracle on random short series") {
    Rng rng(71);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t p = static_cast<std::size_t>(rng.uniform_int(2, 6));
        const std::size_t f = static_cast<std::size_t>(rng.uniform_int(2, 6));
        const std::size_t stride = static_cast<std::size_t>(rng.uniform_int(1, 4));
        const std::size_t len = p + f;
        const std::size_t n = len + stride + static_cast<std::size_t>(rng.uniform_int(1, 40));
        std::vector<double> x(n);
        for (auto& v : x) v = rng.uniform(-2, 2);
        const TimeSeries s{"r", x, ""};
        const auto res = complexity(s, joint_config(p, f, stride));
        CHECK(std::fabs(res.value - oracles::complexity(x, len, stride)) < 1e-9);
    }
}

TEST_CASE("complexity scales quadratically in the series scale") {
    Rng rng(73);
    std::vector<double> x(100);
    for (auto& v : x) v = rng.normal();
    const auto cfg = joint_config(5, 5, 3);
    const double base = complexity({"x", x, ""}, cfg).value;
    for (double c : {2.0, -3.0, 0.25}) {
        std::vector<double> scaled(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) scaled[i] = c * x[i];
        const double got = complexity({"cx", scaled, ""}, cfg).value;
        CHECK(std::fabs(got - c * c * base) < 1e-9 * std::fabs(c * c * base));
    }
}

TEST_CASE("complexity ignores per-window circular shifts") {
    // tiles of a fixed window vs tiles of circularly shifted copies
    Rng rng(79);
    const std::size_t len = 12, tiles = 8;
    std::vector<double> w(len);
    for (auto& v : w) v = rng.uniform(-1, 1);

    std::vector<double> plain, shifted;
    for (std::size_t k = 0; k < tiles; ++k) {
        const std::size_t tau = static_cast<std::size_t>(rng.uniform_int(0, len - 1));
        for (std::size_t i = 0; i < len; ++i) {
            plain.push_back(w[i]);
            shifted.push_back(w[(i + tau) % len]);
        }
    }
    const auto cfg = joint_config(6, 6, len);
    CHECK(complexity({"a", plain, ""}, cfg).value < 1e-9);
    CHECK(complexity({"b", shifted, ""}, cfg).value < 1e-9);
}

TEST_CASE("past-only and forecast-only modes agree when P == F") {
    Rng rng(83);
    std::vector<double> x(150);
    for (auto& v : x) v = rng.normal();
    const TimeSeries s{"s", x, ""};
    for (int trial = 0; trial < 10; ++trial) {
        WindowConfig cfg;
        cfg.past_len = static_cast<std::size_t>(rng.uniform_int(2, 10));
        cfg.horizon = cfg.past_len;
        cfg.stride = static_cast<std::size_t>(rng.uniform_int(1, 5));
        cfg.mode = WindowMode::PastOnly;
        const double a = complexity(s, cfg).value;
        cfg.mode = WindowMode::ForecastOnly;
        const double b = complexity(s, cfg).value;
        CHECK(a == b);
    }
}

TEST_CASE("complexity requires at least two windows") {
    const TimeSeries s{"one", std::vector<double>(4, 1.0), ""};
    WindowConfig cfg = joint_config(2, 2, 8); // only one window fits
    CHECK_THROWS_AS(complexity(s, cfg), InsufficientWindowsError);
}

TEST_CASE("divergence identities") {
    Rng rng(89);
    std::vector<double> x(80), y(80);
    for (auto& v : x) v = rng.normal();
    for (auto& v : y) v = rng.uniform(-2, 2);
    const TimeSeries sx{"x", x, ""}, sy{"y", y, ""};
    const auto cfg = joint_config(4, 4, 4);

    CHECK(divergence(sx, sy, cfg) == divergence(sy, sx, cfg));
    CHECK(divergence(sx, sy, cfg) >= 0.0);

    const double c = complexity(sx, cfg).value;
    CHECK(std::fabs(divergence(sx, sx, cfg) - 2.0 * c) < 1e-6);

    const TimeSeries cs{"c", std::vector<double>(40, 2.0), ""};
    CHECK(divergence(cs, cs, cfg) <= 1e-12);
}

TEST_CASE("divergence matches the brute-force double sum") {
    const TimeSeries a{"a", {1, 2, 3, 4, 2, 1, 0, 3, 5, 1, 2, 2}, ""};
    const TimeSeries b{"b", {0, 1, 0, 2, 0, 3, 0, 4, 0, 5}, ""};
    const auto cfg = joint_config(2, 2, 2);
    const double got = divergence(a, b, cfg);
    const double expected = oracles::divergence(a.values, b.values, 4, 2);
    CHECK(std::fabs(got - expected) < 1e-9);
}

TEST_CASE("divergence rejects too-short input") {
    const TimeSeries s{"s", {1, 2}, ""};
    const TimeSeries ok{"ok", std::vector<double>(20, 1.0), ""};
    CHECK_THROWS_AS(divergence(s, ok, joint_config(4, 4, 1)), TooShortError);
}

TEST_CASE("adf_statistic reproduces the frozen reference values") {
    for (const auto& c : adf_reference::cases()) {
        const auto series = adf_reference::make_series(c);
        const double stat = adf_statistic(series, c.lag);
        CHECK(std::fabs(stat - c.reference_stat) < 1e-6);
    }
}

TEST_CASE("adf_statistic separates mean reversion from a random walk") {
    int below = 0;
    const int seeds = 200;
    for (int s = 0; s < seeds; ++s) {
        const auto ar = ar1_series(10000 + s, 500, 0.5);
        Rng rng(20000 + s);
        std::vector<double> walk(500);
        walk[0] = rng.normal();
        for (std::size_t t = 1; t < walk.size(); ++t) walk[t] = walk[t - 1] + rng.normal();
        const double a = adf_statistic(ar, 4);
        const double w = adf_statistic({"rw", walk, ""}, 4);
        if (a < w) ++below;
    }
    CHECK(below >= 198); // separation probability > 0.99
}

TEST_CASE("adf_statistic on random walks stays in the non-rejection region") {
    double mean = 0.0;
    int strongly_negative = 0;
    const int seeds = 100;
    for (int s = 0; s < seeds; ++s) {
        Rng rng(30000 + s);
        std::vector<double> walk(500);
        walk[0] = rng.normal();
        for (std::size_t t = 1; t < walk.size(); ++t) walk[t] = walk[t - 1] + rng.normal();
        const double stat = adf_statistic({"rw", walk, ""}, 4);
        mean += stat / seeds;
        if (stat < -3.96) ++strongly_negative; // 1% critical value, trend case
    }
    CHECK(mean > -2.9);
    CHECK(mean < -1.3);
    CHECK(strongly_negative <= 5);
}

TEST_CASE("adf_statistic rejects constants and too-short input") {
    const TimeSeries c{"c", std::vector<double>(100, 1.0), ""};
    CHECK_THROWS_AS(adf_statistic(c, 2), DegenerateRegressionError);
    const TimeSeries tiny{"t", {1, 2, 3, 4, 5}, ""};
    CHECK_THROWS_AS(adf_statistic(tiny, 3), InvalidInputError);
}

TEST_CASE("schwert_lag implements floor(12 (n/100)^(1/4))") {
    CHECK(schwert_lag(100) == 12);
    CHECK(schwert_lag(500) == 17);
    CHECK(schwert_lag(1280) == 22);
}

TEST_CASE("acf of an AR(1) decays geometrically") {
    const auto s = ar1_series(41, 20000, 0.5);
    const auto r = acf(s, 5);
    for (std::size_t tau = 1; tau <= 5; ++tau)
        CHECK(std::fabs(r[tau - 1] - std::pow(0.5, tau)) < 0.03);
}

TEST_CASE("acf of white noise is small at all lags") {
    const auto s = noise_series(43, 10000);
    const auto r = acf(s, 20);
    for (double v : r) CHECK(std::fabs(v) < 0.05);
}

TEST_CASE("acf bounds and affine invariance") {
    const auto s = ar1_series(47, 2000, 0.8);
    const auto base = acf(s, 10);
    for (double v : base) {
        CHECK(v >= -1.0);
        CHECK(v <= 1.0);
    }
    std::vector<double> affine(s.values.size());
    for (std::size_t i = 0; i < affine.size(); ++i) affine[i] = 3.0 * s.values[i] + 11.0;
    const auto transformed = acf({"t", affine, ""}, 10);
    for (std::size_t i = 0; i < base.size(); ++i)
        CHECK(std::fabs(base[i] - transformed[i]) < 1e-9);
}

TEST_CASE("acf error paths") {
    const TimeSeries c{"c", std::vector<double>(50, 2.0), ""};
    CHECK_THROWS_AS(acf(c, 5), DegenerateError);
    const TimeSeries s{"s", {1, 2, 3}, ""};
    CHECK_THROWS_AS(acf(s, 3), InvalidInputError);
}

TEST_CASE("acf_half_life of AR(1) phi=0.5 is 2 at population scale") {
    // population ACF: 0.5, 0.25 = half of ACF(1) exactly at lag 2
    const auto s = ar1_series(7, 100000, 0.5);
    const auto hl = acf_half_life(s, 50);
    CHECK(hl.lag == 2);
    CHECK_FALSE(hl.censored);
}

TEST_CASE("acf_half_life censors when the ACF never decays to half") {
    const auto s = ar1_series(7, 2000, 0.999);
    const auto hl = acf_half_life(s, 50);
    CHECK(hl.censored);
    CHECK(hl.lag == 50);
}

TEST_CASE("acf_half_life is undefined for white noise with negative ACF(1)") {
    const auto s = noise_series(102, 300);
    CHECK_THROWS_AS(acf_half_life(s, 20), UndefinedHalfLifeError);
}

TEST_CASE("foreca of a pure tone concentrates in two bins") {
    const std::size_t n = 1024, period = 16;
    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t)
        x[t] = std::sin(2.0 * kPi * static_cast<double>(t) / static_cast<double>(period));
    const double v = foreca({"tone", x, ""});
    const double expected = 1.0 - std::log(2.0) / std::log(static_cast<double>(n));
    CHECK(std::fabs(v - expected) < 1e-6);
    CHECK(v > 0.8);
}

TEST_CASE("foreca of white noise is near zero") {
    const double v = foreca(noise_series(53, 8192));
    CHECK(v < 0.2);
    CHECK(v >= 0.0);
}

TEST_CASE("foreca stays in [0,1] and ignores positive scaling") {
    Rng rng(59);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(256);
        for (auto& v : x) v = rng.uniform(-5, 5);
        const double v = foreca({"r", x, ""});
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        std::vector<double> scaled(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) scaled[i] = 7.5 * x[i];
        CHECK(std::fabs(foreca({"s", scaled, ""}) - v) < 1e-9);
    }
}

TEST_CASE("foreca error paths") {
    const TimeSeries c{"c", std::vector<double>(64, 1.0), ""};
    CHECK_THROWS_AS(foreca(c), DegenerateError);
    const TimeSeries tiny{"t", {1, 2, 3}, ""};
    CHECK_THROWS_AS(foreca(tiny), InvalidInputError);
}
