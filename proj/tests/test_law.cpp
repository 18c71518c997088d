#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tsbound/errors.hpp"
#include "tsbound/law.hpp"
#include "tsbound/rng.hpp"
#include "tsbound/stats.hpp"

using namespace tsbound;
using namespace tsbound::law;

namespace {

std::vector<LawPoint> points_on_law(double alpha, const std::vector<double>& complexities) {
    std::vector<LawPoint> points;
    for (std::size_t i = 0; i < complexities.size(); ++i) {
        LawPoint p;
        p.series_id = "s" + std::to_string(i);
        p.complexity = complexities[i];
        p.best_mse = std::expm1(alpha * complexities[i]);
        p.best_mae = p.best_mse / 2;
        points.push_back(p);
    }
    return points;
}

} // namespace

TEST_CASE("fit_law recovers alpha exactly from noise-free points") {
    std::vector<double> cs;
    for (int i = 1; i <= 20; ++i) cs.push_back(15.0 * i);

    for (double alpha0 : {0.0054, 0.01}) {
        const auto fit = fit_law(points_on_law(alpha0, cs));
        CHECK(std::fabs(fit.alpha - alpha0) < 1e-10);
        CHECK(fit.c_min == doctest::Approx(15.0));
        CHECK(fit.c_max == doctest::Approx(300.0));
        CHECK(fit.n == 20);
        CHECK(fit.pearson_logmse == doctest::Approx(1.0).epsilon(1e-9));
        // residuals are identically zero on the law line
        for (const auto& p : points_on_law(alpha0, cs))
            CHECK(std::fabs(stats::log_metric(p.best_mse) - fit.alpha * p.complexity) < 1e-10);
    }
}

TEST_CASE("fit_law recovers alpha within 2% under multiplicative log-space noise") {
    Rng rng(211);
    for (double alpha0 : {0.002, 0.0054, 0.02}) {
        std::vector<LawPoint> points;
        for (int i = 0; i < 500; ++i) {
            LawPoint p;
            p.series_id = "s" + std::to_string(i);
            p.complexity = rng.uniform(0.0, 309.0);
            const double y = alpha0 * p.complexity * (1.0 + 0.05 * rng.normal());
            p.best_mse = std::expm1(y);
            points.push_back(p);
        }
        const auto fit = fit_law(points);
        CHECK(std::fabs(fit.alpha - alpha0) / alpha0 < 0.02);
    }
}

TEST_CASE("fit_law residual orthogonality against the regressor") {
    Rng rng(223);
    std::vector<LawPoint> points;
    for (int i = 0; i < 100; ++i) {
        LawPoint p;
        p.series_id = "s" + std::to_string(i);
        p.complexity = rng.uniform(1.0, 200.0);
        p.best_mse = std::expm1(0.004 * p.complexity * (1.0 + 0.2 * rng.normal()));
        points.push_back(p);
    }
    const auto fit = fit_law(points);
    double dot = 0.0;
    for (const auto& p : points)
        dot += p.complexity * (stats::log_metric(p.best_mse) - fit.alpha * p.complexity);
    CHECK(std::fabs(dot) < 1e-8 * 100);
}

TEST_CASE("fit_law error paths") {
    CHECK_THROWS_AS(fit_law({}), InvalidInputError);
    std::vector<LawPoint> zeros(5);
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        zeros[i].series_id = "z" + std::to_string(i);
        zeros[i].complexity = 0.0;
        zeros[i].best_mse = 0.5;
    }
    CHECK_THROWS_AS(fit_law(zeros), DegenerateError);
}

TEST_CASE("predict_bound basics") {
    LawFit fit;
    fit.alpha = 0.0054;
    fit.c_min = 0.0;
    fit.c_max = 309.0;

    CHECK(predict_bound(fit, 0.0) == 0.0);
    // reference-scale arithmetic: exp(0.0054 * 309) - 1
    CHECK(predict_bound(fit, 309.0) ==
          doctest::Approx(std::expm1(0.0054 * 309.0)).epsilon(1e-12));
    CHECK(predict_bound(fit, 309.0) == doctest::Approx(4.305).epsilon(1e-3));
    // exp(alpha C) - 1 = 1 at C = ln 2 / alpha ~ 128.35
    CHECK(predict_bound(fit, std::log(2.0) / 0.0054) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(predict_bound(fit, -1.0), InvalidInputError);
}

TEST_CASE("predict_bound is strictly increasing for positive alpha") {
    LawFit fit;
    fit.alpha = 0.01;
    double prev = -1.0;
    for (double c = 0.0; c <= 400.0; c += 10.0) {
        const double b = predict_bound(fit, c);
        CHECK(b > prev);
        prev = b;
    }
}

TEST_CASE("classify_saturation applies the strict-inequality rule") {
    LawFit fit;
    fit.alpha = 0.0054;
    fit.c_min = 0.0;
    fit.c_max = 309.0;

    LawPoint below{"below", 100.0, 0.5, 0.0};
    LawPoint on_curve{"on", 100.0, std::expm1(0.54), 0.0};
    LawPoint above{"above", 100.0, 1.0, 0.0};
    const auto report = classify_saturation(fit, {below, on_curve, above}, 0.9);

    REQUIRE(report.entries.size() == 3);
    CHECK(report.entries[0].saturated);
    CHECK(report.entries[0].bound == doctest::Approx(0.716).epsilon(1e-3));
    CHECK_FALSE(report.entries[1].saturated); // exactly on the curve
    CHECK_FALSE(report.entries[2].saturated);
    CHECK(report.saturated_count == 1);
    CHECK(report.total == 3);
}

TEST_CASE("classify_saturation reproduces reference count arithmetic") {
    LawFit fit;
    fit.alpha = 0.0054;
    fit.c_min = 0.0;
    fit.c_max = 309.0;

    // 686 of 862 saturated -> 79.58%, not saturated at threshold 0.9
    std::vector<LawPoint> points;
    const double bound_at_100 = std::expm1(0.54);
    for (int i = 0; i < 862; ++i) {
        LawPoint p;
        p.series_id = "t" + std::to_string(i);
        p.complexity = 100.0;
        p.best_mse = i < 686 ? bound_at_100 / 2 : bound_at_100 * 2;
        points.push_back(p);
    }
    const auto report = classify_saturation(fit, points, 0.9);
    CHECK(report.saturated_count == 686);
    CHECK(std::fabs(report.saturated_ratio * 100.0 - 79.58) < 0.01);
    CHECK(report.verdict == "not_saturated");
}

TEST_CASE("classify_saturation counts are permutation independent") {
    LawFit fit;
    fit.alpha = 0.01;
    fit.c_min = 0.0;
    fit.c_max = 500.0;

    Rng rng(229);
    std::vector<LawPoint> points;
    for (int i = 0; i < 50; ++i) {
        LawPoint p;
        p.series_id = "s" + std::to_string(i);
        p.complexity = rng.uniform(0.0, 400.0);
        p.best_mse = rng.uniform(0.0, 3.0);
        points.push_back(p);
    }
    const auto a = classify_saturation(fit, points, 0.5);
    std::reverse(points.begin(), points.end());
    const auto b = classify_saturation(fit, points, 0.5);
    CHECK(a.saturated_count == b.saturated_count);
    CHECK(a.saturated_ratio == b.saturated_ratio);
    CHECK(a.verdict == b.verdict);
}

TEST_CASE("lowering a series' best MSE never unsaturates it") {
    LawFit fit;
    fit.alpha = 0.01;
    Rng rng(233);
    for (int trial = 0; trial < 50; ++trial) {
        LawPoint p{"s", rng.uniform(1.0, 300.0), rng.uniform(0.0, 3.0), 0.0};
        const bool before = classify_saturation(fit, {p}, 0.9).entries[0].saturated;
        p.best_mse *= 0.5;
        const bool after = classify_saturation(fit, {p}, 0.9).entries[0].saturated;
        if (before) CHECK(after);
    }
}

TEST_CASE("classify_saturation flags extrapolated complexities") {
    LawFit fit;
    fit.alpha = 0.01;
    fit.c_min = 10.0;
    fit.c_max = 100.0;
    const auto report =
        classify_saturation(fit, {{"in", 50.0, 0.1, 0.0}, {"out", 150.0, 0.1, 0.0}}, 0.9);
    CHECK_FALSE(report.entries[0].extrapolated);
    CHECK(report.entries[1].extrapolated);
}

TEST_CASE("pure linear relation reporting rule") {
    LawFit fit;
    fit.pearson_logmse = 0.8;
    fit.reset_p = 0.5;
    CHECK(pure_linear_relation(fit));
    fit.pearson_logmse = 0.59;
    CHECK_FALSE(pure_linear_relation(fit));
    fit.pearson_logmse = 0.8;
    fit.reset_p = 0.04;
    CHECK_FALSE(pure_linear_relation(fit));
    fit.reset_p = std::numeric_limits<double>::quiet_NaN();
    CHECK_FALSE(pure_linear_relation(fit));
}

TEST_CASE("fit_law reports the free-intercept diagnostic") {
    std::vector<double> cs;
    for (int i = 1; i <= 30; ++i) cs.push_back(10.0 * i);
    const auto fit = fit_law(points_on_law(0.008, cs));
    CHECK(std::fabs(fit.diag_intercept) < 1e-9);
    CHECK(fit.diag_slope == doctest::Approx(0.008).epsilon(1e-9));
}
