#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ridgesplit/integrity.hpp"
#include "ridgesplit/ridge.hpp"

using namespace ridgesplit;

namespace {

ExperimentConfig base_config() {
    ExperimentConfig config;
    config.m = 60;
    config.n = 3;
    config.c = 0.1;
    config.sigma = 0.1;
    config.alpha = 2.0;
    config.covariance_scheme = CovarianceScheme::Random;
    config.seed = 4242;
    return config;
}

double combined_3se(const ImPointEstimate& a, const ImPointEstimate& b) {
    return 3.0 * std::sqrt(a.stderr_ * a.stderr_ + b.stderr_ * b.stderr_);
}

}  // namespace

TEST_CASE("noise floor: all tiers collapse to 2 sigma^4 / (m - p)") {
    ExperimentConfig config = base_config();
    config.m = 40;
    config.n = 3;
    config.c = 0.0;
    config.sigma = 0.5;
    config.alpha = 1e9;
    const SpdMatrix sigma = materialize_covariance(config);
    const int p = 20;
    const double floor = 2.0 * std::pow(0.5, 4) / 20.0;  // 0.00625

    SUBCASE("tier 0 within Monte Carlo error") {
        const ImPointEstimate est = im_tier0(config, sigma, p, 20000, RngSeed{7, 1, 0});
        CHECK(std::abs(est.mean - floor) <= 3.0 * est.stderr_);
    }
    SUBCASE("tiers 1 and 2 within 1e-6 absolute") {
        const GaussianSample x = sample_gaussian_rows(40, sigma, RngSeed{7, 2, 0});
        CHECK(std::abs(im_tier1_given_x(x, config, p) - floor) <= 1e-6);
        const GaussianSample x_train = x.topRows(p);
        CHECK(std::abs(im_tier2_given_train(x_train, config, sigma, p, 40) - floor) <=
              1e-6);
    }
}

TEST_CASE("tier 1 equals a brute-force conditional Monte Carlo oracle") {
    // One fixed X; average the raw statistic over fresh (b, eps) only, using
    // the ridge-core path, which shares nothing with the trace algebra.
    const ExperimentConfig config = base_config();
    const SpdMatrix sigma = materialize_covariance(config);
    const int p = 30, m = config.m;
    const GaussianSample x = sample_gaussian_rows(m, sigma, RngSeed{8, 1, 0});
    const double tier1 = im_tier1_given_x(x, config, p);

    const long draws = 200000;
    const double s2 = config.sigma * config.sigma;
    double mean = 0.0, m2 = 0.0;
    for (long t = 0; t < draws; ++t) {
        const auto trial = static_cast<std::uint64_t>(t);
        const Eigen::VectorXd b =
            config.c * sample_standard_normal(config.n, RngSeed{8, 2, trial});
        const Eigen::VectorXd eps =
            sample_standard_normal(m, RngSeed{8, 3, trial});
        const Eigen::VectorXd y = x * b + config.sigma * eps;
        const RidgeFit fit = ridge_fit(x.topRows(p), y.head(p), config.alpha);
        const double mse = test_mean_squared_error(x.bottomRows(m - p), y.tail(m - p), fit);
        const double value = (mse - s2) * (mse - s2);
        const double delta = value - mean;
        mean += delta / static_cast<double>(t + 1);
        m2 += delta * (value - mean);
    }
    const double oracle_stderr = std::sqrt(m2 / (draws - 1.0) / draws);
    CHECK(std::abs(tier1 - mean) <= 3.0 * oracle_stderr);
}

TEST_CASE("tier 2 equals tier 1 averaged over the test block") {
    const ExperimentConfig config = base_config();
    const SpdMatrix sigma = materialize_covariance(config);
    const int p = 30, m = config.m;
    const GaussianSample x_train = sample_gaussian_rows(p, sigma, RngSeed{9, 1, 0});
    const double tier2 = im_tier2_given_train(x_train, config, sigma, p, m);

    const long draws = 20000;
    double mean = 0.0, m2 = 0.0;
    GaussianSample x(m, config.n);
    x.topRows(p) = x_train;
    for (long t = 0; t < draws; ++t) {
        x.bottomRows(m - p) =
            sample_gaussian_rows(m - p, sigma, RngSeed{9, 2, static_cast<std::uint64_t>(t)});
        const double value = im_tier1_given_x(x, config, p);
        const double delta = value - mean;
        mean += delta / static_cast<double>(t + 1);
        m2 += delta * (value - mean);
    }
    const double oracle_stderr = std::sqrt(m2 / (draws - 1.0) / draws);
    CHECK(std::abs(tier2 - mean) <= 3.0 * oracle_stderr);
}

TEST_CASE("the three tiers agree pairwise on one configuration") {
    const ExperimentConfig config = base_config();
    const SpdMatrix sigma = materialize_covariance(config);
    const int p = 30;
    const ImPointEstimate tier0 = im_tier0(config, sigma, p, 30000, RngSeed{10, 1, 0});
    const ImPointEstimate tier1 =
        im_point(config, sigma, p, Tier::Tier1, 5000, RngSeed{10, 2, 0});
    const ImPointEstimate tier2 =
        im_point(config, sigma, p, Tier::Tier2, 5000, RngSeed{10, 3, 0});
    CHECK(std::abs(tier0.mean - tier1.mean) <= combined_3se(tier0, tier1));
    CHECK(std::abs(tier0.mean - tier2.mean) <= combined_3se(tier0, tier2));
    CHECK(std::abs(tier1.mean - tier2.mean) <= combined_3se(tier1, tier2));
}

TEST_CASE("two seeds give statistically compatible tier 0 means") {
    const ExperimentConfig config = base_config();
    const SpdMatrix sigma = materialize_covariance(config);
    const ImPointEstimate a = im_tier0(config, sigma, 30, 20000, RngSeed{21, 1, 0});
    const ImPointEstimate b = im_tier0(config, sigma, 30, 20000, RngSeed{22, 9, 5});
    CHECK(std::abs(a.mean - b.mean) <= combined_3se(a, b));
    CHECK(a.mean != b.mean);  // different seeds really are different streams
}

TEST_CASE("conditioning reduces per-trial variance tier by tier") {
    const ExperimentConfig config = base_config();
    const SpdMatrix sigma = materialize_covariance(config);
    const int p = 30;
    const long trials = 10000;
    const ImPointEstimate tier0 = im_tier0(config, sigma, p, trials, RngSeed{11, 1, 0});
    const ImPointEstimate tier1 =
        im_point(config, sigma, p, Tier::Tier1, trials, RngSeed{11, 2, 0});
    const ImPointEstimate tier2 =
        im_point(config, sigma, p, Tier::Tier2, trials, RngSeed{11, 3, 0});
    const auto per_trial_sd = [&](const ImPointEstimate& est) {
        return est.stderr_ * std::sqrt(static_cast<double>(trials));
    };
    CHECK(per_trial_sd(tier2) <= per_trial_sd(tier1));
    CHECK(per_trial_sd(tier1) <= per_trial_sd(tier0));
}

TEST_CASE("tier 1 and 2 values never dip below the noise floor") {
    const ExperimentConfig config = base_config();
    const SpdMatrix sigma = materialize_covariance(config);
    const double s4 = std::pow(config.sigma, 4);
    for (int p : {5, 20, 30, 45}) {
        const double floor = 2.0 * s4 / (config.m - p);
        for (int i = 0; i < 20; ++i) {
            const GaussianSample x = sample_gaussian_rows(
                config.m, sigma, RngSeed{12, 1, static_cast<std::uint64_t>(100 * p + i)});
            CHECK(im_tier1_given_x(x, config, p) >= floor);
            CHECK(im_tier2_given_train(x.topRows(p), config, sigma, p, config.m) >= floor);
        }
    }
}

TEST_CASE("Cauchy-Schwarz holds inside every realized trace summary") {
    const ExperimentConfig config = base_config();
    const SpdMatrix sigma = materialize_covariance(config);
    for (int i = 0; i < 200; ++i) {
        const GaussianSample x = sample_gaussian_rows(
            config.m, sigma, RngSeed{13, 1, static_cast<std::uint64_t>(i)});
        const TraceSummary summary = compute_trace_summary(x, 30, config.alpha);
        CHECK(summary.cauchy_schwarz_ok());
        CHECK(summary.tr_AtA >= 0.0);
        CHECK(summary.tr_BtB >= 0.0);
        CHECK(summary.tr_BtAAtB >= 0.0);
        const TrainTraceSummary train =
            compute_train_trace_summary(x.topRows(30), sigma, config.alpha);
        CHECK(train.cauchy_schwarz_ok());
        CHECK(train.t5 >= 0.0);
    }
}

TEST_CASE("im_curve is deterministic and positive") {
    ExperimentConfig config = base_config();
    config.m = 40;
    const SpdMatrix sigma = materialize_covariance(config);
    const SplitCurve a =
        im_curve(config, sigma, 5, 39, 2, Tier::Tier2, 300, RngSeed{14, 1, 0}, 1);
    const SplitCurve b =
        im_curve(config, sigma, 5, 39, 2, Tier::Tier2, 300, RngSeed{14, 1, 0}, 2);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].mean == b.points[i].mean);        // bitwise, any worker count
        CHECK(a.points[i].stderr_ == b.points[i].stderr_);
        CHECK(a.points[i].mean > 0.0);
    }
    CHECK(a.points.front().p == 5);
    CHECK(a.points.back().p == 39);
}

TEST_CASE("im_curve rejects bad grids") {
    ExperimentConfig config = base_config();
    const SpdMatrix sigma = materialize_covariance(config);
    CHECK_THROWS_AS(
        im_curve(config, sigma, 2, 59, 1, Tier::Tier2, 300, RngSeed{}, 1),
        std::invalid_argument);
    CHECK_THROWS_AS(
        im_curve(config, sigma, 5, 60, 1, Tier::Tier2, 300, RngSeed{}, 1),
        std::invalid_argument);
    CHECK_THROWS_AS(
        im_curve(config, sigma, 30, 30, 1, Tier::Tier2, 300, RngSeed{}, 1),
        std::invalid_argument);
}

TEST_CASE("im_tier0 rejects invalid splits") {
    const ExperimentConfig config = base_config();
    const SpdMatrix sigma = materialize_covariance(config);
    CHECK_THROWS_AS(im_tier0(config, sigma, 4, 200, RngSeed{}), std::invalid_argument);
    CHECK_THROWS_AS(im_tier0(config, sigma, 60, 200, RngSeed{}), std::invalid_argument);
}

namespace {

SplitCurve synthetic_curve(int m, int n, const std::vector<double>& means, int p_start) {
    SplitCurve curve;
    curve.m = m;
    curve.n = n;
    curve.c = 0.1;
    curve.sigma = 0.1;
    curve.alpha = 2.0;
    curve.tier = Tier::Tier2;
    curve.trials = 1;
    for (std::size_t i = 0; i < means.size(); ++i) {
        ImPointEstimate pt;
        pt.p = p_start + static_cast<int>(i);
        pt.m = m;
        pt.mean = means[i];
        curve.points.push_back(pt);
    }
    return curve;
}

}  // namespace

TEST_CASE("argmin of a noiseless curve is its unique minimum") {
    std::vector<double> means;
    for (int p = 10; p <= 60; ++p) {
        means.push_back((p - 30.0) * (p - 30.0) + 1.0);
    }
    const SplitCurve curve = synthetic_curve(100, 3, means, 10);
    const SplitRecommendation rec = empirical_argmin(curve, 0);
    CHECK(rec.p_empirical->first == 30);
    CHECK(rec.p_empirical->second == 30);
    CHECK(rec.p_final == recommend_integer_split(100, 3, SplitSource::Formula));
    CHECK(rec.p_root.has_value());
}

TEST_CASE("a flat curve resolves to the smallest p") {
    const std::vector<double> means(40, 1.0);
    const SplitCurve curve = synthetic_curve(100, 3, means, 8);
    const SplitRecommendation rec = empirical_argmin(curve, 3);
    CHECK(rec.p_empirical->first == 8);
    CHECK(rec.p_empirical->second == 8);
}

TEST_CASE("smoothing recovers a noisy quadratic argmin") {
    // quadratic (p - 40)^2 over p in [10, 70] plus uniform noise of
    // amplitude 4; the smoothed argmin should land within +-3 of 40 at
    // least 95% of the time.
    const int attempts = 1000;
    int hits = 0;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        Rng noise(RngSeed{15, 0, static_cast<std::uint64_t>(attempt)});
        std::vector<double> means;
        for (int p = 10; p <= 70; ++p) {
            const double clean = (p - 40.0) * (p - 40.0);
            means.push_back(clean + 4.0 * (2.0 * noise.next_unit() - 1.0));
        }
        const SplitCurve curve = synthetic_curve(100, 3, means, 10);
        const SplitRecommendation rec = empirical_argmin(curve, 5);
        if (std::abs(rec.p_empirical->second - 40) <= 3) ++hits;
    }
    CHECK(hits >= 950);
}

TEST_CASE("empirical_argmin rejects an empty curve") {
    SplitCurve curve;
    curve.m = 100;
    curve.n = 3;
    CHECK_THROWS_AS(empirical_argmin(curve, 0), std::invalid_argument);
}

TEST_CASE("auto smoothing window tracks grid size") {
    CHECK(auto_smoothing_window(10) == 2);
    CHECK(auto_smoothing_window(100) == 5);
    CHECK(auto_smoothing_window(400) == 20);
}
