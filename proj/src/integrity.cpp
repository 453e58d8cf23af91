#include "ridgesplit/integrity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "ridgesplit/ridge.hpp"

namespace ridgesplit {

namespace {

void require_valid_split(int m, int n, int p) {
    if (p < n + 2 || p > m - 1) {
        throw std::invalid_argument("invalid-split: need n + 2 <= p <= m - 1");
    }
}

Eigen::MatrixXd gram(const Eigen::Ref<const Eigen::MatrixXd>& x) {
    const Eigen::Index n = x.cols();
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    g.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose());
    return g.selfadjointView<Eigen::Lower>();
}

Eigen::MatrixXd shifted_inverse(const Eigen::MatrixXd& w, double alpha) {
    Eigen::MatrixXd shifted = w;
    shifted.diagonal().array() += alpha;
    return shifted.llt().solve(Eigen::MatrixXd::Identity(w.rows(), w.cols()));
}

struct Welford {
    double mean = 0.0;
    double m2 = 0.0;
    long count = 0;

    void add(double value) {
        ++count;
        const double delta = value - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (value - mean);
    }

    double stderr_() const {
        if (count < 2) return 0.0;
        return std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count));
    }
};

constexpr double kCauchySchwarzSlack = 1e-9;

bool dominates(double tr_sq, double tr_sq_of) {
    return tr_sq >= tr_sq_of * (1.0 - kCauchySchwarzSlack) - 1e-300;
}

// The nine-term conditional expectation, shared by tiers 1 and 2. Inputs are
// the (expected) traces of A^t A and B^t B combinations; k = m - p.
double assemble_expectation(double c, double noise, double k, double e_tr_ata,
                            double e_tr_ata_sq, double e_tr_ata_sq_of, double e_tr_btb,
                            double e_tr_btb_sq, double e_tr_btb_sq_of, double e_tr_btaatb,
                            double e_tr_ata_tr_btb) {
    const double c2 = c * c;
    const double c4 = c2 * c2;
    const double s2 = noise * noise;
    const double s4 = s2 * s2;
    const double bracket = c4 * e_tr_ata_sq + 2.0 * c4 * e_tr_ata_sq_of +
                           s4 * e_tr_btb_sq + 2.0 * s4 * e_tr_btb_sq_of + 2.0 * s4 * k +
                           2.0 * c2 * s2 * e_tr_ata_tr_btb + 4.0 * c2 * s2 * e_tr_btaatb +
                           4.0 * c2 * s2 * e_tr_ata + 4.0 * s4 * e_tr_btb;
    return bracket / (k * k);
}

}  // namespace

bool TraceSummary::cauchy_schwarz_ok() const {
    return dominates(tr_AtA_sq, tr_AtA_sq_of) && dominates(tr_BtB_sq, tr_BtB_sq_of);
}

bool TrainTraceSummary::cauchy_schwarz_ok() const {
    return dominates(t1 * t1, t2) && dominates(t3 * t3, t4);
}

TraceSummary compute_trace_summary(const GaussianSample& x, int p, double alpha) {
    const int m = static_cast<int>(x.rows());
    const int n = static_cast<int>(x.cols());
    require_valid_split(m, n, p);
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");

    const Eigen::MatrixXd w = gram(x.topRows(p));
    const Eigen::MatrixXd mt = gram(x.bottomRows(m - p));
    const Eigen::MatrixXd g = shifted_inverse(w, alpha);
    const Eigen::MatrixXd gmg = g * mt * g;

    const double a2 = alpha * alpha;
    TraceSummary s;
    s.tr_AtA = a2 * gmg.trace();
    s.tr_AtA_sq = s.tr_AtA * s.tr_AtA;
    s.tr_AtA_sq_of = a2 * a2 * (gmg * gmg).trace();
    s.tr_BtB = (gmg * w).trace();
    s.tr_BtB_sq = s.tr_BtB * s.tr_BtB;
    s.tr_BtB_sq_of = (gmg * w * gmg * w).trace();
    s.tr_BtAAtB = a2 * (gmg * gmg * w).trace();
    return s;
}

TrainTraceSummary compute_train_trace_summary(const GaussianSample& x_train,
                                              const SpdMatrix& sigma, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
    const double p = static_cast<double>(x_train.rows());
    const Eigen::MatrixXd w = gram(x_train);
    const Eigen::MatrixXd g = shifted_inverse(w, alpha);
    const Eigen::MatrixXd sgg = sigma.matrix() * g * g;
    const Eigen::MatrixXd shh = p * (sigma.matrix() * g * w * g);

    TrainTraceSummary t;
    t.t1 = sgg.trace();
    t.t2 = (sgg * sgg).trace();
    t.t3 = shh.trace();
    t.t4 = (shh * shh).trace();
    t.t5 = (sgg * shh).trace();
    return t;
}

double im_tier1_given_x(const GaussianSample& x, const ExperimentConfig& config, int p) {
    const int m = static_cast<int>(x.rows());
    const TraceSummary s = compute_trace_summary(x, p, config.alpha);
    const double k = static_cast<double>(m - p);
    return assemble_expectation(config.c, config.sigma, k, s.tr_AtA, s.tr_AtA_sq,
                                s.tr_AtA_sq_of, s.tr_BtB, s.tr_BtB_sq, s.tr_BtB_sq_of,
                                s.tr_BtAAtB, s.tr_AtA * s.tr_BtB);
}

double im_tier2_given_train(const GaussianSample& x_train, const ExperimentConfig& config,
                            const SpdMatrix& sigma, int p, int m) {
    require_valid_split(m, static_cast<int>(x_train.cols()), p);
    if (x_train.rows() != p) throw std::invalid_argument("x_train must have p rows");
    const TrainTraceSummary t = compute_train_trace_summary(x_train, sigma, config.alpha);

    const double k = static_cast<double>(m - p);
    const double dp = static_cast<double>(p);
    const double a2 = config.alpha * config.alpha;
    const double a4 = a2 * a2;

    const double e_tr_ata = a2 * k * t.t1;
    const double e_tr_ata_sq = a4 * (k * k * t.t1 * t.t1 + 2.0 * k * t.t2);
    const double e_tr_ata_sq_of = a4 * (k * t.t1 * t.t1 + k * (k + 1.0) * t.t2);
    const double e_tr_btb = k * t.t3 / dp;
    const double e_tr_btb_sq = (k * k * t.t3 * t.t3 + 2.0 * k * t.t4) / (dp * dp);
    const double e_tr_btb_sq_of = (k * t.t3 * t.t3 + k * (k + 1.0) * t.t4) / (dp * dp);
    const double e_tr_btaatb = a2 * (k * t.t1 * t.t3 + k * (k + 1.0) * t.t5) / dp;
    const double e_tr_ata_tr_btb = a2 * (k * k * t.t1 * t.t3 + 2.0 * k * t.t5) / dp;

    return assemble_expectation(config.c, config.sigma, k, e_tr_ata, e_tr_ata_sq,
                                e_tr_ata_sq_of, e_tr_btb, e_tr_btb_sq, e_tr_btb_sq_of,
                                e_tr_btaatb, e_tr_ata_tr_btb);
}

ImPointEstimate im_tier0(const ExperimentConfig& config, const SpdMatrix& sigma, int p,
                         long trials, const RngSeed& seed) {
    require_valid_split(config.m, config.n, p);
    if (trials < 100) throw std::invalid_argument("trials must be >= 100");

    const std::uint64_t sx = substream(seed.stream_id, streams::kTier0X);
    const std::uint64_t sb = substream(seed.stream_id, streams::kTier0Coef);
    const std::uint64_t se = substream(seed.stream_id, streams::kTier0Noise);
    const int m = config.m;
    const double s2 = config.sigma * config.sigma;

    Welford acc;
    for (long t = 0; t < trials; ++t) {
        const auto trial = static_cast<std::uint64_t>(t);
        const GaussianSample x =
            sample_gaussian_rows(m, sigma, RngSeed{seed.master_seed, sx, trial});
        ModelParams params;
        params.c = config.c;
        params.sigma = config.sigma;
        params.b = config.c > 0.0
                       ? (config.c *
                          sample_standard_normal(config.n, RngSeed{seed.master_seed, sb, trial}))
                             .eval()
                       : Eigen::VectorXd::Zero(config.n).eval();
        params.epsilon = sample_standard_normal(m, RngSeed{seed.master_seed, se, trial});
        const Eigen::VectorXd y = params.response(x);
        const RidgeFit fit = ridge_fit(x.topRows(p), y.head(p), config.alpha);
        const double mse = test_mean_squared_error(x.bottomRows(m - p), y.tail(m - p), fit);
        const double dev = mse - s2;
        acc.add(dev * dev);
    }

    ImPointEstimate est;
    est.p = p;
    est.m = m;
    est.mean = acc.mean;
    est.stderr_ = acc.stderr_();
    est.trials = trials;
    est.tier = Tier::Tier0;
    return est;
}

ImPointEstimate im_point(const ExperimentConfig& config, const SpdMatrix& sigma, int p,
                         Tier tier, long trials, const RngSeed& seed) {
    if (tier == Tier::Tier0) return im_tier0(config, sigma, p, trials, seed);
    require_valid_split(config.m, config.n, p);
    if (trials < 100) throw std::invalid_argument("trials must be >= 100");

    Welford acc;
    if (tier == Tier::Tier1) {
        const std::uint64_t sx = substream(seed.stream_id, streams::kTier1X);
        for (long t = 0; t < trials; ++t) {
            const GaussianSample x = sample_gaussian_rows(
                config.m, sigma, RngSeed{seed.master_seed, sx, static_cast<std::uint64_t>(t)});
            acc.add(im_tier1_given_x(x, config, p));
        }
    } else {
        const std::uint64_t sx = substream(seed.stream_id, streams::kTier2Train);
        for (long t = 0; t < trials; ++t) {
            const GaussianSample x_train = sample_gaussian_rows(
                p, sigma, RngSeed{seed.master_seed, sx, static_cast<std::uint64_t>(t)});
            acc.add(im_tier2_given_train(x_train, config, sigma, p, config.m));
        }
    }

    ImPointEstimate est;
    est.p = p;
    est.m = config.m;
    est.mean = acc.mean;
    est.stderr_ = acc.stderr_();
    est.trials = trials;
    est.tier = tier;
    return est;
}

SplitCurve im_curve(const ExperimentConfig& config, const SpdMatrix& sigma, int p_min,
                    int p_max, int step, Tier tier, long trials, const RngSeed& seed,
                    int workers) {
    if (p_min < config.n + 2 || p_max > config.m - 1 || p_min >= p_max) {
        throw std::invalid_argument("invalid-range: need n + 2 <= p_min < p_max <= m - 1");
    }
    if (step < 1) throw std::invalid_argument("invalid-range: step must be >= 1");

    std::vector<int> grid;
    for (int p = p_min; p <= p_max; p += step) grid.push_back(p);

    SplitCurve curve;
    curve.m = config.m;
    curve.n = config.n;
    curve.c = config.c;
    curve.sigma = config.sigma;
    curve.alpha = config.alpha;
    curve.tier = tier;
    curve.trials = trials;
    curve.points.resize(grid.size());

    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    workers = std::min<int>(workers, static_cast<int>(grid.size()));

    // Each grid point derives its own stream from p, so the estimate is a
    // pure function of (config, seed, p) no matter which worker computes it.
    auto compute_point = [&](std::size_t i) {
        const int p = grid[i];
        const RngSeed point_seed{seed.master_seed,
                                 substream(seed.stream_id, static_cast<std::uint64_t>(p)),
                                 0};
        curve.points[i] = im_point(config, sigma, p, tier, trials, point_seed);
    };

    if (workers == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) compute_point(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < grid.size();
                     i = next.fetch_add(1)) {
                    compute_point(i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    return curve;
}

int auto_smoothing_window(int grid_points) {
    return std::max(2, grid_points / 20);
}

std::vector<double> smoothed_means(const SplitCurve& curve, int window) {
    if (window < 0) throw std::invalid_argument("window must be >= 0");
    const std::size_t count = curve.points.size();
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = curve.points[i].mean;
    if (window == 0 || count < 3) return out;

    std::vector<double> smoothed(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t lo = i >= static_cast<std::size_t>(window) ? i - window : 0;
        const std::size_t hi = std::min(count - 1, i + static_cast<std::size_t>(window));
        const std::size_t len = hi - lo + 1;
        if (len < 3) {
            smoothed[i] = out[i];
            continue;
        }
        // A constant window must stay constant; the fit would add roundoff
        // and break exact tie-breaking on flat curves.
        const auto window_begin = out.begin() + static_cast<std::ptrdiff_t>(lo);
        const auto window_end = out.begin() + static_cast<std::ptrdiff_t>(hi + 1);
        const auto [min_it, max_it] = std::minmax_element(window_begin, window_end);
        if (*min_it == *max_it) {
            smoothed[i] = out[i];
            continue;
        }
        // The IM curve spans orders of magnitude with roughly multiplicative
        // noise, so the quadratic is fit to log values whenever the window is
        // strictly positive; a linear-scale fit undershoots badly on the
        // steep flanks. Nonpositive windows fall back to the linear scale.
        const bool log_scale = *min_it > 0.0;
        Eigen::MatrixXd design(len, 3);
        Eigen::VectorXd rhs(len);
        const double center = static_cast<double>(curve.points[i].p);
        for (std::size_t j = 0; j < len; ++j) {
            const double dx = static_cast<double>(curve.points[lo + j].p) - center;
            design(j, 0) = 1.0;
            design(j, 1) = dx;
            design(j, 2) = dx * dx;
            rhs[j] = log_scale ? std::log(out[lo + j]) : out[lo + j];
        }
        const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(rhs);
        smoothed[i] = log_scale ? std::exp(coef[0]) : coef[0];
    }
    return smoothed;
}

SplitRecommendation empirical_argmin(const SplitCurve& curve, int window) {
    if (curve.points.empty()) throw std::invalid_argument("curve is empty");

    const auto argmin = [&](const std::vector<double>& values) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < values.size(); ++i) {
            if (values[i] < values[best]) best = i;  // ties keep the smaller p
        }
        return curve.points[best].p;
    };

    std::vector<double> raw(curve.points.size());
    for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = curve.points[i].mean;

    SplitRecommendation rec;
    rec.m = curve.m;
    rec.n = curve.n;
    rec.p_formula = asymptotic_split(static_cast<double>(curve.m),
                                     static_cast<double>(curve.n));
    rec.p_root = leading_poly_root(static_cast<double>(curve.m),
                                   static_cast<double>(curve.n));
    rec.p_empirical = std::make_pair(argmin(raw), argmin(smoothed_means(curve, window)));
    rec.p_final = recommend_integer_split(curve.m, curve.n, SplitSource::Formula);
    return rec;
}

}  // namespace ridgesplit
