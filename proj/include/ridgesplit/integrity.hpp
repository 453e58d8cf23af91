#pragma once

#include <vector>

#include "ridgesplit/config.hpp"
#include "ridgesplit/rng.hpp"
#include "ridgesplit/sampling.hpp"
#include "ridgesplit/solver.hpp"

namespace ridgesplit {

/// One Monte Carlo estimate of the integrity metric at a single split size.
struct ImPointEstimate {
    int p = 0;
    int m = 0;
    double mean = 0.0;
    double stderr_ = 0.0;
    long trials = 0;
    Tier tier = Tier::Tier0;
};

/// Traces of A = -alpha X_test (X_train^t X_train + alpha I)^{-1} and
/// B = X_test (X_train^t X_train + alpha I)^{-1} X_train^t for one realized
/// split, reduced to n x n Gram algebra. tr(.)^2 always dominates tr((.)^2)
/// by Cauchy-Schwarz on eigenvalues.
struct TraceSummary {
    double tr_AtA = 0.0;
    double tr_AtA_sq_of = 0.0;  // tr((A^t A)^2)
    double tr_AtA_sq = 0.0;     // tr(A^t A)^2
    double tr_BtB = 0.0;
    double tr_BtB_sq_of = 0.0;
    double tr_BtB_sq = 0.0;
    double tr_BtAAtB = 0.0;

    bool cauchy_schwarz_ok() const;
};

/// Train-block-only traces with G = (X_train^t X_train + alpha I)^{-1} and
/// H = p^{1/2} G X_train^t:
///   t1 = tr(Sigma G G^t)   t2 = tr((Sigma G G^t)^2)
///   t3 = tr(Sigma H H^t)   t4 = tr((Sigma H H^t)^2)
///   t5 = tr(Sigma G G^t Sigma H H^t)
struct TrainTraceSummary {
    double t1 = 0.0;
    double t2 = 0.0;
    double t3 = 0.0;
    double t4 = 0.0;
    double t5 = 0.0;

    bool cauchy_schwarz_ok() const;
};

TraceSummary compute_trace_summary(const GaussianSample& x, int p, double alpha);
TrainTraceSummary compute_train_trace_summary(const GaussianSample& x_train,
                                              const SpdMatrix& sigma, double alpha);

/// Tier 0: averages ((1/(m-p)) ||X_test b_hat - y_test||^2 - sigma^2)^2 over
/// fresh (X, b, eps) draws, with b ~ N(0, c^2 I) redrawn every trial.
ImPointEstimate im_tier0(const ExperimentConfig& config, const SpdMatrix& sigma, int p,
                         long trials, const RngSeed& seed);

/// Tier 1: the exact conditional expectation of the tier-0 statistic given
/// the full m x n design matrix.
double im_tier1_given_x(const GaussianSample& x, const ExperimentConfig& config, int p);

/// Tier 2: tier 1 with every test-block trace replaced by its conditional
/// expectation given the training block.
double im_tier2_given_train(const GaussianSample& x_train, const ExperimentConfig& config,
                            const SpdMatrix& sigma, int p, int m);

/// Monte Carlo point estimate at the chosen tier (tier 0 draws full data,
/// tiers 1/2 average their conditional values over design draws).
ImPointEstimate im_point(const ExperimentConfig& config, const SpdMatrix& sigma, int p,
                         Tier tier, long trials, const RngSeed& seed);

/// The integrity metric over a p grid; the object whose argmin is p*(m).
struct SplitCurve {
    int m = 0;
    int n = 0;
    double c = 0.0;
    double sigma = 0.0;
    double alpha = 0.0;
    Tier tier = Tier::Tier0;
    long trials = 0;
    std::vector<ImPointEstimate> points;
};

/// One estimate per grid point, each with independently derived seeds.
/// Grid points may be computed by `workers` threads; output is identical for
/// any worker count.
SplitCurve im_curve(const ExperimentConfig& config, const SpdMatrix& sigma, int p_min,
                    int p_max, int step, Tier tier, long trials, const RngSeed& seed,
                    int workers = 1);

/// Smoothed means of a curve: each point replaced by a local quadratic fit
/// over the 2*window+1 surrounding grid points (window 0 = raw means).
std::vector<double> smoothed_means(const SplitCurve& curve, int window);

/// Raw and locally-smoothed argmin of the curve, reported beside the
/// closed-form values. Ties break toward smaller p.
SplitRecommendation empirical_argmin(const SplitCurve& curve, int window);

int auto_smoothing_window(int grid_points);

}  // namespace ridgesplit
