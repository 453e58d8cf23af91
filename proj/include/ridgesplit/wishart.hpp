#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "ridgesplit/rng.hpp"
#include "ridgesplit/sampling.hpp"

namespace ridgesplit {

/// Trace functionals of (X, Sigma, alpha) with W = X^t X and R = (W + alpha I)^{-1}:
///
///   P1_1   tr(Sigma W^{-1})                       P1_2   tr(Sigma W^{-1})^2
///   P1_3   tr((Sigma W^{-1})^2)
///   L5_5   tr(Sigma R^2)                          L5_6   tr((Sigma R^2)^2)
///   L5_7   tr(Sigma R^2)^2
///   L5_8   p   * tr(Sigma W R^2)                  L5_9   p^2 * tr((Sigma W R^2)^2)
///   L5_10  p^2 * tr(Sigma W R^2)^2
///   L5_11  p   * tr(Sigma R^2 Sigma W R^2)
///   L5_12  p   * tr(Sigma R^2) * tr(Sigma W R^2)
enum class MomentKind {
    P1_1,
    P1_2,
    P1_3,
    L5_5,
    L5_6,
    L5_7,
    L5_8,
    L5_9,
    L5_10,
    L5_11,
    L5_12,
};

constexpr MomentKind kAllMomentKinds[] = {
    MomentKind::P1_1, MomentKind::P1_2, MomentKind::P1_3, MomentKind::L5_5,
    MomentKind::L5_6, MomentKind::L5_7, MomentKind::L5_8, MomentKind::L5_9,
    MomentKind::L5_10, MomentKind::L5_11, MomentKind::L5_12,
};

std::string to_string(MomentKind kind);
MomentKind moment_kind_from_string(const std::string& name);

/// Power of p pre-multiplying the estimand (0, 1 or 2).
int moment_scale_power(MomentKind kind);

struct MomentEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;  // sample standard deviation / sqrt(trials)
    long trials = 0;
    int scale_power = 0;
};

/// Large-p reference for a moment. `exact` only for P1_1; otherwise the
/// neglected term is O(p^-error_order) relative to the stated scaling.
/// A zero value means "decays at the stated order": only the order is checkable.
struct ReferenceValue {
    double value = 0.0;
    int error_order = 0;
    bool exact = false;
};

/// Monte Carlo mean and standard error of one trace functional over `trials`
/// independent p x n Gaussian samples. Deterministic in `seed`; each trial
/// draws through its own derived stream, so any evaluation order agrees.
MomentEstimate mc_trace_moment(MomentKind kind, int n, int p, double alpha,
                               const SpdMatrix& sigma, long trials, const RngSeed& seed);

/// Analytic reference for `kind` at (n, p). Requires p >= n + 2.
ReferenceValue analytic_reference(MomentKind kind, int n, int p);

/// Checks the three deterministic trace inequalities on one realized sample:
///   tr((I + alpha X^t X)^{-1}) <= n
///   tr((X^t X + alpha I)^{-1}) <= n / alpha
///   tr(S T) <= tr(S) tr(T)     for SPD S, T.
/// These are theorems; false signals a linear-algebra bug, not bad luck.
bool deterministic_bounds_check(const GaussianSample& x, double alpha,
                                const SpdMatrix& s, const SpdMatrix& t);

/// Least-squares slope of log(mean) against log(p) over a p ladder, used to
/// confirm the decay order of the zero-reference moments.
double log_log_slope(const std::vector<int>& p_ladder, const std::vector<double>& means);

}  // namespace ridgesplit
