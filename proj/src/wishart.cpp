#include "ridgesplit/wishart.hpp"

#include <cmath>
#include <stdexcept>

namespace ridgesplit {

std::string to_string(MomentKind kind) {
    switch (kind) {
        case MomentKind::P1_1: return "P1_1";
        case MomentKind::P1_2: return "P1_2";
        case MomentKind::P1_3: return "P1_3";
        case MomentKind::L5_5: return "L5_5";
        case MomentKind::L5_6: return "L5_6";
        case MomentKind::L5_7: return "L5_7";
        case MomentKind::L5_8: return "L5_8";
        case MomentKind::L5_9: return "L5_9";
        case MomentKind::L5_10: return "L5_10";
        case MomentKind::L5_11: return "L5_11";
        case MomentKind::L5_12: return "L5_12";
    }
    throw std::logic_error("unreachable moment kind");
}

MomentKind moment_kind_from_string(const std::string& name) {
    for (MomentKind kind : kAllMomentKinds) {
        if (to_string(kind) == name) return kind;
    }
    throw std::invalid_argument("unknown moment kind '" + name + "'");
}

int moment_scale_power(MomentKind kind) {
    switch (kind) {
        case MomentKind::P1_1:
        case MomentKind::P1_2:
        case MomentKind::P1_3:
        case MomentKind::L5_5:
        case MomentKind::L5_6:
        case MomentKind::L5_7: return 0;
        case MomentKind::L5_8:
        case MomentKind::L5_11:
        case MomentKind::L5_12: return 1;
        case MomentKind::L5_9:
        case MomentKind::L5_10: return 2;
    }
    throw std::logic_error("unreachable moment kind");
}

namespace {

double evaluate_moment(MomentKind kind, const Eigen::MatrixXd& x, double alpha,
                       const Eigen::MatrixXd& sigma, double p) {
    const Eigen::Index n = x.cols();
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    w.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose());
    w = w.selfadjointView<Eigen::Lower>();

    switch (kind) {
        case MomentKind::P1_1:
        case MomentKind::P1_2:
        case MomentKind::P1_3: {
            const Eigen::MatrixXd m = sigma * w.llt().solve(Eigen::MatrixXd::Identity(n, n));
            const double tr = m.trace();
            if (kind == MomentKind::P1_1) return tr;
            if (kind == MomentKind::P1_2) return tr * tr;
            return (m * m).trace();
        }
        default: break;
    }

    Eigen::MatrixXd shifted = w;
    shifted.diagonal().array() += alpha;
    const Eigen::MatrixXd r = shifted.llt().solve(Eigen::MatrixXd::Identity(n, n));
    const Eigen::MatrixXd sr2 = sigma * r * r;      // Sigma (W + aI)^{-2}
    const Eigen::MatrixXd swr2 = sigma * w * r * r; // Sigma W (W + aI)^{-2}

    switch (kind) {
        case MomentKind::L5_5: return sr2.trace();
        case MomentKind::L5_6: return (sr2 * sr2).trace();
        case MomentKind::L5_7: {
            const double tr = sr2.trace();
            return tr * tr;
        }
        case MomentKind::L5_8: return p * swr2.trace();
        case MomentKind::L5_9: return p * p * (swr2 * swr2).trace();
        case MomentKind::L5_10: {
            const double tr = swr2.trace();
            return p * p * tr * tr;
        }
        case MomentKind::L5_11: return p * (sr2 * swr2).trace();
        case MomentKind::L5_12: return p * sr2.trace() * swr2.trace();
        default: break;
    }
    throw std::logic_error("unreachable moment kind");
}

}  // namespace

MomentEstimate mc_trace_moment(MomentKind kind, int n, int p, double alpha,
                               const SpdMatrix& sigma, long trials, const RngSeed& seed) {
    if (p <= n + 1) {
        throw std::invalid_argument("degenerate-moment: need p >= n + 2 so p - n - 1 > 0");
    }
    if (trials < 100) throw std::invalid_argument("trials must be >= 100");
    if (sigma.dim() != n) throw std::invalid_argument("sigma dimension mismatch");
    if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");

    // X draws share a per-p stream so ladder points are mutually independent.
    const std::uint64_t stream = substream(seed.stream_id ^ streams::kWishartTrial,
                                           static_cast<std::uint64_t>(p));
    double mean = 0.0;
    double m2 = 0.0;
    for (long t = 0; t < trials; ++t) {
        const GaussianSample x = sample_gaussian_rows(
            p, sigma, RngSeed{seed.master_seed, stream, static_cast<std::uint64_t>(t)});
        const double value = evaluate_moment(kind, x, alpha, sigma.matrix(),
                                             static_cast<double>(p));
        const double delta = value - mean;
        mean += delta / static_cast<double>(t + 1);
        m2 += delta * (value - mean);
    }
    MomentEstimate est;
    est.mean = mean;
    est.stderr_ = trials > 1 ? std::sqrt(m2 / static_cast<double>(trials - 1) /
                                         static_cast<double>(trials))
                             : 0.0;
    est.trials = trials;
    est.scale_power = moment_scale_power(kind);
    return est;
}

ReferenceValue analytic_reference(MomentKind kind, int n, int p) {
    if (p <= n + 1) {
        throw std::invalid_argument("degenerate-moment: need p >= n + 2 so p - n - 1 > 0");
    }
    const double dn = n;
    const double dp = p;
    switch (kind) {
        case MomentKind::P1_1: return {dn / (dp - dn - 1.0), 0, true};
        case MomentKind::P1_2: return {dn * dn / (dp * dp), 3, false};
        case MomentKind::P1_3: return {dn / (dp * dp), 3, false};
        case MomentKind::L5_5: return {0.0, 2, false};
        case MomentKind::L5_6: return {0.0, 4, false};
        case MomentKind::L5_7: return {0.0, 4, false};
        case MomentKind::L5_8: return {dn * dp / (dp - dn - 1.0), 1, false};
        case MomentKind::L5_9: return {dn, 1, false};
        case MomentKind::L5_10: return {dn * dn, 1, false};
        case MomentKind::L5_11: return {0.0, 2, false};
        case MomentKind::L5_12: return {0.0, 2, false};
    }
    throw std::logic_error("unreachable moment kind");
}

bool deterministic_bounds_check(const GaussianSample& x, double alpha,
                                const SpdMatrix& s, const SpdMatrix& t) {
    if (!(alpha > 0.0)) throw std::invalid_argument("invalid-input: alpha must be > 0");
    const Eigen::Index n = x.cols();
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    w.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose());
    w = w.selfadjointView<Eigen::Lower>();

    // tr((I + alpha W)^{-1}) <= n
    Eigen::MatrixXd a1 = alpha * w;
    a1.diagonal().array() += 1.0;
    const double tr1 = a1.llt().solve(Eigen::MatrixXd::Identity(n, n)).trace();

    // tr((W + alpha I)^{-1}) <= n / alpha
    Eigen::MatrixXd a2 = w;
    a2.diagonal().array() += alpha;
    const double tr2 = a2.llt().solve(Eigen::MatrixXd::Identity(n, n)).trace();

    if (s.dim() != t.dim()) throw std::invalid_argument("invalid-input: S and T dimensions differ");
    const double tr_st = (s.matrix() * t.matrix()).trace();

    const double slack = 1e-9;  // pure roundoff allowance on exact inequalities
    const double dn = static_cast<double>(n);
    return tr1 <= dn * (1.0 + slack) && tr2 <= dn / alpha * (1.0 + slack) &&
           tr_st <= s.matrix().trace() * t.matrix().trace() * (1.0 + slack);
}

double log_log_slope(const std::vector<int>& p_ladder, const std::vector<double>& means) {
    if (p_ladder.size() != means.size() || p_ladder.size() < 2) {
        throw std::invalid_argument("slope needs matching ladders with >= 2 points");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double count = static_cast<double>(p_ladder.size());
    for (std::size_t i = 0; i < p_ladder.size(); ++i) {
        if (!(means[i] > 0.0)) {
            throw std::invalid_argument("slope requires strictly positive means");
        }
        const double lx = std::log(static_cast<double>(p_ladder[i]));
        const double ly = std::log(means[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

}  // namespace ridgesplit
