#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ridgesplit/config.hpp"
#include "ridgesplit/integrity.hpp"
#include "ridgesplit/solver.hpp"
#include "ridgesplit/wishart.hpp"

namespace ridgesplit {

// ---------------------------------------------------------------------------
// IM-curve sweep: one curve CSV plus a recommendation CSV.

struct SweepResult {
    SplitCurve curve;
    SplitRecommendation recommendation;
    int smoothing_window = 0;
    std::string curve_path;
    std::string recommendation_path;
};

/// Runs the configured IM sweep and writes `im_curve.csv` and
/// `recommendation.csv` under `out_dir`. Output bytes depend only on the
/// config (including seed), never on worker count or timing.
SweepResult run_sweep(const ExperimentConfig& config, const std::string& out_dir);

// ---------------------------------------------------------------------------
// Moment verification report.

struct MomentVerifyOptions {
    int n = 3;
    std::vector<int> p_ladder = {50, 100, 200, 400};
    double alpha = 2.0;
    long trials = 100000;
    std::uint64_t seed = 0;
    CovarianceScheme scheme = CovarianceScheme::Random;
    long bounds_instances = 10000;
};

struct MomentReportRow {
    std::string kind;
    int p = 0;
    double estimate = 0.0;
    double stderr_ = 0.0;
    double reference = 0.0;
    int error_order = 0;
    std::string check;
    bool passed = false;
};

struct MomentReport {
    std::vector<MomentReportRow> rows;
    long bounds_instances = 0;
    long bounds_violations = 0;
    bool all_passed = false;
};

/// Estimates every moment kind over the p ladder and checks each against its
/// analytic reference:
///   - P1_1 (exact reference): |estimate - reference| <= 3 stderr at every p.
///   - nonzero references with neglected O(p^-k) terms: the implied constant
///     C_p = p^k * max(0, |dev| - 3 stderr) must not grow up the ladder
///     (the last point may not exceed 1.5x the max of the earlier ones or the
///     local noise floor 9 stderr p^k, whichever is larger).
///   - zero references: least-squares log-log slope within +-0.5 of -k.
/// Also sweeps `bounds_instances` random instances of the deterministic
/// Lemma-2/Lemma-3 inequalities, which must hold every single time.
MomentReport verify_moments(const MomentVerifyOptions& options);

void write_moment_report_csv(const MomentReport& report, const std::string& path);

// ---------------------------------------------------------------------------
// Figure reproduction: empirical p*(m) in red against the two-term formula
// in blue, one SVG + CSV per panel.

struct FigureOptions {
    std::vector<int> panels = {1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<int> m_ladder = {100, 200, 400, 700, 1000};
    long trials = 10000;
    Tier tier = Tier::Tier1;
    std::uint64_t seed = 0;
    int workers = 1;
    int p_step = 0;  // 0 = auto per m
    std::string out_dir = ".";
};

struct PanelPoint {
    int m = 0;
    int p_empirical_raw = 0;
    int p_empirical_smoothed = 0;
    double p_formula = 0.0;
};

struct PanelResult {
    int panel = 0;
    int n = 0;
    double sigma = 0.0;
    double alpha = 0.0;
    std::vector<PanelPoint> points;
    std::string svg_path;
    std::string csv_path;
};

/// Panel parameter grid from the figure captions: odd panels n = 5, even
/// n = 10; panels 1-2 and 5-6 sigma = 0.1, panels 3-4 and 7-8 sigma = 0.2;
/// panels 1-4 alpha = 2, panels 5-8 alpha = 4; c = 0.1 throughout.
void panel_parameters(int panel, int& n, double& sigma, double& alpha);

std::vector<PanelResult> reproduce_figures(const FigureOptions& options);

/// Default grid step for a figure-scale sweep over [n+2, m-1].
int auto_grid_step(int m, int n);

}  // namespace ridgesplit
