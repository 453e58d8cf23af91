#include "ridgesplit/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "ridgesplit/csv.hpp"
#include "ridgesplit/svg.hpp"

namespace ridgesplit {

namespace {

constexpr std::uint64_t kSweepStream = 0x53;
constexpr std::uint64_t kFigureStream = 0x46;
constexpr std::uint64_t kFigureCovariance = 0x46C0;

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& config, const std::string& out_dir) {
    validate(config);
    std::filesystem::create_directories(out_dir);

    const SpdMatrix sigma = materialize_covariance(config);
    const int p_min = config.grid_p_min();
    const int p_max = config.grid_p_max();

    SweepResult result;
    result.curve = im_curve(config, sigma, p_min, p_max, config.p_grid.step, config.tier,
                            config.trials, RngSeed{config.seed, kSweepStream, 0},
                            config.workers);
    result.smoothing_window =
        config.smoothing_window >= 0
            ? config.smoothing_window
            : auto_smoothing_window(static_cast<int>(result.curve.points.size()));
    result.recommendation = empirical_argmin(result.curve, result.smoothing_window);

    result.curve_path = join_path(out_dir, "im_curve.csv");
    CsvWriter curve_csv(result.curve_path);
    curve_csv.write_row({"m", "n", "c", "sigma", "alpha", "tier", "trials", "seed", "p",
                         "im_mean", "im_stderr"});
    for (const ImPointEstimate& pt : result.curve.points) {
        curve_csv.write_row({CsvWriter::cell(config.m), CsvWriter::cell(config.n),
                             CsvWriter::cell(config.c), CsvWriter::cell(config.sigma),
                             CsvWriter::cell(config.alpha), to_string(config.tier),
                             CsvWriter::cell(config.trials), CsvWriter::cell(config.seed),
                             CsvWriter::cell(pt.p), CsvWriter::cell(pt.mean),
                             CsvWriter::cell(pt.stderr_)});
    }

    result.recommendation_path = join_path(out_dir, "recommendation.csv");
    CsvWriter rec_csv(result.recommendation_path);
    rec_csv.write_row({"m", "n", "p_formula", "p_root", "p_empirical_raw",
                       "p_empirical_smoothed", "p_final"});
    const SplitRecommendation& rec = result.recommendation;
    rec_csv.write_row({CsvWriter::cell(rec.m), CsvWriter::cell(rec.n),
                       CsvWriter::cell(rec.p_formula), CsvWriter::cell(rec.p_root.value()),
                       CsvWriter::cell(rec.p_empirical->first),
                       CsvWriter::cell(rec.p_empirical->second),
                       CsvWriter::cell(rec.p_final)});
    return result;
}

MomentReport verify_moments(const MomentVerifyOptions& options) {
    if (options.p_ladder.size() < 2) {
        throw std::invalid_argument("p ladder needs at least 2 points");
    }
    std::vector<int> ladder = options.p_ladder;
    std::sort(ladder.begin(), ladder.end());
    for (int p : ladder) {
        if (p < options.n + 2) {
            throw std::invalid_argument("degenerate-moment: every ladder p must be >= n + 2");
        }
    }

    const SpdMatrix sigma = sample_spd_covariance(
        options.n, options.scheme, RngSeed{options.seed, streams::kCovariance, 0});

    MomentReport report;
    report.all_passed = true;

    for (MomentKind kind : kAllMomentKinds) {
        std::vector<MomentReportRow> rows;
        std::vector<double> means;
        for (int p : ladder) {
            const MomentEstimate est = mc_trace_moment(kind, options.n, p, options.alpha,
                                                       sigma, options.trials,
                                                       RngSeed{options.seed, 0, 0});
            const ReferenceValue ref = analytic_reference(kind, options.n, p);
            MomentReportRow row;
            row.kind = to_string(kind);
            row.p = p;
            row.estimate = est.mean;
            row.stderr_ = est.stderr_;
            row.reference = ref.value;
            row.error_order = ref.error_order;
            rows.push_back(row);
            means.push_back(est.mean);
        }

        const ReferenceValue ref0 = analytic_reference(kind, options.n, ladder.front());
        if (ref0.exact) {
            for (auto& row : rows) {
                row.check = "3stderr";
                row.passed = std::abs(row.estimate - row.reference) <= 3.0 * row.stderr_;
            }
        } else if (ref0.value != 0.0) {
            // Implied constant of the neglected O(p^-k) term; it must not grow.
            std::vector<double> implied;
            for (const auto& row : rows) {
                const double excess =
                    std::max(0.0, std::abs(row.estimate - row.reference) - 3.0 * row.stderr_);
                implied.push_back(excess * std::pow(static_cast<double>(row.p),
                                                    static_cast<double>(row.error_order)));
            }
            const double prev_max =
                *std::max_element(implied.begin(), implied.end() - 1);
            const auto& last = rows.back();
            const double noise_floor = 9.0 * last.stderr_ *
                                       std::pow(static_cast<double>(last.p),
                                                static_cast<double>(last.error_order));
            const bool ok = implied.back() <= std::max(1.5 * prev_max, noise_floor);
            for (auto& row : rows) {
                row.check = "decay-fit";
                row.passed = ok;
            }
        } else {
            const int order = ref0.error_order;
            const double slope = log_log_slope(ladder, means);
            const bool ok = slope >= -(order + 0.5) && slope <= -(order - 0.5);
            for (auto& row : rows) {
                row.check = "slope[" + std::to_string(-(order + 0.5)).substr(0, 4) + "," +
                            std::to_string(-(order - 0.5)).substr(0, 4) + "]";
                row.passed = ok;
            }
        }
        for (const auto& row : rows) {
            report.all_passed = report.all_passed && row.passed;
            report.rows.push_back(row);
        }
    }

    // Deterministic Lemma 2 / Lemma 3 sweep; any violation is a bug.
    const double alphas[] = {0.1, 2.0, 100.0};
    report.bounds_instances = options.bounds_instances;
    for (long i = 0; i < options.bounds_instances; ++i) {
        Rng dims(RngSeed{options.seed, streams::kBoundsCheck,
                         static_cast<std::uint64_t>(i)});
        const int bn = 1 + static_cast<int>(dims.next_u64() % 6);
        const int bp = 1 + static_cast<int>(dims.next_u64() % 25);
        const double alpha = alphas[i % 3];
        const std::uint64_t base = substream(streams::kBoundsCheck, static_cast<std::uint64_t>(i));
        const SpdMatrix cov = sample_spd_covariance(bn, CovarianceScheme::Random,
                                                    RngSeed{options.seed, substream(base, 1), 0});
        const GaussianSample x =
            sample_gaussian_rows(bp, cov, RngSeed{options.seed, substream(base, 2), 0});
        const SpdMatrix s = sample_spd_covariance(bn, CovarianceScheme::Random,
                                                  RngSeed{options.seed, substream(base, 3), 0});
        const SpdMatrix t = sample_spd_covariance(bn, CovarianceScheme::Random,
                                                  RngSeed{options.seed, substream(base, 4), 0});
        if (!deterministic_bounds_check(x, alpha, s, t)) ++report.bounds_violations;
    }
    report.all_passed = report.all_passed && report.bounds_violations == 0;
    return report;
}

void write_moment_report_csv(const MomentReport& report, const std::string& path) {
    CsvWriter csv(path);
    csv.write_row({"kind", "p", "estimate", "stderr", "reference", "error_order", "check",
                   "status"});
    for (const MomentReportRow& row : report.rows) {
        csv.write_row({row.kind, CsvWriter::cell(row.p), CsvWriter::cell(row.estimate),
                       CsvWriter::cell(row.stderr_), CsvWriter::cell(row.reference),
                       CsvWriter::cell(row.error_order), row.check,
                       row.passed ? "pass" : "fail"});
    }
    csv.write_row({"Lemma2_3_bounds", CsvWriter::cell(report.bounds_instances),
                   CsvWriter::cell(static_cast<double>(report.bounds_violations)), "0", "0",
                   "0", "zero-violations",
                   report.bounds_violations == 0 ? "pass" : "fail"});
}

void panel_parameters(int panel, int& n, double& sigma, double& alpha) {
    if (panel < 1 || panel > 8) throw std::invalid_argument("panel must be in 1..8");
    n = (panel % 2 == 1) ? 5 : 10;
    sigma = (((panel - 1) / 2) % 2 == 0) ? 0.1 : 0.2;
    alpha = panel <= 4 ? 2.0 : 4.0;
}

int auto_grid_step(int m, int n) {
    const int span = (m - 1) - (n + 2);
    return std::max(1, span / 240);
}

std::vector<PanelResult> reproduce_figures(const FigureOptions& options) {
    if (options.m_ladder.empty()) throw std::invalid_argument("m ladder is empty");
    std::filesystem::create_directories(options.out_dir);

    std::vector<PanelResult> results;
    for (int panel : options.panels) {
        PanelResult res;
        res.panel = panel;
        panel_parameters(panel, res.n, res.sigma, res.alpha);

        // Panels that differ only in alpha share covariance and design draws,
        // so their red curves are a paired comparison.
        const std::uint64_t pair_tag =
            static_cast<std::uint64_t>(res.n) * 16 + (res.sigma > 0.15 ? 1 : 0);
        const SpdMatrix sigma_cov = sample_spd_covariance(
            res.n, CovarianceScheme::Random,
            RngSeed{options.seed, substream(kFigureCovariance, pair_tag), 0});

        for (int m : options.m_ladder) {
            ExperimentConfig config;
            config.m = m;
            config.n = res.n;
            config.c = 0.1;
            config.sigma = res.sigma;
            config.alpha = res.alpha;
            config.trials = options.trials;
            config.tier = options.tier;
            config.seed = options.seed;
            config.workers = options.workers;
            validate(config);

            const int step = options.p_step > 0 ? options.p_step : auto_grid_step(m, res.n);
            const std::uint64_t curve_stream = substream(
                substream(kFigureStream, pair_tag), static_cast<std::uint64_t>(m));
            const SplitCurve curve =
                im_curve(config, sigma_cov, res.n + 2, m - 1, step, options.tier,
                         options.trials, RngSeed{options.seed, curve_stream, 0},
                         options.workers);
            const int window = auto_smoothing_window(static_cast<int>(curve.points.size()));
            const SplitRecommendation rec = empirical_argmin(curve, window);

            PanelPoint point;
            point.m = m;
            point.p_empirical_raw = rec.p_empirical->first;
            point.p_empirical_smoothed = rec.p_empirical->second;
            point.p_formula = rec.p_formula;
            res.points.push_back(point);
        }

        const std::string stem = "panel-" + std::to_string(panel);
        res.csv_path = join_path(options.out_dir, stem + ".csv");
        CsvWriter csv(res.csv_path);
        csv.write_row({"panel", "m", "n", "c", "sigma", "alpha", "tier", "trials", "seed",
                       "p_empirical_raw", "p_empirical_smoothed", "p_formula"});
        for (const PanelPoint& pt : res.points) {
            csv.write_row({CsvWriter::cell(panel), CsvWriter::cell(pt.m),
                           CsvWriter::cell(res.n), CsvWriter::cell(0.1),
                           CsvWriter::cell(res.sigma), CsvWriter::cell(res.alpha),
                           to_string(options.tier), CsvWriter::cell(options.trials),
                           CsvWriter::cell(options.seed),
                           CsvWriter::cell(pt.p_empirical_raw),
                           CsvWriter::cell(pt.p_empirical_smoothed),
                           CsvWriter::cell(pt.p_formula)});
        }

        SvgSeries analytic{"two-term formula", "#1f4fbf", {}};
        SvgSeries empirical{"empirical argmin", "#c62828", {}};
        for (const PanelPoint& pt : res.points) {
            analytic.points.emplace_back(pt.m, pt.p_formula);
            empirical.points.emplace_back(pt.m, pt.p_empirical_smoothed);
        }
        res.svg_path = join_path(options.out_dir, stem + ".svg");
        char title[96];
        std::snprintf(title, sizeof(title), "Panel %d: n=%d, sigma=%.1f, alpha=%.0f, c=0.1",
                      panel, res.n, res.sigma, res.alpha);
        write_line_chart(res.svg_path, title, "m (total rows)", "p* (training rows)",
                         {analytic, empirical});

        results.push_back(std::move(res));
    }
    return results;
}

}  // namespace ridgesplit
