// Command-line front end: split recommendations, IM-curve sweeps, moment
// verification reports and figure reproduction.
//
// Exit codes: 0 = success / all checks passed, 1 = usage or runtime error,
// 2 = a verification check failed.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "ridgesplit/config.hpp"
#include "ridgesplit/experiment.hpp"
#include "ridgesplit/solver.hpp"

namespace {

using OverrideList = std::vector<std::pair<std::string, std::string>>;

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    std::string token;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',') {
            if (!token.empty()) values.push_back(std::stoi(token));
            token.clear();
        } else {
            token += text[i];
        }
    }
    return values;
}

// Accepts "1-8", "2", or "1,3,5".
std::vector<int> parse_panel_list(const std::string& text) {
    const auto dash = text.find('-');
    if (dash != std::string::npos && text.find(',') == std::string::npos) {
        const int lo = std::stoi(text.substr(0, dash));
        const int hi = std::stoi(text.substr(dash + 1));
        std::vector<int> panels;
        for (int p = lo; p <= hi; ++p) panels.push_back(p);
        return panels;
    }
    return parse_int_list(text);
}

int run_recommend(long long m, int n, const std::string& source) {
    using namespace ridgesplit;
    const SplitSource src =
        source == "root" ? SplitSource::Root : SplitSource::Formula;
    const double formula = asymptotic_split(static_cast<double>(m), static_cast<double>(n));
    const double root = leading_poly_root(static_cast<double>(m), static_cast<double>(n));
    const int final_p = recommend_integer_split(m, n, src);
    std::printf("m=%lld n=%d\n", m, n);
    std::printf("p_formula=%.6f\n", formula);
    std::printf("p_root=%.6f\n", root);
    std::printf("p_final=%d (source=%s, clamped to [n+2, m-1])\n", final_p,
                source.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace ridgesplit;

    CLI::App app{"Optimal train/test split sizing for ridge regression"};
    app.require_subcommand(1);

    // --- recommend ---------------------------------------------------------
    auto* recommend = app.add_subcommand("recommend", "closed-form split recommendation");
    long long rec_m = 0;
    int rec_n = 0;
    std::string rec_source = "formula";
    recommend->add_option("--m", rec_m, "total rows")->required();
    recommend->add_option("--n", rec_n, "feature count")->required();
    recommend->add_option("--source", rec_source, "formula|root")
        ->check(CLI::IsMember({"formula", "root"}));

    // --- im-curve ----------------------------------------------------------
    auto* im_curve_cmd = app.add_subcommand("im-curve", "sweep the integrity metric over p");
    std::string config_path;
    std::string out_dir = ".";
    im_curve_cmd->add_option("--config", config_path, "key = value config file")->required();
    im_curve_cmd->add_option("--out-dir", out_dir, "output directory");
    // Flag overrides; only flags actually passed reach the parser.
    static const char* kOverrideKeys[] = {
        "m",      "n",      "c",      "sigma",  "alpha",
        "trials", "tier",   "seed",   "p_min",  "p_max",
        "p_step", "smoothing_window", "workers", "covariance_scheme"};
    constexpr std::size_t kOverrideCount = std::size(kOverrideKeys);
    std::vector<std::pair<std::string, CLI::Option*>> override_opts;
    std::vector<std::string> override_values(kOverrideCount);
    for (std::size_t i = 0; i < kOverrideCount; ++i) {
        auto* opt = im_curve_cmd->add_option("--" + std::string(kOverrideKeys[i]),
                                             override_values[i],
                                             "override config key " +
                                                 std::string(kOverrideKeys[i]));
        override_opts.emplace_back(kOverrideKeys[i], opt);
    }

    // --- verify-moments ----------------------------------------------------
    auto* verify = app.add_subcommand("verify-moments",
                                      "Monte Carlo checks of the trace-moment identities");
    MomentVerifyOptions verify_opts;
    std::string ladder_text = "50,100,200,400";
    std::string verify_scheme = "random";
    std::string verify_out = "moment_report.csv";
    verify->add_option("--n", verify_opts.n, "feature count");
    verify->add_option("--alpha", verify_opts.alpha, "ridge parameter");
    verify->add_option("--p-ladder", ladder_text, "comma-separated p values");
    verify->add_option("--trials", verify_opts.trials, "Monte Carlo trials per point");
    verify->add_option("--seed", verify_opts.seed, "master seed");
    verify->add_option("--scheme", verify_scheme, "identity|random covariance");
    verify->add_option("--bounds-instances", verify_opts.bounds_instances,
                       "deterministic inequality sweep size");
    verify->add_option("--out", verify_out, "report CSV path");

    // --- reproduce-figures -------------------------------------------------
    auto* figures = app.add_subcommand("reproduce-figures",
                                       "empirical vs analytic p*(m) panels");
    FigureOptions fig_opts;
    std::string panels_text = "1-8";
    std::string m_ladder_text = "100,200,400,700,1000";
    std::string fig_tier = "tier1";
    figures->add_option("--panels", panels_text, "e.g. 1-8 or 1,3");
    figures->add_option("--m-ladder", m_ladder_text, "comma-separated m values");
    figures->add_option("--trials", fig_opts.trials, "trials per grid point");
    figures->add_option("--seed", fig_opts.seed, "master seed");
    figures->add_option("--tier", fig_tier, "estimator tier (0|1|2)");
    figures->add_option("--p-step", fig_opts.p_step, "grid step (0 = auto)");
    figures->add_option("--workers", fig_opts.workers, "worker threads (0 = all cores)");
    figures->add_option("--out-dir", fig_opts.out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        // Normalize CLI11's varied exit codes: 0 for --help, 1 for usage errors.
        const int code = app.exit(err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (recommend->parsed()) {
            return run_recommend(rec_m, rec_n, rec_source);
        }

        if (im_curve_cmd->parsed()) {
            OverrideList overrides;
            for (const auto& [key, opt] : override_opts) {
                if (opt->count() > 0) overrides.emplace_back(key, opt->results().front());
            }
            const ExperimentConfig config = parse_config(config_path, overrides);
            const SweepResult result = run_sweep(config, out_dir);
            std::printf("wrote %s (%zu rows)\n", result.curve_path.c_str(),
                        result.curve.points.size());
            std::printf("wrote %s\n", result.recommendation_path.c_str());
            const auto& rec = result.recommendation;
            std::printf("p_formula=%.3f p_root=%.3f p_empirical_raw=%d "
                        "p_empirical_smoothed=%d p_final=%d\n",
                        rec.p_formula, rec.p_root.value(), rec.p_empirical->first,
                        rec.p_empirical->second, rec.p_final);
            return 0;
        }

        if (verify->parsed()) {
            verify_opts.p_ladder = parse_int_list(ladder_text);
            verify_opts.scheme = covariance_scheme_from_string(verify_scheme);
            const MomentReport report = verify_moments(verify_opts);
            write_moment_report_csv(report, verify_out);
            for (const MomentReportRow& row : report.rows) {
                std::printf("[%s] %-5s p=%-4d estimate=%.6g stderr=%.3g reference=%.6g "
                            "(%s)\n",
                            row.passed ? "pass" : "FAIL", row.kind.c_str(), row.p,
                            row.estimate, row.stderr_, row.reference, row.check.c_str());
            }
            std::printf("[%s] Lemma 2/3 bounds: %ld violations over %ld instances\n",
                        report.bounds_violations == 0 ? "pass" : "FAIL",
                        report.bounds_violations, report.bounds_instances);
            std::printf("wrote %s\n", verify_out.c_str());
            return report.all_passed ? 0 : 2;
        }

        if (figures->parsed()) {
            fig_opts.panels = parse_panel_list(panels_text);
            fig_opts.m_ladder = parse_int_list(m_ladder_text);
            fig_opts.tier = tier_from_string(fig_tier);
            const auto results = reproduce_figures(fig_opts);
            for (const PanelResult& res : results) {
                std::printf("panel %d (n=%d sigma=%.1f alpha=%.0f): wrote %s, %s\n",
                            res.panel, res.n, res.sigma, res.alpha, res.svg_path.c_str(),
                            res.csv_path.c_str());
            }
            return 0;
        }
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 1;
}
