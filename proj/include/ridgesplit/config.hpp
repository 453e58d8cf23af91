#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ridgesplit/sampling.hpp"

namespace ridgesplit {

/// Estimator tier: Tier0 averages the raw squared deviation over fresh
/// (X, b, eps) draws; Tier1 integrates (b, eps) analytically given X;
/// Tier2 additionally integrates the test block given the training block.
enum class Tier { Tier0, Tier1, Tier2 };

std::string to_string(Tier tier);
Tier tier_from_string(const std::string& name);

/// Training-size grid; p_min/p_max of -1 mean "derive from (m, n)".
struct PGrid {
    int p_min = -1;
    int p_max = -1;
    int step = 1;
};

struct ExperimentConfig {
    int m = 0;
    int n = 0;
    double c = 0.1;
    double sigma = 0.1;  // noise scale, not the covariance
    double alpha = 2.0;
    CovarianceScheme covariance_scheme = CovarianceScheme::Random;
    long trials = 10000;
    Tier tier = Tier::Tier2;
    std::uint64_t seed = 0;
    PGrid p_grid;
    int smoothing_window = -1;  // -1 = auto: max(2, grid_points / 20)
    int workers = 1;            // 0 = hardware concurrency

    int grid_p_min() const { return p_grid.p_min >= 0 ? p_grid.p_min : n + 2; }
    int grid_p_max() const { return p_grid.p_max >= 0 ? p_grid.p_max : m - 1; }
};

/// Checks every downstream precondition; throws std::invalid_argument naming
/// the violated constraint.
void validate(const ExperimentConfig& config);

/// Parses a UTF-8 `key = value` file ('#' comments, blank lines ignored) and
/// applies `overrides` (same key=value form, e.g. from command-line flags) on
/// top. The environment variable RIDGESPLIT_MASTER_SEED, when set, replaces
/// the file's seed; explicit overrides win over the environment. Unknown keys
/// and constraint violations throw with the offending key or constraint named.
ExperimentConfig parse_config(const std::string& path,
                              const std::vector<std::pair<std::string, std::string>>& overrides = {});

/// The same parser applied to defaults only (no file), for pure-override use.
ExperimentConfig config_from_overrides(
    const std::vector<std::pair<std::string, std::string>>& overrides);

/// The one covariance draw an experiment uses everywhere (the paper fixes a
/// single Sigma per run): deterministic in config.seed.
SpdMatrix materialize_covariance(const ExperimentConfig& config);

}  // namespace ridgesplit
