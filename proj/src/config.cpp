#include "ridgesplit/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ridgesplit {

std::string to_string(Tier tier) {
    switch (tier) {
        case Tier::Tier0: return "tier0";
        case Tier::Tier1: return "tier1";
        case Tier::Tier2: return "tier2";
    }
    throw std::logic_error("unreachable tier");
}

Tier tier_from_string(const std::string& name) {
    if (name == "0" || name == "tier0") return Tier::Tier0;
    if (name == "1" || name == "tier1") return Tier::Tier1;
    if (name == "2" || name == "tier2") return Tier::Tier2;
    throw std::invalid_argument("unknown tier '" + name + "' (expected 0|1|2)");
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

long long parse_integer(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long parsed = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not an integer: '" + value + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const unsigned long long parsed = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not an unsigned integer: '" +
                                    value + "'");
    }
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not a number: '" + value + "'");
    }
}

void apply(ExperimentConfig& config, const std::string& key, const std::string& value) {
    if (key == "m") {
        config.m = static_cast<int>(parse_integer(key, value));
    } else if (key == "n") {
        config.n = static_cast<int>(parse_integer(key, value));
    } else if (key == "c") {
        config.c = parse_real(key, value);
    } else if (key == "sigma") {
        config.sigma = parse_real(key, value);
    } else if (key == "alpha") {
        config.alpha = parse_real(key, value);
    } else if (key == "covariance_scheme") {
        config.covariance_scheme = covariance_scheme_from_string(value);
    } else if (key == "trials") {
        config.trials = parse_integer(key, value);
    } else if (key == "tier") {
        config.tier = tier_from_string(value);
    } else if (key == "seed") {
        config.seed = parse_u64(key, value);
    } else if (key == "p_min") {
        config.p_grid.p_min = static_cast<int>(parse_integer(key, value));
    } else if (key == "p_max") {
        config.p_grid.p_max = static_cast<int>(parse_integer(key, value));
    } else if (key == "p_step") {
        config.p_grid.step = static_cast<int>(parse_integer(key, value));
    } else if (key == "smoothing_window") {
        config.smoothing_window = static_cast<int>(parse_integer(key, value));
    } else if (key == "workers") {
        config.workers = static_cast<int>(parse_integer(key, value));
    } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

void apply_line(ExperimentConfig& config, const std::string& raw_line, int line_number) {
    std::string line = raw_line;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) return;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
        throw std::invalid_argument("config line " + std::to_string(line_number) +
                                    ": expected 'key = value', got '" + line + "'");
    }
    apply(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
}

}  // namespace

void validate(const ExperimentConfig& config) {
    if (config.n < 1) throw std::invalid_argument("constraint violated: n >= 1");
    if (config.m < config.n + 3) throw std::invalid_argument("constraint violated: m >= n + 3");
    if (config.c < 0.0) throw std::invalid_argument("constraint violated: c >= 0");
    if (!(config.sigma > 0.0)) throw std::invalid_argument("constraint violated: sigma > 0");
    if (!(config.alpha > 0.0)) throw std::invalid_argument("constraint violated: alpha > 0");
    if (config.trials < 100) throw std::invalid_argument("constraint violated: trials >= 100");
    if (config.workers < 0) throw std::invalid_argument("constraint violated: workers >= 0");
    if (config.smoothing_window < -1) {
        throw std::invalid_argument("constraint violated: smoothing_window >= 0");
    }
    const int p_min = config.grid_p_min();
    const int p_max = config.grid_p_max();
    if (p_min < config.n + 2) throw std::invalid_argument("constraint violated: p_min >= n + 2");
    if (p_max > config.m - 1) throw std::invalid_argument("constraint violated: p_max <= m - 1");
    if (p_min >= p_max) throw std::invalid_argument("constraint violated: p_min < p_max");
    if (config.p_grid.step < 1) throw std::invalid_argument("constraint violated: p_step >= 1");
}

ExperimentConfig parse_config(const std::string& path,
                              const std::vector<std::pair<std::string, std::string>>& overrides) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");

    ExperimentConfig config;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        apply_line(config, line, ++line_number);
    }
    if (const char* env_seed = std::getenv("RIDGESPLIT_MASTER_SEED")) {
        config.seed = parse_u64("RIDGESPLIT_MASTER_SEED", env_seed);
    }
    for (const auto& [key, value] : overrides) {
        apply(config, key, value);
    }
    validate(config);
    return config;
}

ExperimentConfig config_from_overrides(
    const std::vector<std::pair<std::string, std::string>>& overrides) {
    ExperimentConfig config;
    if (const char* env_seed = std::getenv("RIDGESPLIT_MASTER_SEED")) {
        config.seed = parse_u64("RIDGESPLIT_MASTER_SEED", env_seed);
    }
    for (const auto& [key, value] : overrides) {
        apply(config, key, value);
    }
    validate(config);
    return config;
}

SpdMatrix materialize_covariance(const ExperimentConfig& config) {
    return sample_spd_covariance(config.n, config.covariance_scheme,
                                 RngSeed{config.seed, streams::kCovariance, 0});
}

}  // namespace ridgesplit
