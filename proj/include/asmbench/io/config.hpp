#pragma once

#include "asmbench/accounting/accounting.hpp"
#include "asmbench/uq/binding.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace asmbench::io {

struct RunOptions {
    std::uint64_t seed = 1;
    std::size_t samples = 1000;       // Monte Carlo N
    std::string sampling = "lhs";     // lhs | random
    std::size_t n_trajectory = 50;
    std::size_t levels = 4;
    std::size_t bootstrap = 1000;
    double t_end = 50.0;              // d
    double output_interval = 1.0;     // d
    unsigned workers = 0;             // 0 = hardware threads
    std::string out = "out";
    double max_failure_fraction = 0.05;
};

struct FilterSpec {
    std::string metric;
    double threshold = 0.0;
};

struct SweepAxis {
    std::string name;
    double min = 0.0;
    double max = 1.0;
    std::size_t n = 1;
};

struct AccountingConfig {
    accounting::ImpactCatalog catalog;
    accounting::TEAInputs tea;
    std::map<std::string, double> prices;  // per functional unit of an inventory item
    double lca_horizon = 1.0;              // yr
};

/// Everything a command reads. Defaults reproduce the open-loop BSM1 baseline.
struct RunConfig {
    uq::BSM1Scenario scenario;
    std::vector<uq::DistributionSpec> parameters = uq::bsm1_parameter_specs();
    RunOptions run;
    std::vector<FilterSpec> filters{{"TN", 18.0}, {"TKN", 4.0}};
    SweepAxis sweep_x{"K_La1", 80.0, 300.0, 12};
    SweepAxis sweep_y{"Q_WAS", 300.0, 900.0, 13};
    AccountingConfig accounting;

    /// Cross-field checks: scenario validity, parameter names resolvable, sweep axes bound.
    void validate() const;
};

/// Parses a JSON document. Unknown keys anywhere are a ConfigError.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace asmbench::io
