#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace asmbench::uq {

enum class DistributionKind { uniform, triangular };

std::string_view to_string(DistributionKind kind);
/// Throws ConfigError for unknown names.
DistributionKind parse_distribution_kind(std::string_view name);

struct DistributionSpec {
    std::string name;
    DistributionKind kind = DistributionKind::uniform;
    double min = 0.0;
    double max = 1.0;
    double mode = 0.0;  // triangular only
    double baseline = 0.0;

    static DistributionSpec uniform(std::string name, double min, double max, double baseline);
    /// Triangular with the mode at the baseline.
    static DistributionSpec triangular(std::string name, double min, double mode, double max);

    /// Throws ConfigError unless min < max, min <= baseline <= max, and min <= mode <= max.
    void validate() const;

    /// Inverse CDF on [0, 1].
    double ppf(double u) const;
    double cdf(double x) const;
    double mean() const;
};

/// std::mt19937_64 with explicitly defined derived draws; the distribution adaptors of
/// <random> are implementation-defined, the engine is not.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform integer on [0, n) by rejection.
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 engine_;
};

}  // namespace asmbench::uq
