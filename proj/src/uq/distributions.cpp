#include "asmbench/uq/distributions.hpp"

#include "asmbench/core/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace asmbench::uq {

std::string_view to_string(DistributionKind kind) {
    return kind == DistributionKind::uniform ? "uniform" : "triangular";
}

DistributionKind parse_distribution_kind(std::string_view name) {
    if (name == "uniform") return DistributionKind::uniform;
    if (name == "triangular") return DistributionKind::triangular;
    throw ConfigError("unknown distribution kind '" + std::string(name) + "'");
}

DistributionSpec DistributionSpec::uniform(std::string name, double min, double max, double baseline) {
    DistributionSpec s{std::move(name), DistributionKind::uniform, min, max, 0.5 * (min + max), baseline};
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::triangular(std::string name, double min, double mode, double max) {
    DistributionSpec s{std::move(name), DistributionKind::triangular, min, max, mode, mode};
    s.validate();
    return s;
}

void DistributionSpec::validate() const {
    auto bad = [&](const std::string& why) {
        std::ostringstream os;
        os << "distribution '" << name << "': " << why;
        throw ConfigError(os.str());
    };
    if (name.empty()) bad("empty name");
    if (!std::isfinite(min) || !std::isfinite(max) || !std::isfinite(baseline)) bad("bounds must be finite");
    if (!(min < max)) bad("need min < max");
    if (!(baseline >= min && baseline <= max)) bad("baseline outside [min, max]");
    if (kind == DistributionKind::triangular && !(mode >= min && mode <= max)) bad("mode outside [min, max]");
}

double DistributionSpec::ppf(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) throw ConfigError("ppf: probability outside [0, 1]");
    const double w = max - min;
    if (kind == DistributionKind::uniform) return std::min(max, min + u * w);
    const double fc = (mode - min) / w;
    if (u < fc) return min + std::sqrt(u * w * (mode - min));
    return max - std::sqrt((1.0 - u) * w * (max - mode));
}

double DistributionSpec::cdf(double x) const {
    if (x <= min) return 0.0;
    if (x >= max) return 1.0;
    const double w = max - min;
    if (kind == DistributionKind::uniform) return (x - min) / w;
    if (x <= mode) return (x - min) * (x - min) / (w * (mode - min));
    return 1.0 - (max - x) * (max - x) / (w * (max - mode));
}

double DistributionSpec::mean() const {
    return kind == DistributionKind::uniform ? 0.5 * (min + max) : (min + mode + max) / 3.0;
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw ConfigError("Rng::below: n must be > 0");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % n;
}

}  // namespace asmbench::uq
