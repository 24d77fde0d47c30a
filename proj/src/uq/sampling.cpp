#include "asmbench/uq/sampling.hpp"

#include "asmbench/core/errors.hpp"

#include <numeric>
#include <set>

namespace asmbench::uq {

std::size_t SampleMatrix::column(std::string_view name) const {
    for (std::size_t j = 0; j < names.size(); ++j)
        if (names[j] == name) return j;
    throw ConfigError("sample matrix has no column '" + std::string(name) + "'");
}

void validate_specs(const std::vector<DistributionSpec>& specs) {
    std::set<std::string_view> seen;
    for (const auto& s : specs) {
        s.validate();
        if (!seen.insert(s.name).second) throw ConfigError("duplicate parameter name '" + s.name + "'");
    }
}

namespace {

SampleMatrix prepare(const std::vector<DistributionSpec>& specs, std::size_t n, std::uint64_t seed, const char* method) {
    if (n == 0) throw ConfigError("sample size must be >= 1");
    validate_specs(specs);
    SampleMatrix m;
    for (const auto& s : specs) m.names.push_back(s.name);
    m.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(specs.size()));
    m.seed = seed;
    m.method = method;
    return m;
}

}  // namespace

SampleMatrix sample_random(const std::vector<DistributionSpec>& specs, std::size_t n, std::uint64_t seed) {
    auto m = prepare(specs, n, seed, "random");
    Rng rng(seed);
    for (Eigen::Index i = 0; i < m.values.rows(); ++i)
        for (Eigen::Index j = 0; j < m.values.cols(); ++j) m.values(i, j) = specs[j].ppf(rng.uniform());
    return m;
}

SampleMatrix sample_lhs(const std::vector<DistributionSpec>& specs, std::size_t n, std::uint64_t seed) {
    auto m = prepare(specs, n, seed, "lhs");
    if (n == 1) {
        for (std::size_t j = 0; j < specs.size(); ++j) m.values(0, j) = specs[j].ppf(0.5);
        return m;
    }
    Rng rng(seed);
    std::vector<std::size_t> perm(n);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < specs.size(); ++j) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
        for (std::size_t i = 0; i < n; ++i) {
            const double u = (static_cast<double>(perm[i]) + rng.uniform()) * inv_n;
            m.values(i, j) = specs[j].ppf(std::min(u, 1.0));
        }
    }
    return m;
}

Eigen::VectorXd baseline_point(const std::vector<DistributionSpec>& specs) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(specs.size()));
    for (std::size_t j = 0; j < specs.size(); ++j) x[j] = specs[j].baseline;
    return x;
}

}  // namespace asmbench::uq
