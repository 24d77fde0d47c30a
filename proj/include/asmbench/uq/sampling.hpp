#pragma once

#include "asmbench/uq/distributions.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace asmbench::uq {

struct SampleMatrix {
    std::vector<std::string> names;  // one per column
    Eigen::MatrixXd values;          // N rows x k columns
    std::uint64_t seed = 0;
    std::string method;              // "random", "lhs", ...

    std::size_t rows() const { return static_cast<std::size_t>(values.rows()); }
    std::size_t cols() const { return static_cast<std::size_t>(values.cols()); }
    std::size_t column(std::string_view name) const;
};

/// Validates every spec and rejects duplicate names.
void validate_specs(const std::vector<DistributionSpec>& specs);

/// i.i.d. inverse-CDF draws, row by row.
SampleMatrix sample_random(const std::vector<DistributionSpec>& specs, std::size_t n, std::uint64_t seed);

/// Latin hypercube: per column, one draw in each of n equal-probability strata, strata
/// permuted independently. With n = 1 the single row sits at every median.
SampleMatrix sample_lhs(const std::vector<DistributionSpec>& specs, std::size_t n, std::uint64_t seed);

/// Row of baseline values.
Eigen::VectorXd baseline_point(const std::vector<DistributionSpec>& specs);

}  // namespace asmbench::uq
