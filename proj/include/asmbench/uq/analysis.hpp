#pragma once

#include "asmbench/core/errors.hpp"
#include "asmbench/uq/binding.hpp"
#include "asmbench/uq/sampling.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace asmbench::uq {

// ---- Monte Carlo -----------------------------------------------------------------

struct MonteCarloOptions {
    unsigned workers = 0;
    double max_failure_fraction = 0.05;
};

struct MonteCarloResult {
    std::vector<std::string> metric_names;
    Eigen::MatrixXd metrics;          // N x m, NaN rows for failed samples
    std::vector<bool> converged;      // per sample
    std::vector<std::string> errors;  // per sample, empty when converged
    std::size_t failures = 0;

    double failure_fraction() const;
    /// Fraction of converged samples whose metric exceeds the threshold.
    double exceedance(std::string_view metric, double threshold) const;
    std::size_t metric_column(std::string_view metric) const;
};

/// Raised when more samples fail than the options allow; carries the full result.
class ConvergenceRateError : public ConvergenceError {
public:
    ConvergenceRateError(const std::string& what, MonteCarloResult result)
        : ConvergenceError(what), result_(std::move(result)) {}
    const MonteCarloResult& result() const noexcept { return result_; }

private:
    MonteCarloResult result_;
};

MonteCarloResult run_monte_carlo(const ModelBinding& binding, const SampleMatrix& samples,
                                 const MonteCarloOptions& options = {});

// ---- Morris screening ------------------------------------------------------------

struct MorrisOptions {
    std::size_t levels = 4;       // p, even
    std::uint64_t seed = 0;
    std::size_t bootstrap = 1000;
    unsigned workers = 0;
};

enum class MorrisLabel { near_linear, monotonic, non_monotonic };
std::string_view to_string(MorrisLabel label);
/// sigma / mu_star above 1: non-monotonic; below 0.1: near-linear.
MorrisLabel morris_label(double mu_star, double sigma);

struct MorrisResult {
    std::vector<std::string> parameters;
    std::vector<std::string> metrics;
    // k x m
    Eigen::MatrixXd mu, mu_star, sigma, mu_star_norm, sigma_norm, ci95;
    Eigen::MatrixXi effects;  // usable elementary effects per cell
    std::size_t n_trajectory = 0;
    std::size_t simulations = 0;
    std::size_t failures = 0;
    SampleMatrix points;      // every evaluated point, trajectory by trajectory

    MorrisLabel label(std::size_t parameter, std::size_t metric) const {
        return morris_label(mu_star(parameter, metric), sigma(parameter, metric));
    }
};

/// n_trajectory * (k + 1) evaluations.
constexpr std::size_t morris_simulation_count(std::size_t n_trajectory, std::size_t k) {
    return n_trajectory * (k + 1);
}

MorrisResult morris(const ModelBinding& binding, std::size_t n_trajectory, const MorrisOptions& options = {});

// ---- Monte Carlo filtering -------------------------------------------------------

struct KsResult {
    double D = 0.0;
    double p = 1.0;
};

/// Two-sample Kolmogorov-Smirnov statistic and asymptotic p value.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Survival function of the Kolmogorov distribution, P(K > lambda).
double kolmogorov_sf(double lambda);

struct FilterEntry {
    std::string parameter;
    double D = 0.0;
    double p = 1.0;
    std::size_t n_above = 0;
    std::size_t n_below = 0;
    bool low_confidence = false;  // a group smaller than 5
};

struct FilterResult {
    std::string metric;
    double threshold = 0.0;
    std::vector<FilterEntry> entries;  // one per parameter, in column order
    std::size_t excluded = 0;          // rows without a finite metric

    /// Parameter indices sorted by decreasing D (ties by column).
    std::vector<std::size_t> ranking() const;
};

/// Splits rows by metric > threshold (equality goes below) and compares each parameter's
/// two groups. Rows whose metric is not finite are excluded.
FilterResult mc_filter(const SampleMatrix& samples, const Eigen::VectorXd& metric, double threshold,
                       std::string metric_name = {});

// ---- Spearman --------------------------------------------------------------------

struct SpearmanResult {
    Eigen::MatrixXd rho;        // k x m
    Eigen::MatrixXi constant;   // 1 where a column was constant and rho was set to 0
};

/// Average ranks (1-based) with ties sharing their mean rank.
Eigen::VectorXd average_ranks(const Eigen::VectorXd& v);

/// Rows with any non-finite metric are dropped.
SpearmanResult spearman(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

// ---- Decision-space sweep --------------------------------------------------------

struct SweepResult {
    std::string var_x, var_y;
    std::vector<double> xs, ys;
    std::vector<std::string> metric_names;
    Eigen::MatrixXd metrics;        // (nx*ny) x m, row = ix * ny + iy; NaN where missing
    std::vector<bool> converged;
    std::vector<std::string> errors;

    double at(std::size_t ix, std::size_t iy, std::size_t metric) const {
        return metrics(static_cast<Eigen::Index>(ix * ys.size() + iy), static_cast<Eigen::Index>(metric));
    }
};

/// n evenly spaced values from lo to hi inclusive (lo alone when n = 1).
std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Steady-state metrics on the grid xs x ys; other parameters stay at baseline.
SweepResult grid_sweep(const ModelBinding& binding, std::string_view var_x, const std::vector<double>& xs,
                       std::string_view var_y, const std::vector<double>& ys, unsigned workers = 0);

}  // namespace asmbench::uq
