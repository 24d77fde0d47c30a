#include "asmbench/uq/analysis.hpp"

#include "asmbench/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace asmbench::uq {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t find_name(const std::vector<std::string>& names, std::string_view name, const char* what) {
    for (std::size_t j = 0; j < names.size(); ++j)
        if (names[j] == name) return j;
    throw ConfigError(std::string("unknown ") + what + " '" + std::string(name) + "'");
}

}  // namespace

// ---- Monte Carlo -----------------------------------------------------------------

double MonteCarloResult::failure_fraction() const {
    return converged.empty() ? 0.0 : static_cast<double>(failures) / static_cast<double>(converged.size());
}

std::size_t MonteCarloResult::metric_column(std::string_view metric) const {
    return find_name(metric_names, metric, "metric");
}

double MonteCarloResult::exceedance(std::string_view metric, double threshold) const {
    const auto c = static_cast<Eigen::Index>(metric_column(metric));
    std::size_t n = 0, above = 0;
    for (Eigen::Index i = 0; i < metrics.rows(); ++i) {
        if (!converged[static_cast<std::size_t>(i)]) continue;
        ++n;
        if (metrics(i, c) > threshold) ++above;
    }
    if (n == 0) throw ConvergenceError("exceedance: no converged samples");
    return static_cast<double>(above) / static_cast<double>(n);
}

MonteCarloResult run_monte_carlo(const ModelBinding& binding, const SampleMatrix& samples,
                                 const MonteCarloOptions& options) {
    binding.validate();
    if (samples.names != binding.parameter_names())
        throw ConfigError("sample matrix columns do not match the binding's parameters");
    if (!(options.max_failure_fraction >= 0.0 && options.max_failure_fraction <= 1.0))
        throw ConfigError("max_failure_fraction must lie in [0, 1]");

    const auto evals = evaluate_rows(binding, samples.values, options.workers);
    MonteCarloResult r;
    r.metric_names = binding.metrics;
    r.metrics.resize(static_cast<Eigen::Index>(evals.size()), static_cast<Eigen::Index>(binding.metrics.size()));
    for (std::size_t i = 0; i < evals.size(); ++i) {
        for (std::size_t j = 0; j < binding.metrics.size(); ++j)
            r.metrics(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = evals[i].metrics[j];
        r.converged.push_back(evals[i].ok);
        r.errors.push_back(evals[i].error);
        if (!evals[i].ok) ++r.failures;
    }
    if (r.failure_fraction() > options.max_failure_fraction) {
        std::ostringstream os;
        os << "monte carlo: " << r.failures << " of " << evals.size() << " samples failed (limit "
           << options.max_failure_fraction * 100.0 << "%)";
        std::size_t shown = 0;
        for (std::size_t i = 0; i < evals.size() && shown < 3; ++i)
            if (!evals[i].ok) {
                os << "; sample " << i << ": " << evals[i].error;
                ++shown;
            }
        throw ConvergenceRateError(os.str(), std::move(r));
    }
    return r;
}

// ---- Morris screening ------------------------------------------------------------

std::string_view to_string(MorrisLabel label) {
    switch (label) {
        case MorrisLabel::near_linear: return "near-linear";
        case MorrisLabel::monotonic: return "monotonic";
        case MorrisLabel::non_monotonic: return "non-monotonic";
    }
    return "";
}

MorrisLabel morris_label(double mu_star, double sigma) {
    if (!(mu_star > 0.0)) return sigma > 0.0 ? MorrisLabel::non_monotonic : MorrisLabel::near_linear;
    const double ratio = sigma / mu_star;
    if (ratio > 1.0) return MorrisLabel::non_monotonic;
    if (ratio < 0.1) return MorrisLabel::near_linear;
    return MorrisLabel::monotonic;
}

MorrisResult morris(const ModelBinding& binding, std::size_t r, const MorrisOptions& options) {
    binding.validate();
    const std::size_t k = binding.parameters.size();
    const std::size_t m = binding.metrics.size();
    if (k == 0) throw ConfigError("morris: no parameters");
    if (r < 2) throw ConfigError("morris: need at least 2 trajectories");
    const std::size_t p = options.levels;
    if (p < 2 || p % 2 != 0) throw ConfigError("morris: levels must be even and >= 2");
    const double delta = static_cast<double>(p) / (2.0 * static_cast<double>(p - 1));

    Rng rng(options.seed);
    Eigen::MatrixXd unit(static_cast<Eigen::Index>(r * (k + 1)), static_cast<Eigen::Index>(k));
    std::vector<std::size_t> moved(r * k);  // parameter changed at each step
    std::vector<double> step(r * k);        // signed step in unit coordinates
    std::vector<std::size_t> order(k);
    for (std::size_t t = 0; t < r; ++t) {
        const auto base = static_cast<Eigen::Index>(t * (k + 1));
        for (std::size_t i = 0; i < k; ++i)
            unit(base, static_cast<Eigen::Index>(i)) = static_cast<double>(rng.below(p)) / static_cast<double>(p - 1);
        std::iota(order.begin(), order.end(), std::size_t{0});
        for (std::size_t i = k - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
        for (std::size_t s = 0; s < k; ++s) {
            const auto row = base + static_cast<Eigen::Index>(s);
            const auto i = order[s];
            unit.row(row + 1) = unit.row(row);
            const double x = unit(row, static_cast<Eigen::Index>(i));
            const double d = x + delta <= 1.0 + 1e-12 ? delta : -delta;
            unit(row + 1, static_cast<Eigen::Index>(i)) = std::clamp(x + d, 0.0, 1.0);
            moved[t * k + s] = i;
            step[t * k + s] = d;
        }
    }

    MorrisResult res;
    res.parameters = binding.parameter_names();
    res.metrics = binding.metrics;
    res.n_trajectory = r;
    res.points.names = res.parameters;
    res.points.seed = options.seed;
    res.points.method = "morris";
    res.points.values.resize(unit.rows(), unit.cols());
    for (Eigen::Index row = 0; row < unit.rows(); ++row)
        for (std::size_t i = 0; i < k; ++i)
            res.points.values(row, static_cast<Eigen::Index>(i)) =
                binding.parameters[i].ppf(unit(row, static_cast<Eigen::Index>(i)));

    const auto evals = evaluate_rows(binding, res.points.values, options.workers);
    res.simulations = evals.size();
    for (const auto& e : evals)
        if (!e.ok) ++res.failures;

    // ee[(t * k + i) * m + j]: effect of parameter i on metric j in trajectory t
    std::vector<double> ee(r * k * m, kNaN);
    for (std::size_t t = 0; t < r; ++t)
        for (std::size_t s = 0; s < k; ++s) {
            const auto& a = evals[t * (k + 1) + s];
            const auto& b = evals[t * (k + 1) + s + 1];
            if (!a.ok || !b.ok) continue;
            const auto i = moved[t * k + s];
            for (std::size_t j = 0; j < m; ++j) ee[(t * k + i) * m + j] = (b.metrics[j] - a.metrics[j]) / step[t * k + s];
        }

    const auto K = static_cast<Eigen::Index>(k), M = static_cast<Eigen::Index>(m);
    res.mu = Eigen::MatrixXd::Constant(K, M, kNaN);
    res.mu_star = res.mu;
    res.sigma = res.mu;
    res.ci95 = res.mu;
    res.effects = Eigen::MatrixXi::Zero(K, M);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            double sum = 0.0, abs_sum = 0.0;
            int n = 0;
            for (std::size_t t = 0; t < r; ++t) {
                const double e = ee[(t * k + i) * m + j];
                if (!std::isfinite(e)) continue;
                sum += e;
                abs_sum += std::abs(e);
                ++n;
            }
            res.effects(i, j) = n;
            if (n == 0) continue;
            const double mean = sum / n;
            double ss = 0.0;
            for (std::size_t t = 0; t < r; ++t) {
                const double e = ee[(t * k + i) * m + j];
                if (std::isfinite(e)) ss += (e - mean) * (e - mean);
            }
            res.mu(i, j) = mean;
            res.mu_star(i, j) = abs_sum / n;
            res.sigma(i, j) = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
        }

    // Bootstrap over trajectories.
    if (options.bootstrap > 1) {
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(K, M), sum2 = sum;
        Eigen::MatrixXi count = Eigen::MatrixXi::Zero(K, M);
        std::vector<std::size_t> pick(r);
        for (std::size_t b = 0; b < options.bootstrap; ++b) {
            for (auto& t : pick) t = rng.below(r);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    double acc = 0.0;
                    int n = 0;
                    for (auto t : pick) {
                        const double e = ee[(t * k + i) * m + j];
                        if (!std::isfinite(e)) continue;
                        acc += std::abs(e);
                        ++n;
                    }
                    if (n == 0) continue;
                    const double v = acc / n;
                    sum(i, j) += v;
                    sum2(i, j) += v * v;
                    ++count(i, j);
                }
        }
        for (Eigen::Index i = 0; i < K; ++i)
            for (Eigen::Index j = 0; j < M; ++j) {
                const int n = count(i, j);
                if (n < 2) continue;
                const double mean = sum(i, j) / n;
                const double var = std::max(0.0, (sum2(i, j) - n * mean * mean) / (n - 1));
                res.ci95(i, j) = 1.96 * std::sqrt(var);
            }
    }

    res.mu_star_norm = Eigen::MatrixXd::Zero(K, M);
    res.sigma_norm = Eigen::MatrixXd::Zero(K, M);
    for (Eigen::Index j = 0; j < M; ++j) {
        double top = 0.0;
        for (Eigen::Index i = 0; i < K; ++i)
            if (std::isfinite(res.mu_star(i, j))) top = std::max(top, res.mu_star(i, j));
        for (Eigen::Index i = 0; i < K; ++i) {
            if (top > 0.0) {
                res.mu_star_norm(i, j) = res.mu_star(i, j) / top;
                res.sigma_norm(i, j) = res.sigma(i, j) / top;
            } else if (!std::isfinite(res.mu_star(i, j))) {
                res.mu_star_norm(i, j) = res.sigma_norm(i, j) = kNaN;
            }
        }
    }
    return res;
}

// ---- Monte Carlo filtering -------------------------------------------------------

double kolmogorov_sf(double lambda) {
    if (!(lambda > 0.0)) return 1.0;
    constexpr double kTol = 1e-10;
    constexpr double pi = std::numbers::pi;
    if (lambda < 1.0) {
        // CDF = sqrt(2 pi) / lambda * sum exp(-(2j-1)^2 pi^2 / (8 lambda^2))
        const double c = -pi * pi / (8.0 * lambda * lambda);
        double sum = 0.0;
        for (int j = 1; j < 1000; ++j) {
            const double odd = 2.0 * j - 1.0;
            const double term = std::exp(c * odd * odd);
            sum += term;
            if (term <= kTol * sum) break;
        }
        return std::clamp(1.0 - std::sqrt(2.0 * pi) / lambda * sum, 0.0, 1.0);
    }
    double sum = 0.0;
    for (int j = 1; j < 1000; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += (j % 2 == 1 ? term : -term);
        if (term <= kTol * std::abs(sum)) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw ConfigError("ks_two_sample: both samples must be non-empty");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    const double ne = na * nb / (na + nb);
    return {d, kolmogorov_sf(std::sqrt(ne) * d)};
}

std::vector<std::size_t> FilterResult::ranking() const {
    std::vector<std::size_t> idx(entries.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](auto x, auto y) { return entries[x].D > entries[y].D; });
    return idx;
}

FilterResult mc_filter(const SampleMatrix& samples, const Eigen::VectorXd& metric, double threshold,
                       std::string metric_name) {
    if (static_cast<std::size_t>(metric.size()) != samples.rows())
        throw ConfigError("mc_filter: metric length does not match the sample count");
    FilterResult res;
    res.metric = std::move(metric_name);
    res.threshold = threshold;
    std::vector<Eigen::Index> above, below;
    for (Eigen::Index i = 0; i < metric.size(); ++i) {
        if (!std::isfinite(metric[i])) {
            ++res.excluded;
            continue;
        }
        (metric[i] > threshold ? above : below).push_back(i);
    }
    if (above.empty() || below.empty()) {
        std::ostringstream os;
        os << "mc_filter: threshold " << threshold << " leaves an empty group (" << above.size() << " above, "
           << below.size() << " below)";
        throw ConfigError(os.str());
    }
    for (std::size_t c = 0; c < samples.cols(); ++c) {
        std::vector<double> a, b;
        for (auto i : above) a.push_back(samples.values(i, static_cast<Eigen::Index>(c)));
        for (auto i : below) b.push_back(samples.values(i, static_cast<Eigen::Index>(c)));
        const auto ks = ks_two_sample(std::move(a), std::move(b));
        res.entries.push_back({samples.names[c], ks.D, ks.p, above.size(), below.size(),
                               above.size() < 5 || below.size() < 5});
    }
    return res;
}

// ---- Spearman --------------------------------------------------------------------

Eigen::VectorXd average_ranks(const Eigen::VectorXd& v) {
    const auto n = v.size();
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    Eigen::VectorXd rank(n);
    for (Eigen::Index s = 0; s < n;) {
        Eigen::Index e = s;
        while (e + 1 < n && v[idx[e + 1]] == v[idx[s]]) ++e;
        const double r = 0.5 * static_cast<double>(s + e) + 1.0;
        for (Eigen::Index q = s; q <= e; ++q) rank[idx[q]] = r;
        s = e + 1;
    }
    return rank;
}

SpearmanResult spearman(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    if (x.rows() != y.rows()) throw ConfigError("spearman: row counts differ");
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        if (x.row(i).allFinite() && y.row(i).allFinite()) keep.push_back(i);
    if (keep.size() < 3) throw ConfigError("spearman: need at least 3 complete rows");
    const auto n = static_cast<Eigen::Index>(keep.size());
    auto ranked = [&](const Eigen::MatrixXd& src) {
        Eigen::MatrixXd out(n, src.cols());
        Eigen::VectorXd col(n);
        for (Eigen::Index c = 0; c < src.cols(); ++c) {
            for (Eigen::Index q = 0; q < n; ++q) col[q] = src(keep[static_cast<std::size_t>(q)], c);
            out.col(c) = average_ranks(col);
            out.col(c).array() -= out.col(c).mean();
        }
        return out;
    };
    const auto rx = ranked(x);
    const auto ry = ranked(y);
    SpearmanResult res;
    res.rho = Eigen::MatrixXd::Zero(x.cols(), y.cols());
    res.constant = Eigen::MatrixXi::Zero(x.cols(), y.cols());
    for (Eigen::Index a = 0; a < x.cols(); ++a)
        for (Eigen::Index b = 0; b < y.cols(); ++b) {
            const double sx = rx.col(a).norm(), sy = ry.col(b).norm();
            if (sx == 0.0 || sy == 0.0) {
                res.constant(a, b) = 1;
                continue;
            }
            res.rho(a, b) = std::clamp(rx.col(a).dot(ry.col(b)) / (sx * sy), -1.0, 1.0);
        }
    return res;
}

// ---- Decision-space sweep --------------------------------------------------------

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n == 0) throw ConfigError("linspace: need at least one point");
    if (n == 1) return {lo};
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    v.back() = hi;
    return v;
}

SweepResult grid_sweep(const ModelBinding& binding, std::string_view var_x, const std::vector<double>& xs,
                       std::string_view var_y, const std::vector<double>& ys, unsigned workers) {
    binding.validate();
    if (xs.empty() || ys.empty()) throw ConfigError("grid_sweep: empty axis");
    if (var_x == var_y) throw ConfigError("grid_sweep: the two variables must differ");
    const auto jx = static_cast<Eigen::Index>(binding.parameter_index(var_x));
    const auto jy = static_cast<Eigen::Index>(binding.parameter_index(var_y));
    const Eigen::VectorXd base = baseline_point(binding.parameters);
    Eigen::MatrixXd X(static_cast<Eigen::Index>(xs.size() * ys.size()), base.size());
    for (std::size_t a = 0; a < xs.size(); ++a)
        for (std::size_t b = 0; b < ys.size(); ++b) {
            const auto row = static_cast<Eigen::Index>(a * ys.size() + b);
            X.row(row) = base.transpose();
            X(row, jx) = xs[a];
            X(row, jy) = ys[b];
        }
    const auto evals = evaluate_rows(binding, X, workers);
    SweepResult res;
    res.var_x = var_x;
    res.var_y = var_y;
    res.xs = xs;
    res.ys = ys;
    res.metric_names = binding.metrics;
    res.metrics.resize(X.rows(), static_cast<Eigen::Index>(binding.metrics.size()));
    for (std::size_t i = 0; i < evals.size(); ++i) {
        for (std::size_t j = 0; j < binding.metrics.size(); ++j)
            res.metrics(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = evals[i].metrics[j];
        res.converged.push_back(evals[i].ok);
        res.errors.push_back(evals[i].error);
    }
    return res;
}

}  // namespace asmbench::uq
