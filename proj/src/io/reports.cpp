#include "asmbench/io/reports.hpp"

#include "asmbench/core/errors.hpp"

#include <cmath>

namespace asmbench::io {

namespace {

std::string flag(bool b) { return b ? "1" : "0"; }

}  // namespace

CsvTable trajectory_table(const flowsheet::Trajectory& tr) {
    CsvTable t;
    t.header.push_back("t_d");
    t.header.insert(t.header.end(), tr.labels.begin(), tr.labels.end());
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        std::vector<double> row{tr.times[i]};
        row.insert(row.end(), tr.states[i].begin(), tr.states[i].end());
        t.add_numeric_row(row);
    }
    return t;
}

CsvTable steady_table(const std::vector<std::string>& labels, const flowsheet::SteadyState& steady,
                      const flowsheet::EffluentMetrics& metrics) {
    if (labels.size() != steady.state.size()) throw ConfigError("steady_table: label count does not match the state");
    CsvTable t;
    t.header.push_back("t_d");
    t.header.insert(t.header.end(), labels.begin(), labels.end());
    for (auto n : flowsheet::EffluentMetrics::names()) t.header.emplace_back(n);
    std::vector<double> row{steady.time};
    row.insert(row.end(), steady.state.begin(), steady.state.end());
    for (double v : metrics.values()) row.push_back(v);
    t.add_numeric_row(row);
    return t;
}

CsvTable samples_table(const uq::SampleMatrix& s) {
    CsvTable t;
    t.header = s.names;
    std::vector<double> row(s.cols());
    for (Eigen::Index i = 0; i < s.values.rows(); ++i) {
        for (std::size_t j = 0; j < s.cols(); ++j) row[j] = s.values(i, static_cast<Eigen::Index>(j));
        t.add_numeric_row(row);
    }
    return t;
}

uq::SampleMatrix samples_from_table(const CsvTable& t) {
    uq::SampleMatrix s;
    s.names = t.header;
    s.method = "file";
    s.values.resize(static_cast<Eigen::Index>(t.rows.size()), static_cast<Eigen::Index>(t.header.size()));
    for (std::size_t j = 0; j < t.header.size(); ++j) {
        const auto col = t.numeric(j);
        for (std::size_t i = 0; i < col.size(); ++i) s.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
    }
    return s;
}

CsvTable metrics_table(const uq::MonteCarloResult& r) {
    CsvTable t;
    t.header = r.metric_names;
    t.header.push_back("converged");
    for (Eigen::Index i = 0; i < r.metrics.rows(); ++i) {
        std::vector<std::string> row;
        for (Eigen::Index j = 0; j < r.metrics.cols(); ++j) row.push_back(format_double(r.metrics(i, j)));
        row.push_back(flag(r.converged[static_cast<std::size_t>(i)]));
        t.add_row(std::move(row));
    }
    return t;
}

CsvTable morris_table(const uq::MorrisResult& r) {
    CsvTable t;
    t.header = {"parameter", "metric", "mu_star", "sigma", "mu_star_norm", "sigma_norm", "ci95", "label"};
    for (std::size_t j = 0; j < r.metrics.size(); ++j)
        for (std::size_t i = 0; i < r.parameters.size(); ++i) {
            const auto I = static_cast<Eigen::Index>(i), J = static_cast<Eigen::Index>(j);
            t.add_row({r.parameters[i], r.metrics[j], format_double(r.mu_star(I, J)), format_double(r.sigma(I, J)),
                       format_double(r.mu_star_norm(I, J)), format_double(r.sigma_norm(I, J)),
                       format_double(r.ci95(I, J)), std::string(to_string(r.label(i, j)))});
        }
    return t;
}

CsvTable filter_table(const std::vector<uq::FilterResult>& results) {
    CsvTable t;
    t.header = {"parameter", "metric", "D", "p", "n_above", "n_below", "low_confidence"};
    for (const auto& f : results)
        for (const auto& e : f.entries)
            t.add_row({e.parameter, f.metric, format_double(e.D), format_double(e.p), std::to_string(e.n_above),
                       std::to_string(e.n_below), flag(e.low_confidence)});
    return t;
}

CsvTable spearman_table(const std::vector<std::string>& parameters, const std::vector<std::string>& metrics,
                        const uq::SpearmanResult& r) {
    CsvTable t;
    t.header = {"parameter", "metric", "rho", "constant"};
    for (std::size_t j = 0; j < metrics.size(); ++j)
        for (std::size_t i = 0; i < parameters.size(); ++i) {
            const auto I = static_cast<Eigen::Index>(i), J = static_cast<Eigen::Index>(j);
            t.add_row({parameters[i], metrics[j], format_double(r.rho(I, J)), flag(r.constant(I, J) != 0)});
        }
    return t;
}

CsvTable sweep_table(const uq::SweepResult& r) {
    CsvTable t;
    t.header = {r.var_x, r.var_y};
    t.header.insert(t.header.end(), r.metric_names.begin(), r.metric_names.end());
    t.header.push_back("converged");
    for (std::size_t a = 0; a < r.xs.size(); ++a)
        for (std::size_t b = 0; b < r.ys.size(); ++b) {
            const auto row_index = a * r.ys.size() + b;
            std::vector<std::string> row{format_double(r.xs[a]), format_double(r.ys[b])};
            for (std::size_t m = 0; m < r.metric_names.size(); ++m) row.push_back(format_double(r.at(a, b, m)));
            row.push_back(flag(r.converged[row_index]));
            t.add_row(std::move(row));
        }
    return t;
}

CsvTable tea_lca_table(const std::vector<TeaLcaRow>& rows) {
    CsvTable t;
    if (rows.empty()) {
        t.header = {"scenario"};
        return t;
    }
    const auto& first = rows.front();
    t.header.push_back("scenario");
    for (const auto& e : first.inventory.entries) t.header.push_back(e.item + "_" + e.unit + "_per_d");
    for (auto h : {"annualized_capital", "annual_opex", "annual_revenue", "income_tax", "net_annual_cost",
                   "per_capita_annual_cost"})
        t.header.emplace_back(h);
    for (const auto& ind : first.lca.indicators) t.header.push_back(ind);
    for (std::size_t k = 0; k < first.lca.items.size(); ++k)
        for (const auto& ind : first.lca.indicators) t.header.push_back(ind + "." + first.lca.items[k]);
    for (const auto& r : rows) {
        if (r.inventory.entries.size() != first.inventory.entries.size() || r.lca.indicators != first.lca.indicators ||
            r.lca.items != first.lca.items)
            throw ConfigError("tea_lca_table: scenarios must share inventory items and indicators");
        std::vector<std::string> row{r.scenario};
        for (const auto& e : r.inventory.entries) row.push_back(format_double(e.quantity));
        for (double v : {r.tea.annualized_capital, r.tea.annual_opex, r.tea.annual_revenue, r.tea.tax, r.tea.net_annual_cost})
            row.push_back(format_double(v));
        row.push_back(r.tea.per_capita ? format_double(*r.tea.per_capita) : "");
        for (double v : r.lca.totals) row.push_back(format_double(v));
        for (const auto& b : r.lca.breakdown)
            for (double v : b) row.push_back(format_double(v));
        t.add_row(std::move(row));
    }
    return t;
}

}  // namespace asmbench::io
