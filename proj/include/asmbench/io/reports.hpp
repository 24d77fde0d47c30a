#pragma once

#include "asmbench/accounting/accounting.hpp"
#include "asmbench/flowsheet/simulate.hpp"
#include "asmbench/io/csv.hpp"
#include "asmbench/uq/analysis.hpp"

namespace asmbench::io {

/// t_d then one column per state entry.
CsvTable trajectory_table(const flowsheet::Trajectory& trajectory);

/// Same columns as the trajectory plus the seven effluent metrics, one row.
CsvTable steady_table(const std::vector<std::string>& labels, const flowsheet::SteadyState& steady,
                      const flowsheet::EffluentMetrics& metrics);

/// One column per parameter.
CsvTable samples_table(const uq::SampleMatrix& samples);
/// Reads a samples table back; every column numeric.
uq::SampleMatrix samples_from_table(const CsvTable& table);

/// Metric columns then `converged` (1 or 0).
CsvTable metrics_table(const uq::MonteCarloResult& result);

/// parameter, metric, mu_star, sigma, mu_star_norm, sigma_norm, ci95, label.
CsvTable morris_table(const uq::MorrisResult& result);

/// parameter, metric, D, p, n_above, n_below, low_confidence; one block per filter.
CsvTable filter_table(const std::vector<uq::FilterResult>& results);

/// parameter, metric, rho, constant.
CsvTable spearman_table(const std::vector<std::string>& parameters, const std::vector<std::string>& metrics,
                        const uq::SpearmanResult& result);

/// <var_x>, <var_y>, metric columns, converged; x-major.
CsvTable sweep_table(const uq::SweepResult& result);

struct TeaLcaRow {
    std::string scenario;
    accounting::Inventory inventory;
    accounting::TEAResult tea;
    accounting::LcaResult lca;
};

/// scenario, inventory quantities, TEA terms, indicator totals, then <indicator>.<item> breakdown.
CsvTable tea_lca_table(const std::vector<TeaLcaRow>& rows);

}  // namespace asmbench::io
