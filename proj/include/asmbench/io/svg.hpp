#pragma once

#include "asmbench/io/csv.hpp"

#include <optional>
#include <string>
#include <vector>

namespace asmbench::io {

enum class ChartKind { timeseries, ecdf, morris_scatter, heatmap };

std::string_view to_string(ChartKind kind);
ChartKind parse_chart_kind(std::string_view name);

struct ChartSpec {
    ChartKind kind = ChartKind::timeseries;
    std::filesystem::path input;
    std::filesystem::path output;
    std::string x_label;
    std::string y_label;
    std::string title;
    // timeseries: x column (default: first) and y columns (default: all others)
    // ecdf: one column; heatmap: x, y, value columns; morris_scatter: metric filter
    std::string x_column;
    std::vector<std::string> columns;
    std::string metric;
    std::optional<double> threshold;  // ecdf vertical line
};

/// Columns the chart needs from `table`; ConfigError listing any that are missing.
void check_columns(const ChartSpec& spec, const CsvTable& table);

/// Deterministic SVG document for the table.
std::string render_chart(const ChartSpec& spec, const CsvTable& table);

/// Reads spec.input, renders, and writes spec.output.
void write_chart(const ChartSpec& spec);

}  // namespace asmbench::io
