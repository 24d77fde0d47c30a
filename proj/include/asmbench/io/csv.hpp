#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace asmbench::io {

/// 17 significant digits; nan and inf spelled out.
std::string format_double(double v);

/// Header plus string cells; comma separated, LF line endings, header mandatory.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
    void add_numeric_row(const std::vector<double>& row);

    bool has_column(std::string_view name) const;
    std::size_t column(std::string_view name) const;
    /// Columns absent from the header.
    std::vector<std::string> missing(const std::vector<std::string>& names) const;
    std::vector<double> numeric(std::string_view name) const;
    std::vector<double> numeric(std::size_t column) const;
};

std::string to_csv(const CsvTable& table);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

/// Throws ConfigError on a missing file, an empty file, or ragged rows.
CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(const std::string& text);

/// Creates parent directories and writes bytes verbatim.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace asmbench::io
