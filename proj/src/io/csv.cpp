#include "asmbench/io/csv.hpp"

#include "asmbench/core/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace asmbench::io {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header.size()) throw ConfigError("csv: row width does not match the header");
    rows.push_back(std::move(row));
}

void CsvTable::add_numeric_row(const std::vector<double>& row) {
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (double v : row) cells.push_back(format_double(v));
    add_row(std::move(cells));
}

bool CsvTable::has_column(std::string_view name) const {
    for (const auto& h : header)
        if (h == name) return true;
    return false;
}

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t j = 0; j < header.size(); ++j)
        if (header[j] == name) return j;
    throw ConfigError("csv: missing column '" + std::string(name) + "'");
}

std::vector<std::string> CsvTable::missing(const std::vector<std::string>& names) const {
    std::vector<std::string> out;
    for (const auto& n : names)
        if (!has_column(n)) out.push_back(n);
    return out;
}

std::vector<double> CsvTable::numeric(std::string_view name) const { return numeric(column(name)); }

std::vector<double> CsvTable::numeric(std::size_t column) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        const auto& cell = r.at(column);
        char* end = nullptr;
        const double v = std::strtod(cell.c_str(), &end);
        if (cell.empty() || end != cell.c_str() + cell.size())
            throw ConfigError("csv: column '" + header.at(column) + "' has a non-numeric cell '" + cell + "'");
        out.push_back(v);
    }
    return out;
}

namespace {

std::string quote(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void append_row(std::string& out, const std::vector<std::string>& row) {
    for (std::size_t j = 0; j < row.size(); ++j) {
        if (j) out += ',';
        out += quote(row[j]);
    }
    out += '\n';
}

}  // namespace

std::string to_csv(const CsvTable& table) {
    if (table.header.empty()) throw ConfigError("csv: header is mandatory");
    std::string out;
    append_row(out, table.header);
    for (const auto& r : table.rows) append_row(out, r);
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open '" + path.string() + "' for writing");
    f << text;
    if (!f) throw ConfigError("failed writing '" + path.string() + "'");
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) { write_text(path, to_csv(table)); }

CsvTable parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string cell;
    bool quoted = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                cell += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cell += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            row.push_back(std::move(cell));
            cell.clear();
            any = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            if (any || !cell.empty()) {
                row.push_back(std::move(cell));
                rows.push_back(std::move(row));
            }
            row.clear();
            cell.clear();
            any = false;
        } else {
            cell += c;
            any = true;
        }
    }
    if (quoted) throw ConfigError("csv: unterminated quoted cell");
    if (any || !cell.empty()) {
        row.push_back(std::move(cell));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ConfigError("csv: empty input (header is mandatory)");
    CsvTable t;
    t.header = std::move(rows.front());
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != t.header.size()) {
            std::ostringstream os;
            os << "csv: row " << i << " has " << rows[i].size() << " cells, header has " << t.header.size();
            throw ConfigError(os.str());
        }
        t.rows.push_back(std::move(rows[i]));
    }
    return t;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    try {
        return parse_csv(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

}  // namespace asmbench::io
