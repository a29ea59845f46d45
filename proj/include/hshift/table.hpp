#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "hshift/errors.hpp"

namespace hshift {

/// Locale-independent "%.9g" rendering; nine significant digits everywhere
/// keeps output deterministic across platforms and round-trippable well
/// within the tolerances the rest of the library works to.
inline std::string format_g9(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

using Cell = std::variant<double, std::string>;

inline std::string render(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) return format_g9(*d);
    return std::get<std::string>(c);
}

enum class TableFormat { csv, kv };

/// A rectangular table with named columns.  csv output is one header line
/// plus one line per row; kv output is one key=value line per cell, rows
/// separated by blank lines.  Line endings are a bare LF.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    Table& add_row(std::vector<Cell> cells) {
        rows.push_back(std::move(cells));
        return *this;
    }
};

inline void emit_table(std::ostream& os, const Table& t, TableFormat format) {
    for (const auto& row : t.rows)
        if (row.size() != t.columns.size())
            throw domain_error("emit_table: ragged row (have " + std::to_string(row.size()) +
                               " cells, expected " + std::to_string(t.columns.size()) + ")");

    if (format == TableFormat::csv) {
        for (size_t j = 0; j < t.columns.size(); ++j)
            os << (j ? "," : "") << t.columns[j];
        os << '\n';
        for (const auto& row : t.rows) {
            for (size_t j = 0; j < row.size(); ++j)
                os << (j ? "," : "") << render(row[j]);
            os << '\n';
        }
    } else {
        for (size_t i = 0; i < t.rows.size(); ++i) {
            if (i) os << '\n';
            for (size_t j = 0; j < t.columns.size(); ++j)
                os << t.columns[j] << '=' << render(t.rows[i][j]) << '\n';
        }
    }
}

inline std::string emit_table(const Table& t, TableFormat format) {
    std::ostringstream os;
    emit_table(os, t, format);
    return os.str();
}

} // namespace hshift
