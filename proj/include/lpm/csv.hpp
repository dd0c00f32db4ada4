#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lpm/matrix.hpp"

namespace lpm {

// Comma-separated table: header row of column names, then numeric rows.
// Decimal point is '.', encoding UTF-8.
struct CsvTable {
    std::vector<std::string> header;
    Matrix values;  // one row per record, one column per header entry

    std::size_t rows() const { return values.rows(); }
    // Index of a named column, or -1.
    int column(const std::string& name) const;
};

// Throws std::invalid_argument on malformed input (missing header, ragged
// rows, non-numeric fields).
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

void write_csv(std::ostream& out, const CsvTable& table);

// Shortest round-trip formatting for doubles, used by every writer so
// repeated runs are byte-identical.
std::string format_double(double v);

}  // namespace lpm
