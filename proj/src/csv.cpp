#include "lpm/csv.hpp"

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lpm {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& field, std::size_t line_no) {
    const std::string s = strip(field);
    if (s.empty())
        throw std::invalid_argument("csv: empty field at line " + std::to_string(line_no));
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE)
        throw std::invalid_argument("csv: bad numeric field '" + s + "' at line " +
                                    std::to_string(line_no));
    return v;
}

}  // namespace

int CsvTable::column(const std::string& name) const {
    for (std::size_t j = 0; j < header.size(); ++j)
        if (header[j] == name) return static_cast<int>(j);
    return -1;
}

CsvTable read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("csv: empty input");
    CsvTable table;
    for (const auto& h : split_fields(line)) table.header.push_back(strip(h));
    if (table.header.empty()) throw std::invalid_argument("csv: empty header");

    std::vector<std::vector<double>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (strip(line).empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != table.header.size())
            throw std::invalid_argument("csv: expected " + std::to_string(table.header.size()) +
                                        " fields, got " + std::to_string(fields.size()) +
                                        " at line " + std::to_string(line_no));
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(parse_double(f, line_no));
        rows.push_back(std::move(row));
    }
    table.values = Matrix::from_rows(rows);
    return table;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("csv: cannot open " + path);
    return read_csv(in);
}

void write_csv(std::ostream& out, const CsvTable& table) {
    for (std::size_t j = 0; j < table.header.size(); ++j) {
        if (j) out << ',';
        out << table.header[j];
    }
    out << '\n';
    for (std::size_t i = 0; i < table.values.rows(); ++i) {
        for (std::size_t j = 0; j < table.values.cols(); ++j) {
            if (j) out << ',';
            out << format_double(table.values(i, j));
        }
        out << '\n';
    }
}

std::string format_double(double v) {
    char buf[32];
    // %.17g round-trips every double; trim to the shortest form that does.
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

}  // namespace lpm
