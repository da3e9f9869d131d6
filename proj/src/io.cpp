#include "geo/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace geo {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',' || ch == ' ' || ch == '\t') {
            if (!cur.empty()) {
                fields.push_back(cur);
                cur.clear();
            }
            // consecutive separators collapse; commas may carry spaces
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) fields.push_back(cur);
    return fields;
}

double parse_number(const std::string& token, std::size_t line_no) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0' || errno == ERANGE)
        throw InputError("line " + std::to_string(line_no) + ": invalid number");
    return v;
}

}  // namespace

std::vector<Point> parse_points(const std::string& text) {
    std::vector<Point> points;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    int dim = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (dim == 0) {
            dim = static_cast<int>(fields.size());
            if (dim < kMinDim || dim > kMaxDim)
                throw InputError("line " + std::to_string(line_no) + ": expected between " +
                                 std::to_string(kMinDim) + " and " + std::to_string(kMaxDim) +
                                 " columns");
        }
        if (static_cast<int>(fields.size()) != dim)
            throw InputError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(dim) + " columns, got " +
                             std::to_string(fields.size()));
        Point p(dim);
        for (int i = 0; i < dim; ++i) p[i] = parse_number(fields[i], line_no);
        if (!p.finite())
            throw InputError("line " + std::to_string(line_no) + ": invalid number");
        points.push_back(p);
    }
    if (points.empty()) throw InputError("no points found in input");
    return points;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

std::vector<Point> load_points(const std::string& path) {
    try {
        return parse_points(read_file(path));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_csv(const std::string& path, const std::vector<std::string>& comments,
               const CsvRow& header, const std::vector<CsvRow>& rows) {
    std::ostringstream out;
    for (const std::string& c : comments) out << "# " << c << "\n";
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "");
    out << "\n";
    for (const CsvRow& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "");
        out << "\n";
    }
    write_file(path, out.str());
}

void write_measure_csv(const std::string& path, const DiscreteMeasure& measure,
                       std::uint64_t seed) {
    measure.validate();
    const int d = measure.atoms.empty() ? 0 : measure.atoms.front().dim();
    CsvRow header;
    for (int i = 0; i < d; ++i) header.push_back("x" + std::to_string(i + 1));
    header.push_back("mass");
    std::vector<CsvRow> rows;
    rows.reserve(measure.atoms.size());
    for (std::size_t a = 0; a < measure.atoms.size(); ++a) {
        CsvRow row;
        for (int i = 0; i < d; ++i) row.push_back(format_double(measure.atoms[a][i]));
        row.push_back(format_double(measure.masses[a]));
        rows.push_back(std::move(row));
    }
    write_csv(path,
              {"total=" + format_double(measure.total()) + " seed=" + std::to_string(seed)},
              header, rows);
}

DiscreteMeasure read_measure_csv(const std::string& path) {
    const std::string text = read_file(path);
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    DiscreteMeasure out;
    bool header_skipped = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_skipped) {  // column names
            header_skipped = true;
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() < 3)
            throw InputError(path + ": line " + std::to_string(line_no) + ": expected >= 3 columns");
        Point p(static_cast<int>(fields.size()) - 1);
        for (std::size_t i = 0; i + 1 < fields.size(); ++i)
            p[static_cast<int>(i)] = parse_number(fields[i], line_no);
        out.atoms.push_back(p);
        out.masses.push_back(parse_number(fields.back(), line_no));
    }
    out.validate();
    return out;
}

}  // namespace geo
