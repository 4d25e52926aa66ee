#include "pdolab/csv.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "pdolab/grid.hpp"
#include "pdolab/quantize.hpp"

namespace pdolab {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvTable::add_meta(const std::string& key, const std::string& value) {
    meta.emplace_back(key, value);
}

void CsvTable::add_meta(const std::string& key, double value) { meta.emplace_back(key, fmt17(value)); }

std::string CsvTable::to_string(bool with_timestamp) const {
    std::ostringstream os;
    os << "# pdolab-csv v1\n";
    if (with_timestamp) {
        char buf[64];
        const std::time_t now = std::time(nullptr);
        std::tm tm{};
        gmtime_r(&now, &tm);
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        os << "# timestamp=" << buf << "\n";
    }
    for (const auto& [k, v] : meta) os << "# " << k << "=" << v << "\n";
    for (std::size_t c = 0; c < columns.size(); ++c)
        os << columns[c] << (c + 1 == columns.size() ? "\n" : ",");
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) os << row[c] << (c + 1 == row.size() ? "\n" : ",");
    return os.str();
}

void CsvTable::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << to_string();
}

CsvTable CsvTable::parse(const std::string& text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = line.substr(1);
            if (!body.empty() && body[0] == ' ') body = body.substr(1);
            const auto eq = body.find('=');
            if (eq != std::string::npos) t.meta.emplace_back(body.substr(0, eq), body.substr(eq + 1));
            continue;
        }
        std::vector<std::string> cells;
        std::string cur;
        for (char ch : line) {
            if (ch == ',') {
                cells.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        cells.push_back(cur);
        if (!have_header) {
            t.columns = std::move(cells);
            have_header = true;
        } else {
            t.rows.push_back(std::move(cells));
        }
    }
    if (!have_header) throw ConfigError("CSV: missing header row");
    return t;
}

CsvTable CsvTable::read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open CSV file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

int CsvTable::column_index(const std::string& name) const {
    for (std::size_t c = 0; c < columns.size(); ++c)
        if (columns[c] == name) return static_cast<int>(c);
    throw ConfigError("CSV: missing column '" + name + "'");
}

const std::string* CsvTable::find_meta(const std::string& key) const {
    for (const auto& [k, v] : meta)
        if (k == key) return &v;
    return nullptr;
}

void write_grid_function(const std::string& path, const GridFunction& u) {
    CsvTable t;
    t.add_meta("dim", static_cast<double>(u.grid.dim()));
    t.add_meta("points_per_axis", static_cast<double>(u.grid.points_per_axis()));
    t.add_meta("side_length", u.grid.side_length());
    t.columns = {"index", "re", "im"};
    t.rows.reserve(u.values.size());
    for (std::size_t k = 0; k < u.values.size(); ++k)
        t.rows.push_back({std::to_string(k), fmt17(u.values[k].real()), fmt17(u.values[k].imag())});
    t.write(path);
}

void write_kernel(const std::string& path, const KernelMatrix& K) {
    CsvTable t;
    t.add_meta("dim", static_cast<double>(K.grid.dim()));
    t.add_meta("points_per_axis", static_cast<double>(K.grid.points_per_axis()));
    t.add_meta("side_length", K.grid.side_length());
    t.columns = {"row", "col", "re", "im"};
    const std::size_t n = K.order();
    t.rows.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const cplx v = K.at(r, c);
            t.rows.push_back({std::to_string(r), std::to_string(c), fmt17(v.real()), fmt17(v.imag())});
        }
    t.write(path);
}

}  // namespace pdolab
