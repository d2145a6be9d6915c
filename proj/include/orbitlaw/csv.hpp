#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbitlaw::csv {

// Minimal numeric CSV table: one header line of column names, then rows of
// doubles. Enough for the artifacts this project exchanges between stages.
struct Table {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;  // columns[c][row]

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }

    int column_index(const std::string& name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return static_cast<int>(i);
        return -1;
    }

    const std::vector<double>& column(const std::string& name) const {
        const int idx = column_index(name);
        if (idx < 0) throw std::runtime_error("csv: no column named '" + name + "'");
        return columns[static_cast<std::size_t>(idx)];
    }
};

inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline Table read_table(std::istream& in, const std::string& what = "csv") {
    Table t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_fields(line);
        if (t.names.empty()) {
            t.names = fields;
            t.columns.assign(fields.size(), {});
            continue;
        }
        if (fields.size() != t.names.size())
            throw std::runtime_error(what + ": line " + std::to_string(lineno) +
                                     ": expected " + std::to_string(t.names.size()) + " fields");
        for (std::size_t c = 0; c < fields.size(); ++c) {
            std::size_t pos = 0;
            double v = 0.0;
            try {
                v = std::stod(fields[c], &pos);
            } catch (const std::exception&) {
                throw std::runtime_error(what + ": line " + std::to_string(lineno) +
                                         ": bad number '" + fields[c] + "'");
            }
            t.columns[c].push_back(v);
        }
    }
    return t;
}

inline Table read_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("csv: cannot open " + path);
    return read_table(in, path);
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_table(std::ostream& out, const Table& t) {
    for (std::size_t i = 0; i < t.names.size(); ++i)
        out << (i ? "," : "") << t.names[i];
    out << '\n';
    for (std::size_t r = 0; r < t.rows(); ++r) {
        for (std::size_t c = 0; c < t.columns.size(); ++c)
            out << (c ? "," : "") << format_double(t.columns[c][r]);
        out << '\n';
    }
}

inline void write_table_file(const std::string& path, const Table& t) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("csv: cannot write " + path);
    write_table(out, t);
}

// FNV-1a 64-bit, used for artifact hashes in run manifests.
inline std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (const unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace orbitlaw::csv
