#pragma once

// CSV formatting helpers. Doubles are written with 17 significant digits so
// a written value parses back to the identical bit pattern.

#include <charconv>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scalefree/process.hpp"

namespace scalefree {

/// Round-trip-exact decimal representation of a double ('.' decimal point,
/// locale independent).
inline std::string fmt17(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    while (first != last && (*first == ' ' || *first == '\t')) ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{}) {
        throw std::invalid_argument("malformed number: '" + s + "'");
    }
    return v;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

/// Writes a path as CSV with header "index,time,value".
inline void write_path_csv(std::ostream& os, const SamplePath& path) {
    os << "index,time,value\n";
    for (std::size_t i = 0; i < path.values.size(); ++i) {
        const double t = 1.0 + static_cast<double>(i) * path.dt;
        os << i << ',' << fmt17(t) << ',' << fmt17(path.values[i]) << '\n';
    }
}

/// Reads a path from CSV; the header must name a "value" column. A "time"
/// column, when present, sets dt from its first two entries.
inline SamplePath read_path_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) {
        throw std::invalid_argument("csv: empty input");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> header = split_csv_line(line);
    std::ptrdiff_t value_col = -1;
    std::ptrdiff_t time_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "value") value_col = static_cast<std::ptrdiff_t>(i);
        if (header[i] == "time") time_col = static_cast<std::ptrdiff_t>(i);
    }
    if (value_col < 0) {
        throw std::invalid_argument("csv: no 'value' column in header");
    }

    SamplePath path;
    std::vector<double> times;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() <= static_cast<std::size_t>(value_col)) {
            throw std::invalid_argument("csv: short row");
        }
        path.values.push_back(parse_double(cells[static_cast<std::size_t>(value_col)]));
        if (time_col >= 0 && times.size() < 2 &&
            cells.size() > static_cast<std::size_t>(time_col)) {
            times.push_back(parse_double(cells[static_cast<std::size_t>(time_col)]));
        }
    }
    path.n = path.values.size();
    path.dt = (times.size() == 2) ? times[1] - times[0] : 1.0;
    path.epochs.push_back(0);
    path.signs.push_back(1);
    return path;
}

}  // namespace scalefree
