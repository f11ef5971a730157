#pragma once

// Deterministic CSV output: header row, LF line endings, exact integers
// unquoted, reals at 12 significant digits.  Identical data must serialize to
// identical bytes, so all formatting funnels through these helpers.

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "rational.hpp"

namespace quotatope {

inline std::string csv_cell(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string csv_cell(long v) { return std::to_string(v); }
inline std::string csv_cell(int v) { return std::to_string(v); }
inline std::string csv_cell(const BigInt& v) { return v.get_str(); }
inline std::string csv_cell(const std::string& v) { return v; }
inline std::string csv_cell(const char* v) { return v; }

// rationals print as reals; the exact p/q form is reserved for JSON
inline std::string csv_cell(const Rational& v) { return csv_cell(v.get_d()); }

inline void csv_row(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        out << cells[i];
    }
    out << '\n';
}

}  // namespace quotatope
