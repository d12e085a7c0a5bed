#pragma once

// Range sweeps over quasi-homogeneous systems and the classification table.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fatpoint/core.hpp"

namespace fatpoint {

/// Inclusive range; lo > hi is empty.
struct Range {
    Int lo = 0;
    Int hi = -1;
};

/// Parses "a:b" or a single integer "a". Throws std::invalid_argument.
Range parse_range(const std::string& text);

struct SweepSpec {
    std::optional<Range> d;
    std::optional<Range> m0;         // absolute values
    std::optional<Range> m0_offset;  // m0 = d - c for c in the range
    std::optional<Range> n;
    bool critical = false;           // only the boundary n values per (d, m0)
    Int m = 4;
    std::vector<LinearSystem> systems;  // listed after the ranges, in order
};

struct CriticalN {
    std::optional<Int> smallest_negative;     // least n >= 0 with v <= -1
    std::optional<Int> largest_nonnegative;   // greatest n >= 0 with v >= 0
};

/// Exact integer boundaries of v(n) = A - n c with A = d(d+3)/2 - m0(m0+1)/2
/// and c = m(m+1)/2.
CriticalN critical_n(Int d, Int m0, Int m);

/// Deterministic expansion: d ascending, then m0 ascending, then n
/// ascending, then the explicit systems. Systems with m0 < 0 are skipped.
/// Without an n range or critical flag, n runs over 0..12.
std::vector<LinearSystem> expand(const SweepSpec& spec);

struct ClassifyRow {
    LinearSystem system;
    Int v = 0;
    Int e = 0;
    std::optional<Int> dim;
    std::string verdict;  // special, non_special, unknown
    std::string rule;
    std::string source;
};

/// Classifier-only row. For m = 4 a system off the list is reported
/// non-special with dimension e.
ClassifyRow classify_row(const LinearSystem& s);

std::string csv_header();
std::string csv_line(const ClassifyRow& r);
std::string csv_table(const std::vector<ClassifyRow>& rows);
nlohmann::json row_json(const ClassifyRow& r);
nlohmann::json rows_json(const std::vector<ClassifyRow>& rows);

/// Quotes a CSV field when it holds a comma, quote or newline.
std::string csv_field(const std::string& s);

} // namespace fatpoint
