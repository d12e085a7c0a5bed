#include "fatpoint/sweep.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include "fatpoint/classifier.hpp"

namespace fatpoint {

namespace {

Int parse_int(std::string_view text) {
    Int v = 0;
    const char* end = text.data() + text.size();
    auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end || text.empty()) {
        throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    }
    return v;
}

Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

} // namespace

Range parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        const Int v = parse_int(text);
        return {v, v};
    }
    return {parse_int(std::string_view(text).substr(0, colon)), parse_int(std::string_view(text).substr(colon + 1))};
}

CriticalN critical_n(Int d, Int m0, Int m) {
    CriticalN out;
    const Int a = d * (d + 3) / 2 - m0 * (m0 + 1) / 2;
    const Int c = conditions(m);
    if (c == 0) {
        // v does not depend on n
        if (a <= -1) out.smallest_negative = 0;
        return out;
    }
    out.smallest_negative = std::max<Int>(0, ceil_div(a + 1, c));
    if (a >= 0) out.largest_nonnegative = floor_div(a, c);
    return out;
}

std::vector<LinearSystem> expand(const SweepSpec& spec) {
    std::vector<LinearSystem> out;
    if (spec.d) {
        for (Int d = spec.d->lo; d <= spec.d->hi; ++d) {
            std::vector<Int> m0s;
            if (spec.m0_offset) {
                for (Int c = spec.m0_offset->hi; c >= spec.m0_offset->lo; --c) m0s.push_back(d - c);
            } else {
                const Range r = spec.m0.value_or(Range{0, d});
                for (Int m0 = r.lo; m0 <= r.hi; ++m0) m0s.push_back(m0);
            }
            for (Int m0 : m0s) {
                if (m0 < 0 || d < 0) continue;
                std::vector<Int> ns;
                if (spec.critical) {
                    const CriticalN c = critical_n(d, m0, spec.m);
                    if (c.largest_nonnegative) ns.push_back(*c.largest_nonnegative);
                    if (c.smallest_negative && (!c.largest_nonnegative || *c.smallest_negative != *c.largest_nonnegative)) {
                        ns.push_back(*c.smallest_negative);
                    }
                    if (spec.n) {
                        std::erase_if(ns, [&](Int n) { return n < spec.n->lo || n > spec.n->hi; });
                    }
                } else {
                    const Range r = spec.n.value_or(Range{0, 12});
                    for (Int n = std::max<Int>(0, r.lo); n <= r.hi; ++n) ns.push_back(n);
                }
                for (Int n : ns) out.push_back(LinearSystem{d, m0, n, spec.m});
            }
        }
    }
    out.insert(out.end(), spec.systems.begin(), spec.systems.end());
    return out;
}

ClassifyRow classify_row(const LinearSystem& s) {
    ClassifyRow row;
    row.system = s;
    row.v = virtual_dimension(s);
    row.e = expected_dimension(s);
    auto set = [&](const SpecialityVerdict& v, const char* source) {
        row.rule = v.rule;
        row.source = source;
        switch (v.status) {
        case Speciality::minus_one_special:
            row.verdict = "special";
            row.dim = witness_dimension(*v.witness);
            break;
        case Speciality::non_special:
            row.verdict = "non_special";
            row.dim = row.e;
            break;
        case Speciality::unknown: row.verdict = "unknown"; break;
        }
    };
    if (auto t = trivial_dimension(s)) {
        row.verdict = *t > row.e ? "special" : "non_special";
        row.dim = *t;
        row.rule = s.m0 > s.d ? "m0>d" : "single point";
        row.source = "formula";
        return row;
    }
    if (s.m <= 3) {
        set(minus_one_list_small_m(s), "list");
    } else if (s.m == 4) {
        if (s.m0 >= s.d - 5) {
            set(large_m0_verdict(s), "list");
        } else {
            SpecialityVerdict v = minus_one_list_m4(s);
            if (v.status != Speciality::minus_one_special) {
                v.status = Speciality::non_special;
                v.rule = "not on the m=4 list";
            }
            set(v, "list");
        }
    } else {
        row.verdict = "unknown";
        row.rule = "m>4 is outside the classification";
        row.source = "list";
    }
    return row;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_header() { return "d,m0,n,m,v,e,dim,verdict,rule,source"; }

std::string csv_line(const ClassifyRow& r) {
    std::ostringstream os;
    os << r.system.d << ',' << r.system.m0 << ',' << r.system.n << ',' << r.system.m << ',' << r.v << ',' << r.e << ','
       << (r.dim ? std::to_string(*r.dim) : std::string()) << ',' << csv_field(r.verdict) << ',' << csv_field(r.rule)
       << ',' << csv_field(r.source);
    return os.str();
}

std::string csv_table(const std::vector<ClassifyRow>& rows) {
    std::string out = csv_header() + "\n";
    for (const auto& r : rows) out += csv_line(r) + "\n";
    return out;
}

nlohmann::json row_json(const ClassifyRow& r) {
    nlohmann::json j = {{"d", r.system.d},      {"m0", r.system.m0}, {"n", r.system.n},
                        {"m", r.system.m},      {"v", r.v},          {"e", r.e},
                        {"verdict", r.verdict}, {"rule", r.rule},    {"source", r.source}};
    j["dim"] = r.dim ? nlohmann::json(*r.dim) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json rows_json(const std::vector<ClassifyRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) arr.push_back(row_json(r));
    return arr;
}

} // namespace fatpoint
