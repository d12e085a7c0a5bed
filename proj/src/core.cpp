#include "fatpoint/core.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fatpoint {

LinearSystem make_system(Int d, Int m0, Int n, Int m) {
    if (d < 0 || m0 < 0 || n < 0 || m < 0) {
        throw std::invalid_argument("linear system parameters must be non-negative");
    }
    return LinearSystem{d, m0, n, m};
}

std::string to_string(const LinearSystem& s) {
    std::ostringstream os;
    os << "L(" << s.d << "," << s.m0 << "," << s.n << "," << s.m << ")";
    return os.str();
}

std::string to_string(const MultVector& v) {
    std::ostringstream os;
    os << "(" << v.d << ";";
    for (std::size_t i = 0; i < v.mults.size(); ++i) {
        os << (i ? "," : " ") << v.mults[i];
    }
    os << ")";
    return os.str();
}

std::string_view to_string(DimensionSource src) {
    switch (src) {
    case DimensionSource::formula: return "formula";
    case DimensionSource::list: return "list";
    case DimensionSource::cremona: return "cremona";
    case DimensionSource::oracle: return "oracle";
    case DimensionSource::degeneration: return "degeneration";
    }
    return "unknown";
}

DimensionReport make_report(const LinearSystem& s, std::optional<Int> actual,
                            DimensionSource source) {
    DimensionReport r;
    r.virtual_dim = virtual_dimension(s);
    r.expected = std::max<Int>(-1, r.virtual_dim);
    if (actual && *actual < r.expected) {
        throw std::logic_error("actual dimension below expected dimension for " + to_string(s));
    }
    r.actual = actual;
    r.source = source;
    return r;
}

// d(d+3) and k(k+1) are always even, so halving the products is exact.
Int virtual_dimension(const LinearSystem& s) {
    return s.d * (s.d + 3) / 2 - s.m0 * (s.m0 + 1) / 2 - s.n * (s.m * (s.m + 1) / 2);
}

Int virtual_dimension(const MultVector& v) {
    Int total = v.d * (v.d + 3) / 2;
    for (Int k : v.mults) total -= k * (k + 1) / 2;
    return total;
}

Int expected_dimension(const LinearSystem& s) { return std::max<Int>(-1, virtual_dimension(s)); }

Int expected_dimension(const MultVector& v) { return std::max<Int>(-1, virtual_dimension(v)); }

Int intersection(const LinearSystem& a, const LinearSystem& b) {
    if (b.n > a.n) {
        throw std::invalid_argument("intersection " + to_string(a) + " . " + to_string(b) +
                                    " needs the second point count not to exceed the first");
    }
    return a.d * b.d - a.m0 * b.m0 - b.n * a.m * b.m;
}

Int self_intersection(const LinearSystem& s) { return s.d * s.d - s.m0 * s.m0 - s.n * s.m * s.m; }

Int genus(const LinearSystem& s) {
    return (s.d - 1) * (s.d - 2) / 2 - s.m0 * (s.m0 - 1) / 2 - s.n * (s.m * (s.m - 1) / 2);
}

MultVector mult_vector(const LinearSystem& s) {
    MultVector v;
    v.d = s.d;
    v.mults.reserve(static_cast<std::size_t>(s.n) + 1);
    v.mults.push_back(s.m0);
    v.mults.insert(v.mults.end(), static_cast<std::size_t>(s.n), s.m);
    return v;
}

MultVector canonicalized(MultVector v) {
    std::stable_sort(v.mults.begin(), v.mults.end(), std::greater<>{});
    return v;
}

std::optional<LinearSystem> as_quasi_homogeneous(const MultVector& v) {
    if (v.d < 0) return std::nullopt;
    std::map<Int, Int, std::greater<>> counts;
    for (Int k : v.mults) {
        if (k < 0) return std::nullopt;
        if (k > 0) ++counts[k];
    }
    if (counts.empty()) return LinearSystem{v.d, 0, 0, 0};
    if (counts.size() == 1) {
        auto [m, c] = *counts.begin();
        return LinearSystem{v.d, 0, c, m};
    }
    if (counts.size() != 2) return std::nullopt;
    auto hi = *counts.begin();
    auto lo = *std::next(counts.begin());
    // the singleton value plays the role of m0; with two singletons the larger does
    if (hi.second == 1) return LinearSystem{v.d, hi.first, lo.second, lo.first};
    if (lo.second == 1) return LinearSystem{v.d, lo.first, hi.second, hi.first};
    return std::nullopt;
}

} // namespace fatpoint
