#pragma once

// Numeric invariants of quasi-homogeneous plane linear systems L(d, m0, n, m):
// plane curves of degree d with an m0-fold point at p0 and m-fold points at
// n further general points.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fatpoint {

using Int = std::int64_t;

struct LinearSystem {
    Int d = 0;
    Int m0 = 0;
    Int n = 0;
    Int m = 0;

    auto operator<=>(const LinearSystem&) const = default;
};

/// Throws std::invalid_argument when d, n or m is negative or m0 is negative.
LinearSystem make_system(Int d, Int m0, Int n, Int m);

std::string to_string(const LinearSystem& s);

/// General multiplicity vector (d; m_1, ..., m_r). Entries may be negative
/// after Cremona steps.
struct MultVector {
    Int d = 0;
    std::vector<Int> mults;

    bool operator==(const MultVector&) const = default;
};

std::string to_string(const MultVector& v);

enum class DimensionSource { formula, list, cremona, oracle, degeneration };

std::string_view to_string(DimensionSource src);

struct DimensionReport {
    Int virtual_dim = 0;
    Int expected = -1;
    std::optional<Int> actual;
    DimensionSource source = DimensionSource::formula;
};

/// Report for s with the given actual dimension. Throws std::logic_error if
/// actual < expected_dimension(s).
DimensionReport make_report(const LinearSystem& s, std::optional<Int> actual,
                            DimensionSource source);

/// Number of conditions imposed by a point of multiplicity k (zero for k <= 0).
constexpr Int conditions(Int k) { return k > 0 ? k * (k + 1) / 2 : 0; }

/// Number of monomials of degree <= d, i.e. one more than the projective
/// dimension of the complete system of degree d curves.
constexpr Int monomial_count(Int d) { return d >= 0 ? (d + 1) * (d + 2) / 2 : 0; }

Int virtual_dimension(const LinearSystem& s);
Int virtual_dimension(const MultVector& v);
Int expected_dimension(const LinearSystem& s);
Int expected_dimension(const MultVector& v);

/// a . b, defined when b.n <= a.n. Throws std::invalid_argument otherwise.
Int intersection(const LinearSystem& a, const LinearSystem& b);
Int self_intersection(const LinearSystem& s);
Int genus(const LinearSystem& s);

/// (d; m0, m, ..., m) with n copies of m. Zero multiplicities are kept.
MultVector mult_vector(const LinearSystem& s);

/// Multiplicities sorted descending; the sort is stable.
MultVector canonicalized(MultVector v);

/// Reads back a quasi-homogeneous shape from a vector: the positive entries
/// must be all equal, or all equal but one. Zero entries are dropped. When
/// every positive entry equals m the result is L(d, 0, count, m). Negative
/// entries make the vector non-quasi-homogeneous.
std::optional<LinearSystem> as_quasi_homogeneous(const MultVector& v);

} // namespace fatpoint
