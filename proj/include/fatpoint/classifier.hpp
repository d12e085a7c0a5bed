#pragma once

// (-1) speciality by list membership: the (-1) curves with m <= 2, the
// classification of (-1) special systems with m = 4, the special families
// with m <= 3 that the m = 4 analysis relies on, and the rules for m0 >= d - 5.

#include <optional>
#include <string>
#include <vector>

#include "fatpoint/core.hpp"

namespace fatpoint {

enum class MinusOneFamily {
    conic5,         // L(2, 0, 5, 1)
    tangent,        // L(e, e-1, 2e, 1)
    compound_lines, // L(e, e, e, 1): e lines through p0
    sextic,         // L(6, 3, 7, 2)
    cubic,          // L(3, 0, 3, 2): three lines through pairs of points
};

struct MinusOneClass {
    MinusOneFamily family = MinusOneFamily::conic5;
    Int e = 0;

    LinearSystem system() const;
    /// Number of disjoint irreducible components.
    Int components() const;
    bool compound() const { return components() > 1; }
};

MinusOneClass conic5();
MinusOneClass tangent(Int e);
MinusOneClass compound_lines(Int e);
MinusOneClass sextic();
MinusOneClass cubic();

struct WitnessTerm {
    MinusOneClass curve;
    Int multiplier = 0;
};

/// L = residual + sum multiplier * curve.
struct Witness {
    LinearSystem residual;
    std::vector<WitnessTerm> terms;
};

/// Residual L - sum N_j A_j; nullopt when a term's point count differs from L's.
std::optional<LinearSystem> residual_of(const LinearSystem& s, const std::vector<WitnessTerm>& terms);

enum class Speciality { minus_one_special, non_special, unknown };

const char* to_string(Speciality s);

struct SpecialityVerdict {
    Speciality status = Speciality::unknown;
    std::optional<Witness> witness;
    std::string rule;
};

/// Match against the m = 4 classification. Throws std::invalid_argument if m != 4.
SpecialityVerdict minus_one_list_m4(const LinearSystem& s);

/// All rows of the m = 4 classification whose parameters give d <= max_d,
/// one system per row and parameter value. Rows with a free degree are
/// instantiated for every admissible d.
std::vector<LinearSystem> m4_list_instances(Int max_d, Int max_n);

enum class ListScope {
    standalone,  // outside the quoted m = 3 families the status is unknown
    large_m0,    // the quoted m = 3 families are taken as exhaustive
};

/// m <= 3. m = 0 and m = 1 are non-special. m = 2 is decided by a residual
/// search over the (-1) curves with m <= 2. m = 3 matches
/// L(3e, 3e-3, 2e, 3) and L(3e+1, 3e-2, 2e, 3).
/// Throws std::invalid_argument if m > 3.
SpecialityVerdict minus_one_list_small_m(const LinearSystem& s, ListScope scope = ListScope::standalone);

/// Speciality from the m0 >= d - 5 rules. Throws std::invalid_argument when
/// m != 4 or m0 < d - 5.
SpecialityVerdict large_m0_verdict(const LinearSystem& s);

/// Dimension from the m0 >= d - 5 rules: e when non-special, v(M) of the
/// list witness when special. actual is empty if the rules and the list
/// disagree.
DimensionReport large_m0_dimension(const LinearSystem& s);

/// Numerical check of a (-1) decomposition: every curve has self-intersection
/// minus its component count and arithmetic genus 1 - components, L.A_j equals
/// -N_j per component with N_j >= 1 and some N_j >= 2, the curves are pairwise
/// disjoint, and the residual has v >= 0 and M.A_j >= 0.
bool verify_minus_one_witness(const LinearSystem& s, const Witness& w);

/// Dimension of a special system from its witness: v(residual).
Int witness_dimension(const Witness& w);

/// Dimension determined by classifier rules alone, without the m = 4
/// theorem's converse and without the oracle: trivial systems, m0 >= d - 5
/// with m = 4, rows of the m = 4 list, and decided m <= 3 systems.
std::optional<Int> classified_dimension(const LinearSystem& s);

/// Systems whose dimension is immediate: no points besides p0, or
/// m0 > d (only the zero polynomial survives).
std::optional<Int> trivial_dimension(const LinearSystem& s);

} // namespace fatpoint
