#pragma once

// (k, b) degenerations: the plane degenerates to a plane P glued to a
// Hirzebruch surface F along a line, with b of the n points moving to F.
// L splits into L_P and L_F plus the two kernel systems.

#include <functional>
#include <optional>
#include <string>

#include "fatpoint/core.hpp"

namespace fatpoint {

enum class DegenerationRule { lemma_empty, lemma_expected, theorem_a, theorem_b };

const char* to_string(DegenerationRule r);
std::optional<DegenerationRule> parse_rule(const std::string& name);

struct ChildDimensions {
    Int lf_hat = -1;
    Int lf = -1;
    Int lp = -1;
    Int lp_hat = -1;
};

struct DegenerationNode {
    LinearSystem parent;
    Int k = 0;
    Int b = 0;
    LinearSystem lf_hat;  // L(d, d-k+1, b, m)
    LinearSystem lf;      // L(d, d-k, b, m)
    LinearSystem lp;      // L(d-k, m0, n-b, m)
    LinearSystem lp_hat;  // L(d-k-1, m0, n-b, m)
    DegenerationRule rule = DegenerationRule::theorem_a;
    std::optional<ChildDimensions> dims;
    std::optional<Int> l0;
};

/// Throws std::invalid_argument unless 0 < k < d and 0 <= b <= n.
DegenerationNode degenerate(const LinearSystem& s, Int k, Int b);

/// v_P + v_F = v + d - k, v^_P + v_F = v - 1, v_P + v^_F = v - 1.
bool check_identities(const DegenerationNode& node);

/// Dimension of the limit system from the four child dimensions. With
/// r_P = l_P - l^_P - 1 and r_F = l_F - l^_F - 1: if r_P + r_F <= d - k - 1
/// the result is l^_P + l^_F + 1, otherwise l_P + l_F - d + k. At equality
/// both formulas are evaluated and must agree (std::logic_error otherwise).
Int dim_L0(const DegenerationNode& node, Int lp, Int lf, Int lp_hat, Int lf_hat);

/// Which case of dim_L0 applied: theorem_a when r_P + r_F <= d - k - 1.
DegenerationRule dim_L0_case(const DegenerationNode& node, const ChildDimensions& dims);

/// Certified actual dimension of a child system, or nullopt when unavailable.
using DimsProvider = std::function<std::optional<Int>(const LinearSystem&)>;

/// L_F and L_P non-special, both kernel systems empty, v <= -1: L is empty.
/// Throws std::invalid_argument when v(s) > -1.
std::optional<DegenerationNode> try_empty(const LinearSystem& s, Int k, Int b, const DimsProvider& dims);

/// All four systems non-special, v_F >= -1 and v_P >= -1, v >= -1: L has
/// the expected dimension. Throws std::invalid_argument when v(s) < -1 or k >= d.
std::optional<DegenerationNode> try_expected(const LinearSystem& s, Int k, Int b, const DimsProvider& dims);

/// Direct evaluation of the limit dimension from the four child
/// dimensions; certifies L when l0 equals the expected dimension of L.
std::optional<DegenerationNode> try_limit(const LinearSystem& s, Int k, Int b, const DimsProvider& dims);

/// Re-derives the node's conclusion from its recorded child dimensions and
/// rule. True iff the recorded rule's hypotheses hold and the conclusion is
/// the expected dimension of the parent.
bool node_conclusion_holds(const DegenerationNode& node);

} // namespace fatpoint
