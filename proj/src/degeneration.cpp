#include "fatpoint/degeneration.hpp"

#include <stdexcept>

namespace fatpoint {

const char* to_string(DegenerationRule r) {
    switch (r) {
    case DegenerationRule::lemma_empty: return "lemma_empty";
    case DegenerationRule::lemma_expected: return "lemma_expected";
    case DegenerationRule::theorem_a: return "theorem_a";
    case DegenerationRule::theorem_b: return "theorem_b";
    }
    return "unknown";
}

std::optional<DegenerationRule> parse_rule(const std::string& name) {
    for (auto r : {DegenerationRule::lemma_empty, DegenerationRule::lemma_expected, DegenerationRule::theorem_a,
                   DegenerationRule::theorem_b}) {
        if (name == to_string(r)) return r;
    }
    return std::nullopt;
}

DegenerationNode degenerate(const LinearSystem& s, Int k, Int b) {
    if (k <= 0 || k >= s.d) throw std::invalid_argument("degeneration needs 0 < k < d for " + to_string(s));
    if (b < 0 || b > s.n) throw std::invalid_argument("degeneration needs 0 <= b <= n for " + to_string(s));
    DegenerationNode node;
    node.parent = s;
    node.k = k;
    node.b = b;
    node.lf_hat = {s.d, s.d - k + 1, b, s.m};
    node.lf = {s.d, s.d - k, b, s.m};
    node.lp = {s.d - k, s.m0, s.n - b, s.m};
    node.lp_hat = {s.d - k - 1, s.m0, s.n - b, s.m};
    return node;
}

bool check_identities(const DegenerationNode& node) {
    const Int v = virtual_dimension(node.parent);
    const Int vp = virtual_dimension(node.lp), vf = virtual_dimension(node.lf);
    const Int vph = virtual_dimension(node.lp_hat), vfh = virtual_dimension(node.lf_hat);
    const Int d = node.parent.d, k = node.k;
    return vp + vf == v + d - k && vph + vf == v - 1 && vp + vfh == v - 1;
}

Int dim_L0(const DegenerationNode& node, Int lp, Int lf, Int lp_hat, Int lf_hat) {
    const Int d = node.parent.d, k = node.k;
    const Int r_sum = (lp - lp_hat - 1) + (lf - lf_hat - 1);
    const Int case_a = lp_hat + lf_hat + 1;
    const Int case_b = lp + lf - d + k;
    if (r_sum == d - k - 1 && case_a != case_b) {
        throw std::logic_error("limit dimension formulas disagree at r_P + r_F = d - k - 1");
    }
    return r_sum <= d - k - 1 ? case_a : case_b;
}

DegenerationRule dim_L0_case(const DegenerationNode& node, const ChildDimensions& c) {
    const Int r_sum = (c.lp - c.lp_hat - 1) + (c.lf - c.lf_hat - 1);
    return r_sum <= node.parent.d - node.k - 1 ? DegenerationRule::theorem_a : DegenerationRule::theorem_b;
}

namespace {

std::optional<ChildDimensions> fetch(const DegenerationNode& node, const DimsProvider& dims) {
    ChildDimensions c;
    auto get = [&](const LinearSystem& s, Int& out) {
        auto v = dims(s);
        if (!v) return false;
        out = *v;
        return true;
    };
    if (!get(node.lf_hat, c.lf_hat) || !get(node.lf, c.lf) || !get(node.lp, c.lp) || !get(node.lp_hat, c.lp_hat)) {
        return std::nullopt;
    }
    return c;
}

bool non_special(const LinearSystem& s, Int dim) { return dim == expected_dimension(s); }

bool empty_hypotheses(const DegenerationNode& n, const ChildDimensions& c) {
    return virtual_dimension(n.parent) <= -1 && non_special(n.lf, c.lf) && non_special(n.lp, c.lp) &&
           c.lf_hat == -1 && c.lp_hat == -1;
}

bool expected_hypotheses(const DegenerationNode& n, const ChildDimensions& c) {
    return virtual_dimension(n.parent) >= -1 && n.k < n.parent.d && non_special(n.lf_hat, c.lf_hat) &&
           non_special(n.lf, c.lf) && non_special(n.lp, c.lp) && non_special(n.lp_hat, c.lp_hat) &&
           virtual_dimension(n.lf) >= -1 && virtual_dimension(n.lp) >= -1;
}

DegenerationNode finish(DegenerationNode node, const ChildDimensions& c, DegenerationRule rule) {
    node.dims = c;
    node.l0 = dim_L0(node, c.lp, c.lf, c.lp_hat, c.lf_hat);
    node.rule = rule;
    return node;
}

} // namespace

std::optional<DegenerationNode> try_empty(const LinearSystem& s, Int k, Int b, const DimsProvider& dims) {
    if (virtual_dimension(s) > -1) throw std::invalid_argument("try_empty needs v <= -1 for " + to_string(s));
    DegenerationNode node = degenerate(s, k, b);
    auto c = fetch(node, dims);
    if (!c || !empty_hypotheses(node, *c)) return std::nullopt;
    node = finish(std::move(node), *c, DegenerationRule::lemma_empty);
    if (*node.l0 != -1) throw std::logic_error("emptiness lemma produced a nonempty limit");
    return node;
}

std::optional<DegenerationNode> try_expected(const LinearSystem& s, Int k, Int b, const DimsProvider& dims) {
    if (virtual_dimension(s) < -1) throw std::invalid_argument("try_expected needs v >= -1 for " + to_string(s));
    if (k >= s.d) throw std::invalid_argument("try_expected needs k < d");
    DegenerationNode node = degenerate(s, k, b);
    auto c = fetch(node, dims);
    if (!c || !expected_hypotheses(node, *c)) return std::nullopt;
    node = finish(std::move(node), *c, DegenerationRule::lemma_expected);
    if (*node.l0 != virtual_dimension(s)) throw std::logic_error("expected-dimension lemma missed v");
    return node;
}

std::optional<DegenerationNode> try_limit(const LinearSystem& s, Int k, Int b, const DimsProvider& dims) {
    DegenerationNode node = degenerate(s, k, b);
    auto c = fetch(node, dims);
    if (!c) return std::nullopt;
    const DegenerationRule rule = dim_L0_case(node, *c);
    node = finish(std::move(node), *c, rule);
    if (*node.l0 != expected_dimension(s)) return std::nullopt;
    return node;
}

bool node_conclusion_holds(const DegenerationNode& node) {
    if (node.k <= 0 || node.k >= node.parent.d || node.b < 0 || node.b > node.parent.n) return false;
    const DegenerationNode fresh = degenerate(node.parent, node.k, node.b);
    if (fresh.lf_hat != node.lf_hat || fresh.lf != node.lf || fresh.lp != node.lp || fresh.lp_hat != node.lp_hat) {
        return false;
    }
    if (!check_identities(node) || !node.dims || !node.l0) return false;
    const ChildDimensions& c = *node.dims;
    for (Int x : {c.lf_hat, c.lf, c.lp, c.lp_hat}) {
        if (x < -1) return false;
    }
    Int l0 = 0;
    try {
        l0 = dim_L0(node, c.lp, c.lf, c.lp_hat, c.lf_hat);
    } catch (const std::logic_error&) {
        return false;
    }
    if (l0 != *node.l0 || l0 != expected_dimension(node.parent)) return false;
    switch (node.rule) {
    case DegenerationRule::lemma_empty: return empty_hypotheses(node, c);
    case DegenerationRule::lemma_expected: return expected_hypotheses(node, c);
    case DegenerationRule::theorem_a:
    case DegenerationRule::theorem_b: return dim_L0_case(node, c) == node.rule;
    }
    return false;
}

} // namespace fatpoint
