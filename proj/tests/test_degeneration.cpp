#include <doctest.h>

#include <stdexcept>

#include <map>

#include "fatpoint/degeneration.hpp"

using namespace fatpoint;

namespace {

DimsProvider table(std::map<LinearSystem, Int> dims) {
    return [dims = std::move(dims)](const LinearSystem& s) -> std::optional<Int> {
        auto it = dims.find(s);
        if (it == dims.end()) return std::nullopt;
        return it->second;
    };
}

} // namespace

TEST_CASE("restricted systems") {
    const DegenerationNode n = degenerate(LinearSystem{39, 33, 26, 4}, 3, 13);
    CHECK(n.lf_hat == LinearSystem{39, 37, 13, 4});
    CHECK(n.lf == LinearSystem{39, 36, 13, 4});
    CHECK(n.lp == LinearSystem{36, 33, 13, 4});
    CHECK(n.lp_hat == LinearSystem{35, 33, 13, 4});
    CHECK(check_identities(n));

    for (Int m0 = 0; m0 <= 30; ++m0) {
        for (Int n36 = 13; n36 <= 40; ++n36) {
            const DegenerationNode t = degenerate(LinearSystem{36, m0, n36, 4}, 3, 13);
            CHECK(t.lf_hat == LinearSystem{36, 34, 13, 4});
            CHECK(t.lf == LinearSystem{36, 33, 13, 4});
            CHECK(t.lp == LinearSystem{33, m0, n36 - 13, 4});
            CHECK(t.lp_hat == LinearSystem{32, m0, n36 - 13, 4});
            CHECK(check_identities(t));
        }
    }

    CHECK(degenerate(LinearSystem{9, 2, 5, 4}, 8, 2).lp.d == 1);
    CHECK_THROWS_AS(degenerate(LinearSystem{9, 2, 5, 4}, 9, 2), std::invalid_argument);
    CHECK_THROWS_AS(degenerate(LinearSystem{9, 2, 5, 4}, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(degenerate(LinearSystem{9, 2, 5, 4}, 3, 6), std::invalid_argument);
}

TEST_CASE("identities fail on a corrupted node") {
    DegenerationNode n = degenerate(LinearSystem{20, 10, 12, 4}, 3, 7);
    n.lp.d += 1;
    CHECK_FALSE(check_identities(n));
}

TEST_CASE("limit dimension") {
    const DegenerationNode n46 = degenerate(LinearSystem{46, 40, 30, 4}, 3, 16);
    CHECK(dim_L0(n46, 29, 21, 0, -1) == 7);
    CHECK(dim_L0_case(n46, ChildDimensions{-1, 21, 29, 0}) == DegenerationRule::theorem_b);

    const DegenerationNode n31 = degenerate(LinearSystem{31, 24, 25, 4}, 3, 11);
    CHECK(n31.lp == LinearSystem{28, 24, 14, 4});
    CHECK(dim_L0(n31, 0, 11, -1, -1) == -1);
    CHECK(dim_L0_case(n31, ChildDimensions{-1, 11, 0, -1}) == DegenerationRule::theorem_a);

    CHECK(dim_L0(degenerate(LinearSystem{12, 3, 6, 4}, 3, 4), -1, -1, -1, -1) == -1);
}

TEST_CASE("emptiness lemma on the d = 39 node") {
    const LinearSystem s{39, 33, 26, 4};
    // all four children non-special, both kernels with negative v
    std::map<LinearSystem, Int> dims;
    const DegenerationNode n = degenerate(s, 3, 13);
    for (const auto& c : {n.lf_hat, n.lf, n.lp, n.lp_hat}) dims[c] = expected_dimension(c);
    CHECK(dims[n.lf_hat] == -1);
    CHECK(dims[n.lp_hat] == -1);
    CHECK(dims[n.lf] == 23);
    CHECK(dims[n.lp] == 11);
    const auto provider = table(dims);
    auto node = try_empty(s, 3, 13, provider);
    REQUIRE(node.has_value());
    CHECK(node->rule == DegenerationRule::lemma_empty);
    CHECK(*node->l0 == -1);
    CHECK(node_conclusion_holds(*node));

    CHECK_FALSE(try_empty(s, 3, 13, table({})).has_value());
    CHECK_THROWS_AS(try_empty(LinearSystem{10, 0, 1, 4}, 3, 1, provider), std::invalid_argument);
}

TEST_CASE("expected-dimension lemma and its preconditions") {
    const LinearSystem s{20, 14, 10, 4};
    const DegenerationNode n = degenerate(s, 3, 7);
    std::map<LinearSystem, Int> dims;
    for (const auto& c : {n.lf_hat, n.lf, n.lp, n.lp_hat}) dims[c] = expected_dimension(c);
    REQUIRE(virtual_dimension(s) == 25);
    REQUIRE(virtual_dimension(n.lf) == 7);
    REQUIRE(virtual_dimension(n.lp) == 35);
    auto node = try_expected(s, 3, 7, table(dims));
    REQUIRE(node.has_value());
    CHECK(node->rule == DegenerationRule::lemma_expected);
    CHECK(*node->l0 == 25);
    CHECK(node_conclusion_holds(*node));
    CHECK_THROWS_AS(try_expected(LinearSystem{10, 0, 20, 4}, 3, 3, table(dims)), std::invalid_argument);
}

TEST_CASE("the d = 46 node closes through the limit formula") {
    const LinearSystem s{46, 40, 30, 4};
    const DegenerationNode n = degenerate(s, 3, 16);
    const auto provider = table({{n.lf_hat, -1}, {n.lf, 21}, {n.lp, 29}, {n.lp_hat, 0}});
    CHECK_FALSE(try_expected(s, 3, 16, provider).has_value());
    auto node = try_limit(s, 3, 16, provider);
    REQUIRE(node.has_value());
    CHECK(node->rule == DegenerationRule::theorem_b);
    CHECK(*node->l0 == 7);
    CHECK(virtual_dimension(s) == 7);
    CHECK(node_conclusion_holds(*node));

    DegenerationNode tampered = *node;
    tampered.dims->lp = 30;
    CHECK_FALSE(node_conclusion_holds(tampered));
    tampered = *node;
    tampered.rule = DegenerationRule::lemma_expected;
    CHECK_FALSE(node_conclusion_holds(tampered));
}

TEST_CASE("rule names round-trip") {
    for (auto r : {DegenerationRule::lemma_empty, DegenerationRule::lemma_expected, DegenerationRule::theorem_a,
                   DegenerationRule::theorem_b}) {
        CHECK(*parse_rule(to_string(r)) == r);
    }
    CHECK_FALSE(parse_rule("theorem_c").has_value());
}
