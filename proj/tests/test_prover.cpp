#include <doctest.h>

#include <stdexcept>

#include <algorithm>

#include "fatpoint/oracle.hpp"
#include "fatpoint/prover.hpp"

using namespace fatpoint;

namespace {

bool deps_precede(const ProofTrace& t) {
    for (std::size_t i = 0; i < t.claims.size(); ++i) {
        for (auto d : t.claims[i].deps) {
            if (d >= i) return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("the d = 39 induction step") {
    Prover p;
    const ProofTrace t = p.prove(LinearSystem{39, 33, 26, 4});
    CHECK(t.dimension == -1);
    CHECK(t.certified());
    REQUIRE(t.root_claim().node.has_value());
    CHECK(t.root_claim().node->k == 3);
    CHECK(t.root_claim().node->b == 13);
    CHECK(t.root_claim().node->rule == DegenerationRule::lemma_empty);
    CHECK(deps_precede(t));
    CHECK(check_trace(t).ok);
}

TEST_CASE("the d = 46 node with a special kernel system") {
    Prover p;
    auto t = p.prove_with(LinearSystem{46, 40, 30, 4}, 3, 16);
    REQUIRE(t.has_value());
    const DegenerationNode& n = *t->root_claim().node;
    CHECK(n.rule == DegenerationRule::theorem_b);
    CHECK(n.dims->lp == 29);
    CHECK(n.dims->lf == 21);
    CHECK(n.dims->lp_hat == 0);
    CHECK(n.dims->lf_hat == -1);
    CHECK(*n.l0 == 7);
    CHECK(t->dimension == 7);
    CHECK(check_trace(*t).ok);
    // L^_P is a list row although its virtual dimension is negative
    CHECK(virtual_dimension(n.lp_hat) < 0);
}

TEST_CASE("Cremona escape for L(22,16,14,4)") {
    Prover p;
    const ProofTrace t = p.prove(LinearSystem{22, 16, 14, 4});
    CHECK(t.dimension == -1);
    CHECK(t.certified());
    CHECK(t.root_claim().kind == ClaimKind::cremona);
    REQUIRE(t.root_claim().deps.size() == 1);
    const Claim& final = t.claims[t.root_claim().deps[0]];
    CHECK(final.system == LinearSystem{8, 0, 15, 2});
    CHECK(final.kind == ClaimKind::small_m);
    CHECK(check_trace(t).ok);
}

TEST_CASE("the (4,5) degeneration for L(12,1,9,4)") {
    Prover p;
    const ProofTrace t = p.prove(LinearSystem{12, 1, 9, 4});
    CHECK(t.dimension == -1);
    CHECK(t.certified());
    REQUIRE(t.root_claim().node.has_value());
    CHECK(t.root_claim().node->k == 4);
    CHECK(t.root_claim().node->b == 5);
    CHECK(t.root_claim().node->rule == DegenerationRule::lemma_empty);
    CHECK(check_trace(t).ok);
}

TEST_CASE("L(13,5,9,4) needs the oracle") {
    Prover p;
    CHECK_FALSE(p.certified_dimension(LinearSystem{13, 5, 9, 4}).has_value());
    const ProofTrace t = p.prove(LinearSystem{13, 5, 9, 4});
    CHECK(t.dimension == -1);
    CHECK_FALSE(t.certified());
    CHECK(t.uncertified_leaves() == 1);
    CHECK(t.root_claim().kind == ClaimKind::oracle);
    CHECK(check_trace(t).ok);
}

TEST_CASE("closed cases") {
    Prover p;
    const ProofTrace conic = p.prove(LinearSystem{2, 0, 5, 1});
    CHECK(conic.dimension == 0);
    CHECK(conic.claims.size() == 1);
    CHECK(conic.root_claim().kind == ClaimKind::small_m);
    CHECK(p.prove(LinearSystem{8, 0, 5, 4}).root_claim().kind == ClaimKind::classifier_list);
    CHECK(p.prove(LinearSystem{11, 7, 5, 4}).root_claim().kind == ClaimKind::large_m0);
    CHECK(p.prove(LinearSystem{5, 0, 0, 4}).root_claim().kind == ClaimKind::formula);
}

TEST_CASE("traced nodes of the induction") {
    struct Case {
        LinearSystem s;
        Int k, b;
        DegenerationRule rule;
        Int dim;
    };
    const Case cases[] = {
        {{36, 29, 29, 4}, 3, 13, DegenerationRule::theorem_a, -1},
        {{33, 27, 23, 4}, 3, 11, DegenerationRule::theorem_a, -1},
        {{31, 24, 25, 4}, 3, 11, DegenerationRule::theorem_a, -1},
        {{32, 26, 21, 4}, 3, 11, DegenerationRule::lemma_empty, -1},
        {{29, 23, 19, 4}, 3, 10, DegenerationRule::lemma_empty, -1},
        {{36, 30, 23, 4}, 3, 13, DegenerationRule::theorem_b, 7},
        {{29, 23, 18, 4}, 3, 10, DegenerationRule::theorem_b, 8},
    };
    Prover p;
    for (const Case& c : cases) {
        CAPTURE(to_string(c.s));
        auto t = p.prove_with(c.s, c.k, c.b);
        REQUIRE(t.has_value());
        CHECK(t->root_claim().node->rule == c.rule);
        CHECK(t->dimension == c.dim);
        CHECK(t->certified());
        CHECK(check_trace(*t).ok);
    }
    // L(31,24,25,4): L_P is the quadruple line, L_F has dimension 11
    auto t31 = p.prove_with(LinearSystem{31, 24, 25, 4}, 3, 11);
    CHECK(t31->root_claim().node->dims->lp == 0);
    CHECK(t31->root_claim().node->dims->lf == 11);
}

TEST_CASE("b windows prefer odd n - b") {
    const auto bs = preferred_b(LinearSystem{39, 33, 26, 4});
    REQUIRE_FALSE(bs.empty());
    CHECK(bs.front() == 13);
    for (Int b : bs) CHECK(3 * b >= 39);
}

TEST_CASE("monotone claims cite their neighbour") {
    Prover p;
    const ProofTrace t = p.prove(LinearSystem{12, 6, 12, 4});
    CHECK(t.certified());
    CHECK(t.dimension == -1);
    CHECK(check_trace(t).ok);
    const bool uses_neighbour = std::any_of(t.claims.begin(), t.claims.end(), [](const Claim& c) {
        return c.kind == ClaimKind::induction_cache;
    });
    CHECK(uses_neighbour);
}

TEST_CASE("check_trace rejects tampering") {
    Prover p;
    const ProofTrace good = p.prove(LinearSystem{39, 33, 26, 4});
    REQUIRE(check_trace(good).ok);

    ProofTrace t = good;
    t.claims[t.root_claim().deps[2]].dimension += 1;
    auto r = check_trace(t);
    CHECK_FALSE(r.ok);
    REQUIRE(r.claim.has_value());
    CHECK(*r.claim <= t.root_claim().deps[2]);

    t = good;
    t.claims.back().node->dims->lp += 2;
    CHECK_FALSE(check_trace(t).ok);

    t = good;
    t.claims.back().dimension = 3;
    CHECK_FALSE(check_trace(t).ok);

    t = good;
    t.claims.back().deps[0] = t.claims.size() - 1;
    CHECK_FALSE(check_trace(t).ok);

    t = good;
    t.claims.front().certified = false;
    CHECK_FALSE(check_trace(t).ok);

    ProofTrace oracle = p.prove(LinearSystem{13, 5, 9, 4});
    oracle.claims.back().dimension = 0;
    oracle.dimension = 0;
    CHECK_FALSE(check_trace(oracle).ok);

    CHECK_FALSE(check_trace(ProofTrace{}).ok);
}

TEST_CASE("memo is shared across calls") {
    Prover p;
    p.prove(LinearSystem{12, 4, 8, 4});
    const auto size = p.memo_size();
    CHECK(size > 0);
    p.prove(LinearSystem{12, 4, 8, 4});
    CHECK(p.memo_size() == size);
}
