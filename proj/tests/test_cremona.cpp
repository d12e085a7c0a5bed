#include <doctest.h>

#include <stdexcept>

#include "fatpoint/classifier.hpp"
#include "fatpoint/cremona.hpp"
#include "fatpoint/oracle.hpp"

using namespace fatpoint;

TEST_CASE("single quadratic transformations") {
    const CremonaStep conics = cremona_step(MultVector{2, {1, 1, 1}}, 0, 1, 2);
    CHECK(conics.after.d == 1);
    CHECK(conics.after.mults == std::vector<Int>{0, 0, 0});

    const CremonaStep fixed = cremona_step(mult_vector(LinearSystem{13, 5, 9, 4}), 0, 1, 2);
    CHECK(fixed.delta == 0);
    CHECK(fixed.after == fixed.before);

    // three lines through pairs of three points
    const CremonaStep cubic = cremona_step(MultVector{3, {2, 2, 2}}, 0, 1, 2);
    CHECK(cubic.delta == -3);
    CHECK(cubic.after.d == 0);
    CHECK(cubic.after.mults == std::vector<Int>{-1, -1, -1});

    CHECK_THROWS_AS(cremona_step(MultVector{3, {1, 1, 1}}, 0, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(cremona_step(MultVector{3, {1, 1, 1}}, 0, 1, 3), std::invalid_argument);
}

TEST_CASE("a step is an involution on unclamped vectors") {
    const MultVector v{9, {4, 3, 3, 2, 1}};
    const CremonaStep once = cremona_step(v, 0, 1, 2);
    const CremonaStep twice = cremona_step(once.after, 0, 1, 2);
    CHECK(twice.after == v);
    CHECK(virtual_dimension(once.after) == virtual_dimension(v));
}

TEST_CASE("reduction endpoints") {
    const ReductionResult r22 = reduce(mult_vector(LinearSystem{22, 16, 14, 4}));
    CHECK(*as_quasi_homogeneous(r22.final) == LinearSystem{8, 0, 15, 2});
    CHECK(r22.status == ReductionStatus::reduced_nonnegative);

    const ReductionResult r30 = reduce(mult_vector(LinearSystem{30, 27, 12, 4}));
    CHECK(r30.final.d == 0);
    CHECK(*r30.dimension == 0);

    const ReductionResult r33 = reduce(mult_vector(LinearSystem{33, 29, 16, 4}));
    CHECK(r33.final.d == 1);
    CHECK(*r33.dimension == 2);

    // L_P of the d = 31 node: a quadruple line
    CHECK(*dimension_via_cremona(LinearSystem{28, 24, 14, 4}).actual == 0);
    // quadratics through five general points: only the conic remains
    CHECK(*dimension_via_cremona(LinearSystem{30, 26, 14, 4}).actual == 5);
}

TEST_CASE("emptiness through reduction") {
    for (LinearSystem s : {LinearSystem{10, 3, 6, 4}, LinearSystem{9, 3, 5, 4}, LinearSystem{9, 0, 6, 4},
                           LinearSystem{8, 1, 5, 4}, LinearSystem{7, 0, 4, 4}, LinearSystem{6, 0, 4, 4}}) {
        CAPTURE(to_string(s));
        const DimensionReport rep = dimension_via_cremona(s);
        REQUIRE(rep.actual.has_value());
        CHECK(*rep.actual == -1);
        CHECK(rep.source == DimensionSource::cremona);
    }
    CHECK(reduce(mult_vector(LinearSystem{7, 0, 4, 4})).status == ReductionStatus::empty_detected);
    CHECK(reduce(mult_vector(LinearSystem{9, 3, 5, 4})).status == ReductionStatus::negative_degree);
}

TEST_CASE("L(9,0,6,4) passes through a multiplicity below -1") {
    const ReductionResult r = reduce(mult_vector(LinearSystem{9, 0, 6, 4}));
    bool deep = false;
    for (const auto& step : r.steps) {
        for (Int k : cremona_step(step.before, step.indices[0], step.indices[1], step.indices[2]).after.mults) {
            if (k <= -2) deep = true;
        }
    }
    CHECK(deep);
    CHECK(*r.dimension == -1);
    CHECK(dimension(LinearSystem{9, 0, 6, 4}).dimension == -1);
}

TEST_CASE("padding and clamping") {
    const ReductionResult r = reduce(MultVector{2, {-1, 1}});
    CHECK(r.initial_clamps == std::vector<std::size_t>{0});
    CHECK(r.final.mults.size() == 3);
    CHECK(*r.dimension == 2 * 5 / 2 - 1);
    // no positive multiplicity: all plane curves of degree d
    CHECK(*reduce(MultVector{4, {}}).dimension == 14);
}

TEST_CASE("final forms resolved through the classifier") {
    // three distinct multiplicities have no quasi-homogeneous reading
    const ReductionResult r = reduce(MultVector{12, {5, 4, 3, 1, 1}});
    REQUIRE(r.steps.empty());
    CHECK_FALSE(resolve_final(r, classifier_resolver()).has_value());
    // the resolver is not consulted without such a reading
    CHECK_FALSE(resolve_final(r, [](const LinearSystem&) { return std::optional<Int>(7); }).has_value());
    const DimensionReport fixed = dimension_via_cremona(LinearSystem{13, 5, 9, 4});
    CHECK_FALSE(fixed.actual.has_value());
}
