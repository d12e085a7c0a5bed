#include <doctest.h>

#include <stdexcept>

#include <random>

#include "fatpoint/classifier.hpp"
#include "fatpoint/cremona.hpp"
#include "fatpoint/degeneration.hpp"
#include "fatpoint/oracle.hpp"

using namespace fatpoint;

TEST_CASE("degeneration identities on random nodes") {
    std::mt19937_64 rng(4);
    int checked = 0;
    while (checked < 10000) {
        const Int d = std::uniform_int_distribution<Int>(2, 80)(rng);
        const Int m0 = std::uniform_int_distribution<Int>(0, d)(rng);
        const Int n = std::uniform_int_distribution<Int>(0, 60)(rng);
        const Int m = std::uniform_int_distribution<Int>(0, 8)(rng);
        const Int k = std::uniform_int_distribution<Int>(1, d - 1)(rng);
        const Int b = std::uniform_int_distribution<Int>(0, n)(rng);
        const DegenerationNode node = degenerate(LinearSystem{d, m0, n, m}, k, b);
        REQUIRE(check_identities(node));
        ++checked;
    }
    CHECK(checked == 10000);
}

TEST_CASE("Cremona reduction preserves the dimension") {
    std::mt19937_64 rng(11);
    int checked = 0;
    while (checked < 120) {
        const Int d = std::uniform_int_distribution<Int>(3, 11)(rng);
        const auto r = std::uniform_int_distribution<int>(3, 7)(rng);
        MultVector v{d, {}};
        for (int i = 0; i < r; ++i) v.mults.push_back(std::uniform_int_distribution<Int>(0, std::min<Int>(d, 5))(rng));
        const ReductionResult red = reduce(v);
        if (red.steps.empty()) continue;
        CAPTURE(to_string(v));
        CAPTURE(to_string(red.final));
        const Int before = dimension(v).dimension;
        const Int after = red.final.d < 0 ? -1 : dimension(red.final).dimension;
        CHECK(before == after);
        if (red.dimension) CHECK(*red.dimension == before);
        ++checked;
    }
}

TEST_CASE("oracle dimension does not increase with n") {
    for (Int d = 4; d <= 9; ++d) {
        for (Int m0 : {Int{0}, d / 2, d - 3}) {
            Int prev = dimension(LinearSystem{d, m0, 0, 3}).dimension;
            for (Int n = 1; n <= 8; ++n) {
                const Int cur = dimension(LinearSystem{d, m0, n, 3}).dimension;
                CHECK(cur <= prev);
                CHECK(cur >= expected_dimension(LinearSystem{d, m0, n, 3}));
                // a point of multiplicity m imposes at most m(m+1)/2 conditions
                CHECK(prev - cur <= 6);
                prev = cur;
            }
        }
    }
}

TEST_CASE("seeded runs repeat exactly") {
    for (std::uint64_t seed : {1ull, 99ull, 123456789ull}) {
        OracleOptions o;
        o.seed = seed;
        const LinearSystem s{10, 4, 7, 3};
        CHECK(dimension(s, o) == dimension(s, o));
    }
}

TEST_CASE("m = 2 classification agrees with the oracle") {
    for (Int d = 1; d <= 10; ++d) {
        for (Int m0 = 0; m0 <= d; ++m0) {
            for (Int n = 1; n <= 12; ++n) {
                const LinearSystem s{d, m0, n, 2};
                CAPTURE(to_string(s));
                const SpecialityVerdict v = minus_one_list_small_m(s);
                REQUIRE(v.status != Speciality::unknown);
                const Int predicted =
                    v.status == Speciality::non_special ? expected_dimension(s) : witness_dimension(*v.witness);
                CHECK(predicted == dimension(s).dimension);
            }
        }
    }
}

TEST_CASE("decided m = 3 systems agree with the oracle") {
    for (Int d = 3; d <= 9; ++d) {
        for (Int m0 = 0; m0 <= d; ++m0) {
            for (Int n = 1; n <= 9; ++n) {
                const LinearSystem s{d, m0, n, 3};
                const SpecialityVerdict v = minus_one_list_small_m(s);
                if (v.status == Speciality::unknown) continue;
                CAPTURE(to_string(s));
                const Int predicted =
                    v.status == Speciality::non_special ? expected_dimension(s) : witness_dimension(*v.witness);
                CHECK(predicted == dimension(s).dimension);
            }
        }
    }
}
