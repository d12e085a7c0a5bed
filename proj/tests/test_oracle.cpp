#include <doctest.h>

#include <stdexcept>

#include "fatpoint/oracle.hpp"

using namespace fatpoint;

namespace {

// Independent construction: f vanishes to order m at p iff every
// coefficient of f(x + px, y + py) of total degree < m is zero. The
// coefficient of u^a v^b in the shifted monomial x^alpha y^beta is
// C(alpha, a) px^(alpha-a) C(beta, b) py^(beta-b).
std::size_t shifted_rank(const MultVector& v, const std::vector<FieldPoint>& pts, std::uint64_t p) {
    const PrimeField f(p);
    const auto d = static_cast<std::size_t>(v.d);
    std::vector<std::vector<std::uint64_t>> binom(d + 1, std::vector<std::uint64_t>(d + 1, 0));
    for (std::size_t n = 0; n <= d; ++n) {
        binom[n][0] = 1;
        for (std::size_t k = 1; k <= n; ++k) binom[n][k] = f.add(binom[n - 1][k - 1], k <= n - 1 ? binom[n - 1][k] : 0);
    }
    InterpolationMatrix m;
    m.prime = p;
    m.cols = (d + 1) * (d + 2) / 2;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (Int order = 0; order < v.mults[i]; ++order) {
            for (Int a = 0; a <= order; ++a) {
                const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(order - a);
                for (std::size_t alpha = 0; alpha <= d; ++alpha) {
                    for (std::size_t beta = 0; alpha + beta <= d; ++beta) {
                        std::uint64_t c = 0;
                        if (alpha >= ua && beta >= ub) {
                            c = f.mul(f.mul(binom[alpha][ua], f.pow(pts[i].first, alpha - ua)),
                                      f.mul(binom[beta][ub], f.pow(pts[i].second, beta - ub)));
                        }
                        m.entries.push_back(c);
                    }
                }
                ++m.rows;
            }
        }
    }
    return rank(m);
}

} // namespace

TEST_CASE("prime field arithmetic") {
    const PrimeField f(default_prime);
    CHECK(f.reduce(-3) == default_prime - 3);
    CHECK(f.mul(f.inv(12345), 12345) == 1);
    CHECK(f.pow(3, default_prime - 1) == 1);
    CHECK_THROWS_AS(f.inv(0), std::domain_error);
    CHECK_THROWS_AS(PrimeField(std::uint64_t{1} << 33), std::invalid_argument);
}

TEST_CASE("matrix shapes") {
    const std::vector<FieldPoint> one{{3, 5}};
    const InterpolationMatrix line = build_matrix(MultVector{1, {1}}, one);
    CHECK(line.rows == 1);
    CHECK(line.cols == 3);
    CHECK(rank(line) == 1);

    const std::vector<FieldPoint> five{{1, 2}, {3, 7}, {11, 4}, {6, 13}, {9, 9}};
    const InterpolationMatrix conic = build_matrix(MultVector{2, {1, 1, 1, 1, 1}}, five);
    CHECK(conic.rows == 5);
    CHECK(conic.cols == 6);
    CHECK(rank(conic) == 5);

    InterpolationMatrix zero;
    zero.rows = 3;
    zero.cols = 4;
    zero.prime = 101;
    zero.entries.assign(12, 0);
    CHECK(rank(zero) == 0);

    CHECK_THROWS_AS(build_matrix(MultVector{2, {1, 1}}, one), std::invalid_argument);
    const std::vector<FieldPoint> twice{{1, 1}, {1, 1}};
    CHECK_THROWS_AS(build_matrix(MultVector{2, {1, 1}}, twice), std::invalid_argument);
    CHECK_THROWS_AS(build_matrix(MultVector{7, {1}}, one, 7), std::invalid_argument);
}

TEST_CASE("L(13,5,9,4) at the explicit integer points has full rank") {
    std::vector<FieldPoint> pts;
    const PrimeField f(default_prime);
    for (auto [x, y] : reference_points_13_5_9_4()) pts.push_back({f.reduce(x), f.reduce(y)});
    const InterpolationMatrix m = build_matrix(mult_vector(LinearSystem{13, 5, 9, 4}), pts);
    CHECK(m.rows == 105);
    CHECK(m.cols == 105);
    CHECK(rank(m) == 105);
}

TEST_CASE("derivative and shifted constructions agree") {
    const std::uint64_t p = 1000003;
    std::vector<FieldPoint> pts{{2, 3}, {5, 11}, {17, 4}, {8, 8}, {1, 29}, {23, 6}};
    for (const MultVector& v : {MultVector{6, {3, 2, 2, 1, 1, 1}}, MultVector{8, {4, 4, 4, 4, 4, 0}},
                                MultVector{5, {2, 2, 2, 2, 2, 2}}}) {
        CAPTURE(to_string(v));
        CHECK(rank(build_matrix(v, pts, p)) == shifted_rank(v, pts, p));
    }
}

TEST_CASE("known dimensions") {
    const OracleResult r8 = dimension(LinearSystem{8, 0, 5, 4});
    CHECK(r8.dimension == 0);
    CHECK(r8.unanimous);
    for (auto rk : r8.ranks) CHECK(rk == 44);
    CHECK(dimension(LinearSystem{13, 5, 9, 4}).dimension == -1);
    CHECK(dimension(LinearSystem{4, 0, 5, 2}).dimension == 0);
    for (Int d = 0; d <= 8; ++d) CHECK(dimension(LinearSystem{d, 0, 0, 0}).dimension == d * (d + 3) / 2);
    CHECK(dimension(MultVector{-1, {}}).dimension == -1);
    CHECK(dimension(MultVector{4, {-2, 0, 1}}).dimension == 13);
    CHECK_THROWS_AS(dimension(LinearSystem{3, 0, 2, 1}, OracleOptions{0}), std::invalid_argument);
}

TEST_CASE("oracle determinism and independence of the prime") {
    const LinearSystem s{9, 3, 6, 3};
    OracleOptions a;
    a.seed = 77;
    CHECK(dimension(s, a) == dimension(s, a));
    OracleOptions serial = a;
    serial.parallel = false;
    CHECK(dimension(s, serial).ranks == dimension(s, a).ranks);
    OracleOptions small = a;
    small.prime = 1000003;
    CHECK(dimension(s, small).dimension == dimension(s, a).dimension);
}
