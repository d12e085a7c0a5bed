#pragma once

// Ground-truth dimensions from the rank of the interpolation matrix over
// GF(p) at random points.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fatpoint/core.hpp"

namespace fatpoint {

/// Arithmetic modulo a prime below 2^32.
class PrimeField {
public:
    explicit PrimeField(std::uint64_t p);

    std::uint64_t prime() const { return p_; }
    std::uint64_t reduce(Int x) const;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p_; }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    /// Throws std::domain_error for zero.
    std::uint64_t inv(std::uint64_t a) const;

private:
    std::uint64_t p_;
};

inline constexpr std::uint64_t default_prime = 2147483647;  // 2^31 - 1
inline constexpr std::uint64_t default_seed = 20240601;
inline constexpr int default_trials = 3;

using FieldPoint = std::pair<std::uint64_t, std::uint64_t>;

/// Dense row-major matrix over GF(prime).
struct InterpolationMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::uint64_t prime = 0;
    std::vector<std::uint64_t> entries;
    std::vector<FieldPoint> points;

    std::uint64_t at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

/// One row per point i and derivative order (a, b) with a + b < m_i, one
/// column per monomial x^alpha y^beta with alpha + beta <= d. Non-positive
/// multiplicities contribute no rows. Throws std::invalid_argument when the
/// point count differs from the multiplicity count, when points repeat, or
/// when prime <= d.
InterpolationMatrix build_matrix(const MultVector& v, std::span<const FieldPoint> points,
                                 std::uint64_t prime = default_prime);

/// Rank over GF(prime) by Gaussian elimination.
std::size_t rank(const InterpolationMatrix& mat);

struct OracleOptions {
    int trials = default_trials;
    std::uint64_t seed = default_seed;
    std::uint64_t prime = default_prime;
    /// Run trials on separate threads.
    bool parallel = true;
};

struct OracleResult {
    Int dimension = -1;
    int trials = 0;
    std::uint64_t prime = 0;
    std::uint64_t seed = 0;
    bool unanimous = true;
    std::vector<std::size_t> ranks;

    bool operator==(const OracleResult&) const = default;
};

/// cols - 1 - max rank over trials, with fresh uniform random distinct
/// points per trial. Deterministic given the options. Throws
/// std::invalid_argument when trials < 1.
OracleResult dimension(const MultVector& v, const OracleOptions& opts = {});
OracleResult dimension(const LinearSystem& s, const OracleOptions& opts = {});

/// The ten integer points used for the explicit full-rank check of
/// L(13, 5, 9, 4), p0 first.
std::vector<std::pair<Int, Int>> reference_points_13_5_9_4();

} // namespace fatpoint
