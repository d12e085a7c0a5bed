#pragma once

// Standard quadratic transformations acting on multiplicity vectors, and the
// canonical reduction to standard form.

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "fatpoint/core.hpp"

namespace fatpoint {

struct CremonaStep {
    std::array<std::size_t, 3> indices{};
    MultVector before;
    MultVector after;
    Int delta = 0;
    /// Indices whose negative multiplicity was raised to 0 after the step.
    std::vector<std::size_t> clamped;
};

/// d -> 2d - mi - mj - mk, mx -> d - my - mz for {x, y, z} = {i, j, k}.
/// Throws std::invalid_argument for repeated or out-of-range indices.
CremonaStep cremona_step(const MultVector& v, std::size_t i, std::size_t j, std::size_t k);

enum class ReductionStatus { reduced_nonnegative, empty_detected, negative_degree };

const char* to_string(ReductionStatus s);

struct ReductionResult {
    MultVector final;  // canonicalized
    std::vector<CremonaStep> steps;
    /// Indices clamped to 0 before the first step.
    std::vector<std::size_t> initial_clamps;
    ReductionStatus status = ReductionStatus::reduced_nonnegative;
    /// Present when the final form has a closed-form dimension: emptiness,
    /// no remaining point, or a single remaining point.
    std::optional<Int> dimension;
};

/// Negative multiplicities are clamped to 0 (the exceptional curve is a
/// fixed component). Vectors shorter than three entries are padded with
/// zero-multiplicity points. The three largest multiplicities are
/// transformed, lowest index first among equals, until standard form.
ReductionResult reduce(const MultVector& v);

/// Resolves the dimension of a quasi-homogeneous final form that has no
/// closed formula. Returning nullopt leaves the dimension open.
using QuasiHomogeneousResolver = std::function<std::optional<Int>(const LinearSystem&)>;

/// Resolver backed only by the classifier lists and rules.
QuasiHomogeneousResolver classifier_resolver();

/// Actual dimension via reduction. The report has no actual value when the
/// final form is neither closed-form nor resolvable.
DimensionReport dimension_via_cremona(const LinearSystem& s,
                                      const QuasiHomogeneousResolver& resolver = classifier_resolver());

/// Final form's dimension, using the closed form first and the resolver
/// on the quasi-homogeneous reading second.
std::optional<Int> resolve_final(const ReductionResult& r, const QuasiHomogeneousResolver& resolver);

} // namespace fatpoint
