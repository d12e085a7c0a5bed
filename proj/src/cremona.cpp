#include "fatpoint/cremona.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "fatpoint/classifier.hpp"

namespace fatpoint {

namespace {

std::vector<std::size_t> clamp_negative(MultVector& v) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < v.mults.size(); ++i) {
        if (v.mults[i] < 0) {
            v.mults[i] = 0;
            out.push_back(i);
        }
    }
    return out;
}

std::array<std::size_t, 3> top_three(const MultVector& v) {
    std::vector<std::size_t> idx(v.mults.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return v.mults[a] > v.mults[b]; });
    return {idx[0], idx[1], idx[2]};
}

std::optional<Int> closed_form(const MultVector& v, ReductionStatus status) {
    if (status != ReductionStatus::reduced_nonnegative) return -1;
    std::vector<Int> positive;
    for (Int k : v.mults) {
        if (k > 0) positive.push_back(k);
    }
    if (positive.empty()) return v.d * (v.d + 3) / 2;
    // one fat point of order <= d + 1 imposes independent conditions
    if (positive.size() == 1) {
        if (positive[0] > v.d) return -1;
        return v.d * (v.d + 3) / 2 - conditions(positive[0]);
    }
    return std::nullopt;
}

} // namespace

const char* to_string(ReductionStatus s) {
    switch (s) {
    case ReductionStatus::reduced_nonnegative: return "reduced_nonnegative";
    case ReductionStatus::empty_detected: return "empty_detected";
    case ReductionStatus::negative_degree: return "negative_degree";
    }
    return "unknown";
}

CremonaStep cremona_step(const MultVector& v, std::size_t i, std::size_t j, std::size_t k) {
    const std::size_t r = v.mults.size();
    if (i >= r || j >= r || k >= r || i == j || j == k || i == k) {
        throw std::invalid_argument("cremona_step needs three distinct valid indices");
    }
    CremonaStep step;
    step.indices = {i, j, k};
    step.before = v;
    step.after = v;
    const Int mi = v.mults[i], mj = v.mults[j], mk = v.mults[k];
    step.delta = v.d - (mi + mj + mk);
    step.after.d = v.d + step.delta;
    step.after.mults[i] = v.d - mj - mk;
    step.after.mults[j] = v.d - mi - mk;
    step.after.mults[k] = v.d - mi - mj;
    return step;
}

ReductionResult reduce(const MultVector& input) {
    ReductionResult result;
    MultVector v = input;
    while (v.mults.size() < 3) v.mults.push_back(0);
    result.initial_clamps = clamp_negative(v);

    for (;;) {
        if (v.d < 0) {
            result.status = ReductionStatus::negative_degree;
            break;
        }
        auto [a, b, c] = top_three(v);
        const Int delta = v.d - (v.mults[a] + v.mults[b] + v.mults[c]);
        if (delta >= 0) {
            result.status = ReductionStatus::reduced_nonnegative;
            break;
        }
        if (v.d == 0) {
            // constants with a positive multiplicity somewhere
            result.status = ReductionStatus::empty_detected;
            break;
        }
        CremonaStep step = cremona_step(v, a, b, c);
        step.clamped = clamp_negative(step.after);
        v = step.after;
        result.steps.push_back(std::move(step));
    }
    result.final = canonicalized(v);
    result.dimension = closed_form(result.final, result.status);
    return result;
}

QuasiHomogeneousResolver classifier_resolver() {
    return [](const LinearSystem& s) { return classified_dimension(s); };
}

std::optional<Int> resolve_final(const ReductionResult& r, const QuasiHomogeneousResolver& resolver) {
    if (r.dimension) return r.dimension;
    if (!resolver) return std::nullopt;
    auto qh = as_quasi_homogeneous(r.final);
    if (!qh) return std::nullopt;
    return resolver(*qh);
}

DimensionReport dimension_via_cremona(const LinearSystem& s, const QuasiHomogeneousResolver& resolver) {
    const ReductionResult r = reduce(mult_vector(s));
    return make_report(s, resolve_final(r, resolver), DimensionSource::cremona);
}

} // namespace fatpoint
