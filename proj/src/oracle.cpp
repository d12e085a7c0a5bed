#include "fatpoint/oracle.hpp"

#include <algorithm>
#include <future>
#include <random>
#include <set>
#include <stdexcept>

namespace fatpoint {

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
    if (p < 2 || p >= (std::uint64_t{1} << 32)) throw std::invalid_argument("prime must lie in [2, 2^32)");
}

std::uint64_t PrimeField::reduce(Int x) const {
    const Int p = static_cast<Int>(p_);
    Int r = x % p;
    if (r < 0) r += p;
    return static_cast<std::uint64_t>(r);
}

std::uint64_t PrimeField::add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
}

std::uint64_t PrimeField::sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t result = 1 % p_;
    a %= p_;
    while (e) {
        if (e & 1) result = mul(result, a);
        a = mul(a, a);
        e >>= 1;
    }
    return result;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
    if (a % p_ == 0) throw std::domain_error("inverse of zero");
    return pow(a, p_ - 2);
}

InterpolationMatrix build_matrix(const MultVector& v, std::span<const FieldPoint> points, std::uint64_t prime) {
    if (points.size() != v.mults.size()) {
        throw std::invalid_argument("build_matrix needs one point per multiplicity");
    }
    if (v.d < 0) throw std::invalid_argument("build_matrix needs d >= 0");
    if (prime <= static_cast<std::uint64_t>(v.d)) {
        throw std::invalid_argument("build_matrix needs prime > d so derivative coefficients stay nonzero");
    }
    const PrimeField f(prime);
    std::set<FieldPoint> seen;
    for (const auto& pt : points) {
        if (!seen.insert({pt.first % prime, pt.second % prime}).second) {
            throw std::invalid_argument("build_matrix needs distinct points");
        }
    }

    const auto d = static_cast<std::size_t>(v.d);
    InterpolationMatrix mat;
    mat.prime = prime;
    mat.cols = static_cast<std::size_t>(monomial_count(v.d));
    for (Int k : v.mults) mat.rows += static_cast<std::size_t>(conditions(k));
    mat.entries.assign(mat.rows * mat.cols, 0);
    mat.points.assign(points.begin(), points.end());

    // falling[a][alpha] = alpha (alpha - 1) ... (alpha - a + 1) mod p
    std::vector<std::vector<std::uint64_t>> falling(d + 1, std::vector<std::uint64_t>(d + 1, 0));
    for (std::size_t alpha = 0; alpha <= d; ++alpha) {
        std::uint64_t c = 1;
        for (std::size_t a = 0; a <= alpha; ++a) {
            falling[a][alpha] = c;
            c = f.mul(c, alpha - a);
        }
    }

    std::size_t row = 0;
    std::vector<std::uint64_t> xp(d + 1), yp(d + 1);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Int mult = v.mults[i];
        if (mult <= 0) continue;
        xp[0] = yp[0] = 1;
        for (std::size_t e = 1; e <= d; ++e) {
            xp[e] = f.mul(xp[e - 1], points[i].first % prime);
            yp[e] = f.mul(yp[e - 1], points[i].second % prime);
        }
        for (std::size_t order = 0; order < static_cast<std::size_t>(mult); ++order) {
            for (std::size_t a = 0; a <= order; ++a) {
                const std::size_t b = order - a;
                std::uint64_t* out = &mat.entries[row * mat.cols];
                std::size_t col = 0;
                for (std::size_t alpha = 0; alpha <= d; ++alpha) {
                    for (std::size_t beta = 0; alpha + beta <= d; ++beta, ++col) {
                        if (alpha < a || beta < b) continue;
                        const std::uint64_t coeff = f.mul(falling[a][alpha], falling[b][beta]);
                        out[col] = f.mul(coeff, f.mul(xp[alpha - a], yp[beta - b]));
                    }
                }
                ++row;
            }
        }
    }
    return mat;
}

std::size_t rank(const InterpolationMatrix& mat) {
    if (mat.rows == 0 || mat.cols == 0) return 0;
    const PrimeField f(mat.prime);
    std::vector<std::uint64_t> a = mat.entries;
    const std::size_t rows = mat.rows, cols = mat.cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a[pivot * cols + c] == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r) {
            std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(pivot * cols),
                             a.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * cols),
                             a.begin() + static_cast<std::ptrdiff_t>(r * cols));
        }
        const std::uint64_t inv = f.inv(a[r * cols + c]);
        for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = f.mul(a[r * cols + j], inv);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const std::uint64_t factor = a[i * cols + c];
            if (factor == 0) continue;
            for (std::size_t j = c; j < cols; ++j) {
                a[i * cols + j] = f.sub(a[i * cols + j], f.mul(factor, a[r * cols + j]));
            }
        }
        ++r;
    }
    return r;
}

namespace {

std::vector<FieldPoint> random_points(std::size_t count, std::uint64_t prime, std::uint64_t seed, int trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial)};
    std::mt19937_64 rng(seq);
    std::set<FieldPoint> seen;
    std::vector<FieldPoint> out;
    out.reserve(count);
    while (out.size() < count) {
        FieldPoint pt{rng() % prime, rng() % prime};
        if (seen.insert(pt).second) out.push_back(pt);
    }
    return out;
}

std::size_t trial_rank(const MultVector& v, const OracleOptions& opts, int trial) {
    const auto pts = random_points(v.mults.size(), opts.prime, opts.seed, trial);
    return rank(build_matrix(v, pts, opts.prime));
}

} // namespace

OracleResult dimension(const MultVector& input, const OracleOptions& opts) {
    if (opts.trials < 1) throw std::invalid_argument("oracle needs at least one trial");
    OracleResult res;
    res.trials = opts.trials;
    res.prime = opts.prime;
    res.seed = opts.seed;
    if (input.d < 0) {
        res.dimension = -1;
        res.ranks.assign(static_cast<std::size_t>(opts.trials), 0);
        return res;
    }
    // zero and negative multiplicities impose nothing
    MultVector v{input.d, {}};
    for (Int k : input.mults) {
        if (k > 0) v.mults.push_back(k);
    }

    res.ranks.resize(static_cast<std::size_t>(opts.trials));
    if (opts.parallel && opts.trials > 1) {
        std::vector<std::future<std::size_t>> jobs;
        for (int t = 0; t < opts.trials; ++t) {
            jobs.push_back(std::async(std::launch::async, [&, t] { return trial_rank(v, opts, t); }));
        }
        for (int t = 0; t < opts.trials; ++t) res.ranks[static_cast<std::size_t>(t)] = jobs[static_cast<std::size_t>(t)].get();
    } else {
        for (int t = 0; t < opts.trials; ++t) res.ranks[static_cast<std::size_t>(t)] = trial_rank(v, opts, t);
    }
    const std::size_t best = *std::max_element(res.ranks.begin(), res.ranks.end());
    res.unanimous = std::all_of(res.ranks.begin(), res.ranks.end(), [&](std::size_t r) { return r == best; });
    res.dimension = monomial_count(v.d) - 1 - static_cast<Int>(best);
    return res;
}

OracleResult dimension(const LinearSystem& s, const OracleOptions& opts) { return dimension(mult_vector(s), opts); }

std::vector<std::pair<Int, Int>> reference_points_13_5_9_4() {
    return {{0, -3}, {8, 3}, {4, -4}, {-5, -5}, {-5, -2}, {3, -1}, {-5, -9}, {8, 5}, {5, 8}, {-1, 4}};
}

} // namespace fatpoint
