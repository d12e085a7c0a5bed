#include "fatpoint/classifier.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

namespace fatpoint {

LinearSystem MinusOneClass::system() const {
    switch (family) {
    case MinusOneFamily::conic5: return {2, 0, 5, 1};
    case MinusOneFamily::tangent: return {e, e - 1, 2 * e, 1};
    case MinusOneFamily::compound_lines: return {e, e, e, 1};
    case MinusOneFamily::sextic: return {6, 3, 7, 2};
    case MinusOneFamily::cubic: return {3, 0, 3, 2};
    }
    return {};
}

Int MinusOneClass::components() const {
    switch (family) {
    case MinusOneFamily::compound_lines: return e;
    case MinusOneFamily::cubic: return 3;
    default: return 1;
    }
}

MinusOneClass conic5() { return {MinusOneFamily::conic5, 0}; }
MinusOneClass tangent(Int e) { return {MinusOneFamily::tangent, e}; }
MinusOneClass compound_lines(Int e) { return {MinusOneFamily::compound_lines, e}; }
MinusOneClass sextic() { return {MinusOneFamily::sextic, 0}; }
MinusOneClass cubic() { return {MinusOneFamily::cubic, 0}; }

const char* to_string(Speciality s) {
    switch (s) {
    case Speciality::minus_one_special: return "minus_one_special";
    case Speciality::non_special: return "non_special";
    case Speciality::unknown: return "unknown";
    }
    return "unknown";
}

std::optional<LinearSystem> residual_of(const LinearSystem& s, const std::vector<WitnessTerm>& terms) {
    LinearSystem r = s;
    for (const auto& t : terms) {
        const LinearSystem a = t.curve.system();
        if (a.n != s.n) return std::nullopt;
        r.d -= t.multiplier * a.d;
        r.m0 -= t.multiplier * a.m0;
        r.m -= t.multiplier * a.m;
    }
    return r;
}

bool verify_minus_one_witness(const LinearSystem& s, const Witness& w) {
    if (w.terms.empty()) return false;
    bool some_double = false;
    for (const auto& t : w.terms) {
        const LinearSystem a = t.curve.system();
        const Int c = t.curve.components();
        if (a.n != s.n || c < 1) return false;
        if (self_intersection(a) != -c || genus(a) != 1 - c) return false;
        if (t.multiplier < 1) return false;
        if (intersection(s, a) != -t.multiplier * c) return false;
        some_double = some_double || t.multiplier >= 2;
    }
    if (!some_double) return false;
    for (std::size_t i = 0; i < w.terms.size(); ++i) {
        for (std::size_t j = i + 1; j < w.terms.size(); ++j) {
            if (intersection(w.terms[i].curve.system(), w.terms[j].curve.system()) != 0) return false;
        }
    }
    const auto residual = residual_of(s, w.terms);
    if (!residual || *residual != w.residual) return false;
    const LinearSystem& r = *residual;
    if (r.d < 0 || r.m0 < 0 || r.m < 0) return false;
    if (virtual_dimension(r) < 0) return false;
    for (const auto& t : w.terms) {
        if (intersection(r, t.curve.system()) < 0) return false;
    }
    return true;
}

Int witness_dimension(const Witness& w) { return virtual_dimension(w.residual); }

namespace {

SpecialityVerdict special(const LinearSystem& s, std::vector<WitnessTerm> terms, std::string rule) {
    SpecialityVerdict v;
    v.status = Speciality::minus_one_special;
    v.rule = std::move(rule);
    Witness w;
    w.residual = residual_of(s, terms).value();
    w.terms = std::move(terms);
    v.witness = std::move(w);
    return v;
}

SpecialityVerdict verdict(Speciality status, std::string rule) {
    SpecialityVerdict v;
    v.status = status;
    v.rule = std::move(rule);
    return v;
}

struct Sporadic {
    Int d, m0, n;
    MinusOneClass curve;
    Int multiplier;
};

// (d, m0, n) with d - m0 in {5, ..., 9}
const std::array<Sporadic, 14>& sporadics() {
    static const std::array<Sporadic, 14> rows{{
        {5, 0, 2, tangent(1), 3},
        {6, 1, 2, tangent(1), 2},
        {8, 3, 4, tangent(2), 3},
        {9, 4, 4, tangent(2), 2},
        {12, 7, 6, tangent(3), 2},
        {15, 10, 8, tangent(4), 2},
        {6, 0, 2, tangent(1), 2},
        {6, 0, 3, cubic(), 2},
        {8, 2, 4, tangent(2), 2},
        {12, 6, 7, sextic(), 2},
        {9, 2, 5, conic5(), 2},
        {8, 0, 5, conic5(), 4},
        {9, 1, 5, conic5(), 2},
        {9, 0, 5, conic5(), 2},
    }};
    return rows;
}

std::string sporadic_rule(const Sporadic& r) {
    return "d-m0=" + std::to_string(r.d - r.m0) + ": " + to_string(LinearSystem{r.d, r.m0, r.n, 4});
}

std::optional<SpecialityVerdict> match_m4(const LinearSystem& s) {
    const Int d = s.d, m0 = s.m0, n = s.n;
    if (n >= 1) {
        if (m0 == d && d >= 4 * n) {
            return special(s, {{compound_lines(n), 4}}, "d-m0=0: L(d,d,e,4), d>=4e>=4");
        }
        if (m0 == d - 1 && 2 * d >= 7 * n) {
            return special(s, {{compound_lines(n), 3}}, "d-m0=1: L(d,d-1,e,4), d>=(7/2)e>=7/2");
        }
        if (m0 == d - 2 && 3 * d >= 9 * n + 1) {
            return special(s, {{compound_lines(n), 2}}, "d-m0=2: L(d,d-2,e,4), d>=(9e+1)/3>=10/3");
        }
    }
    if (n >= 2 && n % 2 == 0) {
        const Int e = n / 2;
        if (d == 6 * e && m0 == 6 * e - 2) {
            return special(s, {{tangent(e), 2}, {compound_lines(2 * e), 2}},
                           "d-m0=2: L(6e,6e-2,2e,4), e>=1");
        }
        if (d == 5 * e && m0 == 5 * e - 3) return special(s, {{tangent(e), 3}}, "d-m0=3: L(5e,5e-3,2e,4), e>=1");
        if (d == 5 * e + 1 && m0 == 5 * e - 2) {
            return special(s, {{tangent(e), 2}}, "d-m0=3: L(5e+1,5e-2,2e,4), e>=1");
        }
        if (d == 4 * e && m0 == 4 * e - 4) return special(s, {{tangent(e), 4}}, "d-m0=4: L(4e,4e-4,2e,4), e>=1");
        if (d == 4 * e + 1 && m0 == 4 * e - 3) {
            return special(s, {{tangent(e), 3}}, "d-m0=4: L(4e+1,4e-3,2e,4), e>=1");
        }
        if (d == 4 * e + 2 && m0 == 4 * e - 2) {
            return special(s, {{tangent(e), 2}}, "d-m0=4: L(4e+2,4e-2,2e,4), e>=1");
        }
    }
    for (const auto& r : sporadics()) {
        if (d == r.d && m0 == r.m0 && n == r.n) return special(s, {{r.curve, r.multiplier}}, sporadic_rule(r));
    }
    return std::nullopt;
}

// (-1) curves with m <= 2 that live on the same n points as s.
std::vector<MinusOneClass> candidate_curves(Int n) {
    std::vector<MinusOneClass> out;
    if (n == 5) out.push_back(conic5());
    if (n >= 2 && n % 2 == 0) out.push_back(tangent(n / 2));
    if (n >= 1) out.push_back(compound_lines(n));
    if (n == 7) out.push_back(sextic());
    if (n == 3) out.push_back(cubic());
    return out;
}

std::optional<SpecialityVerdict> residual_search(const LinearSystem& s) {
    std::vector<WitnessTerm> terms;
    for (const auto& curve : candidate_curves(s.n)) {
        const Int meet = intersection(s, curve.system());
        if (meet >= 0) continue;
        if (meet % curve.components() != 0) return std::nullopt;
        terms.push_back({curve, -meet / curve.components()});
    }
    if (terms.empty()) return std::nullopt;
    auto residual = residual_of(s, terms);
    if (!residual) return std::nullopt;
    Witness w{*residual, terms};
    if (!verify_minus_one_witness(s, w)) return std::nullopt;
    SpecialityVerdict v;
    v.status = Speciality::minus_one_special;
    v.rule = "(-1) curve residual";
    v.witness = std::move(w);
    return v;
}

std::optional<std::pair<Int, Int>> quoted_m3_family(const LinearSystem& s) {
    // returns (e, multiplier of L(e,e-1,2e,1))
    if (s.m != 3 || s.n < 2 || s.n % 2 != 0) return std::nullopt;
    const Int e = s.n / 2;
    if (s.d == 3 * e && s.m0 == 3 * e - 3) return std::pair<Int, Int>{e, 3};
    if (s.d == 3 * e + 1 && s.m0 == 3 * e - 2) return std::pair<Int, Int>{e, 2};
    return std::nullopt;
}

bool quoted_m2_family(const LinearSystem& s) {
    return s.m == 2 && s.n >= 2 && s.n % 2 == 0 && s.d == s.n && s.m0 == s.n - 2;
}

} // namespace

SpecialityVerdict minus_one_list_m4(const LinearSystem& s) {
    if (s.m != 4) throw std::invalid_argument("minus_one_list_m4 needs m = 4, got " + to_string(s));
    if (auto v = match_m4(s)) return *v;
    return verdict(Speciality::non_special, "not on the m=4 list");
}

std::vector<LinearSystem> m4_list_instances(Int max_d, Int max_n) {
    std::set<LinearSystem> out;
    auto add = [&](Int d, Int m0, Int n) {
        if (d <= max_d && n <= max_n && d >= 0 && m0 >= 0) out.insert({d, m0, n, 4});
    };
    for (Int e = 1; e <= max_n; ++e) {
        for (Int d = 4 * e; d <= max_d; ++d) add(d, d, e);
        for (Int d = (7 * e + 1) / 2; d <= max_d; ++d) add(d, d - 1, e);
        for (Int d = (9 * e + 1 + 2) / 3; d <= max_d; ++d) add(d, d - 2, e);
        add(6 * e, 6 * e - 2, 2 * e);
        add(5 * e, 5 * e - 3, 2 * e);
        add(5 * e + 1, 5 * e - 2, 2 * e);
        add(4 * e, 4 * e - 4, 2 * e);
        add(4 * e + 1, 4 * e - 3, 2 * e);
        add(4 * e + 2, 4 * e - 2, 2 * e);
    }
    for (const auto& r : sporadics()) add(r.d, r.m0, r.n);
    return {out.begin(), out.end()};
}

std::optional<Int> trivial_dimension(const LinearSystem& s) {
    if (s.d < 0) return std::nullopt;
    if (s.m0 > s.d) return -1;
    if (s.n == 0 || s.m == 0) return virtual_dimension(LinearSystem{s.d, s.m0, 0, 0});
    return std::nullopt;
}

SpecialityVerdict minus_one_list_small_m(const LinearSystem& s, ListScope scope) {
    if (s.m > 3) throw std::invalid_argument("minus_one_list_small_m needs m <= 3, got " + to_string(s));
    if (trivial_dimension(s)) return verdict(Speciality::non_special, "single point or m0>d");
    if (s.m == 1) return verdict(Speciality::non_special, "m=1 is non-special");
    if (s.m == 2) {
        if (quoted_m2_family(s)) {
            const Int e = s.n / 2;
            return special(s, {{tangent(e), 2}}, "m=2: L(2e,2e-2,2e,2)");
        }
        if (auto v = residual_search(s)) return *v;
        return verdict(Speciality::non_special, "m=2 without (-1) residual");
    }
    if (auto fam = quoted_m3_family(s)) {
        const bool first = fam->second == 3;
        return special(s, {{tangent(fam->first), fam->second}},
                       first ? "m=3: L(3e,3e-3,2e,3)" : "m=3: L(3e+1,3e-2,2e,3)");
    }
    if (auto v = residual_search(s)) return *v;
    if (scope == ListScope::large_m0) return verdict(Speciality::non_special, "m=3 outside the quoted families");
    return verdict(Speciality::unknown, "m=3 outside the quoted families");
}

SpecialityVerdict large_m0_verdict(const LinearSystem& s) {
    if (s.m != 4) throw std::invalid_argument("large_m0 rules need m = 4, got " + to_string(s));
    const Int d = s.d, n = s.n;
    if (s.m0 < d - 5) throw std::invalid_argument("large_m0 rules need m0 >= d-5, got " + to_string(s));
    if (s.m0 > d) return verdict(Speciality::non_special, "m0>d: empty");
    if (n == 0) return verdict(Speciality::non_special, "single point");

    const Int k = s.m0 - (d - 4);
    bool is_special = false;
    std::string rule;
    if (k >= 1) {
        const LinearSystem reduced{d - k * n, d - k * n - 4 + k, n, 4 - k};
        rule = "m0=d-" + std::to_string(4 - k) + ": reduced to " + to_string(reduced);
        switch (k) {
        case 1: is_special = quoted_m3_family(reduced).has_value(); break;
        case 2: is_special = quoted_m2_family(reduced) || virtual_dimension(reduced) >= 0; break;
        case 3: is_special = 2 * d >= 7 * n; break;
        default: is_special = d >= 4 * n; break;
        }
    } else if (k == 0) {
        const Int q = d / 4, mu = d % 4, h = n / 2, eps = n % 2;
        is_special = q == h && eps == 0 && mu <= 2;
        rule = "m0=d-4: q=h, eps=0, mu<=2";
    } else {
        const Int q = d / 3, mu = d % 3, h = n / 2, eps = n % 2;
        const bool a = q == h + 1 && mu == 0 && eps == 0 && h <= 4;
        const bool b = q == h && eps == 0 && 4 * q <= mu * (mu + 3);
        is_special = a || b;
        rule = "m0=d-5: (a) q=h+1, mu=eps=0, h<=4 or (b) q=h, eps=0, 4q<=mu(mu+3)";
    }
    if (!is_special) return verdict(Speciality::non_special, rule);
    auto listed = match_m4(s);
    if (!listed) return verdict(Speciality::unknown, rule + " (special but not on the m=4 list)");
    listed->rule = rule + "; " + listed->rule;
    return *listed;
}

DimensionReport large_m0_dimension(const LinearSystem& s) {
    const SpecialityVerdict v = large_m0_verdict(s);
    std::optional<Int> actual;
    if (v.status == Speciality::non_special) actual = expected_dimension(s);
    if (v.status == Speciality::minus_one_special) actual = witness_dimension(*v.witness);
    return make_report(s, actual, DimensionSource::list);
}

std::optional<Int> classified_dimension(const LinearSystem& s) {
    if (auto t = trivial_dimension(s)) return t;
    if (s.m <= 3) {
        const SpecialityVerdict v = minus_one_list_small_m(s);
        if (v.status == Speciality::non_special) return expected_dimension(s);
        if (v.status == Speciality::minus_one_special) return witness_dimension(*v.witness);
        return std::nullopt;
    }
    if (s.m != 4) return std::nullopt;
    if (s.m0 >= s.d - 5) return large_m0_dimension(s).actual;
    if (auto v = match_m4(s)) return witness_dimension(*v->witness);
    return std::nullopt;
}

} // namespace fatpoint
