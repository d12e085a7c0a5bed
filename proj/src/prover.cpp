#include "fatpoint/prover.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "fatpoint/classifier.hpp"
#include "fatpoint/cremona.hpp"

namespace fatpoint {

const char* to_string(ClaimKind k) {
    switch (k) {
    case ClaimKind::formula: return "formula";
    case ClaimKind::classifier_list: return "classifier_list";
    case ClaimKind::small_m: return "small_m";
    case ClaimKind::large_m0: return "large_m0";
    case ClaimKind::cremona: return "cremona";
    case ClaimKind::induction_cache: return "induction_cache";
    case ClaimKind::degeneration: return "degeneration";
    case ClaimKind::oracle: return "oracle";
    }
    return "unknown";
}

std::optional<ClaimKind> parse_claim_kind(const std::string& name) {
    for (auto k : {ClaimKind::formula, ClaimKind::classifier_list, ClaimKind::small_m, ClaimKind::large_m0,
                   ClaimKind::cremona, ClaimKind::induction_cache, ClaimKind::degeneration, ClaimKind::oracle}) {
        if (name == to_string(k)) return k;
    }
    return std::nullopt;
}

std::size_t ProofTrace::uncertified_leaves() const {
    return static_cast<std::size_t>(
        std::count_if(claims.begin(), claims.end(), [](const Claim& c) { return c.kind == ClaimKind::oracle; }));
}

std::string ProofTrace::closing_rule() const {
    if (claims.empty()) return "";
    const Claim& r = root_claim();
    if (r.kind == ClaimKind::degeneration && r.node) return std::string("degeneration:") + to_string(r.node->rule);
    return to_string(r.kind);
}

std::vector<Int> preferred_b(const LinearSystem& s) {
    const Int d = s.d, n = s.n, v = virtual_dimension(s);
    const Int lo = (d + 2) / 3;
    Int hi = -1;
    if (v <= -1) hi = std::max(hi, (4 * d - 2) / 10);
    if (v >= -1) hi = std::max(hi, (2 * d - 1) / 5);
    hi = std::min(hi, n);
    std::vector<Int> out;
    for (int parity : {1, 0}) {
        for (Int b = lo; b <= hi; ++b) {
            if ((n - b) % 2 == parity) out.push_back(b);
        }
    }
    return out;
}

Prover::Prover(ProverOptions opts) : opts_(opts) {}

std::size_t Prover::memo_size() const {
    std::lock_guard lock(mutex_);
    return memo_.size();
}

std::size_t Prover::push(Claim c) {
    store_.push_back(std::move(c));
    return store_.size() - 1;
}

std::optional<std::size_t> Prover::certify(const LinearSystem& s) {
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    if (failed_.count(s)) return std::nullopt;
    if (in_progress_.count(s)) {
        ++cycle_hits_;
        return std::nullopt;
    }
    in_progress_.insert(s);
    const std::size_t hits_before = cycle_hits_;
    std::optional<Claim> c;
    try {
        c = attempt(s);
    } catch (...) {
        in_progress_.erase(s);
        throw;
    }
    in_progress_.erase(s);
    if (!c) {
        // a failure that leaned on an open ancestor may succeed later
        if (cycle_hits_ == hits_before) failed_.insert(s);
        return std::nullopt;
    }
    const std::size_t idx = push(std::move(*c));
    memo_.emplace(s, idx);
    return idx;
}

std::optional<Claim> Prover::attempt(const LinearSystem& s) {
    Claim c;
    c.system = s;
    if (auto t = trivial_dimension(s)) {
        c.dimension = *t;
        c.kind = ClaimKind::formula;
        c.rule = s.m0 > s.d ? "m0>d" : "single point";
        return c;
    }
    if (s.m <= 3) {
        const SpecialityVerdict v = minus_one_list_small_m(s);
        if (v.status != Speciality::unknown) {
            c.kind = ClaimKind::small_m;
            c.rule = v.rule;
            c.dimension = v.status == Speciality::non_special ? expected_dimension(s) : witness_dimension(*v.witness);
            return c;
        }
    }
    if (s.m == 4) {
        if (auto m4 = attempt_m4(s)) return m4;
    }
    if (auto mono = try_monotone(s)) return mono;
    for (Int b : preferred_b(s)) {
        if (3 >= s.d) break;
        if (auto deg = try_degeneration(s, 3, b)) return deg;
    }
    if (auto cr = try_cremona(s)) return cr;
    const auto tried = preferred_b(s);
    for (Int k : {3, 4, 5, 6}) {
        if (k >= s.d) break;
        for (Int b = 0; b <= s.n; ++b) {
            if (k == 3 && std::find(tried.begin(), tried.end(), b) != tried.end()) continue;
            if (auto deg = try_degeneration(s, k, b)) return deg;
        }
    }
    for (Int k = 1; k < s.d; ++k) {
        if (k >= 3 && k <= 6) continue;
        for (Int b = 0; b <= s.n; ++b) {
            if (auto deg = try_degeneration(s, k, b)) return deg;
        }
    }
    return std::nullopt;
}

std::optional<Claim> Prover::attempt_m4(const LinearSystem& s) {
    Claim c;
    c.system = s;
    if (s.m0 >= s.d - 5) {
        const DimensionReport r = large_m0_dimension(s);
        if (!r.actual) return std::nullopt;
        c.kind = ClaimKind::large_m0;
        c.dimension = *r.actual;
        c.rule = large_m0_verdict(s).rule;
        return c;
    }
    const SpecialityVerdict v = minus_one_list_m4(s);
    if (v.status == Speciality::minus_one_special) {
        c.kind = ClaimKind::classifier_list;
        c.dimension = witness_dimension(*v.witness);
        c.rule = v.rule;
        return c;
    }
    return std::nullopt;
}

std::optional<Claim> Prover::try_monotone(const LinearSystem& s) {
    const Int v = virtual_dimension(s);
    Claim c;
    c.system = s;
    c.kind = ClaimKind::induction_cache;
    if (v <= -1 && s.n >= 1) {
        const LinearSystem fewer{s.d, s.m0, s.n - 1, s.m};
        if (virtual_dimension(fewer) <= -1) {
            if (auto idx = certify(fewer); idx && store_[*idx].dimension == -1) {
                c.dimension = -1;
                c.rule = "empty with one point fewer";
                c.deps = {*idx};
                return c;
            }
        }
    }
    if (v >= 0) {
        const LinearSystem more{s.d, s.m0, s.n + 1, s.m};
        const Int vm = virtual_dimension(more);
        if (vm >= -1) {
            if (auto idx = certify(more); idx && store_[*idx].dimension == vm) {
                c.dimension = v;
                c.rule = "expected with one point more";
                c.deps = {*idx};
                return c;
            }
        }
    }
    return std::nullopt;
}

std::optional<Claim> Prover::try_degeneration(const LinearSystem& s, Int k, Int b) {
    if (k <= 0 || k >= s.d || b < 0 || b > s.n) return std::nullopt;
    std::map<LinearSystem, std::size_t> used;
    const DimsProvider dims = [&](const LinearSystem& child) -> std::optional<Int> {
        if (child == s) return std::nullopt;
        auto idx = certify(child);
        if (!idx) return std::nullopt;
        used[child] = *idx;
        return store_[*idx].dimension;
    };
    const Int v = virtual_dimension(s);
    std::optional<DegenerationNode> node;
    if (v <= -1) node = try_empty(s, k, b, dims);
    if (!node && v >= -1) node = try_expected(s, k, b, dims);
    if (!node) node = try_limit(s, k, b, dims);
    if (!node) return std::nullopt;
    Claim c;
    c.system = s;
    c.kind = ClaimKind::degeneration;
    c.dimension = *node->l0;
    c.rule = "(" + std::to_string(k) + "," + std::to_string(b) + ") " + to_string(node->rule);
    c.deps = {used.at(node->lf_hat), used.at(node->lf), used.at(node->lp), used.at(node->lp_hat)};
    c.node = std::move(node);
    return c;
}

std::optional<Claim> Prover::try_cremona(const LinearSystem& s) {
    const ReductionResult r = reduce(mult_vector(s));
    if (r.steps.empty()) return std::nullopt;
    Claim c;
    c.system = s;
    c.kind = ClaimKind::cremona;
    c.cremona_final = r.final;
    if (r.dimension) {
        c.dimension = *r.dimension;
        c.rule = std::string("reduces to ") + to_string(r.final) + " (" + to_string(r.status) + ")";
        return c;
    }
    auto qh = as_quasi_homogeneous(r.final);
    if (!qh || *qh == s) return std::nullopt;
    auto idx = certify(*qh);
    if (!idx) return std::nullopt;
    c.dimension = store_[*idx].dimension;
    c.rule = "reduces to " + to_string(*qh);
    c.deps = {*idx};
    return c;
}

std::size_t Prover::oracle_claim(const LinearSystem& s) {
    if (auto it = oracle_memo_.find(s); it != oracle_memo_.end()) return it->second;
    const OracleResult r = dimension(s, opts_.oracle);
    Claim c;
    c.system = s;
    c.kind = ClaimKind::oracle;
    c.dimension = r.dimension;
    c.certified = false;
    c.rule = "rank over GF(" + std::to_string(r.prime) + ")";
    c.oracle = OracleProvenance{r.prime, r.seed, r.trials, r.unanimous};
    const std::size_t idx = push(std::move(c));
    oracle_memo_.emplace(s, idx);
    return idx;
}

ProofTrace Prover::extract(std::size_t root) const {
    std::map<std::size_t, std::size_t> remap;
    ProofTrace t;
    std::function<void(std::size_t)> visit = [&](std::size_t i) {
        if (remap.count(i)) return;
        for (std::size_t dep : store_[i].deps) visit(dep);
        Claim c = store_[i];
        for (auto& dep : c.deps) dep = remap.at(dep);
        remap[i] = t.claims.size();
        t.claims.push_back(std::move(c));
    };
    visit(root);
    t.root = store_[root].system;
    t.dimension = store_[root].dimension;
    t.prime = opts_.oracle.prime;
    t.seed = opts_.oracle.seed;
    return t;
}

ProofTrace Prover::prove(const LinearSystem& s) {
    std::lock_guard lock(mutex_);
    if (auto idx = certify(s)) return extract(*idx);
    return extract(oracle_claim(s));
}

std::optional<ProofTrace> Prover::prove_with(const LinearSystem& s, Int k, Int b) {
    std::lock_guard lock(mutex_);
    in_progress_.insert(s);
    std::optional<Claim> c;
    try {
        c = try_degeneration(s, k, b);
    } catch (...) {
        in_progress_.erase(s);
        throw;
    }
    in_progress_.erase(s);
    if (!c) return std::nullopt;
    return extract(push(std::move(*c)));
}

std::optional<Int> Prover::certified_dimension(const LinearSystem& s) {
    std::lock_guard lock(mutex_);
    auto idx = certify(s);
    if (!idx) return std::nullopt;
    return store_[*idx].dimension;
}

// ---------------------------------------------------------------------------

namespace {

std::string fail_text(std::size_t i, const Claim& c, const std::string& why) {
    return "claim " + std::to_string(i) + " (" + to_string(c.system) + ", " + to_string(c.kind) + "): " + why;
}

std::optional<std::string> check_claim(const ProofTrace& t, std::size_t i, const CheckOptions& opts) {
    const Claim& c = t.claims[i];
    for (std::size_t dep : c.deps) {
        if (dep >= i) return "cites claim " + std::to_string(dep) + " which does not precede it";
    }
    if (c.dimension < expected_dimension(c.system)) return "dimension below the expected dimension";
    const bool deps_certified =
        std::all_of(c.deps.begin(), c.deps.end(), [&](std::size_t d) { return t.claims[d].certified; });
    if (c.kind == ClaimKind::oracle) {
        if (c.certified) return "oracle claim marked certified";
    } else if (c.certified != deps_certified) {
        return "certified flag does not match the cited claims";
    }
    auto dep_system = [&](std::size_t j) { return t.claims[c.deps[j]].system; };
    auto dep_dim = [&](std::size_t j) { return t.claims[c.deps[j]].dimension; };

    switch (c.kind) {
    case ClaimKind::formula: {
        auto d = trivial_dimension(c.system);
        if (!d) return "system is not trivial";
        if (*d != c.dimension) return "formula gives " + std::to_string(*d);
        return std::nullopt;
    }
    case ClaimKind::small_m: {
        if (c.system.m > 3) return "small_m claim on m > 3";
        const SpecialityVerdict v = minus_one_list_small_m(c.system);
        if (v.status == Speciality::unknown) return "small-m rules leave the system open";
        const Int d = v.status == Speciality::non_special ? expected_dimension(c.system) : witness_dimension(*v.witness);
        if (d != c.dimension) return "small-m rules give " + std::to_string(d);
        return std::nullopt;
    }
    case ClaimKind::large_m0: {
        if (c.system.m != 4 || c.system.m0 < c.system.d - 5) return "large_m0 claim outside m0 >= d-5";
        auto d = large_m0_dimension(c.system).actual;
        if (!d || *d != c.dimension) return "large-m0 rules disagree";
        return std::nullopt;
    }
    case ClaimKind::classifier_list: {
        if (c.system.m != 4) return "list claim on m != 4";
        const SpecialityVerdict v = minus_one_list_m4(c.system);
        if (v.status != Speciality::minus_one_special) return "system is not on the list";
        if (!verify_minus_one_witness(c.system, *v.witness)) return "list witness fails verification";
        if (witness_dimension(*v.witness) != c.dimension) return "list gives " + std::to_string(witness_dimension(*v.witness));
        return std::nullopt;
    }
    case ClaimKind::induction_cache: {
        if (c.deps.size() != 1) return "monotonicity cites one neighbour";
        const LinearSystem& s = c.system;
        const LinearSystem nb = dep_system(0);
        if (nb.d != s.d || nb.m0 != s.m0 || nb.m != s.m) return "neighbour differs beyond n";
        if (nb.n == s.n - 1) {
            if (dep_dim(0) != -1 || c.dimension != -1) return "emptiness does not propagate";
            return std::nullopt;
        }
        if (nb.n == s.n + 1) {
            const Int vn = virtual_dimension(nb);
            if (vn < -1 || dep_dim(0) != vn) return "neighbour is not non-special with v >= -1";
            if (c.dimension != virtual_dimension(s)) return "dimension is not v";
            return std::nullopt;
        }
        return "neighbour is not n +- 1";
    }
    case ClaimKind::degeneration: {
        if (!c.node) return "degeneration claim without node";
        const DegenerationNode& node = *c.node;
        if (node.parent != c.system) return "node parent differs from the claim";
        if (c.deps.size() != 4 || !node.dims) return "degeneration cites four children";
        const std::array<LinearSystem, 4> kids{node.lf_hat, node.lf, node.lp, node.lp_hat};
        const std::array<Int, 4> dims{node.dims->lf_hat, node.dims->lf, node.dims->lp, node.dims->lp_hat};
        for (std::size_t j = 0; j < 4; ++j) {
            if (dep_system(j) != kids[j]) return "cited child " + std::to_string(j) + " is the wrong system";
            if (dep_dim(j) != dims[j]) return "child dimension differs from the cited claim";
        }
        if (!node_conclusion_holds(node)) return "node conclusion does not follow";
        if (*node.l0 != c.dimension) return "limit dimension differs from the claim";
        return std::nullopt;
    }
    case ClaimKind::cremona: {
        if (!c.cremona_final) return "cremona claim without final form";
        const ReductionResult r = reduce(mult_vector(c.system));
        if (r.steps.empty()) return "no Cremona step applies";
        if (r.final != *c.cremona_final) return "final form differs: " + to_string(r.final);
        if (r.dimension) {
            if (!c.deps.empty()) return "closed-form final cites claims";
            if (*r.dimension != c.dimension) return "closed form gives " + std::to_string(*r.dimension);
            return std::nullopt;
        }
        auto qh = as_quasi_homogeneous(r.final);
        if (!qh) return "final form is not quasi-homogeneous";
        if (c.deps.size() != 1 || dep_system(0) != *qh) return "does not cite the final form";
        if (dep_dim(0) != c.dimension) return "dimension differs from the final form";
        return std::nullopt;
    }
    case ClaimKind::oracle: {
        if (!c.oracle) return "oracle claim without provenance";
        if (!c.deps.empty()) return "oracle claim cites claims";
        if (!opts.rerun_oracle) return std::nullopt;
        OracleOptions o{c.oracle->trials, c.oracle->seed + opts.reseed_offset, c.oracle->prime, true};
        const OracleResult r = dimension(c.system, o);
        if (r.dimension != c.dimension) return "fresh oracle run gives " + std::to_string(r.dimension);
        return std::nullopt;
    }
    }
    return "unknown claim kind";
}

} // namespace

TraceCheck check_trace(const ProofTrace& t, const CheckOptions& opts) {
    TraceCheck out;
    if (t.claims.empty()) return {false, "trace has no claims", std::nullopt};
    for (std::size_t i = 0; i < t.claims.size(); ++i) {
        std::optional<std::string> why;
        try {
            why = check_claim(t, i, opts);
        } catch (const std::exception& e) {
            why = std::string("check threw: ") + e.what();
        }
        if (why) return {false, fail_text(i, t.claims[i], *why), i};
    }
    const Claim& root = t.root_claim();
    if (root.system != t.root) return {false, "root claim is not about the trace root", t.claims.size() - 1};
    if (root.dimension != t.dimension) return {false, "root claim dimension differs from the trace", t.claims.size() - 1};
    return out;
}

} // namespace fatpoint
