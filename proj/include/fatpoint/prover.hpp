#pragma once

// Recursive prover for dimensions of L(d, m0, n, 4). A proof is a list of
// claims "dim L = l", each justified by a closed rule or by earlier claims.
// Claims are shared: the list is a DAG in dependency order with the root
// claim last.

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fatpoint/core.hpp"
#include "fatpoint/degeneration.hpp"
#include "fatpoint/oracle.hpp"

namespace fatpoint {

enum class ClaimKind {
    formula,          // no point besides p0, or m0 > d
    classifier_list,  // row of the m = 4 list, dimension v(M)
    small_m,          // m <= 3 rules
    large_m0,         // m0 >= d - 5 rules
    cremona,          // reduction to a closed form or to another claim
    induction_cache,  // monotonicity in n from a neighbouring claim
    degeneration,     // (k, b) degeneration from the four child claims
    oracle,           // rank evidence, not a certificate
};

const char* to_string(ClaimKind k);
std::optional<ClaimKind> parse_claim_kind(const std::string& name);

struct OracleProvenance {
    std::uint64_t prime = default_prime;
    std::uint64_t seed = default_seed;
    int trials = default_trials;
    bool unanimous = true;
};

struct Claim {
    LinearSystem system;
    Int dimension = -1;
    ClaimKind kind = ClaimKind::formula;
    std::string rule;
    /// Indices of earlier claims. degeneration: L^_F, L_F, L_P, L^_P.
    /// cremona: the quasi-homogeneous final form, if any.
    /// induction_cache: the neighbouring system.
    std::vector<std::size_t> deps;
    std::optional<DegenerationNode> node;
    std::optional<MultVector> cremona_final;
    std::optional<OracleProvenance> oracle;
    bool certified = true;
};

inline constexpr const char* tool_version = "fatpoint 1.0.0";

struct ProofTrace {
    LinearSystem root;
    Int dimension = -1;
    std::vector<Claim> claims;
    std::uint64_t prime = default_prime;
    std::uint64_t seed = default_seed;
    std::string version = tool_version;

    const Claim& root_claim() const { return claims.back(); }
    bool certified() const { return !claims.empty() && root_claim().certified; }
    std::size_t uncertified_leaves() const;
    /// Kind of the root claim, and for degeneration roots its rule.
    std::string closing_rule() const;
};

struct ProverOptions {
    OracleOptions oracle{default_trials, default_seed, default_prime, false};
};

/// A Prover keeps the memo of certified claims across calls. Calls are
/// serialized by an internal lock, so one instance may be shared between
/// threads.
class Prover {
public:
    explicit Prover(ProverOptions opts = {});

    /// Always returns a trace. A system with no certificate gets a single
    /// oracle claim at the root.
    ProofTrace prove(const LinearSystem& s);

    /// Trace whose root is the given (k, b) degeneration, with the four
    /// children proven as usual. nullopt when the children do not certify
    /// the expected dimension through this node.
    std::optional<ProofTrace> prove_with(const LinearSystem& s, Int k, Int b);

    /// Certified dimension, or nullopt when no certificate was found.
    std::optional<Int> certified_dimension(const LinearSystem& s);

    std::size_t memo_size() const;

private:
    std::optional<std::size_t> certify(const LinearSystem& s);
    std::optional<Claim> attempt(const LinearSystem& s);
    std::optional<Claim> attempt_m4(const LinearSystem& s);
    std::optional<Claim> try_degeneration(const LinearSystem& s, Int k, Int b);
    std::optional<Claim> try_cremona(const LinearSystem& s);
    std::optional<Claim> try_monotone(const LinearSystem& s);
    std::size_t oracle_claim(const LinearSystem& s);
    std::size_t push(Claim c);
    ProofTrace extract(std::size_t root) const;

    ProverOptions opts_;
    mutable std::recursive_mutex mutex_;
    std::vector<Claim> store_;
    std::map<LinearSystem, std::size_t> memo_;
    std::map<LinearSystem, std::size_t> oracle_memo_;
    std::set<LinearSystem> failed_;
    std::set<LinearSystem> in_progress_;
    std::size_t cycle_hits_ = 0;
};

/// Candidate b values tried first for k = 3: ceil(d/3) <= b up to
/// floor((4d-2)/10) when v <= -1 and floor((2d-1)/5) when v >= -1, with
/// n - b odd before n - b even, ascending within each parity.
std::vector<Int> preferred_b(const LinearSystem& s);

struct CheckOptions {
    /// Oracle claims are re-run with seed + reseed_offset.
    std::uint64_t reseed_offset = 7919;
    bool rerun_oracle = true;
};

struct TraceCheck {
    bool ok = true;
    std::string failure;
    std::optional<std::size_t> claim;
};

/// Re-verifies every claim from its recorded justification and the claims
/// it cites, without searching.
TraceCheck check_trace(const ProofTrace& t, const CheckOptions& opts = {});

} // namespace fatpoint
