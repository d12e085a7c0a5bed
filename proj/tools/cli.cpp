#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "fatpoint/cache.hpp"
#include "fatpoint/classifier.hpp"
#include "fatpoint/cremona.hpp"
#include "fatpoint/oracle.hpp"
#include "fatpoint/prover.hpp"
#include "fatpoint/sweep.hpp"
#include "fatpoint/trace_io.hpp"

namespace fatpoint::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::uint64_t prime = default_prime;
    std::uint64_t seed = default_seed;
    int trials = default_trials;
    std::string format = "csv";
    std::string out;
    bool check = false;
    std::string cache;
};

struct SweepFlags {
    std::vector<Int> system;  // positional d m0 n m
    std::string d, m0, m0_offset, n;
    bool critical = false;
    Int m = 4;
    std::vector<std::string> systems;
};

struct DimFlags {
    bool list = false, cremona = false, oracle = false, prove = false, all = false;
};

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    try {
        std::size_t used = 0;
        const unsigned long long x = std::stoull(v, &used);
        if (used != std::string(v).size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw UsageError(std::string(name) + " is not an unsigned integer: " + v);
    }
}

LinearSystem parse_system_csv(const std::string& text) {
    std::vector<Int> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(parse_range(item).lo);
    if (parts.size() != 4) throw UsageError("--system needs d,m0,n,m, got '" + text + "'");
    return make_system(parts[0], parts[1], parts[2], parts[3]);
}

SweepSpec sweep_spec(const SweepFlags& f) {
    SweepSpec spec;
    spec.m = f.m;
    spec.critical = f.critical;
    if (!f.d.empty()) spec.d = parse_range(f.d);
    if (!f.m0.empty()) spec.m0 = parse_range(f.m0);
    if (!f.m0_offset.empty()) spec.m0_offset = parse_range(f.m0_offset);
    if (!f.n.empty()) spec.n = parse_range(f.n);
    if (spec.m0 && spec.m0_offset) throw UsageError("--m0 and --m0-offset are exclusive");
    if ((spec.m0 || spec.m0_offset || spec.n || spec.critical) && !spec.d) throw UsageError("sweep ranges need --d");
    if (spec.m < 0) throw UsageError("--m must be >= 0");
    for (const auto& s : f.systems) spec.systems.push_back(parse_system_csv(s));
    if (!f.system.empty()) {
        if (f.system.size() != 4) throw UsageError("a system is given as d m0 n m");
        spec.systems.insert(spec.systems.begin(), make_system(f.system[0], f.system[1], f.system[2], f.system[3]));
    }
    return spec;
}

void add_sweep_flags(CLI::App* cmd, SweepFlags& f, bool positional) {
    if (positional) cmd->add_option("dims", f.system, "d m0 n m")->expected(0, 4);
    cmd->add_option("--d", f.d, "degree range A:B");
    cmd->add_option("--m0", f.m0, "m0 range A:B");
    cmd->add_option("--m0-offset", f.m0_offset, "m0 = d - c for c in A:B");
    cmd->add_option("--n", f.n, "n range A:B (default 0:12)");
    cmd->add_flag("--critical", f.critical, "only the boundary n per (d, m0)");
    cmd->add_option("--m", f.m, "multiplicity of the general points")->capture_default_str();
    cmd->add_option("--system", f.systems, "explicit system d,m0,n,m (repeatable)");
}

OracleOptions oracle_options(const Globals& g) {
    OracleOptions o;
    o.prime = g.prime;
    o.seed = g.seed;
    o.trials = g.trials;
    return o;
}

ProverOptions prover_options(const Globals& g) {
    ProverOptions p;
    p.oracle = oracle_options(g);
    p.oracle.parallel = false;
    return p;
}

void emit(const Globals& g, const std::string& text, std::ostream& out) {
    if (g.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(g.out);
    if (!f) throw std::runtime_error("cannot write " + g.out);
    f << text;
}

std::string dim_text(Int v) { return std::to_string(v); }

// ---- dim ------------------------------------------------------------------

struct ChannelResult {
    std::string channel;
    std::optional<Int> dim;
    std::string note;
    std::optional<OracleResult> oracle;
};

int cmd_dim(const Globals& g, const SweepFlags& sf, DimFlags f, std::ostream& out, std::ostream& err) {
    if (sf.system.size() != 4) throw UsageError("dim needs d m0 n m");
    const LinearSystem s = make_system(sf.system[0], sf.system[1], sf.system[2], sf.system[3]);
    if (f.all) f.list = f.cremona = f.oracle = f.prove = true;
    const bool automatic = !(f.list || f.cremona || f.oracle || f.prove);

    std::vector<ChannelResult> results;
    auto run_list = [&] {
        const ClassifyRow row = classify_row(s);
        results.push_back({row.source == "formula" ? "formula" : "list", row.dim, row.rule, std::nullopt});
    };
    auto run_cremona = [&] {
        const ReductionResult r = reduce(mult_vector(s));
        results.push_back({"cremona", resolve_final(r, classifier_resolver()),
                           "final " + to_string(r.final) + " (" + to_string(r.status) + ")", std::nullopt});
    };
    auto run_prove = [&] {
        Prover p(prover_options(g));
        const ProofTrace t = p.prove(s);
        results.push_back({"prove", t.dimension,
                           t.closing_rule() + (t.certified() ? ", certified" : ", uncertified"), std::nullopt});
    };
    auto run_oracle = [&] {
        const OracleResult r = dimension(s, oracle_options(g));
        results.push_back({"oracle", r.dimension, r.unanimous ? "unanimous" : "trials disagree", r});
    };

    if (automatic) {
        run_list();
        if (!results.back().dim) run_cremona();
        if (!results.back().dim) run_oracle();
    } else {
        if (f.list) run_list();
        if (f.cremona) run_cremona();
        if (f.prove) run_prove();
        if (f.oracle) run_oracle();
    }

    std::optional<Int> agreed;
    bool conflict = false;
    for (const auto& r : results) {
        if (!r.dim) continue;
        if (agreed && *agreed != *r.dim) conflict = true;
        if (!agreed) agreed = r.dim;
    }

    std::ostringstream os;
    const Int v = virtual_dimension(s), e = expected_dimension(s);
    if (g.format == "json") {
        nlohmann::json j = {{"system", system_json(s)}, {"v", v}, {"e", e}};
        j["dim"] = agreed ? nlohmann::json(*agreed) : nlohmann::json(nullptr);
        j["consistent"] = !conflict;
        nlohmann::json ch = nlohmann::json::array();
        for (const auto& r : results) {
            ch.push_back({{"channel", r.channel},
                          {"dim", r.dim ? nlohmann::json(*r.dim) : nlohmann::json(nullptr)},
                          {"note", r.note}});
        }
        j["channels"] = ch;
        os << j.dump(2) << "\n";
    } else {
        os << to_string(s) << " v=" << v << " e=" << e << " dim=" << (agreed ? dim_text(*agreed) : "?") << "\n";
        for (const auto& r : results) {
            os << "  " << r.channel << ": dim=" << (r.dim ? dim_text(*r.dim) : "?") << " (" << r.note << ")\n";
        }
    }
    emit(g, os.str(), out);

    if (!g.cache.empty()) {
        CacheFile cache = CacheFile::open(g.cache);
        // the oracle channel was run last, so it is written last and wins on replay
        for (const auto& r : results) {
            if (!r.dim) continue;
            CacheEntry entry{s, *r.dim, r.channel, "", std::nullopt, std::nullopt, std::nullopt};
            if (r.oracle) {
                entry.prime = r.oracle->prime;
                entry.seed = r.oracle->seed;
                entry.trials = r.oracle->trials;
            }
            cache.append(entry);
        }
    }
    if (conflict) {
        err << "channels disagree on " << to_string(s) << "\n";
        return exit_verification;
    }
    return exit_ok;
}

// ---- classify ---------------------------------------------------------------

int cmd_classify(const Globals& g, const SweepFlags& sf, std::ostream& out) {
    const SweepSpec spec = sweep_spec(sf);
    std::vector<ClassifyRow> rows;
    for (const auto& s : expand(spec)) rows.push_back(classify_row(s));
    if (g.format == "json") {
        emit(g, rows_json(rows).dump(2) + "\n", out);
    } else {
        emit(g, csv_table(rows), out);
    }
    return exit_ok;
}

// ---- prove ------------------------------------------------------------------

std::string trace_name(const LinearSystem& s) {
    return "L_" + std::to_string(s.d) + "_" + std::to_string(s.m0) + "_" + std::to_string(s.n) + "_" +
           std::to_string(s.m) + ".json";
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int check_trace_files(const std::vector<std::string>& files, std::ostream& out, std::ostream& err) {
    int status = exit_ok;
    for (const auto& f : files) {
        try {
            const ProofTrace t = parse_trace(read_file(f));
            const TraceCheck c = check_trace(t);
            if (c.ok) {
                out << f << ": ok " << to_string(t.root) << " dim=" << t.dimension
                    << " uncertified_leaves=" << t.uncertified_leaves() << "\n";
            } else {
                out << f << ": FAILED " << c.failure << "\n";
                status = exit_verification;
            }
        } catch (const std::exception& e) {
            err << f << ": " << e.what() << "\n";
            status = exit_verification;
        }
    }
    return status;
}

int cmd_prove(const Globals& g, const SweepFlags& sf, const std::vector<std::string>& check_files,
              std::ostream& out, std::ostream& err) {
    if (!check_files.empty()) return check_trace_files(check_files, out, err);
    const SweepSpec spec = sweep_spec(sf);
    const std::vector<LinearSystem> systems = expand(spec);
    if (systems.empty() && !spec.d) throw UsageError("prove needs a system, --system or a sweep");

    const std::filesystem::path dir = g.out.empty() ? std::filesystem::path("traces") : std::filesystem::path(g.out);
    std::filesystem::create_directories(dir);
    std::optional<CacheFile> cache;
    if (!g.cache.empty()) cache.emplace(CacheFile::open(g.cache));

    Prover prover(prover_options(g));
    std::map<std::string, std::size_t> by_rule;
    std::size_t certified = 0, leaves = 0, failed_checks = 0;
    for (const auto& s : systems) {
        const ProofTrace t = prover.prove(s);
        const auto path = dir / trace_name(s);
        {
            std::ofstream f(path);
            if (!f) throw std::runtime_error("cannot write " + path.string());
            f << serialize_trace(t);
        }
        ++by_rule[t.closing_rule()];
        if (t.certified()) ++certified;
        leaves += t.uncertified_leaves();
        std::string verdict;
        if (g.check) {
            const TraceCheck c = check_trace(parse_trace(read_file(path)));
            verdict = c.ok ? " check=ok" : " check=FAILED (" + c.failure + ")";
            if (!c.ok) ++failed_checks;
        }
        out << to_string(s) << " dim=" << t.dimension << " " << (t.certified() ? "certified" : "uncertified")
            << " closing=" << t.closing_rule() << " [" << t.root_claim().rule << "]"
            << " uncertified_leaves=" << t.uncertified_leaves() << " claims=" << t.claims.size() << verdict
            << " trace=" << path.string() << "\n";
        if (cache) cache->append({s, t.dimension, "prove", path.string(), std::nullopt, std::nullopt, std::nullopt});
    }
    out << "summary: systems=" << systems.size() << " certified=" << certified
        << " uncertified=" << systems.size() - certified << " uncertified_leaves=" << leaves;
    if (g.check) out << " failed_checks=" << failed_checks;
    out << "\n";
    for (const auto& [rule, count] : by_rule) out << "  " << rule << ": " << count << "\n";
    return failed_checks ? exit_verification : exit_ok;
}

// ---- cache ------------------------------------------------------------------

int cmd_cache(const Globals& g, const std::string& op, std::string path, std::size_t sample, std::ostream& out,
              std::ostream& err) {
    if (path.empty()) path = g.cache;
    if (path.empty()) throw UsageError("cache needs a path (positional or --cache)");
    std::optional<CacheFile> cache;
    try {
        cache.emplace(CacheFile::open(path));
    } catch (const std::runtime_error& e) {
        err << e.what() << "\n";
        return exit_verification;
    }
    const auto hash_text = [&] {
        std::ostringstream os;
        os << std::hex << cache->state_hash();
        return os.str();
    };
    if (op == "inspect") {
        out << "cache " << path << ": records=" << cache->records() << " entries=" << cache->state().size()
            << " hash=" << hash_text() << "\n";
        for (const auto& [s, e] : cache->state()) out << "  " << cache_record(e) << "\n";
        return exit_ok;
    }
    if (op == "compact") {
        const std::size_t before = cache->records();
        const std::uint64_t h = cache->state_hash();
        cache->compact();
        const CacheFile again = CacheFile::open(path);
        if (again.state_hash() != h) {
            err << "compaction changed the cache state\n";
            return exit_verification;
        }
        out << "compacted " << path << ": records " << before << " -> " << again.records() << " hash=" << hash_text()
            << "\n";
        return exit_ok;
    }
    if (op == "verify") {
        const CacheVerifyReport rep = verify_cache(*cache, sample);
        for (const auto& p : rep.problems) out << "  mismatch: " << p << "\n";
        out << "verify " << path << ": checked=" << rep.checked << " " << (rep.ok() ? "ok" : "FAILED")
            << " hash=" << hash_text() << "\n";
        return rep.ok() ? exit_ok : exit_verification;
    }
    throw UsageError("unknown cache operation '" + op + "' (inspect, compact, verify)");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dimensions of quasi-homogeneous linear systems L(d, m0, n, m)", "fatpoint"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    try {
        g.prime = env_u64("FATPOINT_PRIME", g.prime);
        g.seed = env_u64("FATPOINT_SEED", g.seed);
    } catch (const UsageError& e) {
        err << e.what() << "\n";
        return exit_usage;
    }
    app.add_option("--prime", g.prime, "prime for the oracle field")->capture_default_str();
    app.add_option("--trials", g.trials, "oracle trials")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--seed", g.seed, "oracle seed")->capture_default_str();
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--out", g.out, "output file (prove: trace directory)");
    app.add_flag("--check", g.check, "re-validate written traces");
    app.add_option("--cache", g.cache, "cache file");

    SweepFlags sweep;
    DimFlags dflags;
    auto* dim = app.add_subcommand("dim", "dimension of one system");
    dim->add_option("dims", sweep.system, "d m0 n m")->expected(4)->required();
    dim->add_flag("--list", dflags.list, "classifier channel");
    dim->add_flag("--cremona", dflags.cremona, "Cremona reduction channel");
    dim->add_flag("--oracle", dflags.oracle, "rank oracle channel");
    dim->add_flag("--prove", dflags.prove, "prover channel");
    dim->add_flag("--all", dflags.all, "every channel, checked for agreement");

    auto* classify = app.add_subcommand("classify", "speciality table over a sweep");
    add_sweep_flags(classify, sweep, false);

    std::vector<std::string> check_files;
    auto* prove = app.add_subcommand("prove", "proof traces for a system or a sweep");
    add_sweep_flags(prove, sweep, true);
    prove->add_option("--trace", check_files, "check existing trace files instead of proving");

    std::string cache_op, cache_path;
    std::size_t sample = 64;
    auto* cache = app.add_subcommand("cache", "inspect, compact or verify a cache file");
    cache->add_option("op", cache_op, "inspect | compact | verify")->required();
    cache->add_option("path", cache_path, "cache file (defaults to --cache)");
    cache->add_option("--sample", sample, "entries re-checked by verify")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return exit_usage;
    }

    try {
        if (dim->parsed()) return cmd_dim(g, sweep, dflags, out, err);
        if (classify->parsed()) return cmd_classify(g, sweep, out);
        if (prove->parsed()) return cmd_prove(g, sweep, check_files, out, err);
        if (cache->parsed()) return cmd_cache(g, cache_op, cache_path, sample, out, err);
    } catch (const UsageError& e) {
        err << "usage: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "usage: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_verification;
    }
    return exit_usage;
}

} // namespace fatpoint::cli
