#include "fatpoint/cache.hpp"

#include <fstream>
#include <json.hpp>
#include <stdexcept>

#include "fatpoint/classifier.hpp"
#include "fatpoint/cremona.hpp"
#include "fatpoint/prover.hpp"

namespace fatpoint {

using nlohmann::json;

namespace {

std::string header_line() { return json{{"format", cache_format}, {"version", cache_format_version}}.dump(); }

json entry_json(const CacheEntry& e) {
    json j = {{"system", {e.system.d, e.system.m0, e.system.n, e.system.m}},
              {"dimension", e.dimension},
              {"source", e.source}};
    if (!e.trace_ref.empty()) j["trace"] = e.trace_ref;
    if (e.prime) j["prime"] = *e.prime;
    if (e.seed) j["seed"] = *e.seed;
    if (e.trials) j["trials"] = *e.trials;
    return j;
}

} // namespace

std::string cache_record(const CacheEntry& e) { return entry_json(e).dump(); }

CacheEntry parse_cache_record(const std::string& line) {
    try {
        const json j = json::parse(line);
        CacheEntry e;
        const auto& s = j.at("system");
        if (!s.is_array() || s.size() != 4) throw std::runtime_error("system must be [d, m0, n, m]");
        e.system = make_system(s[0].get<Int>(), s[1].get<Int>(), s[2].get<Int>(), s[3].get<Int>());
        e.dimension = j.at("dimension").get<Int>();
        e.source = j.at("source").get<std::string>();
        e.trace_ref = j.value("trace", "");
        if (j.contains("prime")) e.prime = j["prime"].get<std::uint64_t>();
        if (j.contains("seed")) e.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("trials")) e.trials = j["trials"].get<int>();
        return e;
    } catch (const json::exception& ex) {
        throw std::runtime_error(ex.what());
    } catch (const std::invalid_argument& ex) {
        throw std::runtime_error(ex.what());
    }
}

CacheFile::CacheFile(CacheFile&& other) noexcept
    : path_(std::move(other.path_)), state_(std::move(other.state_)), records_(other.records_) {}

CacheFile CacheFile::open(const std::filesystem::path& path) {
    CacheFile c;
    c.path_ = path;
    if (!std::filesystem::exists(path)) {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot create cache " + path.string());
        out << header_line() << "\n";
        return c;
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read cache " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1) {
            json h;
            try {
                h = json::parse(line);
            } catch (const json::exception&) {
                throw std::runtime_error(path.string() + ":1: missing cache header");
            }
            if (!h.is_object() || h.value("format", "") != cache_format) {
                throw std::runtime_error(path.string() + ":1: not a fatpoint cache");
            }
            if (h.value("version", 0) != cache_format_version) {
                throw std::runtime_error(path.string() + ":1: unsupported cache version");
            }
            continue;
        }
        if (line.empty()) continue;
        try {
            CacheEntry e = parse_cache_record(line);
            c.state_[e.system] = std::move(e);
            ++c.records_;
        } catch (const std::runtime_error& ex) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": corrupt record: " + ex.what());
        }
    }
    if (lineno == 0) throw std::runtime_error(path.string() + ": empty file, missing cache header");
    return c;
}

void CacheFile::append(const CacheEntry& e) {
    std::lock_guard lock(write_mutex_);
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot append to cache " + path_.string());
    out << cache_record(e) << "\n";
    state_[e.system] = e;
    ++records_;
}

std::optional<CacheEntry> CacheFile::lookup(const LinearSystem& s) const {
    auto it = state_.find(s);
    if (it == state_.end()) return std::nullopt;
    return it->second;
}

std::uint64_t CacheFile::state_hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (const auto& [key, e] : state_) {
        for (unsigned char ch : cache_record(e) + "\n") {
            h ^= ch;
            h *= 1099511628211ull;
        }
    }
    return h;
}

void CacheFile::compact() {
    std::lock_guard lock(write_mutex_);
    const auto tmp = path_.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << header_line() << "\n";
        for (const auto& [key, e] : state_) out << cache_record(e) << "\n";
    }
    std::filesystem::rename(tmp, path_);
    records_ = state_.size();
}

CacheVerifyReport verify_cache(const CacheFile& cache, std::size_t sample) {
    CacheVerifyReport rep;
    Prover prover;
    for (const auto& [s, e] : cache.state()) {
        if (rep.checked >= sample) break;
        ++rep.checked;
        std::optional<Int> fresh;
        if (e.source == "oracle") {
            OracleOptions o;
            o.prime = e.prime.value_or(default_prime);
            o.seed = e.seed.value_or(default_seed);
            o.trials = e.trials.value_or(default_trials);
            fresh = dimension(s, o).dimension;
        } else if (e.source == "formula" || e.source == "list") {
            fresh = classified_dimension(s);
        } else if (e.source == "cremona") {
            fresh = dimension_via_cremona(s).actual;
        } else if (e.source == "prove") {
            fresh = prover.prove(s).dimension;
        } else {
            rep.problems.push_back(to_string(s) + ": unknown source " + e.source);
            continue;
        }
        if (!fresh) {
            rep.problems.push_back(to_string(s) + ": source " + e.source + " no longer determines the dimension");
        } else if (*fresh != e.dimension) {
            rep.problems.push_back(to_string(s) + ": cached " + std::to_string(e.dimension) + ", recomputed " +
                                   std::to_string(*fresh));
        }
    }
    return rep;
}

} // namespace fatpoint
