#pragma once

// Persistent dimension cache: an append-only JSON-lines log whose first
// line is a header. Replaying the log (last writer wins per system) gives
// the cache state.

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fatpoint/core.hpp"
#include "fatpoint/oracle.hpp"

namespace fatpoint {

inline constexpr const char* cache_format = "fatpoint-cache";
inline constexpr int cache_format_version = 1;

struct CacheEntry {
    LinearSystem system;
    Int dimension = -1;
    std::string source;     // formula, list, cremona, oracle, prove
    std::string trace_ref;  // path of a trace file, if any
    // provenance, present for oracle entries
    std::optional<std::uint64_t> prime;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;

    bool operator==(const CacheEntry&) const = default;
};

class CacheFile {
public:
    /// Opens and replays the log, creating it with a header when missing.
    /// Throws std::runtime_error naming the line of the first corrupt record.
    static CacheFile open(const std::filesystem::path& path);

    void append(const CacheEntry& e);
    std::optional<CacheEntry> lookup(const LinearSystem& s) const;
    const std::map<LinearSystem, CacheEntry>& state() const { return state_; }
    /// FNV-1a over the canonical dump of the replayed state.
    std::uint64_t state_hash() const;
    std::size_t records() const { return records_; }
    const std::filesystem::path& path() const { return path_; }
    /// Rewrites the log with one record per system. State is unchanged.
    void compact();

    CacheFile(CacheFile&& other) noexcept;

private:
    CacheFile() = default;
    std::filesystem::path path_;
    std::map<LinearSystem, CacheEntry> state_;
    std::size_t records_ = 0;
    std::mutex write_mutex_;
};

std::string cache_record(const CacheEntry& e);
/// Throws std::runtime_error on a malformed record.
CacheEntry parse_cache_record(const std::string& line);

struct CacheVerifyReport {
    std::size_t checked = 0;
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};

/// Recomputes up to `sample` entries (in key order) from their source:
/// oracle entries with their recorded prime, seed and trials, the others
/// through the classifier, Cremona or the prover.
CacheVerifyReport verify_cache(const CacheFile& cache, std::size_t sample = 64);

} // namespace fatpoint
