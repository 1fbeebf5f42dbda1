#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmlaunch/detail/sha256.hpp"

namespace swarmlaunch {

class unreadable_payload : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class empty_payload : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Content-addressed description of the executable and its support files.
/// Entries are sorted by relative path, so the same tree always produces the
/// same manifest digest. The digest doubles as the staging cache key.
struct payload_manifest {
    struct entry {
        std::string rel_path;
        std::uint64_t size_bytes = 0;
        std::string digest;  // sha256 of contents, hex

        bool operator==(const entry&) const = default;
    };

    std::vector<entry> entries;
    std::uint64_t total_bytes = 0;
    std::string digest;  // sha256 over the sorted entry list, hex

    bool operator==(const payload_manifest&) const = default;
};

namespace detail {

inline std::string manifest_digest(const std::vector<payload_manifest::entry>& entries) {
    sha256 h;
    for (const auto& e : entries) {
        h.update(e.rel_path);
        h.update("\0", 1);
        h.update(std::to_string(e.size_bytes));
        h.update("\0", 1);
        h.update(e.digest);
        h.update("\n", 1);
    }
    return h.hex();
}

}  // namespace detail

/// Walks payload_root recursively and builds the manifest. Deterministic:
/// the same tree hashes to the same digest on every call.
inline payload_manifest build_manifest(const std::filesystem::path& payload_root) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(payload_root, ec))
        throw unreadable_payload("payload root is not a readable directory: " +
                                 payload_root.string());

    payload_manifest m;
    for (auto it = fs::recursive_directory_iterator(payload_root, ec);
         it != fs::recursive_directory_iterator(); it.increment(ec)) {
        if (ec) throw unreadable_payload("cannot walk " + payload_root.string() + ": " + ec.message());
        if (!it->is_regular_file()) continue;
        payload_manifest::entry e;
        e.rel_path = fs::relative(it->path(), payload_root).generic_string();
        e.size_bytes = it->file_size();
        e.digest = detail::sha256_file_hex(it->path().string());
        m.entries.push_back(std::move(e));
    }
    if (ec) throw unreadable_payload("cannot walk " + payload_root.string() + ": " + ec.message());
    if (m.entries.empty())
        throw empty_payload("payload tree is empty: " + payload_root.string());

    std::sort(m.entries.begin(), m.entries.end(),
              [](const auto& a, const auto& b) { return a.rel_path < b.rel_path; });
    for (const auto& e : m.entries) m.total_bytes += e.size_bytes;
    m.digest = detail::manifest_digest(m.entries);
    return m;
}

/// Manifest for a payload that exists only as a size, used by simulated runs
/// where no real files are moved.
inline payload_manifest synthetic_manifest(std::uint64_t bytes,
                                           const std::string& name = "app.bin") {
    if (bytes == 0) throw empty_payload("synthetic payload must be nonempty");
    payload_manifest m;
    payload_manifest::entry e;
    e.rel_path = name;
    e.size_bytes = bytes;
    e.digest = detail::sha256_hex("synthetic:" + name + ":" + std::to_string(bytes));
    m.entries.push_back(std::move(e));
    m.total_bytes = bytes;
    m.digest = detail::manifest_digest(m.entries);
    return m;
}

}  // namespace swarmlaunch
