#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "swarmlaunch/core.hpp"

namespace swarmlaunch {

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// TX-Green-like preset: 256 nodes of 64 slots, 4 TB local scratch, 10 GigE
/// links, and a central store good for 10 GB/s of parallel reads.
inline cluster_spec make_txgreen_like_cluster() {
    cluster_spec c;
    c.central_store = {1.0e10, "/central"};
    c.nodes.reserve(256);
    for (int i = 0; i < 256; ++i) {
        char name[16];
        std::snprintf(name, sizeof name, "node%03d", i);
        c.nodes.push_back({name, 64, 4'000'000'000'000ULL, 1.25e9, 1.0e-3});
    }
    return c;
}

/// Desk-scale preset used by the real-process runs: 8 nodes of 8 slots.
inline cluster_spec make_desk_cluster() {
    cluster_spec c;
    c.central_store = {4.0e9, "/central"};
    c.nodes.reserve(8);
    for (int i = 0; i < 8; ++i) {
        char name[16];
        std::snprintf(name, sizeof name, "node%03d", i);
        c.nodes.push_back({name, 8, 10'000'000'000ULL, 1.0e9, 5.0e-4});
    }
    return c;
}

inline std::optional<cluster_spec> cluster_preset(const std::string& name) {
    if (name == "txgreen-like") return make_txgreen_like_cluster();
    if (name == "desk") return make_desk_cluster();
    return std::nullopt;
}

namespace detail {

inline node_spec node_from_json(const nlohmann::json& j, const node_spec& defaults) {
    node_spec n = defaults;
    if (j.contains("id")) n.id = j.at("id").get<std::string>();
    if (j.contains("slots")) n.slots = j.at("slots").get<int>();
    if (j.contains("local_scratch_bytes"))
        n.local_scratch_bytes = j.at("local_scratch_bytes").get<std::uint64_t>();
    if (j.contains("link_bandwidth")) n.link_bandwidth = j.at("link_bandwidth").get<double>();
    if (j.contains("link_latency")) n.link_latency = j.at("link_latency").get<double>();
    return n;
}

}  // namespace detail

/// Parses a cluster description. Two spellings are accepted: an explicit
/// "nodes" array, or "node_count" plus a "node_template" that is stamped out
/// with generated ids. See README for the schema.
inline cluster_spec cluster_from_json(const nlohmann::json& j) {
    cluster_spec c;
    if (j.contains("central_store")) {
        const auto& s = j.at("central_store");
        if (s.contains("aggregate_bandwidth"))
            c.central_store.aggregate_bandwidth = s.at("aggregate_bandwidth").get<double>();
        if (s.contains("path")) c.central_store.path = s.at("path").get<std::string>();
    }
    node_spec defaults{"", 1, 1'000'000'000ULL, 1.0e9, 0.0};
    if (j.contains("nodes")) {
        for (const auto& nj : j.at("nodes"))
            c.nodes.push_back(detail::node_from_json(nj, defaults));
    } else if (j.contains("node_count")) {
        const int count = j.at("node_count").get<int>();
        node_spec tmpl = defaults;
        if (j.contains("node_template")) tmpl = detail::node_from_json(j.at("node_template"), defaults);
        for (int i = 0; i < count; ++i) {
            node_spec n = tmpl;
            char name[16];
            std::snprintf(name, sizeof name, "node%03d", i);
            n.id = name;
            c.nodes.push_back(std::move(n));
        }
    } else {
        throw config_error("cluster config needs either \"nodes\" or \"node_count\"");
    }
    return c;
}

inline nlohmann::json cluster_to_json(const cluster_spec& c) {
    nlohmann::json j;
    j["central_store"] = {{"aggregate_bandwidth", c.central_store.aggregate_bandwidth},
                          {"path", c.central_store.path}};
    auto& nodes = j["nodes"] = nlohmann::json::array();
    for (const auto& n : c.nodes)
        nodes.push_back({{"id", n.id},
                         {"slots", n.slots},
                         {"local_scratch_bytes", n.local_scratch_bytes},
                         {"link_bandwidth", n.link_bandwidth},
                         {"link_latency", n.link_latency}});
    return j;
}

/// Resolves a --cluster argument: preset name first, then a JSON file path.
inline cluster_spec load_cluster(const std::string& name_or_path) {
    if (auto preset = cluster_preset(name_or_path)) return *preset;
    std::ifstream in(name_or_path);
    if (!in) throw config_error("cluster spec not found (no such preset or file): " + name_or_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw config_error("cannot parse cluster file " + name_or_path + ": " + e.what());
    }
    try {
        return cluster_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw config_error("bad cluster schema in " + name_or_path + ": " + e.what());
    }
}

}  // namespace swarmlaunch
