#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "swarmlaunch/manifest.hpp"

namespace swarmlaunch {

/// Time is carried as seconds in a double. Doubles keep sub-nanosecond
/// resolution out to ~10^5 s, which covers every run this tool makes.
using seconds = double;

/// Clock readings come through an interface so the same orchestration and
/// metric code runs under virtual time (simulated backend) and wall time
/// (process backends).
class clock_source {
public:
    virtual ~clock_source() = default;
    virtual seconds now() const = 0;
};

/// Monotonic wall time, zeroed at construction.
class wall_clock final : public clock_source {
public:
    wall_clock() : start_(std::chrono::steady_clock::now()) {}

    seconds now() const override {
        const auto dt = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double>(dt).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

/// Virtual time advanced explicitly by the simulated event loop.
class virtual_clock final : public clock_source {
public:
    seconds now() const override { return now_; }

    void advance_to(seconds t) {
        if (t < now_)
            throw std::logic_error("virtual_clock: time moved backwards");
        now_ = t;
    }

private:
    seconds now_ = 0.0;
};

// ---------------------------------------------------------------------------
// Cluster topology
// ---------------------------------------------------------------------------

/// Central payload store. aggregate_bandwidth is only consulted by the
/// simulated staging model; path labels where the payload lives.
struct store_spec {
    double aggregate_bandwidth = 0.0;  // bytes/second
    std::string path;

    bool operator==(const store_spec&) const = default;
};

struct node_spec {
    std::string id;
    int slots = 0;                          // concurrent instance slots
    std::uint64_t local_scratch_bytes = 0;  // staging capacity
    double link_bandwidth = 0.0;            // bytes/second, simulated model only
    double link_latency = 0.0;              // seconds, simulated model only

    bool operator==(const node_spec&) const = default;
};

struct cluster_spec {
    std::vector<node_spec> nodes;
    store_spec central_store;

    std::uint64_t total_slots() const {
        std::uint64_t n = 0;
        for (const auto& node : nodes) n += static_cast<std::uint64_t>(node.slots);
        return n;
    }

    bool operator==(const cluster_spec&) const = default;
};

enum class violation_kind {
    empty_cluster,
    duplicate_node_id,
    zero_slots,
    bad_link_bandwidth,
    negative_link_latency,
    bad_store_bandwidth,
};

/// One invariant breach. Violations are data, not exceptions: callers get
/// the full list in one pass.
struct violation {
    violation_kind kind;
    std::string node_id;  // empty for cluster-wide violations

    bool operator==(const violation&) const = default;
};

inline std::string to_string(violation_kind k) {
    switch (k) {
        case violation_kind::empty_cluster: return "empty_cluster";
        case violation_kind::duplicate_node_id: return "duplicate_node_id";
        case violation_kind::zero_slots: return "zero_slots";
        case violation_kind::bad_link_bandwidth: return "bad_link_bandwidth";
        case violation_kind::negative_link_latency: return "negative_link_latency";
        case violation_kind::bad_store_bandwidth: return "bad_store_bandwidth";
    }
    return "?";
}

/// Checks every cluster invariant and reports all violations, not just the
/// first.
inline std::vector<violation> validate_cluster(const cluster_spec& spec) {
    std::vector<violation> out;
    if (spec.nodes.empty()) out.push_back({violation_kind::empty_cluster, {}});
    std::unordered_set<std::string> seen;
    for (const auto& node : spec.nodes) {
        if (!seen.insert(node.id).second)
            out.push_back({violation_kind::duplicate_node_id, node.id});
        if (node.slots < 1) out.push_back({violation_kind::zero_slots, node.id});
        if (!(node.link_bandwidth > 0.0))
            out.push_back({violation_kind::bad_link_bandwidth, node.id});
        if (node.link_latency < 0.0)
            out.push_back({violation_kind::negative_link_latency, node.id});
    }
    if (!(spec.central_store.aggregate_bandwidth > 0.0))
        out.push_back({violation_kind::bad_store_bandwidth, {}});
    return out;
}

// ---------------------------------------------------------------------------
// Task lifecycle
// ---------------------------------------------------------------------------

enum class task_state { pending, staged, launching, ready, completed, failed };

/// Transition triggers. Each corresponds to exactly one edge out of a state
/// (fail is legal from every non-terminal state).
enum class transition_event { stage, launch, mark_ready, complete, fail };

inline std::string to_string(task_state s) {
    switch (s) {
        case task_state::pending: return "pending";
        case task_state::staged: return "staged";
        case task_state::launching: return "launching";
        case task_state::ready: return "ready";
        case task_state::completed: return "completed";
        case task_state::failed: return "failed";
    }
    return "?";
}

inline std::string to_string(transition_event e) {
    switch (e) {
        case transition_event::stage: return "stage";
        case transition_event::launch: return "launch";
        case transition_event::mark_ready: return "mark_ready";
        case transition_event::complete: return "complete";
        case transition_event::fail: return "fail";
    }
    return "?";
}

inline bool is_terminal(task_state s) {
    return s == task_state::completed || s == task_state::failed;
}

/// Raised when a (state, event) pair is outside the legal transition set.
/// This is an orchestrator logic bug and must never be swallowed.
class illegal_transition : public std::logic_error {
public:
    illegal_transition(task_state from, transition_event ev)
        : std::logic_error("illegal transition: " + to_string(from) + " + " +
                           to_string(ev)) {}
};

/// Per-transition clock readings. A field is set exactly once, by the
/// transition that owns it.
struct task_times {
    std::optional<seconds> submit;
    std::optional<seconds> staged;
    std::optional<seconds> spawn;
    std::optional<seconds> ready;
    std::optional<seconds> completed;
    std::optional<seconds> failed;

    seconds latest() const {
        seconds t = -1.0;
        for (const auto& v : {submit, staged, spawn, ready, completed, failed})
            if (v) t = std::max(t, *v);
        return t;
    }

    bool operator==(const task_times&) const = default;
};

struct task {
    int id = 0;                         // ordinal within the array job
    std::string input_ref;              // the input item this task maps over
    std::vector<std::string> command;   // argv after placeholder substitution
    int slots = 1;                      // resource demand
    std::optional<std::string> node;    // assignment, absent while queued
    task_state state = task_state::pending;
    task_times times;

    bool operator==(const task&) const = default;
};

/// The legal transition relation. Returns the target state, or nullopt when
/// the pair is not an edge.
inline std::optional<task_state> transition_target(task_state from, transition_event ev) {
    switch (ev) {
        case transition_event::stage:
            return from == task_state::pending ? std::optional{task_state::staged} : std::nullopt;
        case transition_event::launch:
            return from == task_state::staged ? std::optional{task_state::launching} : std::nullopt;
        case transition_event::mark_ready:
            return from == task_state::launching ? std::optional{task_state::ready} : std::nullopt;
        case transition_event::complete:
            return from == task_state::ready ? std::optional{task_state::completed} : std::nullopt;
        case transition_event::fail:
            return is_terminal(from) ? std::nullopt : std::optional{task_state::failed};
    }
    return std::nullopt;
}

/// Applies one lifecycle event to a task value. The returned copy carries the
/// new state and the transition's clock reading; all prior timestamps are
/// untouched. Throws illegal_transition for pairs outside the legal set and
/// for clock readings that would break timestamp monotonicity.
inline task advance_task(task t, transition_event ev, seconds now) {
    const auto target = transition_target(t.state, ev);
    if (!target) throw illegal_transition(t.state, ev);
    if (now < t.times.latest()) throw illegal_transition(t.state, ev);
    t.state = *target;
    switch (ev) {
        case transition_event::stage: t.times.staged = now; break;
        case transition_event::launch: t.times.spawn = now; break;
        case transition_event::mark_ready: t.times.ready = now; break;
        case transition_event::complete: t.times.completed = now; break;
        case transition_event::fail: t.times.failed = now; break;
    }
    return t;
}

// ---------------------------------------------------------------------------
// Jobs
// ---------------------------------------------------------------------------

/// The single post-processing step gated on successful termination of all
/// map tasks.
struct reduce_spec {
    std::vector<std::string> command;

    bool operator==(const reduce_spec&) const = default;
};

/// One aggregate submission: N numbered tasks sharing one payload, plus an
/// optional reduce step. Tasks are contiguous from 0 in input order.
struct array_job {
    std::string id;
    payload_manifest payload;
    std::vector<task> tasks;
    std::optional<reduce_spec> reduce;
    std::optional<seconds> submit_time;

    bool operator==(const array_job&) const = default;
};

}  // namespace swarmlaunch
