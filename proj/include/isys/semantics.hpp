#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "isys/error.hpp"
#include "isys/model.hpp"

namespace isys {

using StateIndex = std::uint32_t;

/// One local state per component, stored as the index into that component's
/// ordered state list.
struct GlobalState {
    std::vector<StateIndex> locals;

    auto operator<=>(const GlobalState&) const = default;
    bool operator==(const GlobalState&) const = default;
};

GlobalState initial_state(const InteractionSystem& sys);
GlobalState make_state(const InteractionSystem& sys, const std::vector<std::string>& names);
std::vector<std::string> state_names(const InteractionSystem& sys, const GlobalState& q);
std::string format_state(const InteractionSystem& sys, const GlobalState& q);

/// Per component either an exact state name or a wildcard (nullopt).
struct StatePredicate {
    std::vector<std::optional<std::string>> constraints;

    bool operator==(const StatePredicate&) const = default;
};

/// Raised by `step` when the requested interaction cannot fire.
class InteractionDisabled : public InvalidInput {
public:
    InteractionDisabled(const std::string& interaction, std::vector<std::string> blockers);
    const std::vector<std::string>& blockers() const noexcept { return blockers_; }

private:
    std::vector<std::string> blockers_;
};

struct ExploreOptions {
    std::size_t max_states = 1'000'000;
    /// Worker threads used to expand each BFS level. Results are identical
    /// for every worker count; 1 is the sequential mode.
    unsigned workers = 1;
};

struct ReachableSet {
    std::vector<GlobalState> states;  // BFS discovery order
    std::size_t transitions = 0;
    bool complete = true;
};

struct ReachResult {
    bool reachable = false;
    std::vector<std::string> trace;   // interaction names, present iff reachable
    std::vector<GlobalState> path;    // trace.size() + 1 states when reachable
    std::size_t states_explored = 0;
    std::size_t transitions_explored = 0;
    bool complete = true;
};

/// Index-based view of a validated system used by every semantic operation.
/// Interactions are held in canonical (name-ascending) order.
class CompiledSystem {
public:
    explicit CompiledSystem(const InteractionSystem& sys);

    const InteractionSystem& system() const { return *sys_; }
    std::size_t component_count() const { return state_counts_.size(); }
    std::size_t interaction_count() const { return interactions_.size(); }
    const std::string& interaction_name(std::size_t k) const { return interactions_[k].name; }
    std::optional<std::size_t> find_interaction(std::string_view name) const;

    GlobalState initial() const { return initial_; }
    void check_state(const GlobalState& q) const;

    bool enabled(const GlobalState& q, std::size_t interaction) const;
    std::vector<std::size_t> enabled_interactions(const GlobalState& q) const;

    /// Appends every successor of q under `interaction` in ascending state
    /// order. Returns the number appended.
    std::size_t successors_of(const GlobalState& q, std::size_t interaction,
                              std::vector<GlobalState>& out) const;

    /// Local targets of (component, state, port-slot).
    std::span<const StateIndex> targets(std::size_t component, StateIndex state, std::size_t slot) const;

    /// Participants of an interaction as (component, port-slot) pairs in
    /// ascending component order.
    const std::vector<std::pair<std::size_t, std::size_t>>& participants(std::size_t interaction) const {
        return interactions_[interaction].participants;
    }

private:
    struct Participation {
        std::string name;
        std::vector<std::pair<std::size_t, std::size_t>> participants;
    };

    const InteractionSystem* sys_;
    std::vector<std::size_t> state_counts_;
    std::vector<std::size_t> port_counts_;
    // Per component: offsets_[c][state * ports + slot] .. +1 delimit targets_[c].
    std::vector<std::vector<std::uint32_t>> offsets_;
    std::vector<std::vector<StateIndex>> targets_;
    std::vector<Participation> interactions_;
    GlobalState initial_;
};

std::vector<std::string> enabled_interactions(const InteractionSystem& sys, const GlobalState& q);

/// Fires `interaction`; each participant takes its lowest-indexed target
/// when its local relation is nondeterministic.
GlobalState step(const InteractionSystem& sys, const GlobalState& q, std::string_view interaction);

/// All (interaction, successor) pairs sorted by interaction name then state.
std::vector<std::pair<std::string, GlobalState>> successors(const InteractionSystem& sys,
                                                            const GlobalState& q);

ReachableSet explore(const InteractionSystem& sys, const ExploreOptions& options = {});

bool satisfies(const InteractionSystem& sys, const StatePredicate& predicate, const GlobalState& q);

/// Breadth-first search for a state satisfying any of `targets`. The
/// returned trace is shortest in number of interactions.
ReachResult is_reachable(const InteractionSystem& sys, const std::vector<StatePredicate>& targets,
                         const ExploreOptions& options = {});
ReachResult is_reachable(const InteractionSystem& sys, const StatePredicate& target,
                         const ExploreOptions& options = {});

/// Checks that `path` starts at the initial state, that each consecutive
/// pair is a global transition labelled by the matching trace entry, and
/// that the last state satisfies one of `targets`.
bool replay_witness(const InteractionSystem& sys, const ReachResult& result,
                    const std::vector<StatePredicate>& targets);

}  // namespace isys
