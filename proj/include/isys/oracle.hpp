#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>

#include "isys/model.hpp"
#include "isys/semantics.hpp"
#include "isys/turing.hpp"

namespace isys {

inline constexpr std::size_t kBruteForceGuard = 10'000;

/// Least fixpoint over the fully enumerated product state space, computed
/// directly from the global transition rule without the exploration engine.
/// Throws InvalidInput when the product exceeds `guard` states.
std::set<GlobalState> brute_force_reachable(const InteractionSystem& sys, std::size_t guard = kBruteForceGuard);

/// Size of the full product state space, saturating at SIZE_MAX.
std::size_t product_size(const InteractionSystem& sys);

struct GenParams {
    std::uint64_t seed = 0;
    std::size_t max_components = 4;
    std::size_t max_states = 3;
    std::size_t max_ports = 4;          // per component
    std::size_t max_interactions = 6;
    std::size_t max_interaction_size = 3;
};

/// Deterministic in `p.seed`. Every port is covered by an interaction (ports
/// that cannot be covered within max_interactions are dropped) and local
/// behaviours may be nondeterministic.
InteractionSystem gen_random_system(const GenParams& p);

enum class Verdict { Agree, Disagree, Inapplicable };
std::string_view to_string(Verdict v);

struct Theorem1Check {
    Verdict verdict = Verdict::Inapplicable;
    RunOutcome machine = RunOutcome::StepLimit;
    bool reachable = false;
    bool search_complete = true;
    bool lockstep_ok = true;
    std::uint64_t lockstep_steps = 0;
    std::size_t states_explored = 0;
    std::string details;
};

/// Runs the machine directly and decides reachability of the acceptance
/// target in the compiled system; additionally walks the run in lockstep
/// with the compiled system (one enabled interaction per step, matching
/// successor). Bound violations make the verdict Inapplicable.
Theorem1Check check_theorem1(const Dtm& m, const Word& x);

struct Theorem2Check {
    Verdict verdict = Verdict::Inapplicable;
    std::size_t original_states = 0;
    std::size_t star_states = 0;
    std::size_t projected_states = 0;
    std::string details;
};

/// Compares the brute-force reachable set of `sys` with the idle-control
/// projection of the brute-force reachable set of starify(sys).
Theorem2Check check_theorem2(const InteractionSystem& sys, std::size_t guard = kBruteForceGuard);

}  // namespace isys
