#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "isys/model.hpp"
#include "isys/semantics.hpp"

namespace isys {

/// Naming of everything starify adds. For a component port `a` of
/// component `c` and an interaction `alpha`:
///
///   component side   ok:a  nok:a            (self-loops)
///   control side     ok:c:a  nok:c:a  fire:c:a  start:alpha
///   interactions     ok:c:a  nok:c:a  fire:c:a  start:alpha
///   control states   idle, check:alpha:k, fire:alpha:k   (k = 1..|alpha|)
namespace star_names {
inline constexpr std::string_view kControl = "cc";
inline constexpr std::string_view kIdle = "idle";
std::string lifted_ok(std::string_view port);
std::string lifted_nok(std::string_view port);
std::string control_ok(std::string_view component, std::string_view port);
std::string control_nok(std::string_view component, std::string_view port);
std::string control_fire(std::string_view component, std::string_view port);
std::string control_start(std::string_view interaction);
std::string checking(std::string_view interaction, std::size_t position);
std::string firing(std::string_view interaction, std::size_t position);
}  // namespace star_names

/// Phase of the control component.
struct CcIdle {
    bool operator==(const CcIdle&) const = default;
};
struct CcChecking {
    std::string interaction;
    std::size_t position = 1;
    bool operator==(const CcChecking&) const = default;
};
struct CcFiring {
    std::string interaction;
    std::size_t position = 1;
    bool operator==(const CcFiring&) const = default;
};
using CcState = std::variant<CcIdle, CcChecking, CcFiring>;

std::string to_state_name(const CcState& s);
std::optional<CcState> parse_cc_state(std::string_view name);

/// Behaviour of the control component for `model`. State 0 is idle; from
/// idle, start:alpha walks the ports of alpha in ascending component order
/// checking ok/nok, and after the last ok fires each port in the same order
/// before returning to idle. A nok at any position returns to idle.
LocalBehavior build_cc_behavior(const InteractionModel& model);

/// Star-shaped system: every original component talks only to an added
/// control component (appended last). Throws InvalidInput when `sys` is
/// invalid or a generated name collides with an existing one.
InteractionSystem starify(const InteractionSystem& sys);

/// Appends the control component in its idle state.
GlobalState lift_state(const InteractionSystem& sys, const GlobalState& q);

/// Drops the control component "cc" when it is idle; nullopt for
/// mid-protocol states.
std::optional<GlobalState> project_state(const InteractionSystem& star, const GlobalState& q);

}  // namespace isys
