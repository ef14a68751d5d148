#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace isys {

/// A port qualified by its owning component. Raw port names only need to be
/// unique within a component.
struct PortId {
    std::string component;
    std::string port;

    std::string str() const { return component + "." + port; }

    auto operator<=>(const PortId&) const = default;
    bool operator==(const PortId&) const = default;
};

/// A multiway synchronisation: at most one port per component, executed
/// atomically by every participant.
struct Interaction {
    std::string name;
    std::vector<PortId> ports;

    bool operator==(const Interaction&) const = default;
};

struct Component {
    std::string name;
    std::vector<std::string> ports;

    bool operator==(const Component&) const = default;
};

/// Components, their port sets and the glue code connecting them.
struct InteractionModel {
    std::vector<Component> components;
    std::vector<Interaction> interactions;

    std::optional<std::size_t> component_index(std::string_view name) const;
    std::optional<std::size_t> interaction_index(std::string_view name) const;

    bool operator==(const InteractionModel&) const = default;
};

struct LocalTransition {
    std::string from;
    std::string port;
    std::string to;

    auto operator<=>(const LocalTransition&) const = default;
    bool operator==(const LocalTransition&) const = default;
};

/// Finite labelled transition system of one component. The state list is
/// ordered; its positions are the state indices used by GlobalState.
struct LocalBehavior {
    std::vector<std::string> states;
    std::vector<std::string> ports;
    std::vector<LocalTransition> transitions;
    std::string initial;

    std::optional<std::size_t> state_index(std::string_view name) const;

    bool operator==(const LocalBehavior&) const = default;
};

/// An interaction model plus one behaviour per component, positionally
/// aligned with `model.components`.
struct InteractionSystem {
    InteractionModel model;
    std::vector<LocalBehavior> behaviors;

    std::size_t component_count() const { return model.components.size(); }

    bool operator==(const InteractionSystem&) const = default;
};

struct Finding {
    std::string rule;
    std::string element;

    std::string message() const { return rule + " " + element; }
    bool operator==(const Finding&) const = default;
};

struct ValidationReport {
    std::vector<Finding> findings;

    bool ok() const { return findings.empty(); }
    bool has(std::string_view rule) const;
    std::string summary() const;
};

// Finding rules produced by validation.
namespace rule {
inline constexpr std::string_view kInvalidName = "invalid name";
inline constexpr std::string_view kDuplicateComponent = "duplicate component";
inline constexpr std::string_view kDuplicatePort = "duplicate port";
inline constexpr std::string_view kEmptyInteraction = "empty interaction";
inline constexpr std::string_view kUnknownComponent = "unknown component";
inline constexpr std::string_view kUnknownPort = "unknown port";
inline constexpr std::string_view kTwoPortsOfOneComponent = "two ports of one component";
inline constexpr std::string_view kUncoveredPort = "uncovered port";
inline constexpr std::string_view kDuplicateInteraction = "duplicate interaction";
inline constexpr std::string_view kDuplicateInteractionName = "duplicate interaction name";
inline constexpr std::string_view kBehaviorCount = "behavior count mismatch";
inline constexpr std::string_view kPortMismatch = "port mismatch";
inline constexpr std::string_view kDuplicateState = "duplicate state";
inline constexpr std::string_view kEmptyStateSet = "empty state set";
inline constexpr std::string_view kMissingInitial = "missing initial";
inline constexpr std::string_view kUnknownState = "unknown state";
}  // namespace rule

/// Names may not be empty, contain whitespace, or contain '.', which
/// separates component and port in qualified references.
bool is_valid_name(std::string_view name);

ValidationReport validate_model(const InteractionModel& im);
ValidationReport validate_system(const InteractionSystem& sys);

/// Throws InvalidInput carrying the findings when `sys` is not valid.
void require_valid(const InteractionSystem& sys);

/// Ports labelling at least one outgoing transition of `state`.
std::set<std::string> enabled_ports(const LocalBehavior& b, std::string_view state);

/// Sorts components by name, ports within each component, interaction ports
/// by component index and interactions by name; drops interactions whose
/// port set repeats an earlier one. Behaviours follow their components and
/// their transitions are sorted and deduplicated; state order is kept.
InteractionModel canonicalize(const InteractionModel& im);
InteractionSystem canonicalize(const InteractionSystem& sys);

}  // namespace isys
