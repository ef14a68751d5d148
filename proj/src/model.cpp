#include "isys/model.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "isys/error.hpp"

namespace isys {

namespace {

void add(ValidationReport& report, std::string_view rule, std::string element) {
    report.findings.push_back(Finding{std::string(rule), std::move(element)});
}

std::string describe_ports(const std::vector<PortId>& ports) {
    std::string out = "{";
    for (std::size_t k = 0; k < ports.size(); ++k) {
        if (k) out += ",";
        out += ports[k].str();
    }
    return out + "}";
}

}  // namespace

std::optional<std::size_t> InteractionModel::component_index(std::string_view name) const {
    for (std::size_t i = 0; i < components.size(); ++i)
        if (components[i].name == name) return i;
    return std::nullopt;
}

std::optional<std::size_t> InteractionModel::interaction_index(std::string_view name) const {
    for (std::size_t i = 0; i < interactions.size(); ++i)
        if (interactions[i].name == name) return i;
    return std::nullopt;
}

std::optional<std::size_t> LocalBehavior::state_index(std::string_view name) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] == name) return i;
    return std::nullopt;
}

bool ValidationReport::has(std::string_view r) const {
    return std::any_of(findings.begin(), findings.end(),
                       [&](const Finding& f) { return f.rule == r; });
}

std::string ValidationReport::summary() const {
    std::string out;
    for (const auto& f : findings) {
        if (!out.empty()) out += "; ";
        out += f.message();
    }
    return out;
}

bool is_valid_name(std::string_view name) {
    if (name.empty()) return false;
    return std::none_of(name.begin(), name.end(), [](char c) {
        return c == '.' || c == ' ' || c == '\t' || c == '\n' || c == '\r';
    });
}

ValidationReport validate_model(const InteractionModel& im) {
    ValidationReport report;

    std::map<std::string, std::size_t> component_by_name;
    for (std::size_t i = 0; i < im.components.size(); ++i) {
        const auto& c = im.components[i];
        if (!is_valid_name(c.name)) add(report, rule::kInvalidName, "component '" + c.name + "'");
        if (!component_by_name.emplace(c.name, i).second)
            add(report, rule::kDuplicateComponent, c.name);
        std::set<std::string> seen;
        for (const auto& p : c.ports) {
            if (!is_valid_name(p)) add(report, rule::kInvalidName, "port '" + c.name + "." + p + "'");
            if (!seen.insert(p).second) add(report, rule::kDuplicatePort, c.name + "." + p);
        }
    }

    std::set<PortId> covered;
    std::map<std::set<PortId>, std::string> by_port_set;
    std::set<std::string> names;
    for (const auto& alpha : im.interactions) {
        if (!is_valid_name(alpha.name)) add(report, rule::kInvalidName, "interaction '" + alpha.name + "'");
        if (!names.insert(alpha.name).second) add(report, rule::kDuplicateInteractionName, alpha.name);
        if (alpha.ports.empty()) {
            add(report, rule::kEmptyInteraction, alpha.name);
            continue;
        }
        std::set<std::string> participants;
        for (const auto& p : alpha.ports) {
            auto ci = im.component_index(p.component);
            if (!ci) {
                add(report, rule::kUnknownComponent, p.component + " in " + alpha.name);
                continue;
            }
            const auto& ports = im.components[*ci].ports;
            if (std::find(ports.begin(), ports.end(), p.port) == ports.end())
                add(report, rule::kUnknownPort, p.str() + " in " + alpha.name);
            if (!participants.insert(p.component).second)
                add(report, rule::kTwoPortsOfOneComponent, p.component + " in " + alpha.name);
            covered.insert(p);
        }
        std::set<PortId> key(alpha.ports.begin(), alpha.ports.end());
        auto [it, fresh] = by_port_set.emplace(key, alpha.name);
        if (!fresh)
            add(report, rule::kDuplicateInteraction,
                it->second + " and " + alpha.name + " " + describe_ports(alpha.ports));
    }

    for (const auto& c : im.components)
        for (const auto& p : c.ports)
            if (!covered.count(PortId{c.name, p})) add(report, rule::kUncoveredPort, c.name + "." + p);

    return report;
}

ValidationReport validate_system(const InteractionSystem& sys) {
    ValidationReport report = validate_model(sys.model);
    const auto& comps = sys.model.components;
    if (sys.behaviors.size() != comps.size()) {
        add(report, rule::kBehaviorCount,
            std::to_string(sys.behaviors.size()) + " behaviors for " + std::to_string(comps.size()) +
                " components");
        return report;
    }
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const auto& c = comps[i];
        const auto& b = sys.behaviors[i];
        std::set<std::string> model_ports(c.ports.begin(), c.ports.end());
        std::set<std::string> behavior_ports(b.ports.begin(), b.ports.end());
        if (model_ports != behavior_ports) add(report, rule::kPortMismatch, c.name);

        std::set<std::string> states;
        for (const auto& s : b.states) {
            if (s.empty()) add(report, rule::kInvalidName, "empty state in " + c.name);
            if (!states.insert(s).second) add(report, rule::kDuplicateState, c.name + ":" + s);
        }
        if (b.states.empty()) add(report, rule::kEmptyStateSet, c.name);
        if (!states.count(b.initial)) add(report, rule::kMissingInitial, c.name + ":" + b.initial);

        for (const auto& t : b.transitions) {
            if (!states.count(t.from)) add(report, rule::kUnknownState, c.name + ":" + t.from);
            if (!states.count(t.to)) add(report, rule::kUnknownState, c.name + ":" + t.to);
            if (!behavior_ports.count(t.port)) add(report, rule::kUnknownPort, c.name + "." + t.port);
        }
    }
    return report;
}

void require_valid(const InteractionSystem& sys) {
    auto report = validate_system(sys);
    if (!report.ok()) throw InvalidInput("invalid interaction system: " + report.summary());
}

std::set<std::string> enabled_ports(const LocalBehavior& b, std::string_view state) {
    if (!b.state_index(state)) throw InvalidInput("no such state: " + std::string(state));
    std::set<std::string> out;
    for (const auto& t : b.transitions)
        if (t.from == state) out.insert(t.port);
    return out;
}

namespace {

// Returns the canonical model together with the permutation that maps new
// component positions to old ones.
std::pair<InteractionModel, std::vector<std::size_t>> canonical_with_order(const InteractionModel& im) {
    std::vector<std::size_t> order(im.components.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return im.components[a].name < im.components[b].name;
    });

    InteractionModel out;
    for (std::size_t old : order) {
        Component c = im.components[old];
        std::sort(c.ports.begin(), c.ports.end());
        c.ports.erase(std::unique(c.ports.begin(), c.ports.end()), c.ports.end());
        out.components.push_back(std::move(c));
    }

    auto rank = [&](const PortId& p) {
        auto i = out.component_index(p.component);
        return std::make_pair(i.value_or(out.components.size()), p);
    };
    std::set<std::set<PortId>> seen;
    for (const auto& alpha : im.interactions) {
        Interaction a = alpha;
        std::sort(a.ports.begin(), a.ports.end(),
                  [&](const PortId& x, const PortId& y) { return rank(x) < rank(y); });
        if (!seen.insert(std::set<PortId>(a.ports.begin(), a.ports.end())).second) continue;
        out.interactions.push_back(std::move(a));
    }
    std::stable_sort(out.interactions.begin(), out.interactions.end(),
                     [](const Interaction& x, const Interaction& y) { return x.name < y.name; });
    return {std::move(out), std::move(order)};
}

}  // namespace

InteractionModel canonicalize(const InteractionModel& im) {
    return canonical_with_order(im).first;
}

InteractionSystem canonicalize(const InteractionSystem& sys) {
    auto [model, order] = canonical_with_order(sys.model);
    InteractionSystem out{std::move(model), {}};
    for (std::size_t old : order) {
        if (old >= sys.behaviors.size()) break;
        LocalBehavior b = sys.behaviors[old];
        std::sort(b.ports.begin(), b.ports.end());
        b.ports.erase(std::unique(b.ports.begin(), b.ports.end()), b.ports.end());
        auto index = [&](const std::string& s) { return b.state_index(s).value_or(b.states.size()); };
        std::sort(b.transitions.begin(), b.transitions.end(),
                  [&](const LocalTransition& x, const LocalTransition& y) {
                      return std::make_tuple(index(x.from), x.port, index(x.to)) <
                             std::make_tuple(index(y.from), y.port, index(y.to));
                  });
        b.transitions.erase(std::unique(b.transitions.begin(), b.transitions.end()), b.transitions.end());
        out.behaviors.push_back(std::move(b));
    }
    return out;
}

}  // namespace isys
