#include "isys/reduce_star.hpp"

#include <algorithm>
#include <set>

#include "isys/error.hpp"

namespace isys {

namespace star_names {
std::string lifted_ok(std::string_view port) { return "ok:" + std::string(port); }
std::string lifted_nok(std::string_view port) { return "nok:" + std::string(port); }
std::string control_ok(std::string_view c, std::string_view port) {
    return "ok:" + std::string(c) + ":" + std::string(port);
}
std::string control_nok(std::string_view c, std::string_view port) {
    return "nok:" + std::string(c) + ":" + std::string(port);
}
std::string control_fire(std::string_view c, std::string_view port) {
    return "fire:" + std::string(c) + ":" + std::string(port);
}
std::string control_start(std::string_view interaction) { return "start:" + std::string(interaction); }
std::string checking(std::string_view interaction, std::size_t position) {
    return "check:" + std::string(interaction) + ":" + std::to_string(position);
}
std::string firing(std::string_view interaction, std::size_t position) {
    return "fire:" + std::string(interaction) + ":" + std::to_string(position);
}
}  // namespace star_names

std::string to_state_name(const CcState& s) {
    if (std::holds_alternative<CcIdle>(s)) return std::string(star_names::kIdle);
    if (auto* c = std::get_if<CcChecking>(&s)) return star_names::checking(c->interaction, c->position);
    const auto& f = std::get<CcFiring>(s);
    return star_names::firing(f.interaction, f.position);
}

std::optional<CcState> parse_cc_state(std::string_view name) {
    if (name == star_names::kIdle) return CcIdle{};
    auto colon = name.rfind(':');
    if (colon == std::string_view::npos) return std::nullopt;
    auto digits = name.substr(colon + 1);
    if (digits.empty() || digits.size() > 9 || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
        return std::nullopt;
    std::size_t position = std::stoul(std::string(digits));
    if (position == 0) return std::nullopt;
    auto head = name.substr(0, colon);
    if (head.starts_with("check:")) return CcChecking{std::string(head.substr(6)), position};
    if (head.starts_with("fire:")) return CcFiring{std::string(head.substr(5)), position};
    return std::nullopt;
}

namespace {

// Ports of an interaction ordered by ascending component index.
std::vector<PortId> ordered_ports(const InteractionModel& model, const Interaction& alpha) {
    std::vector<PortId> ports = alpha.ports;
    std::stable_sort(ports.begin(), ports.end(), [&](const PortId& a, const PortId& b) {
        return model.component_index(a.component) < model.component_index(b.component);
    });
    return ports;
}

}  // namespace

LocalBehavior build_cc_behavior(const InteractionModel& model) {
    using namespace star_names;
    LocalBehavior cc;
    const std::string idle(kIdle);
    cc.states.push_back(idle);
    cc.initial = idle;
    for (const auto& c : model.components)
        for (const auto& a : c.ports) {
            cc.ports.push_back(control_ok(c.name, a));
            cc.ports.push_back(control_nok(c.name, a));
            cc.ports.push_back(control_fire(c.name, a));
        }

    std::vector<const Interaction*> lobes;
    for (const auto& alpha : model.interactions) lobes.push_back(&alpha);
    std::stable_sort(lobes.begin(), lobes.end(),
                     [](const Interaction* a, const Interaction* b) { return a->name < b->name; });
    for (const Interaction* lobe : lobes) {
        const auto& alpha = *lobe;
        cc.ports.push_back(control_start(alpha.name));
        const auto ports = ordered_ports(model, alpha);
        const std::size_t k = ports.size();
        if (k == 0) continue;
        for (std::size_t j = 1; j <= k; ++j) cc.states.push_back(checking(alpha.name, j));
        for (std::size_t j = 1; j <= k; ++j) cc.states.push_back(firing(alpha.name, j));

        cc.transitions.push_back({idle, control_start(alpha.name), checking(alpha.name, 1)});
        for (std::size_t j = 1; j <= k; ++j) {
            const auto& p = ports[j - 1];
            const auto here = checking(alpha.name, j);
            const auto next = j < k ? checking(alpha.name, j + 1) : firing(alpha.name, 1);
            cc.transitions.push_back({here, control_ok(p.component, p.port), next});
            cc.transitions.push_back({here, control_nok(p.component, p.port), idle});
        }
        for (std::size_t j = 1; j <= k; ++j) {
            const auto& p = ports[j - 1];
            const auto next = j < k ? firing(alpha.name, j + 1) : idle;
            cc.transitions.push_back({firing(alpha.name, j), control_fire(p.component, p.port), next});
        }
    }
    return cc;
}

InteractionSystem starify(const InteractionSystem& sys) {
    using namespace star_names;
    require_valid(sys);
    const auto& model = sys.model;
    if (model.component_index(kControl))
        throw InvalidInput("component name '" + std::string(kControl) + "' is reserved for the control component");

    InteractionSystem out;
    for (std::size_t i = 0; i < model.components.size(); ++i) {
        const auto& comp = model.components[i];
        const auto& b = sys.behaviors[i];
        Component lifted = comp;
        LocalBehavior lb = b;
        std::set<std::string> names(comp.ports.begin(), comp.ports.end());
        for (const auto& a : comp.ports) {
            for (auto extra : {lifted_ok(a), lifted_nok(a)}) {
                if (!names.insert(extra).second)
                    throw InvalidInput("lifted port " + comp.name + "." + extra + " collides with an existing port");
                lifted.ports.push_back(extra);
            }
        }
        lb.ports = lifted.ports;
        for (const auto& q : b.states) {
            auto en = enabled_ports(b, q);
            for (const auto& a : comp.ports)
                lb.transitions.push_back({q, en.count(a) ? lifted_ok(a) : lifted_nok(a), q});
        }
        out.model.components.push_back(std::move(lifted));
        out.behaviors.push_back(std::move(lb));
    }

    LocalBehavior cc = build_cc_behavior(model);
    out.model.components.push_back(Component{std::string(kControl), cc.ports});
    out.behaviors.push_back(std::move(cc));

    const std::string control(kControl);
    for (const auto& comp : model.components)
        for (const auto& a : comp.ports) {
            out.model.interactions.push_back(
                {control_ok(comp.name, a), {PortId{comp.name, lifted_ok(a)}, PortId{control, control_ok(comp.name, a)}}});
            out.model.interactions.push_back({control_nok(comp.name, a),
                                              {PortId{comp.name, lifted_nok(a)},
                                               PortId{control, control_nok(comp.name, a)}}});
            out.model.interactions.push_back(
                {control_fire(comp.name, a), {PortId{comp.name, a}, PortId{control, control_fire(comp.name, a)}}});
        }
    for (const auto& alpha : model.interactions)
        out.model.interactions.push_back(
            {control_start(alpha.name), {PortId{control, control_start(alpha.name)}}});

    auto report = validate_system(out);
    if (!report.ok()) throw InvalidInput("starified system is not valid: " + report.summary());
    return out;
}

GlobalState lift_state(const InteractionSystem& sys, const GlobalState& q) {
    if (q.locals.size() != sys.component_count())
        throw InvalidInput("global state does not match the system");
    GlobalState out = q;
    out.locals.push_back(0);
    return out;
}

std::optional<GlobalState> project_state(const InteractionSystem& star, const GlobalState& q) {
    if (q.locals.empty() || q.locals.size() != star.component_count())
        throw InvalidInput("global state does not match the star system");
    const auto c = star.model.component_index(star_names::kControl);
    if (!c) throw InvalidInput("system has no control component");
    if (star.behaviors.at(*c).states.at(q.locals[*c]) != star_names::kIdle) return std::nullopt;
    GlobalState out = q;
    out.locals.erase(out.locals.begin() + static_cast<std::ptrdiff_t>(*c));
    return out;
}

}  // namespace isys
