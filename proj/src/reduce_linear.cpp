#include "isys/reduce_linear.hpp"

#include <algorithm>

#include "isys/error.hpp"

namespace isys {

namespace {

constexpr std::string_view kHaltFwd = "halt:fwd";
constexpr std::string_view kHaltWait = "halt:wait";
constexpr std::string_view kHaltBack = "halt:back";

constexpr std::string_view kFwdIn = "H:fwd:in";
constexpr std::string_view kFwdOut = "H:fwd:out";
constexpr std::string_view kBackIn = "H:back:in";
constexpr std::string_view kBackOut = "H:back:out";

void require_machine(const Dtm& m) {
    auto report = validate_dtm(m);
    if (!report.ok()) throw InvalidInput("invalid machine: " + report.summary());
}

std::size_t index_of(const std::vector<std::string>& v, const std::string& s, std::string_view what) {
    auto it = std::find(v.begin(), v.end(), s);
    if (it == v.end()) throw InvalidInput("unknown " + std::string(what) + " '" + s + "'");
    return static_cast<std::size_t>(it - v.begin());
}

bool leave_port_exists(Move move, std::size_t cell, std::size_t last) {
    if (cell == 0) return move != Move::Left;
    if (cell == last) return move != Move::Right;
    return true;
}

bool arrive_port_exists(Move move, std::size_t cell, std::size_t last) {
    if (cell == 0) return move != Move::Right;
    if (cell == last) return move != Move::Left;
    return true;
}

std::vector<std::string> non_halting(const Dtm& m) {
    std::vector<std::string> out;
    for (const auto& p : m.states)
        if (!m.is_halting(p)) out.push_back(p);
    return out;
}

}  // namespace

std::optional<CellLocalState> CellLocalState::parse(std::string_view name) {
    auto comma = name.find(',');
    if (comma == std::string_view::npos || name.find(',', comma + 1) != std::string_view::npos)
        return std::nullopt;
    return CellLocalState{std::string(name.substr(0, comma)), std::string(name.substr(comma + 1))};
}

std::string CellPort::str() const {
    return std::string(kind == CellPortKind::Leave ? "L:" : "A:") + state + ":" + symbol;
}

std::string cell_component_name(std::size_t cell, std::size_t cell_count) {
    auto digits = std::to_string(cell_count == 0 ? 0 : cell_count - 1).size();
    auto index = std::to_string(cell);
    return "cell" + std::string(digits > index.size() ? digits - index.size() : 0, '0') + index;
}

InteractionSystem compile_lsa(const Dtm& m, const Word& x) {
    require_machine(m);
    initial_config(m, x);  // rejects symbols outside the input alphabet

    const std::size_t n = x.size();
    const std::size_t cells = n + 2;
    const std::size_t last = n + 1;
    const auto active = non_halting(m);

    std::vector<std::string> markers = m.states;
    markers.emplace_back(kNoHeadMarker);
    auto state_name = [](std::string_view marker, const std::string& symbol) {
        return CellLocalState{std::string(marker), symbol}.str();
    };

    InteractionSystem sys;
    for (std::size_t i = 0; i < cells; ++i) {
        Component comp{cell_component_name(i, cells), {}};
        LocalBehavior b;
        for (const auto& marker : markers)
            for (const auto& g : m.tape_alphabet) b.states.push_back(state_name(marker, g));

        for (const auto& p : active) {
            for (const auto& g : m.tape_alphabet) {
                const DeltaEntry& d = *m.action(p, g);
                if (leave_port_exists(d.move, i, last)) {
                    auto port = CellPort{CellPortKind::Leave, p, g}.str();
                    comp.ports.push_back(port);
                    b.transitions.push_back({state_name(p, g), port, state_name(kNoHeadMarker, d.write)});
                }
                if (arrive_port_exists(d.move, i, last)) {
                    auto port = CellPort{CellPortKind::Arrive, p, g}.str();
                    comp.ports.push_back(port);
                    for (const auto& held : m.tape_alphabet)
                        b.transitions.push_back(
                            {state_name(kNoHeadMarker, held), port, state_name(d.next, held)});
                }
            }
        }

        if (i == 1) b.initial = state_name(m.initial, n >= 1 ? x[0] : m.blank);
        else if (i >= 2 && i <= n) b.initial = state_name(kNoHeadMarker, x[i - 1]);
        else b.initial = state_name(kNoHeadMarker, m.blank);

        b.ports = comp.ports;
        sys.model.components.push_back(std::move(comp));
        sys.behaviors.push_back(std::move(b));
    }

    for (const auto& p : active) {
        for (const auto& g : m.tape_alphabet) {
            const DeltaEntry& d = *m.action(p, g);
            for (std::size_t i = 0; i < cells; ++i) {
                if (d.move == Move::Left && i == 0) continue;
                if (d.move == Move::Right && i == last) continue;
                std::size_t j = d.move == Move::Left ? i - 1 : i + 1;
                const auto& from = sys.model.components[i].name;
                const auto& to = sys.model.components[j].name;
                Interaction alpha;
                alpha.name = "mv:" + p + ":" + g + ":" + from + ":" + to;
                PortId leave{from, CellPort{CellPortKind::Leave, p, g}.str()};
                PortId arrive{to, CellPort{CellPortKind::Arrive, p, g}.str()};
                alpha.ports = i < j ? std::vector<PortId>{leave, arrive} : std::vector<PortId>{arrive, leave};
                sys.model.interactions.push_back(std::move(alpha));
            }
        }
    }
    return sys;
}

std::vector<StatePredicate> accept_predicate(const Dtm& m, const Word& x) {
    const std::size_t cells = x.size() + 2;
    std::vector<StatePredicate> out;
    for (std::size_t i = 0; i < cells; ++i) {
        for (const auto& g : m.tape_alphabet) {
            StatePredicate p{std::vector<std::optional<std::string>>(cells)};
            p.constraints[i] = CellLocalState{m.accept, g}.str();
            out.push_back(std::move(p));
        }
    }
    return out;
}

GlobalState config_to_gstate(const Dtm& m, const Word& x, const Configuration& c) {
    const std::size_t cells = x.size() + 2;
    if (c.tape.size() != cells)
        throw InvalidInput("tape length " + std::to_string(c.tape.size()) + " does not match " +
                           std::to_string(cells) + " cells");
    if (c.head >= cells) throw InvalidInput("head outside tape");
    const std::size_t gamma = m.tape_alphabet.size();
    const std::size_t head_marker = index_of(m.states, c.state, "machine state");
    const std::size_t no_head = m.states.size();

    GlobalState q;
    for (std::size_t j = 0; j < cells; ++j) {
        std::size_t marker = j == c.head ? head_marker : no_head;
        q.locals.push_back(static_cast<StateIndex>(marker * gamma + index_of(m.tape_alphabet, c.tape[j], "symbol")));
    }
    return q;
}

Configuration gstate_to_config(const Dtm& m, const Word& x, const GlobalState& q) {
    const std::size_t cells = x.size() + 2;
    const std::size_t gamma = m.tape_alphabet.size();
    const std::size_t no_head = m.states.size();
    if (q.locals.size() != cells) throw InvalidInput("not a configuration state: wrong component count");

    Configuration c;
    std::size_t heads = 0;
    for (std::size_t j = 0; j < cells; ++j) {
        std::size_t idx = q.locals[j];
        if (idx >= (no_head + 1) * gamma) throw InvalidInput("not a configuration state: cell " + std::to_string(j));
        std::size_t marker = idx / gamma;
        c.tape.push_back(m.tape_alphabet[idx % gamma]);
        if (marker != no_head) {
            ++heads;
            c.head = j;
            c.state = m.states[marker];
        }
    }
    if (heads != 1)
        throw InvalidInput("not a configuration state: " + std::to_string(heads) + " head markers");
    return c;
}

HaltExtension extend_halt_propagation(const Dtm& m, const InteractionSystem& compiled) {
    require_machine(m);
    const std::size_t cells = compiled.component_count();
    const std::size_t gamma = m.tape_alphabet.size();
    const std::size_t base = (m.states.size() + 1) * gamma;

    auto shape_error = [](const std::string& why) { return InvalidInput("input not in compiled shape: " + why); };
    if (cells < 2 || compiled.behaviors.size() != cells) throw shape_error("needs at least two cell components");
    for (std::size_t i = 0; i < cells; ++i) {
        if (compiled.model.components[i].name != cell_component_name(i, cells))
            throw shape_error("component " + std::to_string(i) + " is not a cell");
        const auto& states = compiled.behaviors[i].states;
        if (states.size() != base) throw shape_error("cell " + std::to_string(i) + " has unexpected states");
        for (std::size_t k = 0; k < base; ++k) {
            std::string marker = k / gamma < m.states.size() ? m.states[k / gamma] : std::string(kNoHeadMarker);
            if (states[k] != CellLocalState{marker, m.tape_alphabet[k % gamma]}.str())
                throw shape_error("cell " + std::to_string(i) + " state " + states[k]);
        }
    }

    HaltExtension out{compiled, {}, {}};
    auto& sys = out.system;
    const std::size_t last = cells - 1;
    const std::string fwd(kHaltFwd), wait(kHaltWait), back(kHaltBack), done(kHaltDone);
    const std::string fwd_in(kFwdIn), fwd_out(kFwdOut), back_in(kBackIn), back_out(kBackOut);

    for (std::size_t i = 0; i < cells; ++i) {
        auto& comp = sys.model.components[i];
        auto& b = sys.behaviors[i];
        for (const auto* s : {&fwd, &wait, &back, &done}) b.states.push_back(*s);

        std::vector<std::string> added;
        if (i < last) added.insert(added.end(), {fwd_out, back_in});
        if (i > 0) added.insert(added.end(), {fwd_in, back_out});
        comp.ports.insert(comp.ports.end(), added.begin(), added.end());
        b.ports.insert(b.ports.end(), added.begin(), added.end());

        const std::string& after_back_in = i > 0 ? back : done;
        for (const auto& g : m.tape_alphabet) {
            const auto accepting = CellLocalState{m.accept, g}.str();
            const auto idle = CellLocalState{std::string(kNoHeadMarker), g}.str();
            if (i < last) b.transitions.push_back({accepting, fwd_out, wait});
            else b.transitions.push_back({accepting, back_out, done});
            if (i > 0) b.transitions.push_back({idle, fwd_in, fwd});
            if (i < last) b.transitions.push_back({idle, back_in, after_back_in});
        }
        if (i < last) {
            b.transitions.push_back({fwd, fwd_out, wait});
            b.transitions.push_back({wait, back_in, after_back_in});
        } else {
            b.transitions.push_back({fwd, back_out, done});
        }
        if (i > 0) b.transitions.push_back({back, back_out, done});
    }

    for (std::size_t i = 0; i < last; ++i) {
        const auto& left = sys.model.components[i].name;
        const auto& right = sys.model.components[i + 1].name;
        sys.model.interactions.push_back(
            Interaction{"halt:fwd:" + left + ":" + right, {PortId{left, fwd_out}, PortId{right, fwd_in}}});
        sys.model.interactions.push_back(
            Interaction{"halt:back:" + right + ":" + left, {PortId{left, back_in}, PortId{right, back_out}}});
    }

    out.distinguished.locals.assign(cells, static_cast<StateIndex>(base + 3));
    out.target.constraints.assign(cells, done);
    return out;
}

}  // namespace isys
