#include "isys/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>

#include "isys/error.hpp"
#include "isys/reduce_linear.hpp"
#include "isys/reduce_star.hpp"

namespace isys {

std::size_t product_size(const InteractionSystem& sys) {
    std::size_t total = 1;
    for (const auto& b : sys.behaviors) {
        std::size_t k = b.states.size();
        if (k != 0 && total > std::numeric_limits<std::size_t>::max() / k) return std::numeric_limits<std::size_t>::max();
        total *= k;
    }
    return total;
}

std::set<GlobalState> brute_force_reachable(const InteractionSystem& sys, std::size_t guard) {
    require_valid(sys);
    const std::size_t total = product_size(sys);
    if (total > guard)
        throw InvalidInput("product state space has " + std::to_string(total) + " states, above the guard of " +
                           std::to_string(guard));
    const std::size_t n = sys.component_count();

    // local[c][(state, port)] = target states, straight from the transition list.
    std::vector<std::map<std::pair<std::size_t, std::string>, std::vector<std::size_t>>> local(n);
    for (std::size_t c = 0; c < n; ++c) {
        const auto& b = sys.behaviors[c];
        for (const auto& t : b.transitions)
            local[c][{*b.state_index(t.from), t.port}].push_back(*b.state_index(t.to));
    }

    auto decode = [&](std::size_t code) {
        std::vector<std::size_t> q(n);
        for (std::size_t c = n; c-- > 0;) {
            q[c] = code % sys.behaviors[c].states.size();
            code /= sys.behaviors[c].states.size();
        }
        return q;
    };
    auto encode = [&](const std::vector<std::size_t>& q) {
        std::size_t code = 0;
        for (std::size_t c = 0; c < n; ++c) code = code * sys.behaviors[c].states.size() + q[c];
        return code;
    };

    // Global successors of every product state: for each interaction, every
    // participant takes one of its local transitions on its port and every
    // other component keeps its state.
    std::vector<std::vector<std::size_t>> next(total);
    for (std::size_t code = 0; code < total; ++code) {
        const auto q = decode(code);
        for (const auto& alpha : sys.model.interactions) {
            std::vector<std::vector<std::size_t>> options(n);
            bool possible = true;
            for (std::size_t c = 0; c < n && possible; ++c) {
                const std::string* port = nullptr;
                for (const auto& p : alpha.ports)
                    if (p.component == sys.model.components[c].name) port = &p.port;
                if (!port) {
                    options[c] = {q[c]};
                    continue;
                }
                auto it = local[c].find({q[c], *port});
                if (it == local[c].end() || it->second.empty()) possible = false;
                else options[c] = it->second;
            }
            if (!possible) continue;
            std::vector<std::size_t> pick(n, 0);
            while (true) {
                std::vector<std::size_t> r(n);
                for (std::size_t c = 0; c < n; ++c) r[c] = options[c][pick[c]];
                next[code].push_back(encode(r));
                std::size_t c = n;
                while (c > 0 && ++pick[c - 1] == options[c - 1].size()) pick[--c] = 0;
                if (c == 0) break;
            }
        }
    }

    std::vector<bool> reached(total, false);
    std::vector<std::size_t> init(n);
    for (std::size_t c = 0; c < n; ++c) init[c] = *sys.behaviors[c].state_index(sys.behaviors[c].initial);
    reached[encode(init)] = true;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t code = 0; code < total; ++code) {
            if (!reached[code]) continue;
            for (auto s : next[code])
                if (!reached[s]) reached[s] = changed = true;
        }
    }

    std::set<GlobalState> out;
    for (std::size_t code = 0; code < total; ++code) {
        if (!reached[code]) continue;
        GlobalState g;
        for (auto v : decode(code)) g.locals.push_back(static_cast<StateIndex>(v));
        out.insert(std::move(g));
    }
    return out;
}

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    // Uniform in [lo, hi]; modulo draw keeps results identical across
    // standard library implementations.
    std::size_t range(std::size_t lo, std::size_t hi) {
        return lo + static_cast<std::size_t>(engine_() % (hi - lo + 1));
    }
    bool chance(unsigned percent) { return engine_() % 100 < percent; }

private:
    std::mt19937_64 engine_;
};

}  // namespace

InteractionSystem gen_random_system(const GenParams& p) {
    if (p.max_components == 0 || p.max_states == 0 || p.max_ports == 0 || p.max_interactions == 0 ||
        p.max_interaction_size == 0)
        throw InvalidInput("generator limits must all be at least 1");
    Rng rng(p.seed);
    const std::size_t n = rng.range(1, p.max_components);

    std::vector<std::vector<std::string>> ports(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t k = rng.range(1, p.max_ports);
        for (std::size_t j = 0; j < k; ++j) ports[c].push_back("p" + std::to_string(j));
    }
    auto cname = [](std::size_t c) { return "k" + std::to_string(c); };

    std::set<std::pair<std::size_t, std::size_t>> uncovered;
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t j = 0; j < ports[c].size(); ++j) uncovered.emplace(c, j);

    const std::size_t wanted = rng.range(1, p.max_interactions);
    std::vector<std::set<std::pair<std::size_t, std::size_t>>> chosen;
    std::set<std::set<std::pair<std::size_t, std::size_t>>> seen;
    std::size_t misses = 0;
    while (chosen.size() < p.max_interactions && (!uncovered.empty() || chosen.size() < wanted) && misses < 64) {
        const std::size_t size = rng.range(1, std::min(p.max_interaction_size, n));
        std::set<std::pair<std::size_t, std::size_t>> alpha;
        std::set<std::size_t> used;
        if (!uncovered.empty()) {
            auto it = uncovered.begin();
            std::advance(it, static_cast<std::ptrdiff_t>(rng.range(0, uncovered.size() - 1)));
            alpha.insert(*it);
            used.insert(it->first);
        }
        while (alpha.size() < size) {
            std::size_t c = rng.range(0, n - 1);
            if (used.count(c)) continue;
            used.insert(c);
            alpha.emplace(c, rng.range(0, ports[c].size() - 1));
        }
        if (!seen.insert(alpha).second) {
            ++misses;
            continue;
        }
        for (const auto& port : alpha) uncovered.erase(port);
        chosen.push_back(std::move(alpha));
    }

    // Drop ports the interaction budget could not cover.
    std::vector<std::vector<std::size_t>> keep(n);
    InteractionSystem sys;
    for (std::size_t c = 0; c < n; ++c) {
        Component comp{cname(c), {}};
        for (std::size_t j = 0; j < ports[c].size(); ++j)
            if (!uncovered.count({c, j})) comp.ports.push_back(ports[c][j]);
        sys.model.components.push_back(std::move(comp));
    }
    for (std::size_t k = 0; k < chosen.size(); ++k) {
        Interaction alpha{"i" + std::to_string(k), {}};
        for (auto [c, j] : chosen[k]) alpha.ports.push_back({cname(c), ports[c][j]});
        sys.model.interactions.push_back(std::move(alpha));
    }

    for (std::size_t c = 0; c < n; ++c) {
        LocalBehavior b;
        const std::size_t states = rng.range(1, p.max_states);
        for (std::size_t s = 0; s < states; ++s) b.states.push_back("s" + std::to_string(s));
        b.ports = sys.model.components[c].ports;
        b.initial = b.states[rng.range(0, states - 1)];
        for (const auto& from : b.states)
            for (const auto& port : b.ports) {
                if (!rng.chance(55)) continue;
                std::size_t targets = rng.chance(20) ? 2 : 1;
                for (std::size_t t = 0; t < targets; ++t)
                    b.transitions.push_back({from, port, b.states[rng.range(0, states - 1)]});
            }
        std::sort(b.transitions.begin(), b.transitions.end());
        b.transitions.erase(std::unique(b.transitions.begin(), b.transitions.end()), b.transitions.end());
        sys.behaviors.push_back(std::move(b));
    }
    return sys;
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Agree: return "agree";
        case Verdict::Disagree: return "disagree";
        case Verdict::Inapplicable: return "inapplicable";
    }
    return "?";
}

Theorem1Check check_theorem1(const Dtm& m, const Word& x) {
    Theorem1Check out;
    const auto sys = compile_lsa(m, x);
    const CompiledSystem cs(sys);
    const auto run = run_tm(m, x);
    out.machine = run.outcome;

    // Lockstep: each in-bounds configuration maps to a global state with
    // exactly one enabled interaction whose successor is the image of the
    // next configuration; halted and stuck configurations enable nothing.
    Configuration c = initial_config(m, x);
    std::vector<GlobalState> buf;
    for (std::uint64_t k = 0; k <= run.steps && out.lockstep_ok; ++k) {
        const auto q = config_to_gstate(m, x, c);
        const auto enabled = cs.enabled_interactions(q);
        auto next = tm_step(m, c);
        if (auto* cfg = std::get_if<Configuration>(&next)) {
            if (k == run.steps) break;  // step limit reached
            buf.clear();
            if (enabled.size() == 1) cs.successors_of(q, enabled.front(), buf);
            if (enabled.size() != 1 || buf.size() != 1 || buf.front() != config_to_gstate(m, x, *cfg)) {
                out.lockstep_ok = false;
                out.details = "lockstep mismatch at step " + std::to_string(k) + " in " + format_config(c) + " (" +
                              std::to_string(enabled.size()) + " interactions enabled)";
                break;
            }
            ++out.lockstep_steps;
            c = std::move(*cfg);
        } else {
            if (!enabled.empty()) {
                out.lockstep_ok = false;
                out.details = "final configuration " + format_config(c) + " still enables an interaction";
            }
            break;
        }
    }

    const auto reach = is_reachable(sys, accept_predicate(m, x));
    out.reachable = reach.reachable;
    out.search_complete = reach.complete;
    out.states_explored = reach.states_explored;

    if (run.outcome == RunOutcome::BoundViolation) {
        out.verdict = Verdict::Inapplicable;
        if (out.details.empty()) out.details = "machine is not linear bounded on this input";
        return out;
    }
    if (!reach.reachable && !reach.complete) {
        out.verdict = Verdict::Inapplicable;
        if (out.details.empty()) out.details = "reachability search truncated";
        return out;
    }
    const bool accepts = run.outcome == RunOutcome::Accept;
    out.verdict = (accepts == reach.reachable && out.lockstep_ok) ? Verdict::Agree : Verdict::Disagree;
    if (out.details.empty())
        out.details = "machine " + std::string(to_string(run.outcome)) + ", acceptance target " +
                      (reach.reachable ? "reachable" : "unreachable");
    return out;
}

Theorem2Check check_theorem2(const InteractionSystem& sys, std::size_t guard) {
    Theorem2Check out;
    const auto original = brute_force_reachable(sys, guard);
    const auto star = starify(sys);
    const auto lifted = brute_force_reachable(star, guard);
    std::set<GlobalState> projected;
    for (const auto& q : lifted)
        if (auto p = project_state(star, q)) projected.insert(std::move(*p));
    out.original_states = original.size();
    out.star_states = lifted.size();
    out.projected_states = projected.size();
    out.verdict = projected == original ? Verdict::Agree : Verdict::Disagree;
    out.details = std::to_string(original.size()) + " reachable states, " + std::to_string(projected.size()) +
                  " idle-control projections of " + std::to_string(lifted.size()) + " star states";
    return out;
}

}  // namespace isys
