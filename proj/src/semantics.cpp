#include "isys/semantics.hpp"

#include <algorithm>
#include <map>
#include <thread>
#include <unordered_set>

namespace isys {

InteractionDisabled::InteractionDisabled(const std::string& interaction, std::vector<std::string> blockers)
    : InvalidInput([&] {
          std::string msg = "interaction disabled: " + interaction + " (blocked by";
          for (const auto& b : blockers) msg += " " + b;
          return msg + ")";
      }()),
      blockers_(std::move(blockers)) {}

GlobalState initial_state(const InteractionSystem& sys) {
    GlobalState q;
    for (const auto& b : sys.behaviors) {
        auto i = b.state_index(b.initial);
        if (!i) throw InvalidInput("initial state missing: " + b.initial);
        q.locals.push_back(static_cast<StateIndex>(*i));
    }
    return q;
}

GlobalState make_state(const InteractionSystem& sys, const std::vector<std::string>& names) {
    if (names.size() != sys.behaviors.size())
        throw InvalidInput("global state needs " + std::to_string(sys.behaviors.size()) + " entries");
    GlobalState q;
    for (std::size_t i = 0; i < names.size(); ++i) {
        auto s = sys.behaviors[i].state_index(names[i]);
        if (!s) throw InvalidInput("no such state: " + sys.model.components[i].name + ":" + names[i]);
        q.locals.push_back(static_cast<StateIndex>(*s));
    }
    return q;
}

std::vector<std::string> state_names(const InteractionSystem& sys, const GlobalState& q) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < q.locals.size() && i < sys.behaviors.size(); ++i)
        out.push_back(sys.behaviors[i].states.at(q.locals[i]));
    return out;
}

std::string format_state(const InteractionSystem& sys, const GlobalState& q) {
    std::string out = "(";
    auto names = state_names(sys, q);
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ", ";
        out += sys.model.components[i].name + "=" + names[i];
    }
    return out + ")";
}

CompiledSystem::CompiledSystem(const InteractionSystem& sys) : sys_(&sys) {
    require_valid(sys);
    const std::size_t n = sys.component_count();
    state_counts_.resize(n);
    port_counts_.resize(n);
    offsets_.resize(n);
    targets_.resize(n);

    std::vector<std::map<std::string, std::size_t>> slot_of(n);
    for (std::size_t c = 0; c < n; ++c) {
        const auto& b = sys.behaviors[c];
        const auto& ports = sys.model.components[c].ports;
        state_counts_[c] = b.states.size();
        port_counts_[c] = ports.size();
        for (std::size_t p = 0; p < ports.size(); ++p) slot_of[c][ports[p]] = p;

        std::map<std::string, std::size_t> state_of;
        for (std::size_t s = 0; s < b.states.size(); ++s) state_of[b.states[s]] = s;

        std::vector<std::vector<StateIndex>> cells(b.states.size() * ports.size());
        for (const auto& t : b.transitions) {
            auto& cell = cells[state_of.at(t.from) * ports.size() + slot_of[c].at(t.port)];
            cell.push_back(static_cast<StateIndex>(state_of.at(t.to)));
        }
        offsets_[c].reserve(cells.size() + 1);
        offsets_[c].push_back(0);
        for (auto& cell : cells) {
            std::sort(cell.begin(), cell.end());
            cell.erase(std::unique(cell.begin(), cell.end()), cell.end());
            targets_[c].insert(targets_[c].end(), cell.begin(), cell.end());
            offsets_[c].push_back(static_cast<std::uint32_t>(targets_[c].size()));
        }
    }

    for (const auto& alpha : sys.model.interactions) {
        Participation part{alpha.name, {}};
        for (const auto& p : alpha.ports) {
            std::size_t c = *sys.model.component_index(p.component);
            part.participants.emplace_back(c, slot_of[c].at(p.port));
        }
        std::sort(part.participants.begin(), part.participants.end());
        interactions_.push_back(std::move(part));
    }
    std::stable_sort(interactions_.begin(), interactions_.end(),
                     [](const Participation& a, const Participation& b) { return a.name < b.name; });

    initial_ = initial_state(sys);
}

std::optional<std::size_t> CompiledSystem::find_interaction(std::string_view name) const {
    auto it = std::lower_bound(interactions_.begin(), interactions_.end(), name,
                               [](const Participation& p, std::string_view n) { return p.name < n; });
    if (it == interactions_.end() || it->name != name) return std::nullopt;
    return static_cast<std::size_t>(it - interactions_.begin());
}

void CompiledSystem::check_state(const GlobalState& q) const {
    if (q.locals.size() != state_counts_.size())
        throw InvalidInput("global state has " + std::to_string(q.locals.size()) + " entries, expected " +
                           std::to_string(state_counts_.size()));
    for (std::size_t c = 0; c < q.locals.size(); ++c)
        if (q.locals[c] >= state_counts_[c])
            throw InvalidInput("state index " + std::to_string(q.locals[c]) + " out of range for " +
                               sys_->model.components[c].name);
}

std::span<const StateIndex> CompiledSystem::targets(std::size_t component, StateIndex state,
                                                    std::size_t slot) const {
    const auto& off = offsets_[component];
    std::size_t cell = static_cast<std::size_t>(state) * port_counts_[component] + slot;
    return std::span<const StateIndex>(targets_[component]).subspan(off[cell], off[cell + 1] - off[cell]);
}

bool CompiledSystem::enabled(const GlobalState& q, std::size_t interaction) const {
    for (auto [c, slot] : interactions_[interaction].participants)
        if (targets(c, q.locals[c], slot).empty()) return false;
    return true;
}

std::vector<std::size_t> CompiledSystem::enabled_interactions(const GlobalState& q) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < interactions_.size(); ++k)
        if (enabled(q, k)) out.push_back(k);
    return out;
}

std::size_t CompiledSystem::successors_of(const GlobalState& q, std::size_t interaction,
                                          std::vector<GlobalState>& out) const {
    const auto& parts = interactions_[interaction].participants;
    std::vector<std::span<const StateIndex>> choices;
    choices.reserve(parts.size());
    for (auto [c, slot] : parts) {
        auto t = targets(c, q.locals[c], slot);
        if (t.empty()) return 0;
        choices.push_back(t);
    }
    // Odometer over the participants' targets; the last participant varies
    // fastest so states come out in ascending lexicographic order.
    std::vector<std::size_t> pick(parts.size(), 0);
    std::size_t produced = 0;
    while (true) {
        GlobalState next = q;
        for (std::size_t k = 0; k < parts.size(); ++k) next.locals[parts[k].first] = choices[k][pick[k]];
        out.push_back(std::move(next));
        ++produced;
        std::size_t k = parts.size();
        for (;;) {
            if (k == 0) return produced;
            --k;
            if (++pick[k] < choices[k].size()) break;
            pick[k] = 0;
        }
    }
}

std::vector<std::string> enabled_interactions(const InteractionSystem& sys, const GlobalState& q) {
    CompiledSystem cs(sys);
    cs.check_state(q);
    std::vector<std::string> out;
    for (auto k : cs.enabled_interactions(q)) out.push_back(cs.interaction_name(k));
    return out;
}

GlobalState step(const InteractionSystem& sys, const GlobalState& q, std::string_view interaction) {
    CompiledSystem cs(sys);
    cs.check_state(q);
    auto k = cs.find_interaction(interaction);
    if (!k) throw InvalidInput("no such interaction: " + std::string(interaction));
    std::vector<std::string> blockers;
    for (auto [c, slot] : cs.participants(*k))
        if (cs.targets(c, q.locals[c], slot).empty()) blockers.push_back(sys.model.components[c].name);
    if (!blockers.empty()) throw InteractionDisabled(std::string(interaction), std::move(blockers));
    GlobalState next = q;
    for (auto [c, slot] : cs.participants(*k)) next.locals[c] = cs.targets(c, q.locals[c], slot).front();
    return next;
}

std::vector<std::pair<std::string, GlobalState>> successors(const InteractionSystem& sys, const GlobalState& q) {
    CompiledSystem cs(sys);
    cs.check_state(q);
    std::vector<std::pair<std::string, GlobalState>> out;
    std::vector<GlobalState> buf;
    for (std::size_t k = 0; k < cs.interaction_count(); ++k) {
        buf.clear();
        cs.successors_of(q, k, buf);
        for (auto& s : buf) out.emplace_back(cs.interaction_name(k), std::move(s));
    }
    return out;
}

namespace {

// Visited-state store: states are packed back to back in one arena and the
// hash set holds arena slots.
class StateStore {
public:
    explicit StateStore(std::size_t width)
        : width_(width), index_(1024, Hash{this}, Eq{this}) {}

    enum class Outcome { Existing, Added, Rejected };

    // Adds `locals` unless already present. With `may_add` false a new state
    // is not kept and Rejected is reported instead.
    std::pair<std::uint32_t, Outcome> insert(const std::vector<StateIndex>& locals, bool may_add = true) {
        auto id = static_cast<std::uint32_t>(count_);
        arena_.insert(arena_.end(), locals.begin(), locals.end());
        ++count_;
        auto [it, fresh] = index_.insert(id);
        if (fresh && may_add) return {id, Outcome::Added};
        auto existing = *it;
        if (fresh) index_.erase(it);
        arena_.resize(arena_.size() - width_);
        --count_;
        return {existing, fresh ? Outcome::Rejected : Outcome::Existing};
    }

    std::span<const StateIndex> get(std::uint32_t id) const {
        return std::span<const StateIndex>(arena_).subspan(static_cast<std::size_t>(id) * width_, width_);
    }

    GlobalState state(std::uint32_t id) const {
        auto s = get(id);
        return GlobalState{std::vector<StateIndex>(s.begin(), s.end())};
    }

    std::size_t size() const { return count_; }

private:
    struct Hash {
        const StateStore* store;
        std::size_t operator()(std::uint32_t id) const {
            std::uint64_t h = 0xcbf29ce484222325ULL;
            for (StateIndex v : store->get(id)) {
                h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
                h *= 0x100000001b3ULL;
            }
            return static_cast<std::size_t>(h);
        }
    };
    struct Eq {
        const StateStore* store;
        bool operator()(std::uint32_t a, std::uint32_t b) const {
            auto x = store->get(a);
            auto y = store->get(b);
            return std::equal(x.begin(), x.end(), y.begin(), y.end());
        }
    };

    std::size_t width_;
    std::size_t count_ = 0;
    std::vector<StateIndex> arena_;
    std::unordered_set<std::uint32_t, Hash, Eq> index_;
};

struct Edge {
    std::uint32_t interaction;
    GlobalState target;
};

struct Search {
    StateStore store;
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> via;
    std::size_t transitions = 0;
    bool complete = true;
    std::optional<std::uint32_t> hit;
};

void expand(const CompiledSystem& cs, const GlobalState& q, std::vector<Edge>& out) {
    std::vector<GlobalState> buf;
    for (std::size_t k = 0; k < cs.interaction_count(); ++k) {
        buf.clear();
        cs.successors_of(q, k, buf);
        for (auto& s : buf) out.push_back(Edge{static_cast<std::uint32_t>(k), std::move(s)});
    }
}

// Level-synchronous BFS. Each block of the frontier may be expanded by
// several workers, but edges are merged in frontier order so the visited
// order and the parent tree are independent of the worker count.
template <class Goal>
Search bfs(const CompiledSystem& cs, const ExploreOptions& options, Goal&& goal) {
    Search s{StateStore(cs.component_count()), {}, {}, 0, true, std::nullopt};
    const std::size_t limit = std::max<std::size_t>(options.max_states, 1);
    GlobalState init = cs.initial();
    s.store.insert(init.locals);
    s.parent.push_back(0);
    s.via.push_back(0);
    if (goal(init)) {
        s.hit = 0;
        return s;
    }

    const unsigned workers = std::max(1u, options.workers);
    constexpr std::size_t kBlock = 4096;
    std::size_t level_begin = 0;
    while (level_begin < s.store.size()) {
        const std::size_t level_end = s.store.size();
        for (std::size_t block = level_begin; block < level_end; block += kBlock) {
            const std::size_t block_end = std::min(level_end, block + kBlock);
            std::vector<std::vector<Edge>> edges(block_end - block);
            auto work = [&](std::size_t from, std::size_t to) {
                for (std::size_t id = from; id < to; ++id)
                    expand(cs, s.store.state(static_cast<std::uint32_t>(id)), edges[id - block]);
            };
            if (workers == 1 || block_end - block < 64) {
                work(block, block_end);
            } else {
                std::vector<std::jthread> pool;
                const std::size_t span = (block_end - block + workers - 1) / workers;
                for (unsigned w = 0; w < workers; ++w) {
                    std::size_t from = block + w * span;
                    std::size_t to = std::min(block_end, from + span);
                    if (from < to) pool.emplace_back(work, from, to);
                }
            }
            for (std::size_t id = block; id < block_end; ++id) {
                for (auto& e : edges[id - block]) {
                    ++s.transitions;
                    auto [sid, outcome] = s.store.insert(e.target.locals, s.store.size() < limit);
                    if (outcome == StateStore::Outcome::Existing) continue;
                    if (outcome == StateStore::Outcome::Rejected) {
                        s.complete = false;
                        return s;
                    }
                    s.parent.push_back(static_cast<std::uint32_t>(id));
                    s.via.push_back(e.interaction);
                    if (goal(e.target)) {
                        s.hit = sid;
                        return s;
                    }
                }
            }
        }
        level_begin = level_end;
    }
    return s;
}

}  // namespace

ReachableSet explore(const InteractionSystem& sys, const ExploreOptions& options) {
    CompiledSystem cs(sys);
    auto s = bfs(cs, options, [](const GlobalState&) { return false; });
    ReachableSet out;
    out.states.reserve(s.store.size());
    for (std::size_t id = 0; id < s.store.size(); ++id)
        out.states.push_back(s.store.state(static_cast<std::uint32_t>(id)));
    out.transitions = s.transitions;
    out.complete = s.complete;
    return out;
}

bool satisfies(const InteractionSystem& sys, const StatePredicate& predicate, const GlobalState& q) {
    if (predicate.constraints.size() != q.locals.size()) return false;
    for (std::size_t c = 0; c < q.locals.size(); ++c) {
        const auto& want = predicate.constraints[c];
        if (want && sys.behaviors[c].states.at(q.locals[c]) != *want) return false;
    }
    return true;
}

namespace {

// Predicates resolved to state indices; nullopt entries are wildcards.
std::vector<std::vector<std::optional<StateIndex>>> resolve(const InteractionSystem& sys,
                                                           const std::vector<StatePredicate>& targets) {
    std::vector<std::vector<std::optional<StateIndex>>> out;
    for (const auto& p : targets) {
        if (p.constraints.size() != sys.component_count())
            throw InvalidInput("predicate has " + std::to_string(p.constraints.size()) +
                               " constraints, expected " + std::to_string(sys.component_count()));
        std::vector<std::optional<StateIndex>> r;
        for (std::size_t c = 0; c < p.constraints.size(); ++c) {
            if (!p.constraints[c]) {
                r.push_back(std::nullopt);
                continue;
            }
            auto s = sys.behaviors[c].state_index(*p.constraints[c]);
            if (!s)
                throw InvalidInput("predicate names unknown state " + sys.model.components[c].name + ":" +
                                   *p.constraints[c]);
            r.push_back(static_cast<StateIndex>(*s));
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

ReachResult is_reachable(const InteractionSystem& sys, const std::vector<StatePredicate>& targets,
                         const ExploreOptions& options) {
    CompiledSystem cs(sys);
    auto resolved = resolve(sys, targets);
    auto goal = [&](const GlobalState& q) {
        return std::any_of(resolved.begin(), resolved.end(), [&](const auto& r) {
            for (std::size_t c = 0; c < r.size(); ++c)
                if (r[c] && q.locals[c] != *r[c]) return false;
            return true;
        });
    };
    auto s = bfs(cs, options, goal);

    ReachResult out;
    out.states_explored = s.store.size();
    out.transitions_explored = s.transitions;
    out.complete = s.complete;
    if (!s.hit) return out;

    out.reachable = true;
    out.complete = true;
    std::vector<std::uint32_t> chain;
    for (std::uint32_t id = *s.hit; id != 0; id = s.parent[id]) chain.push_back(id);
    std::reverse(chain.begin(), chain.end());
    out.path.push_back(s.store.state(0));
    for (auto id : chain) {
        out.trace.push_back(cs.interaction_name(s.via[id]));
        out.path.push_back(s.store.state(id));
    }
    return out;
}

ReachResult is_reachable(const InteractionSystem& sys, const StatePredicate& target,
                         const ExploreOptions& options) {
    return is_reachable(sys, std::vector<StatePredicate>{target}, options);
}

bool replay_witness(const InteractionSystem& sys, const ReachResult& result,
                    const std::vector<StatePredicate>& targets) {
    if (!result.reachable) return false;
    if (result.path.size() != result.trace.size() + 1) return false;
    CompiledSystem cs(sys);
    if (result.path.front() != cs.initial()) return false;
    std::vector<GlobalState> buf;
    for (std::size_t k = 0; k < result.trace.size(); ++k) {
        auto alpha = cs.find_interaction(result.trace[k]);
        if (!alpha) return false;
        buf.clear();
        cs.successors_of(result.path[k], *alpha, buf);
        if (std::find(buf.begin(), buf.end(), result.path[k + 1]) == buf.end()) return false;
    }
    return std::any_of(targets.begin(), targets.end(),
                       [&](const StatePredicate& p) { return satisfies(sys, p, result.path.back()); });
}

}  // namespace isys
