#include <doctest.h>

#include <algorithm>
#include <set>

#include "isys/error.hpp"
#include "isys/fixtures.hpp"
#include "isys/oracle.hpp"
#include "isys/semantics.hpp"

using namespace isys;

namespace {

StatePredicate pred(const InteractionSystem& sys, std::vector<std::optional<std::string>> c) {
    REQUIRE(c.size() == sys.component_count());
    return StatePredicate{std::move(c)};
}

// One component, port "a" with two targets, plus a deadlocked sink.
InteractionSystem forked() {
    InteractionSystem sys;
    sys.model.components = {{"k", {"a"}}};
    sys.model.interactions = {{"solo", {{"k", "a"}}}};
    sys.behaviors = {LocalBehavior{{"q", "l", "r"}, {"a"}, {{"q", "a", "l"}, {"q", "a", "r"}}, "q"}};
    return sys;
}

}  // namespace

TEST_CASE("global state helpers") {
    const auto sys = fixtures::client_server(2);
    const auto q0 = initial_state(sys);
    CHECK(state_names(sys, q0) == std::vector<std::string>{"idle", "idle", "idle"});
    CHECK(make_state(sys, {"connected", "connected", "idle"}).locals == std::vector<StateIndex>{1, 1, 0});
    CHECK_THROWS_AS(make_state(sys, {"idle", "idle"}), InvalidInput);
    CHECK_THROWS_AS(make_state(sys, {"idle", "idle", "bogus"}), InvalidInput);
    CHECK_FALSE(format_state(sys, q0).empty());
}

TEST_CASE("enabled interactions") {
    const auto cs = fixtures::client_server(2);
    CHECK(enabled_interactions(cs, initial_state(cs)) == std::vector<std::string>{"connect_S_c1", "connect_S_c2"});
    const auto pl = fixtures::pipeline(3);
    CHECK(enabled_interactions(pl, initial_state(pl)) == std::vector<std::string>{"send_message_1"});
    const auto deadlock = make_state(cs, {"connected", "idle", "idle"});
    CHECK(enabled_interactions(cs, deadlock).empty());
    CHECK_THROWS_AS(enabled_interactions(cs, GlobalState{{0, 0}}), InvalidInput);
    CHECK_THROWS_AS(enabled_interactions(cs, GlobalState{{0, 0, 7}}), InvalidInput);
}

TEST_CASE("step") {
    const auto cs = fixtures::client_server(1);
    const auto next = step(cs, initial_state(cs), "connect_S_c1");
    CHECK(state_names(cs, next) == std::vector<std::string>{"connected", "connected"});

    const auto pl = fixtures::pipeline(3);
    const auto p1 = step(pl, initial_state(pl), "send_message_1");
    CHECK(state_names(pl, p1) == std::vector<std::string>{"waiting", "has_msg", "idle"});

    try {
        step(cs, initial_state(cs), "disconnect_S_c1");
        FAIL("expected InteractionDisabled");
    } catch (const InteractionDisabled& e) {
        CHECK(e.blockers() == std::vector<std::string>{"S", "c1"});
    }
    CHECK_THROWS_AS(step(cs, initial_state(cs), "no_such"), InvalidInput);

    const auto f = forked();
    CHECK(state_names(f, step(f, initial_state(f), "solo")) == std::vector<std::string>{"l"});
}

TEST_CASE("successors") {
    const auto cs = fixtures::client_server(2);
    const auto succ = successors(cs, initial_state(cs));
    REQUIRE(succ.size() == 2);
    CHECK(succ[0].first == "connect_S_c1");
    CHECK(succ[1].first == "connect_S_c2");
    CHECK(successors(cs, make_state(cs, {"connected", "idle", "idle"})).empty());

    const auto f = forked();
    const auto fs = successors(f, initial_state(f));
    REQUIRE(fs.size() == 2);
    CHECK(state_names(f, fs[0].second)[0] == "l");
    CHECK(state_names(f, fs[1].second)[0] == "r");
}

TEST_CASE("explore on the fixtures") {
    CHECK(explore(fixtures::client_server(2)).states.size() == 3);
    CHECK(explore(fixtures::pipeline(3)).states.size() == 4);

    auto dead = forked();
    dead.behaviors[0].transitions.clear();
    const auto r = explore(dead);
    CHECK(r.states.size() == 1);
    CHECK(r.complete);
}

TEST_CASE("truncation is reported") {
    const auto sys = fixtures::pipeline(5);
    const auto full = explore(sys);
    REQUIRE(full.states.size() == 8);
    const auto cut = explore(sys, {3, 1});
    CHECK_FALSE(cut.complete);
    CHECK(cut.states.size() == 3);
    const auto exact = explore(sys, {8, 1});
    CHECK(exact.complete);

    const auto r = is_reachable(sys, pred(sys, {std::nullopt, std::nullopt, std::nullopt, std::nullopt, "has_msg"}),
                                {3, 1});
    CHECK_FALSE(r.reachable);
    CHECK_FALSE(r.complete);
}

TEST_CASE("reachability witnesses") {
    const auto cs1 = fixtures::client_server(1);
    const auto both = pred(cs1, {"connected", "connected"});
    const auto r = is_reachable(cs1, both);
    CHECK(r.reachable);
    CHECK(r.trace == std::vector<std::string>{"connect_S_c1"});
    CHECK(replay_witness(cs1, r, {both}));

    const auto here = is_reachable(cs1, pred(cs1, {"idle", "idle"}));
    CHECK(here.reachable);
    CHECK(here.trace.empty());
    CHECK(here.path.size() == 1);

    const auto cs2 = fixtures::client_server(2);
    const auto none = is_reachable(cs2, pred(cs2, {"idle", "connected", std::nullopt}));
    CHECK_FALSE(none.reachable);
    CHECK(none.complete);
    CHECK(none.trace.empty());

    CHECK_THROWS_AS(is_reachable(cs2, pred(cs2, {"bogus", std::nullopt, std::nullopt})), InvalidInput);
}

TEST_CASE("witnesses are shortest and replay through step") {
    const auto pl = fixtures::pipeline(4);
    const auto target = pred(pl, {std::nullopt, std::nullopt, std::nullopt, "has_msg"});
    const auto r = is_reachable(pl, target);
    REQUIRE(r.reachable);
    CHECK(r.trace.size() == 3);
    auto q = initial_state(pl);
    for (const auto& name : r.trace) q = step(pl, q, name);
    CHECK(satisfies(pl, target, q));
}

TEST_CASE("frame and participation hold on every explored edge") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto sys = gen_random_system({seed});
        const CompiledSystem cs(sys);
        std::vector<GlobalState> buf;
        for (const auto& q : explore(sys).states) {
            for (std::size_t k = 0; k < cs.interaction_count(); ++k) {
                buf.clear();
                cs.successors_of(q, k, buf);
                const auto& alpha = *std::find_if(sys.model.interactions.begin(), sys.model.interactions.end(),
                                                  [&](const Interaction& a) { return a.name == cs.interaction_name(k); });
                for (const auto& r : buf) {
                    for (std::size_t c = 0; c < sys.component_count(); ++c) {
                        const auto& comp = sys.model.components[c];
                        auto port = std::find_if(alpha.ports.begin(), alpha.ports.end(),
                                                 [&](const PortId& p) { return p.component == comp.name; });
                        if (port == alpha.ports.end()) {
                            CHECK(q.locals[c] == r.locals[c]);
                            continue;
                        }
                        const auto& b = sys.behaviors[c];
                        const LocalTransition t{b.states[q.locals[c]], port->port, b.states[r.locals[c]]};
                        CHECK(std::find(b.transitions.begin(), b.transitions.end(), t) != b.transitions.end());
                    }
                }
            }
        }
    }
}

TEST_CASE("monotonicity under added interactions") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto sys = gen_random_system({seed, 4, 3, 4, 3, 3});
        const auto before = brute_force_reachable(sys);
        const auto extra = gen_random_system({seed + 10'000, 4, 3, 4, 6, 3});
        for (const auto& alpha : extra.model.interactions) {
            bool fits = true;
            for (const auto& p : alpha.ports) {
                auto c = sys.model.component_index(p.component);
                fits = fits && c && std::count(sys.model.components[*c].ports.begin(),
                                               sys.model.components[*c].ports.end(), p.port);
            }
            auto candidate = sys;
            candidate.model.interactions.push_back({"extra_" + alpha.name, alpha.ports});
            if (fits && validate_system(candidate).ok()) sys = std::move(candidate);
        }
        const auto after = brute_force_reachable(sys);
        CHECK(std::includes(after.begin(), after.end(), before.begin(), before.end()));
    }
}

TEST_CASE("parallel exploration matches sequential") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto sys = gen_random_system({seed, 6, 4, 3, 10, 3});
        const auto seq = explore(sys, {1'000'000, 1});
        const auto par = explore(sys, {1'000'000, 4});
        CHECK(seq.states == par.states);
        CHECK(seq.transitions == par.transitions);
    }
    // Twelve independent toggles: wide BFS levels force the threaded path.
    InteractionSystem wide;
    for (int i = 0; i < 12; ++i) {
        const auto name = "t" + std::to_string(i);
        wide.model.components.push_back({name, {"flip"}});
        wide.model.interactions.push_back({"flip_" + name, {{name, "flip"}}});
        wide.behaviors.push_back(LocalBehavior{{"off", "on"}, {"flip"}, {{"off", "flip", "on"}, {"on", "flip", "off"}}, "off"});
    }
    const auto seq = explore(wide, {1'000'000, 1});
    const auto par = explore(wide, {1'000'000, 3});
    CHECK(seq.states.size() == 4096);
    CHECK(seq.states == par.states);
    CHECK(seq.transitions == par.transitions);
}

TEST_CASE("initial state is always reachable") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto sys = gen_random_system({seed});
        const auto r = explore(sys);
        REQUIRE_FALSE(r.states.empty());
        CHECK(r.states.front() == initial_state(sys));
    }
}
