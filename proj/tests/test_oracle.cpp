#include <doctest.h>

#include <set>

#include "isys/error.hpp"
#include "isys/fixtures.hpp"
#include "isys/oracle.hpp"
#include "isys/semantics.hpp"

using namespace isys;

TEST_CASE("brute force on the fixtures") {
    CHECK(brute_force_reachable(fixtures::client_server(2)).size() == 3);
    for (std::size_t n = 2; n <= 6; ++n) CHECK(brute_force_reachable(fixtures::pipeline(n)).size() == 2 * (n - 1));

    InteractionSystem stuck;
    stuck.model.components = {{"k", {"a"}}};
    stuck.model.interactions = {{"solo", {{"k", "a"}}}};
    stuck.behaviors = {LocalBehavior{{"q", "r"}, {"a"}, {}, "q"}};
    const auto only = brute_force_reachable(stuck);
    REQUIRE(only.size() == 1);
    CHECK(*only.begin() == initial_state(stuck));
}

TEST_CASE("product guard") {
    CHECK(product_size(fixtures::client_server(2)) == 8);
    CHECK(product_size(fixtures::pipeline(3)) == 16);
    CHECK_THROWS_AS(brute_force_reachable(fixtures::client_server(14)), InvalidInput);
    CHECK(brute_force_reachable(fixtures::client_server(14), 1u << 16).size() == 15);
}

TEST_CASE("engine equals brute force on random systems") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto sys = gen_random_system({seed});
        const auto r = explore(sys);
        REQUIRE(r.complete);
        const std::set<GlobalState> engine(r.states.begin(), r.states.end());
        CAPTURE(seed);
        CHECK(engine.size() == r.states.size());
        CHECK(engine == brute_force_reachable(sys));
    }
}

TEST_CASE("generator") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(gen_random_system({seed}) == gen_random_system({seed}));
    CHECK_FALSE(gen_random_system({1}) == gen_random_system({2}));

    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const GenParams p{seed, 4, 3, 4, 6, 2};
        const auto sys = gen_random_system(p);
        CHECK(validate_system(sys).ok());
        CHECK(sys.component_count() <= p.max_components);
        CHECK(sys.model.interactions.size() <= p.max_interactions);
        for (const auto& a : sys.model.interactions) CHECK(a.ports.size() <= p.max_interaction_size);
        for (std::size_t c = 0; c < sys.component_count(); ++c) {
            CHECK(sys.behaviors[c].states.size() <= p.max_states);
            CHECK(sys.model.components[c].ports.size() <= p.max_ports);
        }
    }
    CHECK_THROWS_AS(gen_random_system({1, 0}), InvalidInput);
}

TEST_CASE("linear reduction checker") {
    const auto m = fixtures::even_a();
    for (const char* w : {"aa", "a", "aaaa", ""}) {
        const auto c = check_theorem1(m, parse_word(w));
        CAPTURE(w);
        CHECK(c.verdict == Verdict::Agree);
        CHECK(c.lockstep_ok);
        CHECK(c.search_complete);
    }
    const auto aa = check_theorem1(m, parse_word("aa"));
    CHECK(aa.machine == RunOutcome::Accept);
    CHECK(aa.reachable);
    CHECK(aa.lockstep_steps == 3);

    const auto runaway = check_theorem1(fixtures::runaway(), parse_word("a"));
    CHECK(runaway.verdict == Verdict::Inapplicable);

    const auto loop = check_theorem1(fixtures::ping_pong(), parse_word("aa"));
    CHECK(loop.verdict == Verdict::Agree);
    CHECK_FALSE(loop.reachable);
    CHECK(loop.lockstep_ok);
}

TEST_CASE("star reduction checker") {
    CHECK(check_theorem2(fixtures::client_server(1)).verdict == Verdict::Agree);
    CHECK(check_theorem2(fixtures::pipeline(3)).verdict == Verdict::Agree);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        CAPTURE(seed);
        CHECK(check_theorem2(gen_random_system({seed})).verdict == Verdict::Agree);
    }
    CHECK(to_string(Verdict::Disagree) == "disagree");
}
