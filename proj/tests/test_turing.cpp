#include <doctest.h>

#include <algorithm>
#include <limits>

#include "isys/error.hpp"
#include "isys/fixtures.hpp"
#include "isys/turing.hpp"

using namespace isys;

namespace {

// Hand simulation of EVEN_A: the head sweeps right across the a's toggling
// p0/p1, then reads the right blank and halts moving left.
RunOutcome even_a_by_hand(std::size_t len, std::uint64_t& steps) {
    steps = len + 1;
    return len % 2 == 0 ? RunOutcome::Accept : RunOutcome::Reject;
}

}  // namespace

TEST_CASE("EVEN_A is well formed") { CHECK(validate_dtm(fixtures::even_a()).ok()); }

TEST_CASE("the other fixture machines are well formed") {
    CHECK(validate_dtm(fixtures::anbn()).ok());
    CHECK(validate_dtm(fixtures::runaway()).ok());
    CHECK(validate_dtm(fixtures::ping_pong()).ok());
}

TEST_CASE("validation findings") {
    SUBCASE("missing delta entry") {
        auto m = fixtures::even_a();
        m.delta.erase({"p0", "b"});
        const auto report = validate_dtm(m);
        REQUIRE(report.findings.size() == 1);
        CHECK(report.findings[0].rule == rule::kDeltaNotTotal);
    }
    SUBCASE("blank inside the input alphabet") {
        auto m = fixtures::even_a();
        m.input_alphabet.push_back("b");
        CHECK(validate_dtm(m).has(rule::kBlankInInput));
    }
    SUBCASE("delta on a halting state") {
        auto m = fixtures::even_a();
        m.delta[{"pY", "a"}] = {"p0", "a", Move::Right};
        CHECK(validate_dtm(m).has(rule::kDeltaOnHalt));
    }
    SUBCASE("unknown elements") {
        auto m = fixtures::even_a();
        m.delta[{"p0", "a"}] = {"pZ", "c", Move::Right};
        CHECK(validate_dtm(m).has(rule::kDeltaUnknown));
        m = fixtures::even_a();
        m.accept = "p9";
        CHECK(validate_dtm(m).has(rule::kUnknownMachineState));
    }
    SUBCASE("accept equals reject") {
        auto m = fixtures::even_a();
        m.reject = "pY";
        CHECK(validate_dtm(m).has(rule::kHaltStatesEqual));
    }
    SUBCASE("alphabet shape") {
        auto m = fixtures::even_a();
        m.blank = "z";
        CHECK(validate_dtm(m).has(rule::kBlankNotInTape));
        m = fixtures::even_a();
        m.input_alphabet.push_back("q");
        CHECK(validate_dtm(m).has(rule::kInputNotInTape));
        m = fixtures::even_a();
        m.tape_alphabet.push_back("a");
        CHECK(validate_dtm(m).has(rule::kDuplicateSymbol));
        m = fixtures::even_a();
        m.states.push_back("p0");
        CHECK(validate_dtm(m).has(rule::kDuplicateMachineState));
    }
    SUBCASE("identifiers") {
        CHECK(is_machine_identifier("q0"));
        CHECK(is_machine_identifier("X'"));
        CHECK_FALSE(is_machine_identifier("~s"));
        CHECK_FALSE(is_machine_identifier("a,b"));
        CHECK_FALSE(is_machine_identifier(""));
        auto m = fixtures::even_a();
        m.states.push_back("a b");
        CHECK(validate_dtm(m).has(rule::kInvalidIdentifier));
    }
}

TEST_CASE("words") {
    CHECK(parse_word("aab") == Word{"a", "a", "b"});
    CHECK(parse_word("X',a") == Word{"X'", "a"});
    CHECK(parse_word("").empty());
    CHECK(format_word(Word{"a", "a"}) == "aa");
    CHECK(format_word(Word{"ab", "c"}) == "ab,c");
    CHECK(parse_word(format_word(Word{"ab", "c"})) == Word{"ab", "c"});
}

TEST_CASE("initial configuration") {
    const auto m = fixtures::even_a();
    const auto c = initial_config(m, parse_word("aa"));
    CHECK(c.state == "p0");
    CHECK(c.tape == Word{"b", "a", "a", "b"});
    CHECK(c.head == 1);

    const auto e = initial_config(m, {});
    CHECK(e.tape == Word{"b", "b"});
    CHECK(e.head == 1);

    CHECK_THROWS_AS(initial_config(m, parse_word("ba")), InvalidInput);
}

TEST_CASE("single steps") {
    const auto m = fixtures::even_a();
    const auto next = tm_step(m, initial_config(m, parse_word("aa")));
    REQUIRE(std::holds_alternative<Configuration>(next));
    const auto& c = std::get<Configuration>(next);
    CHECK(c.state == "p1");
    CHECK(c.tape == Word{"b", "a", "a", "b"});
    CHECK(c.head == 2);

    CHECK(std::get<Halted>(tm_step(m, Configuration{"pY", {"b", "b"}, 0})).accepted);
    CHECK_FALSE(std::get<Halted>(tm_step(m, Configuration{"pN", {"b", "b"}, 0})).accepted);

    const auto r = fixtures::runaway();
    CHECK(std::holds_alternative<BoundViolation>(tm_step(r, Configuration{"r", {"b", "a", "b"}, 2})));
    CHECK(std::holds_alternative<BoundViolation>(tm_step(m, Configuration{"p0", {"b", "b"}, 0})));
}

TEST_CASE("EVEN_A runs match hand simulation") {
    const auto m = fixtures::even_a();
    CHECK(run_tm(m, parse_word("aa")).outcome == RunOutcome::Accept);
    CHECK(run_tm(m, parse_word("a")).outcome == RunOutcome::Reject);
    CHECK(run_tm(m, {}).outcome == RunOutcome::Accept);
    for (std::size_t len = 0; len <= 6; ++len) {
        std::uint64_t steps = 0;
        const auto expected = even_a_by_hand(len, steps);
        const auto r = run_tm(m, Word(len, "a"));
        CHECK(r.outcome == expected);
        CHECK(r.steps == steps);
    }
}

TEST_CASE("ANBN decides a^n b^n") {
    const auto m = fixtures::anbn();
    for (std::size_t len = 0; len <= 6; ++len) {
        for (std::size_t bits = 0; bits < (1u << len); ++bits) {
            Word x;
            for (std::size_t i = 0; i < len; ++i) x.push_back((bits >> (len - 1 - i)) & 1 ? "b" : "a");
            const std::size_t as = std::count(x.begin(), x.end(), "a");
            const bool in_language =
                len % 2 == 0 && as == len / 2 && std::is_sorted(x.begin(), x.end());
            const auto r = run_tm(m, x);
            CAPTURE(format_word(x));
            CHECK(r.outcome == (in_language ? RunOutcome::Accept : RunOutcome::Reject));
        }
    }
}

TEST_CASE("bound violation and loops") {
    CHECK(run_tm(fixtures::runaway(), parse_word("aa")).outcome == RunOutcome::BoundViolation);
    const auto loop = run_tm(fixtures::ping_pong(), parse_word("a"));
    CHECK(loop.outcome == RunOutcome::StepLimit);
    CHECK(loop.steps == default_step_limit(fixtures::ping_pong(), 1));
    CHECK(run_tm(fixtures::ping_pong(), {}).outcome == RunOutcome::Reject);
    CHECK(run_tm(fixtures::even_a(), parse_word("aaaa"), 2).outcome == RunOutcome::StepLimit);
}

TEST_CASE("default step limit counts configurations") {
    const auto m = fixtures::even_a();
    CHECK(default_step_limit(m, 0) == 4 * 4 * 2);
    CHECK(default_step_limit(m, 2) == 4 * 16 * 4);
    CHECK(default_step_limit(m, 200) == std::numeric_limits<std::uint64_t>::max());
}

TEST_CASE("determinism and tape invariants") {
    const auto m = fixtures::anbn();
    auto c = initial_config(m, parse_word("aabb"));
    for (int k = 0; k < 100; ++k) {
        const auto a = tm_step(m, c);
        const auto b = tm_step(m, c);
        CHECK(a == b);
        const auto* next = std::get_if<Configuration>(&a);
        if (!next) break;
        REQUIRE(next->tape.size() == c.tape.size());
        std::size_t changed = 0;
        for (std::size_t i = 0; i < c.tape.size(); ++i)
            if (c.tape[i] != next->tape[i]) {
                ++changed;
                CHECK(i == c.head);
            }
        CHECK(changed <= 1);
        c = *next;
    }
}

TEST_CASE("run_tm rejects malformed machines") {
    auto m = fixtures::even_a();
    m.delta.erase({"p1", "a"});
    CHECK_THROWS_AS(run_tm(m, parse_word("a")), InvalidInput);
}
