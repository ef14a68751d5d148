#include <doctest.h>

#include <algorithm>

#include "isys/error.hpp"
#include "isys/fixtures.hpp"
#include "isys/model.hpp"
#include "isys/oracle.hpp"

using namespace isys;

namespace {

InteractionModel two_component_model() {
    InteractionModel im;
    im.components = {{"a", {"x", "y"}}, {"b", {"z"}}};
    im.interactions = {{"ax_bz", {{"a", "x"}, {"b", "z"}}}, {"ay", {{"a", "y"}}}};
    return im;
}

}  // namespace

TEST_CASE("client/server model is well defined") {
    CHECK(validate_model(fixtures::client_server(2).model).ok());
    CHECK(validate_system(fixtures::client_server(2)).ok());
}

TEST_CASE("pipeline system validates") {
    for (std::size_t n = 2; n <= 6; ++n) CHECK(validate_system(fixtures::pipeline(n)).ok());
}

TEST_CASE("uncovered port is reported once") {
    auto im = two_component_model();
    im.components[1].ports.push_back("x");
    const auto report = validate_model(im);
    REQUIRE(report.findings.size() == 1);
    CHECK(report.findings[0].message() == "uncovered port b.x");
}

TEST_CASE("two ports of one component in an interaction") {
    auto im = two_component_model();
    im.interactions.push_back({"both", {{"a", "x"}, {"a", "y"}}});
    const auto report = validate_model(im);
    REQUIRE(report.findings.size() == 1);
    CHECK(report.findings[0].rule == rule::kTwoPortsOfOneComponent);
}

TEST_CASE("model level findings") {
    SUBCASE("empty interaction") {
        auto im = two_component_model();
        im.interactions.push_back({"none", {}});
        CHECK(validate_model(im).has(rule::kEmptyInteraction));
    }
    SUBCASE("unknown component and port") {
        auto im = two_component_model();
        im.interactions.push_back({"ghost", {{"c", "x"}}});
        im.interactions.push_back({"typo", {{"a", "w"}}});
        const auto report = validate_model(im);
        CHECK(report.has(rule::kUnknownComponent));
        CHECK(report.has(rule::kUnknownPort));
    }
    SUBCASE("duplicate port set names both interactions") {
        auto im = two_component_model();
        im.interactions.push_back({"again", {{"b", "z"}, {"a", "x"}}});
        const auto report = validate_model(im);
        REQUIRE(report.has(rule::kDuplicateInteraction));
        const auto& f = report.findings.front();
        CHECK(f.element.find("ax_bz") != std::string::npos);
        CHECK(f.element.find("again") != std::string::npos);
    }
    SUBCASE("duplicate names") {
        auto im = two_component_model();
        im.components.push_back({"a", {}});
        im.components[1].ports.push_back("z");
        im.interactions[1].name = "ax_bz";
        const auto report = validate_model(im);
        CHECK(report.has(rule::kDuplicateComponent));
        CHECK(report.has(rule::kDuplicatePort));
        CHECK(report.has(rule::kDuplicateInteractionName));
    }
    SUBCASE("invalid names") {
        auto im = two_component_model();
        im.components[0].name = "a.b";
        CHECK(validate_model(im).has(rule::kInvalidName));
        CHECK_FALSE(is_valid_name(""));
        CHECK_FALSE(is_valid_name("has space"));
        CHECK(is_valid_name("L:p0:a"));
    }
    SUBCASE("component without ports is allowed") {
        auto im = two_component_model();
        im.components.push_back({"lonely", {}});
        CHECK(validate_model(im).ok());
    }
}

TEST_CASE("behavior level findings") {
    auto sys = fixtures::client_server(1);
    SUBCASE("transition on a foreign port") {
        sys.behaviors[0].transitions.push_back({"idle", "connect_1", "idle"});
        CHECK(validate_system(sys).has(rule::kUnknownPort));
    }
    SUBCASE("initial state absent") {
        sys.behaviors[1].initial = "sleeping";
        const auto report = validate_system(sys);
        REQUIRE(report.findings.size() == 1);
        CHECK(report.findings[0].rule == rule::kMissingInitial);
    }
    SUBCASE("port set disagrees with model") {
        sys.behaviors[1].ports.pop_back();
        CHECK(validate_system(sys).has(rule::kPortMismatch));
    }
    SUBCASE("behavior count") {
        sys.behaviors.pop_back();
        CHECK(validate_system(sys).has(rule::kBehaviorCount));
    }
    SUBCASE("states") {
        sys.behaviors[0].states.push_back("idle");
        sys.behaviors[1].transitions.push_back({"idle", "connect_1", "nowhere"});
        const auto report = validate_system(sys);
        CHECK(report.has(rule::kDuplicateState));
        CHECK(report.has(rule::kUnknownState));
    }
    SUBCASE("empty state set") {
        sys.behaviors[0].states.clear();
        sys.behaviors[0].transitions.clear();
        CHECK(validate_system(sys).has(rule::kEmptyStateSet));
    }
    SUBCASE("require_valid throws") {
        sys.behaviors[1].initial = "sleeping";
        CHECK_THROWS_AS(require_valid(sys), InvalidInput);
    }
}

TEST_CASE("enabled ports") {
    const auto cs = fixtures::client_server(2);
    CHECK(enabled_ports(cs.behaviors[0], "idle") == std::set<std::string>{"connect"});
    const auto pl = fixtures::pipeline(4);
    CHECK(enabled_ports(pl.behaviors[1], "idle") == std::set<std::string>{"rec_m_2"});
    CHECK(enabled_ports(pl.behaviors[2], "idle") == std::set<std::string>{"rec_m_3"});

    LocalBehavior sink{{"q", "dead"}, {"a"}, {{"q", "a", "dead"}}, "q"};
    CHECK(enabled_ports(sink, "dead").empty());
    CHECK_THROWS_WITH_AS(enabled_ports(sink, "zz"), doctest::Contains("no such state"), InvalidInput);
}

TEST_CASE("canonicalize merges order variants") {
    InteractionModel im;
    im.components = {{"b", {"y"}}, {"a", {"x"}}};
    im.interactions = {{"first", {{"b", "y"}, {"a", "x"}}}, {"second", {{"a", "x"}, {"b", "y"}}}};
    const auto c = canonicalize(im);
    REQUIRE(c.interactions.size() == 1);
    CHECK(c.interactions[0].name == "first");
    CHECK(c.interactions[0].ports == std::vector<PortId>{{"a", "x"}, {"b", "y"}});
    CHECK(c.components[0].name == "a");
}

TEST_CASE("canonicalize is idempotent and fixes component order") {
    auto sys = fixtures::client_server(2);
    const auto once = canonicalize(sys);
    CHECK(canonicalize(once) == once);

    auto shuffled = sys;
    std::swap(shuffled.model.components[0], shuffled.model.components[2]);
    std::swap(shuffled.behaviors[0], shuffled.behaviors[2]);
    std::reverse(shuffled.model.interactions.begin(), shuffled.model.interactions.end());
    const auto c = canonicalize(shuffled);
    CHECK(c == once);
    CHECK(c.model.components[0].name == "S");
    CHECK(c.model.components[1].name == "c1");
    CHECK(c.model.components[2].name == "c2");
}

TEST_CASE("valid models cover exactly the declared ports") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto sys = gen_random_system({seed});
        REQUIRE(validate_system(sys).ok());
        std::set<PortId> declared, used;
        for (const auto& c : sys.model.components)
            for (const auto& p : c.ports) declared.insert({c.name, p});
        for (const auto& alpha : sys.model.interactions) {
            std::set<std::string> touched;
            for (const auto& p : alpha.ports) {
                used.insert(p);
                CHECK(touched.insert(p.component).second);
            }
        }
        CHECK(declared == used);
    }
}
