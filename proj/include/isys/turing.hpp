#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "isys/model.hpp"

namespace isys {

enum class Move : int { Left = -1, Right = +1 };

struct DeltaEntry {
    std::string next;
    std::string write;
    Move move = Move::Right;

    bool operator==(const DeltaEntry&) const = default;
};

/// Deterministic single-tape Turing machine. Alphabets and the state set are
/// ordered; the order fixes the numbering of compiled cell states.
struct Dtm {
    std::vector<std::string> tape_alphabet;
    std::vector<std::string> input_alphabet;
    std::string blank;
    std::vector<std::string> states;
    std::string initial;
    std::string accept;
    std::string reject;
    std::map<std::pair<std::string, std::string>, DeltaEntry> delta;  // (state, read) -> action

    bool is_halting(std::string_view state) const { return state == accept || state == reject; }
    const DeltaEntry* action(std::string_view state, std::string_view read) const;

    bool operator==(const Dtm&) const = default;
};

using Word = std::vector<std::string>;

/// Splits on ',' when present, otherwise one symbol per character.
Word parse_word(std::string_view text);
std::string format_word(const Word& w);

namespace rule {
inline constexpr std::string_view kDeltaNotTotal = "delta not total";
inline constexpr std::string_view kDeltaOnHalt = "delta defined on halt state";
inline constexpr std::string_view kDeltaUnknown = "delta references unknown element";
inline constexpr std::string_view kBlankInInput = "blank in input alphabet";
inline constexpr std::string_view kBlankNotInTape = "blank not in tape alphabet";
inline constexpr std::string_view kInputNotInTape = "input symbol not in tape alphabet";
inline constexpr std::string_view kUnknownMachineState = "unknown machine state";
inline constexpr std::string_view kHaltStatesEqual = "accept equals reject";
inline constexpr std::string_view kDuplicateSymbol = "duplicate symbol";
inline constexpr std::string_view kDuplicateMachineState = "duplicate machine state";
inline constexpr std::string_view kInvalidIdentifier = "invalid identifier";
}  // namespace rule

/// Machine states and symbols are restricted to [A-Za-z0-9_+'-]+ so that
/// compiled port and state names stay unambiguous.
bool is_machine_identifier(std::string_view s);

ValidationReport validate_dtm(const Dtm& m);

/// Tape cells 0..n+1 and the head position.
struct Configuration {
    std::string state;
    std::vector<std::string> tape;
    std::size_t head = 0;

    bool operator==(const Configuration&) const = default;
};

std::string format_config(const Configuration& c);

struct Halted {
    bool accepted = false;
    bool operator==(const Halted&) const = default;
};
struct BoundViolation {
    bool operator==(const BoundViolation&) const = default;
};

using StepOutcome = std::variant<Configuration, Halted, BoundViolation>;

/// State p0, tape b x b, head on cell 1. Throws InvalidInput on symbols
/// outside the input alphabet.
Configuration initial_config(const Dtm& m, const Word& x);

StepOutcome tm_step(const Dtm& m, const Configuration& c);

enum class RunOutcome { Accept, Reject, BoundViolation, StepLimit };
std::string_view to_string(RunOutcome o);

struct RunResult {
    RunOutcome outcome = RunOutcome::StepLimit;
    std::uint64_t steps = 0;
    /// The halting configuration, or the last in-bounds one.
    Configuration last;
};

/// |P| * |Gamma|^(n+2) * (n+2), saturating: the number of distinct
/// configurations, so exceeding it proves a loop.
std::uint64_t default_step_limit(const Dtm& m, std::size_t input_length);

RunResult run_tm(const Dtm& m, const Word& x, std::optional<std::uint64_t> max_steps = std::nullopt);

}  // namespace isys
