#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isys/model.hpp"
#include "isys/semantics.hpp"
#include "isys/turing.hpp"

namespace isys {

/// Head marker meaning "the head is not on this cell". The leading '~' is
/// outside the machine identifier alphabet, so it never names a DTM state.
inline constexpr std::string_view kNoHeadMarker = "~s";

/// Local state of a cell component: head marker (a machine state, or
/// kNoHeadMarker) and the symbol written in the cell. Serialised as
/// "marker,symbol".
struct CellLocalState {
    std::string marker;
    std::string symbol;

    std::string str() const { return marker + "," + symbol; }
    bool has_head() const { return marker != kNoHeadMarker; }
    static std::optional<CellLocalState> parse(std::string_view name);

    bool operator==(const CellLocalState&) const = default;
};

enum class CellPortKind { Leave = 1, Arrive = 2 };

/// "L:p:g" (head leaves the cell reading g in state p) or "A:p:g" (head
/// arrives after the neighbour read g in state p).
struct CellPort {
    CellPortKind kind = CellPortKind::Leave;
    std::string state;
    std::string symbol;

    std::string str() const;
};

/// "cell" followed by the index, zero-padded so that names sort by index.
std::string cell_component_name(std::size_t cell, std::size_t cell_count);

/// Builds the linear interaction system whose components are the tape cells
/// 0..n+1 of the machine on input x. Cell states are numbered
/// marker-major: index = marker * |Gamma| + symbol, with machine states in
/// declared order followed by kNoHeadMarker.
InteractionSystem compile_lsa(const Dtm& m, const Word& x);

/// One predicate per (cell, symbol) demanding that cell be (accept, symbol);
/// their disjunction is the acceptance target.
std::vector<StatePredicate> accept_predicate(const Dtm& m, const Word& x);

GlobalState config_to_gstate(const Dtm& m, const Word& x, const Configuration& c);

/// Inverse of config_to_gstate; throws InvalidInput ("not a configuration
/// state") unless exactly one cell carries the head.
Configuration gstate_to_config(const Dtm& m, const Word& x, const GlobalState& q);

struct HaltExtension {
    InteractionSystem system;
    GlobalState distinguished;   // every cell in "halt:done"
    StatePredicate target;       // the same state as a predicate
};

inline constexpr std::string_view kHaltDone = "halt:done";

/// Adds a two-wave protocol to a compiled system: once a cell reaches an
/// accepting state, a signal travels right to the last cell, then a second
/// wave travels left and drives every cell into kHaltDone. Only neighbour
/// pairs interact, so the result stays linear.
HaltExtension extend_halt_propagation(const Dtm& m, const InteractionSystem& compiled);

}  // namespace isys
