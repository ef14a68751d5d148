#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "isys/model.hpp"
#include "isys/semantics.hpp"
#include "isys/turing.hpp"

namespace isys {

inline constexpr std::string_view kSystemVersion = "isys-system/1";
inline constexpr std::string_view kDtmVersion = "isys-dtm/1";
inline constexpr std::string_view kPredicateVersion = "isys-predicate/1";

/// Reads a system document without semantic validation. Syntax errors carry
/// "line L, column C"; schema errors carry the JSON pointer of the offending
/// value. Interactions without a name become "alpha_k" (k = 1-based position).
InteractionSystem parse_system_unchecked(std::string_view text);

/// parse_system_unchecked followed by validate_system; findings are raised
/// as a FormatError at "/".
InteractionSystem parse_system(std::string_view text);

/// Canonical form of `sys`, keys sorted, two-space indentation, trailing
/// newline.
std::string serialize_system(const InteractionSystem& sys);

Dtm parse_dtm(std::string_view text);
std::string serialize_dtm(const Dtm& m);

/// Inline form "comp=state,comp=*" (unmentioned components are wildcards;
/// a segment without '=' continues the previous state name, so state names
/// may contain commas).
StatePredicate parse_inline_predicate(const InteractionSystem& sys, std::string_view text);

/// Predicate document: {"version": ..., "any_of": [{"comp": "state"}, ...]}.
std::vector<StatePredicate> parse_predicate_document(const InteractionSystem& sys, std::string_view text);

std::string format_predicate(const InteractionSystem& sys, const StatePredicate& p);

}  // namespace isys
