#pragma once

#include <cstddef>

#include "isys/model.hpp"
#include "isys/turing.hpp"

namespace isys::fixtures {

/// Server S with clients c1..cr; S and each client alternate
/// connect/disconnect. States: "idle", "connected".
InteractionSystem client_server(std::size_t clients);

/// Stations s1..sn pass a message forward and an acknowledgement back.
InteractionSystem pipeline(std::size_t stations);

/// Accepts a^k for even k. Gamma = {a, b} with blank b, Sigma = {a}.
Dtm even_a();

/// Accepts a^k b^k by marking matched pairs with X/Y. Gamma = {a, b, X, Y, B}
/// with blank B, Sigma = {a, b}. Stays on cells 0..n+1.
Dtm anbn();

/// Moves right forever; leaves the tape on every input.
Dtm runaway();

/// Bounces between cells 1 and 2 without halting on non-empty input.
Dtm ping_pong();

}  // namespace isys::fixtures
