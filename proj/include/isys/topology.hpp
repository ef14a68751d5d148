#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "isys/model.hpp"

namespace isys {

/// Undirected graph on components; {i, j} is an edge iff some interaction
/// involves both. Edges are stored as (i, j) with i < j, sorted.
struct InteractionGraph {
    std::vector<std::string> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    std::vector<std::size_t> degrees() const;
    bool connected() const;
};

struct TopologyClass {
    bool star_like = false;
    bool linear = false;
};

InteractionGraph interaction_graph(const InteractionModel& im);

/// Star: some node has degree n-1 and every other node degree 1 (so n=1 is
/// a star and a single edge is both a star and a line). Linear: connected,
/// exactly two nodes of degree 1, the rest degree 2.
TopologyClass classify(const InteractionGraph& g);
TopologyClass classify(const InteractionModel& im);

/// Undirected DOT document. Layout, byte for byte:
///
///   graph interaction_graph {
///     "<node>";            one line per node, component order
///     "<a>" -- "<b>";      one line per edge, ascending (a, b) index
///   }
///
/// Backslashes and double quotes inside names are escaped with '\'.
std::string export_dot(const InteractionGraph& g);

}  // namespace isys
