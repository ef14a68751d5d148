#include "isys/topology.hpp"

#include <algorithm>
#include <set>

namespace isys {

std::vector<std::size_t> InteractionGraph::degrees() const {
    std::vector<std::size_t> deg(nodes.size(), 0);
    for (auto [a, b] : edges) {
        ++deg[a];
        ++deg[b];
    }
    return deg;
}

bool InteractionGraph::connected() const {
    if (nodes.empty()) return false;
    std::vector<std::vector<std::size_t>> adj(nodes.size());
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<bool> seen(nodes.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                stack.push_back(w);
            }
    }
    return count == nodes.size();
}

InteractionGraph interaction_graph(const InteractionModel& im) {
    InteractionGraph g;
    for (const auto& c : im.components) g.nodes.push_back(c.name);
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& alpha : im.interactions) {
        std::vector<std::size_t> members;
        for (const auto& p : alpha.ports)
            if (auto i = im.component_index(p.component)) members.push_back(*i);
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        for (std::size_t x = 0; x < members.size(); ++x)
            for (std::size_t y = x + 1; y < members.size(); ++y) edges.emplace(members[x], members[y]);
    }
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

TopologyClass classify(const InteractionGraph& g) {
    TopologyClass out;
    const std::size_t n = g.nodes.size();
    if (n == 0) return out;
    auto deg = g.degrees();

    for (std::size_t center = 0; center < n && !out.star_like; ++center) {
        if (deg[center] != n - 1) continue;
        bool rest = true;
        for (std::size_t v = 0; v < n; ++v)
            if (v != center && deg[v] != 1) rest = false;
        out.star_like = rest;
    }

    auto ones = std::count(deg.begin(), deg.end(), std::size_t{1});
    auto twos = std::count(deg.begin(), deg.end(), std::size_t{2});
    out.linear = ones == 2 && static_cast<std::size_t>(ones + twos) == n && g.connected();
    return out;
}

TopologyClass classify(const InteractionModel& im) { return classify(interaction_graph(im)); }

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string export_dot(const InteractionGraph& g) {
    std::string out = "graph interaction_graph {\n";
    for (const auto& n : g.nodes) out += "  " + quote(n) + ";\n";
    for (auto [a, b] : g.edges) out += "  " + quote(g.nodes[a]) + " -- " + quote(g.nodes[b]) + ";\n";
    out += "}\n";
    return out;
}

}  // namespace isys
