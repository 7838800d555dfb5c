#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "spp/errors.hpp"

namespace spp {

// Edge multiset over a fixed node set. Parallel edges are allowed; they arise
// when the matching step re-adds an edge already present in the tree.
class MultiGraph {
public:
    explicit MultiGraph(int node_count) : degree_(static_cast<std::size_t>(node_count), 0) {}

    int node_count() const { return static_cast<int>(degree_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    int degree(int v) const { return degree_.at(static_cast<std::size_t>(v)); }

    void add_edge(int a, int b) {
        internal_check(a != b, "MultiGraph: self loops not allowed");
        internal_check(a >= 0 && b >= 0 && a < node_count() && b < node_count(),
                       "MultiGraph: node id out of range");
        if (a > b) std::swap(a, b);
        edges_.emplace_back(a, b);
        ++degree_[static_cast<std::size_t>(a)];
        ++degree_[static_cast<std::size_t>(b)];
    }

    bool all_degrees_even() const {
        for (int d : degree_)
            if (d % 2 != 0) return false;
        return true;
    }

    // Connectivity over nodes ignoring isolated ones is not needed here: the
    // graphs built by the solver always contain a spanning tree, so plain
    // whole-graph connectivity is the meaningful check.
    bool connected() const {
        if (node_count() == 0) return true;
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(node_count()));
        for (const auto& [a, b] : edges_) {
            adj[static_cast<std::size_t>(a)].push_back(b);
            adj[static_cast<std::size_t>(b)].push_back(a);
        }
        std::vector<char> seen(static_cast<std::size_t>(node_count()), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int reached = 0;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            ++reached;
            for (int u : adj[static_cast<std::size_t>(v)]) {
                if (!seen[static_cast<std::size_t>(u)]) {
                    seen[static_cast<std::size_t>(u)] = 1;
                    stack.push_back(u);
                }
            }
        }
        return reached == node_count();
    }

private:
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> degree_;
};

}  // namespace spp
