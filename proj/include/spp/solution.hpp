#pragma once

#include <string>
#include <utility>
#include <vector>

#include "spp/errors.hpp"
#include "spp/graph.hpp"
#include "spp/workspace.hpp"

namespace spp {

// Traversal direction of one subpath inside a tour. Forward enters at the
// start point and exits at the end point; reverse is the opposite. The same
// convention is used everywhere a connector between consecutive subpaths is
// priced.
enum class Orientation { forward, reverse };

using SubpathOrder = std::vector<std::pair<int, Orientation>>;  // 0-based indices

inline Point entry_point(const Subpath& s, Orientation o) {
    return o == Orientation::forward ? s.start : s.end;
}
inline Point exit_point(const Subpath& s, Orientation o) {
    return o == Orientation::forward ? s.end : s.start;
}

// Length, in workspace units, of the closed tour that traverses the subpaths
// in the given order and orientations: all arc lengths plus the Euclidean
// connectors between consecutive exit and entry points (wrapping around).
inline double workspace_tour_length(const Workspace& ws, const SubpathOrder& order) {
    internal_check(static_cast<int>(order.size()) == ws.size(),
                   "workspace_tour_length: order must cover every subpath exactly once");
    double total = 0.0;
    const std::size_t n = order.size();
    for (std::size_t k = 0; k < n; ++k) {
        const auto& [i, oi] = order[k];
        const auto& [j, oj] = order[(k + 1) % n];
        total += ws.subpath(i).arc_length;
        total += euclidean_distance(exit_point(ws.subpath(i), oi), entry_point(ws.subpath(j), oj));
    }
    return total;
}

// The node tour in the middle-node graph corresponding to an order: each
// subpath contributes its start-middle-end triple, reversed when traversed
// in reverse. Node ids follow the fixed layout (starts, ends, middles).
inline std::vector<int> order_to_trail(int subpath_count, const SubpathOrder& order) {
    std::vector<int> trail;
    trail.reserve(order.size() * 3);
    for (const auto& [i, o] : order) {
        internal_check(i >= 0 && i < subpath_count, "order_to_trail: subpath index out of range");
        const int s = i;
        const int e = subpath_count + i;
        const int m = 2 * subpath_count + i;
        if (o == Orientation::forward) {
            trail.push_back(s);
            trail.push_back(m);
            trail.push_back(e);
        } else {
            trail.push_back(e);
            trail.push_back(m);
            trail.push_back(s);
        }
    }
    return trail;
}

// A decoded answer: the visiting order with orientations, the tour length in
// workspace units, and the Hamiltonian node tour it came from.
struct SppSolution {
    SubpathOrder order;
    double length = 0.0;
    std::vector<int> h_trail;
};

// Weights of the intermediate objects built by the approximation solver,
// exposed for diagnostics and for the bound checks in the test suite.
struct StageWeights {
    double mst = 0.0;       // spanning tree
    double e2 = 0.0;        // middle-leaf repair additions
    double matching = 0.0;  // odd-degree perfect matching
    double trail = 0.0;     // Euler tour (= mst + e2 + matching)
};

inline std::string solution_to_json(const SppSolution& sol, const StageWeights* stages = nullptr) {
    std::string out = "{\"order\":[";
    for (std::size_t k = 0; k < sol.order.size(); ++k) {
        if (k) out += ',';
        out += "{\"subpath\":" + std::to_string(sol.order[k].first + 1) + ",\"orientation\":\"";
        out += sol.order[k].second == Orientation::forward ? "forward" : "reverse";
        out += "\"}";
    }
    out += "],\"length\":" + format_g9(sol.length);
    if (stages) {
        out += ",\"stage_weights\":{\"mst\":" + format_g9(stages->mst);
        out += ",\"e2\":" + format_g9(stages->e2);
        out += ",\"matching\":" + format_g9(stages->matching);
        out += ",\"trail\":" + format_g9(stages->trail) + "}";
    }
    out += "}";
    return out;
}

}  // namespace spp
