#pragma once

#include <algorithm>
#include <limits>
#include <list>
#include <utility>
#include <vector>

#include "spp/errors.hpp"
#include "spp/graph.hpp"
#include "spp/matching.hpp"
#include "spp/multigraph.hpp"
#include "spp/solution.hpp"
#include "spp/transform.hpp"
#include "spp/triangle_repair.hpp"
#include "spp/workspace.hpp"

namespace spp {

inline double multigraph_weight(const MultiGraph& mg, const Graph& g) {
    double total = 0.0;
    for (const auto& [a, b] : mg.edges()) total += g.weight(a, b).value();
    return total;
}

// Minimum spanning tree over the finite edges, Prim's scan on the dense
// matrix. The graph is complete and a finite spanning tree always exists
// (walk the subpaths in index order). Deterministic: the cheapest node with
// the smallest id is picked, and among equal-weight attachments the smaller
// parent id wins.
inline MultiGraph minimum_spanning_tree(const Graph& g) {
    const int nodes = g.node_count();
    internal_check(nodes >= 2, "minimum_spanning_tree: needs at least two nodes");
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> key(static_cast<std::size_t>(nodes), inf);
    std::vector<int> parent(static_cast<std::size_t>(nodes), -1);
    std::vector<char> in_tree(static_cast<std::size_t>(nodes), 0);
    key[0] = 0.0;
    MultiGraph tree(nodes);
    for (int round = 0; round < nodes; ++round) {
        int u = -1;
        for (int v = 0; v < nodes; ++v) {
            if (!in_tree[static_cast<std::size_t>(v)] &&
                (u < 0 || key[static_cast<std::size_t>(v)] < key[static_cast<std::size_t>(u)]))
                u = v;
        }
        internal_check(u >= 0 && key[static_cast<std::size_t>(u)] < inf,
                       "minimum_spanning_tree: graph is not finitely connected");
        in_tree[static_cast<std::size_t>(u)] = 1;
        if (parent[static_cast<std::size_t>(u)] >= 0)
            tree.add_edge(parent[static_cast<std::size_t>(u)], u);
        for (int v = 0; v < nodes; ++v) {
            if (in_tree[static_cast<std::size_t>(v)] || v == u) continue;
            const Weight w = g.weight(u, v);
            if (w.is_infinite()) continue;
            const double wv = w.value();
            if (wv < key[static_cast<std::size_t>(v)] ||
                (wv == key[static_cast<std::size_t>(v)] && u < parent[static_cast<std::size_t>(v)])) {
                key[static_cast<std::size_t>(v)] = wv;
                parent[static_cast<std::size_t>(v)] = u;
            }
        }
    }
    return tree;
}

// Every middle node enters the spanning tree through one or both of its own
// endpoints (its only finite edges). A degree-1 middle gets its missing half
// edge added, so all middles end up with degree exactly 2. The added weight
// goes to *added_weight when requested.
inline MultiGraph repair_middle_leaves(const MultiGraph& mst, const Graph& g,
                                       double* added_weight = nullptr) {
    internal_check(g.has_middles(), "repair_middle_leaves: needs the middle-node graph");
    internal_check(mst.node_count() == g.node_count(), "repair_middle_leaves: node set mismatch");
    const int n = g.subpath_count();
    MultiGraph out = mst;
    std::vector<int> leaf_neighbor(static_cast<std::size_t>(g.node_count()), -1);
    for (const auto& [a, b] : mst.edges()) {
        if (g.is_middle(a)) leaf_neighbor[static_cast<std::size_t>(a)] = b;
        if (g.is_middle(b)) leaf_neighbor[static_cast<std::size_t>(b)] = a;
    }
    double added = 0.0;
    for (int i = 0; i < n; ++i) {
        const int m = g.middle_node(i);
        const int deg = mst.degree(m);
        internal_check(deg == 1 || deg == 2, "repair_middle_leaves: impossible middle degree");
        if (deg == 2) continue;
        const int parent = leaf_neighbor[static_cast<std::size_t>(m)];
        const int s = g.start_node(i);
        const int e = g.end_node(i);
        internal_check(parent == s || parent == e,
                       "repair_middle_leaves: middle attached to a foreign node");
        const int other = parent == s ? e : s;
        out.add_edge(m, other);
        added += g.weight(m, other).value();
    }
    if (added_weight) *added_weight = added;
    return out;
}

using MatchingEngine = Matching (*)(const MatchingInstance&);

// Adds a minimum perfect matching over the odd-degree nodes (never middles,
// which all have degree 2 by now), making every degree even. Costs come from
// the repaired graph, so no infinite edge can enter.
inline MultiGraph add_matching(const MultiGraph& gstar, const Graph& g,
                               double* matching_weight = nullptr,
                               MatchingEngine matcher = &min_perfect_matching) {
    std::vector<int> odd;
    for (int v = 0; v < gstar.node_count(); ++v) {
        if (gstar.degree(v) % 2 != 0) {
            internal_check(!g.is_middle(v), "add_matching: odd-degree middle node");
            odd.push_back(v);
        }
    }
    internal_check(odd.size() % 2 == 0, "add_matching: odd count of odd-degree nodes");
    MultiGraph out = gstar;
    double total = 0.0;
    if (!odd.empty()) {
        MatchingInstance inst = MatchingInstance::make(static_cast<int>(odd.size()));
        for (std::size_t a = 0; a < odd.size(); ++a)
            for (std::size_t b = a + 1; b < odd.size(); ++b)
                inst.set(static_cast<int>(a), static_cast<int>(b),
                         g.weight(odd[a], odd[b]).value());
        const Matching m = matcher(inst);
        for (const auto& [a, b] : m.pairs) {
            out.add_edge(odd[static_cast<std::size_t>(a)], odd[static_cast<std::size_t>(b)]);
            total += g.weight(odd[static_cast<std::size_t>(a)], odd[static_cast<std::size_t>(b)]).value();
        }
    }
    if (matching_weight) *matching_weight = total;
    return out;
}

// Euler circuit by iterative circuit merging. Starts at node 0 and always
// follows the lowest-id remaining neighbor (parallel edges in insertion
// order), so the output is deterministic. Returns an open cyclic sequence
// with one entry per edge.
inline std::vector<int> eulerian_tour(const MultiGraph& mg) {
    if (!mg.all_degrees_even()) throw validation_error("eulerian_tour: all degrees must be even");
    if (!mg.connected()) throw validation_error("eulerian_tour: graph must be connected");
    const int nodes = mg.node_count();
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(nodes));
    for (int id = 0; id < mg.edge_count(); ++id) {
        const auto& [a, b] = mg.edges()[static_cast<std::size_t>(id)];
        adj[static_cast<std::size_t>(a)].emplace_back(b, id);
        adj[static_cast<std::size_t>(b)].emplace_back(a, id);
    }
    for (auto& lst : adj) std::sort(lst.begin(), lst.end());
    std::vector<std::size_t> next(static_cast<std::size_t>(nodes), 0);
    std::vector<char> used(static_cast<std::size_t>(mg.edge_count()), 0);
    std::vector<int> stack{0};
    std::vector<int> circuit;
    while (!stack.empty()) {
        const int v = stack.back();
        auto& lst = adj[static_cast<std::size_t>(v)];
        std::size_t& p = next[static_cast<std::size_t>(v)];
        while (p < lst.size() && used[static_cast<std::size_t>(lst[p].second)]) ++p;
        if (p == lst.size()) {
            circuit.push_back(v);
            stack.pop_back();
        } else {
            used[static_cast<std::size_t>(lst[p].second)] = 1;
            stack.push_back(lst[p].first);
        }
    }
    std::reverse(circuit.begin(), circuit.end());
    internal_check(static_cast<int>(circuit.size()) == mg.edge_count() + 1,
                   "eulerian_tour: disconnected multigraph");
    circuit.pop_back();  // drop the duplicated start; the cycle is implicit
    return circuit;
}

// Reduces an Euler circuit to a Hamiltonian cycle without ever using an
// infinite edge. Two sweeps over the cyclic sequence:
//
//   pass 1: every occurrence after the first (per node) is spliced out,
//           unless one of its cyclic neighbors is a middle node, in which
//           case it is kept. Sparing all middle adjacencies (not just the
//           infinite bypasses) means each middle keeps the two flanking
//           endpoints it entered with: splicing a duplicate endpoint out of
//           an intact start-middle-end triple can otherwise strand the middle
//           between two copies of its other endpoint, and from there no
//           deletion avoids an infinite edge. With both neighbors non-middle
//           the bypass edge is finite by construction. After the sweep a node
//           occurs at most twice: its first occurrence plus at most one
//           middle-flanking occurrence.
//   pass 2: nodes still occurring twice lose their first occurrence, whose
//           neighbors are necessarily non-middle (the flanking occurrence is
//           the other one), so that bypass is finite too.
//
// Each splice replaces two finite edges by the third edge of a finite
// triangle, where the triangle inequality holds after the repair pass, so the
// tour never gets longer. A bypass whose endpoints coincide (the trail walked
// a parallel edge out and straight back) counts as weight zero; the follow-up
// splice of the duplicate collapses it.
inline std::vector<int> confined_shortcut(const std::vector<int>& trail_in, const Graph& g) {
    internal_check(g.has_middles(), "confined_shortcut: needs the middle-node graph");
    const int nodes = g.node_count();
    std::list<int> tour(trail_in.begin(), trail_in.end());
    internal_check(tour.size() >= 3, "confined_shortcut: trail too short");

    auto cyc_prev = [&](std::list<int>::iterator it) {
        return it == tour.begin() ? std::prev(tour.end()) : std::prev(it);
    };
    auto cyc_next = [&](std::list<int>::iterator it) {
        const auto nx = std::next(it);
        return nx == tour.end() ? tour.begin() : nx;
    };
    auto bypass = [&](int a, int b) { return a == b ? Weight::finite(0.0) : g.weight(a, b); };

    {  // defensive: the trail must consist of finite edges
        auto it = tour.begin();
        for (std::size_t k = 0; k < tour.size(); ++k, ++it)
            internal_check(g.weight(*it, *cyc_next(it)).is_finite(),
                           "confined_shortcut: trail contains an infinite edge");
    }

    std::vector<int> seen(static_cast<std::size_t>(nodes), 0);
    for (auto it = tour.begin(); it != tour.end();) {
        const int t = *it;
        if (++seen[static_cast<std::size_t>(t)] >= 2) {
            const int t0 = *cyc_prev(it);
            const int t1 = *cyc_next(it);
            if (!g.is_middle(t0) && !g.is_middle(t1)) {
                const Weight w = bypass(t0, t1);
                internal_check(w.is_finite(), "confined_shortcut: non-middle bypass must be finite");
                if (t0 != t && t1 != t && t0 != t1) {
                    // a finite triangle: the shortcut cannot lengthen the tour
                    const double before = g.weight(t0, t).value() + g.weight(t, t1).value();
                    internal_check(w.value() <= before + 1e-9 * std::max(1.0, before),
                                   "confined_shortcut: splice increased the tour length");
                }
                --seen[static_cast<std::size_t>(t)];
                it = tour.erase(it);  // continue the walk at the successor
                continue;
            }
        }
        ++it;
    }

    std::vector<int> occ(static_cast<std::size_t>(nodes), 0);
    for (int v : tour) ++occ[static_cast<std::size_t>(v)];
    for (auto it = tour.begin(); it != tour.end();) {
        const int t = *it;
        if (occ[static_cast<std::size_t>(t)] >= 2) {
            internal_check(occ[static_cast<std::size_t>(t)] == 2,
                           "confined_shortcut: node still occurs more than twice");
            const Weight w = bypass(*cyc_prev(it), *cyc_next(it));
            internal_check(w.is_finite(),
                           "confined_shortcut: removing the first occurrence needs a finite bypass");
            --occ[static_cast<std::size_t>(t)];
            it = tour.erase(it);
            continue;
        }
        ++it;
    }

    internal_check(static_cast<int>(tour.size()) == nodes,
                   "confined_shortcut: result does not visit every node once");
    std::vector<int> out(tour.begin(), tour.end());
    internal_check(tour_length(g, out).is_finite(), "confined_shortcut: result uses an infinite edge");
    return out;
}

// Reads the start-middle-end triples off a finite Hamiltonian cycle and
// reports the subpath order with orientations. The reported length is priced
// in workspace units (arc lengths plus Euclidean connectors), not from the
// repaired graph's weights, although the two agree for finite tours.
inline SppSolution decode_solution(const std::vector<int>& h_trail, const Workspace& ws,
                                   const Graph& g) {
    const int n = g.subpath_count();
    internal_check(g.has_middles(), "decode_solution: needs the middle-node graph");
    internal_check(static_cast<int>(h_trail.size()) == 3 * n,
                   "decode_solution: tour must visit every node exactly once");
    const std::size_t len = h_trail.size();
    std::size_t p0 = len;
    for (std::size_t p = 0; p < len; ++p) {
        if (!g.is_middle(h_trail[p]) && g.is_middle(h_trail[(p + 1) % len])) {
            p0 = p;
            break;
        }
    }
    internal_check(p0 < len, "decode_solution: no subpath triple found");
    SubpathOrder order;
    std::vector<char> covered(static_cast<std::size_t>(n), 0);
    std::size_t p = p0;
    for (int k = 0; k < n; ++k, p += 3) {
        const int entry = h_trail[p % len];
        const int mid = h_trail[(p + 1) % len];
        const int exit = h_trail[(p + 2) % len];
        const NodeRole role = g.role(mid);
        internal_check(role.kind == NodeKind::middle, "decode_solution: middle node out of place");
        const int i = role.subpath;
        internal_check(!covered[static_cast<std::size_t>(i)], "decode_solution: subpath repeated");
        covered[static_cast<std::size_t>(i)] = 1;
        const bool forward = entry == g.start_node(i) && exit == g.end_node(i);
        const bool reverse = entry == g.end_node(i) && exit == g.start_node(i);
        internal_check(forward || reverse, "decode_solution: triple does not bracket its middle");
        order.emplace_back(i, forward ? Orientation::forward : Orientation::reverse);
    }
    SppSolution sol;
    sol.order = std::move(order);
    sol.length = workspace_tour_length(ws, sol.order);
    sol.h_trail = h_trail;
    return sol;
}

struct CsppResult {
    SppSolution solution;
    StageWeights stages;
    ViolationReport repair;
};

// The full approximation pipeline: transform, triangle repair, spanning tree,
// middle-leaf repair, odd-degree matching, Euler circuit, confined shortcut,
// decode. Deterministic end to end; the result is within twice the optimum.
inline CsppResult solve_cspp_detailed(const Workspace& ws,
                                      MatchingEngine matcher = &min_perfect_matching) {
    auto [g, report] = repair_triangle_violations(build_tsp_graph(ws));
    CsppResult res;
    res.repair = std::move(report);
    const MultiGraph mst = minimum_spanning_tree(g);
    res.stages.mst = multigraph_weight(mst, g);
    const MultiGraph gstar = repair_middle_leaves(mst, g, &res.stages.e2);
    const MultiGraph ghat = add_matching(gstar, g, &res.stages.matching, matcher);
    res.stages.trail = multigraph_weight(ghat, g);
    const std::vector<int> trail = eulerian_tour(ghat);
    const std::vector<int> h_trail = confined_shortcut(trail, g);
    res.solution = decode_solution(h_trail, ws, g);
    return res;
}

inline SppSolution solve_cspp(const Workspace& ws) { return solve_cspp_detailed(ws).solution; }

}  // namespace spp
