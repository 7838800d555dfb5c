#pragma once

#include "spp/errors.hpp"
#include "spp/graph.hpp"
#include "spp/workspace.hpp"

namespace spp {

// Endpoint graph of an instance: 2n nodes, the edge between a subpath's own
// endpoints weighted by its arc length, every other endpoint pair weighted by
// Euclidean distance.
inline Graph build_subpath_graph(const Workspace& ws) {
    const int n = ws.size();
    Graph g(n, /*with_middles=*/false);
    auto point_of = [&](int v) {
        const NodeRole r = g.role(v);
        const Subpath& s = ws.subpath(r.subpath);
        return r.kind == NodeKind::start ? s.start : s.end;
    };
    for (int a = 0; a < g.node_count(); ++a) {
        for (int b = a + 1; b < g.node_count(); ++b) {
            g.set_weight(a, b, Weight::finite(euclidean_distance(point_of(a), point_of(b))));
        }
    }
    for (int i = 0; i < n; ++i) {
        g.set_weight(g.start_node(i), g.end_node(i), Weight::finite(ws.subpath(i).arc_length));
    }
    return g;
}

// Extends the endpoint graph with one middle node per subpath. The middle is
// joined to its own endpoints by two half-arc-length edges and to every other
// node by an infinite edge, which forces any finite Hamiltonian tour to walk
// straight through each subpath.
inline Graph add_middle_nodes(const Graph& g) {
    internal_check(!g.has_middles(), "add_middle_nodes: graph already has middle nodes");
    const int n = g.subpath_count();
    Graph out(n, /*with_middles=*/true);
    for (int a = 0; a < g.node_count(); ++a)
        for (int b = a + 1; b < g.node_count(); ++b) out.set_weight(a, b, g.weight(a, b));
    for (int i = 0; i < n; ++i) {
        const int s = out.start_node(i);
        const int e = out.end_node(i);
        const int m = out.middle_node(i);
        const Weight half = Weight::finite(g.weight(s, e).value() / 2.0);
        for (int v = 0; v < out.node_count(); ++v) {
            if (v == m) continue;
            out.set_weight(m, v, v == s || v == e ? half : Weight::infinite());
        }
    }
    return out;
}

// Full transform used by the solvers.
inline Graph build_tsp_graph(const Workspace& ws) { return add_middle_nodes(build_subpath_graph(ws)); }

}  // namespace spp
