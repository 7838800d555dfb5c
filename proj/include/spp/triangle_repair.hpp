#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "spp/errors.hpp"
#include "spp/graph.hpp"

namespace spp {

// Per-subpath outcome of the repair pass. dv is the degree of violation:
// negative exactly when some triangle on that subpath edge breaks the
// triangle inequality, in which case the pass rewrites the incident weights.
struct ViolationReport {
    std::vector<double> dv;
    std::vector<bool> updated;

    std::string to_json() const {
        std::string out = "{\"violations\":[";
        for (std::size_t i = 0; i < dv.size(); ++i) {
            if (i) out += ',';
            out += "{\"index\":" + std::to_string(i + 1);
            out += ",\"dv\":" + format_g9(dv[i]);
            out += std::string(",\"updated\":") + (updated[i] ? "true" : "false") + "}";
        }
        out += "]}";
        return out;
    }
};

// Degree of violation for subpath i: half the gap between the cheapest
// two-hop detour around the subpath edge and the subpath edge itself. The
// detour point d ranges over the endpoint nodes of all other subpaths; middle
// nodes are excluded (their edges to anything but their own endpoints are
// infinite, and their own two edges sum exactly to the subpath edge, so they
// can never signal a violation).
inline double violation_degree(const Graph& g, int i) {
    const int n = g.subpath_count();
    internal_check(n >= 2, "violation_degree: needs at least two subpaths");
    const int s = g.start_node(i);
    const int e = g.end_node(i);
    double best = std::numeric_limits<double>::infinity();
    for (int d = 0; d < 2 * n; ++d) {
        if (d == s || d == e) continue;
        const double detour = g.weight(s, d).value() + g.weight(e, d).value();
        if (detour < best) best = detour;
    }
    return 0.5 * (best - g.weight(s, e).value());
}

// Single ascending-index pass that removes every triangle-inequality
// violation whose triangle sits on a subpath edge. For each subpath whose dv
// is negative, the subpath edge shrinks by |dv|, its two half edges are reset
// to half the new value, and every finite edge leaving the subpath's
// endpoints grows by |dv|/2. The growth is symmetric at both endpoints, which
// keeps the length of every finite Hamiltonian tour unchanged: such a tour
// crosses the endpoint pair on exactly two connecting edges and traverses the
// two half edges, so the adjustments cancel.
//
// Later iterations see earlier updates; a single pass suffices. Infinite
// edges are never touched. With one subpath there is no detour candidate and
// the pass is a no-op.
inline std::pair<Graph, ViolationReport> repair_triangle_violations(const Graph& g_in) {
    internal_check(g_in.has_middles(), "repair_triangle_violations: needs the middle-node graph");
    Graph g = g_in;
    const int n = g.subpath_count();
    ViolationReport report;
    report.dv.assign(static_cast<std::size_t>(n), 0.0);
    report.updated.assign(static_cast<std::size_t>(n), false);
    if (n < 2) return {g, report};

    for (int i = 0; i < n; ++i) {
        const double dv = violation_degree(g, i);
        report.dv[static_cast<std::size_t>(i)] = dv;
        if (dv >= 0.0) continue;
        report.updated[static_cast<std::size_t>(i)] = true;

        const int s = g.start_node(i);
        const int e = g.end_node(i);
        const int m = g.middle_node(i);
        const double shrink = -dv;
        const double new_edge = g.weight(s, e).value() - shrink;
        // dv is at least -w(s,e)/2, so the repaired edge stays positive.
        internal_check(new_edge >= 0.0, "repair: subpath edge went negative");
        g.set_weight(s, e, Weight::finite(new_edge));
        g.set_weight(s, m, Weight::finite(new_edge / 2.0));
        g.set_weight(m, e, Weight::finite(new_edge / 2.0));
        for (int q = 0; q < 2 * n; ++q) {
            if (q == s || q == e) continue;
            g.set_weight(s, q, Weight::finite(g.weight(s, q).value() + shrink / 2.0));
            g.set_weight(e, q, Weight::finite(g.weight(e, q).value() + shrink / 2.0));
        }
    }
    return {g, report};
}

}  // namespace spp
