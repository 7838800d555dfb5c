#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "spp/errors.hpp"
#include "spp/weight.hpp"

namespace spp {

enum class NodeKind { start, end, middle };

struct NodeRole {
    NodeKind kind;
    int subpath;  // 0-based subpath index
};

// Formats a finite value with 9 significant digits, the fixed precision used
// by every textual surface of the library (CSV dumps, CLI JSON).
inline std::string format_g9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

// Dense symmetric weighted graph over the node set of a subpath instance.
//
// Node-id layout is fixed: for n subpaths, ids 0..n-1 are the start nodes,
// n..2n-1 the end nodes, and (when present) 2n..3n-1 the middle nodes, each
// block ordered by subpath index. The diagonal is undefined and querying it
// is an error.
class Graph {
public:
    Graph(int subpath_count, bool with_middles)
        : n_(subpath_count), middles_(with_middles) {
        internal_check(n_ >= 1, "Graph: needs at least one subpath");
        const std::size_t nodes = static_cast<std::size_t>(node_count());
        w_.assign(nodes * nodes, Weight::finite(0.0));
    }

    int subpath_count() const { return n_; }
    bool has_middles() const { return middles_; }
    int node_count() const { return middles_ ? 3 * n_ : 2 * n_; }

    int start_node(int i) const {
        check_subpath(i);
        return i;
    }
    int end_node(int i) const {
        check_subpath(i);
        return n_ + i;
    }
    int middle_node(int i) const {
        check_subpath(i);
        internal_check(middles_, "Graph: no middle nodes in this graph");
        return 2 * n_ + i;
    }

    bool is_middle(int v) const {
        check_node(v);
        return middles_ && v >= 2 * n_;
    }

    NodeRole role(int v) const {
        check_node(v);
        if (v < n_) return {NodeKind::start, v};
        if (v < 2 * n_) return {NodeKind::end, v - n_};
        return {NodeKind::middle, v - 2 * n_};
    }

    Weight weight(int a, int b) const {
        check_pair(a, b);
        return w_[static_cast<std::size_t>(a) * node_count() + b];
    }

    void set_weight(int a, int b, Weight w) {
        check_pair(a, b);
        w_[static_cast<std::size_t>(a) * node_count() + b] = w;
        w_[static_cast<std::size_t>(b) * node_count() + a] = w;
    }

    // Adjacency matrix as CSV: "inf" for infinite weights, 9 significant
    // digits for finite ones, empty cells on the (undefined) diagonal.
    std::string to_csv() const {
        std::string out;
        const int nodes = node_count();
        for (int a = 0; a < nodes; ++a) {
            for (int b = 0; b < nodes; ++b) {
                if (b) out += ',';
                if (a == b) continue;
                const Weight w = weight(a, b);
                out += w.is_finite() ? format_g9(w.value()) : "inf";
            }
            out += '\n';
        }
        return out;
    }

private:
    void check_subpath(int i) const {
        internal_check(i >= 0 && i < n_, "Graph: subpath index out of range");
    }
    void check_node(int v) const {
        internal_check(v >= 0 && v < node_count(), "Graph: node id out of range");
    }
    void check_pair(int a, int b) const {
        check_node(a);
        check_node(b);
        internal_check(a != b, "Graph: diagonal weight is undefined");
    }

    int n_;
    bool middles_;
    std::vector<Weight> w_;
};

// Total weight of the closed tour through the given node sequence: the sum
// of consecutive-pair weights including the closing edge back to the first
// node. Infinite as soon as any edge is infinite.
inline Weight tour_length(const Graph& g, const std::vector<int>& nodes) {
    internal_check(nodes.size() >= 3, "tour_length: need at least 3 nodes");
    const std::size_t len = nodes.size();
    double total = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        const int a = nodes[i];
        const int b = nodes[(i + 1) % len];
        internal_check(a != b, "tour_length: repeated adjacent node");
        const Weight w = g.weight(a, b);
        if (w.is_infinite()) return Weight::infinite();
        total += w.value();
    }
    return Weight::finite(total);
}

}  // namespace spp
