#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <utility>
#include <vector>

#include "spp/errors.hpp"

namespace spp {

// Input to the matchers: a complete graph on an even number of vertices with
// finite non-negative symmetric costs. Vertices are 0..count-1; the diagonal
// of the cost matrix is ignored.
struct MatchingInstance {
    int count = 0;
    std::vector<double> cost;  // dense count*count, symmetric

    double at(int a, int b) const {
        return cost[static_cast<std::size_t>(a) * count + b];
    }
    void set(int a, int b, double c) {
        cost[static_cast<std::size_t>(a) * count + b] = c;
        cost[static_cast<std::size_t>(b) * count + a] = c;
    }
    static MatchingInstance make(int count) {
        MatchingInstance inst;
        inst.count = count;
        inst.cost.assign(static_cast<std::size_t>(count) * count, 0.0);
        return inst;
    }
};

struct Matching {
    std::vector<std::pair<int, int>> pairs;  // each (a, b) with a < b, sorted
    double total_cost = 0.0;
};

namespace detail {

// Canonical form shared by both matchers so equal pair sets produce bitwise
// equal totals: pairs normalized to (lo, hi), sorted, summed in that order.
inline Matching finalize_matching(std::vector<std::pair<int, int>> pairs,
                                  const MatchingInstance& inst) {
    for (auto& p : pairs)
        if (p.first > p.second) std::swap(p.first, p.second);
    std::sort(pairs.begin(), pairs.end());
    double total = 0.0;
    for (const auto& p : pairs) total += inst.at(p.first, p.second);
    return Matching{std::move(pairs), total};
}

// Primal-dual blossom algorithm on a dense graph, O(V^3). Internally this
// computes a maximum-weight matching over transformed weights that are
// strictly positive, which on a complete even-order graph is always perfect,
// so running it on (max_cost + 1 - cost) yields the minimum-cost perfect
// matching. Dual variables are kept in doubles; tightness tests use an
// absolute tolerance scaled by the largest cost, which is safe at the scale
// of sums of Euclidean distances.
//
// Vertices are 1-based inside the solver; ids above n are blossoms.
class BlossomMatcher {
public:
    explicit BlossomMatcher(const MatchingInstance& inst) : n_(inst.count) {
        const int cap = 2 * n_ + 1;
        g_.assign(static_cast<std::size_t>(cap) * cap, Edge{0, 0, 0.0});
        double max_cost = 0.0;
        for (int u = 0; u < n_; ++u)
            for (int v = 0; v < n_; ++v)
                if (u != v) max_cost = std::max(max_cost, inst.at(u, v));
        // Transformed weights in [1, max_cost + 1]; 0 marks "no edge".
        for (int u = 1; u <= n_; ++u)
            for (int v = 1; v <= n_; ++v)
                edge(u, v) = Edge{u, v, u == v ? 0.0 : max_cost + 1.0 - inst.at(u - 1, v - 1)};
        eps_ = 1e-9 * std::max(1.0, 2.0 * (max_cost + 1.0));
    }

    // Returns match[v] (0-based partner per vertex).
    std::vector<int> solve() {
        run();
        std::vector<int> out(static_cast<std::size_t>(n_));
        for (int u = 1; u <= n_; ++u) {
            internal_check(match_[u] != 0, "blossom: matching is not perfect");
            out[static_cast<std::size_t>(u - 1)] = match_[u] - 1;
        }
        return out;
    }

private:
    struct Edge {
        int u, v;
        double w;
    };

    static constexpr int kUnlabeled = -1, kOuter = 0, kInner = 1;

    Edge& edge(int u, int v) { return g_[static_cast<std::size_t>(u) * (2 * n_ + 1) + v]; }

    double delta(const Edge& e) { return lab_[e.u] + lab_[e.v] - edge(e.u, e.v).w * 2.0; }

    bool tight(const Edge& e) { return delta(e) <= eps_; }

    void update_slack(int u, int x) {
        if (!slack_[x] || delta(edge(u, x)) < delta(edge(slack_[x], x))) slack_[x] = u;
    }

    void set_slack(int x) {
        slack_[x] = 0;
        for (int u = 1; u <= n_; ++u)
            if (edge(u, x).w > 0.0 && st_[u] != x && label_[st_[u]] == kOuter) update_slack(u, x);
    }

    void push_queue(int x) {
        if (x <= n_) {
            q_.push_back(x);
        } else {
            for (int t : flower_[x]) push_queue(t);
        }
    }

    void set_st(int x, int b) {
        st_[x] = b;
        if (x > n_)
            for (int t : flower_[x]) set_st(t, b);
    }

    int get_pr(int b, int xr) {
        const int pr = static_cast<int>(std::find(flower_[b].begin(), flower_[b].end(), xr) -
                                        flower_[b].begin());
        if (pr % 2 == 1) {
            std::reverse(flower_[b].begin() + 1, flower_[b].end());
            return static_cast<int>(flower_[b].size()) - pr;
        }
        return pr;
    }

    void set_match(int u, int v) {
        match_[u] = edge(u, v).v;
        if (u <= n_) return;
        const Edge e = edge(u, v);
        const int xr = flower_from_[static_cast<std::size_t>(u) * (n_ + 1) + e.u];
        const int pr = get_pr(u, xr);
        for (int i = 0; i < pr; ++i) set_match(flower_[u][i], flower_[u][i ^ 1]);
        set_match(xr, v);
        std::rotate(flower_[u].begin(), flower_[u].begin() + pr, flower_[u].end());
    }

    void augment(int u, int v) {
        for (;;) {
            const int xnv = st_[match_[u]];
            set_match(u, v);
            if (!xnv) return;
            set_match(xnv, st_[pa_[xnv]]);
            u = st_[pa_[xnv]];
            v = xnv;
        }
    }

    int get_lca(int u, int v) {
        ++visit_stamp_;
        while (u || v) {
            if (u) {
                if (vis_[u] == visit_stamp_) return u;
                vis_[u] = visit_stamp_;
                u = st_[match_[u]];
                if (u) u = st_[pa_[u]];
            }
            std::swap(u, v);
        }
        return 0;
    }

    void add_blossom(int u, int lca, int v) {
        int b = n_ + 1;
        while (b <= n_total_ && st_[b]) ++b;
        if (b > n_total_) ++n_total_;
        lab_[b] = 0.0;
        label_[b] = kOuter;
        match_[b] = match_[lca];
        flower_[b].clear();
        flower_[b].push_back(lca);
        for (int x = u, y; x != lca; x = st_[pa_[y]]) {
            flower_[b].push_back(x);
            flower_[b].push_back(y = st_[match_[x]]);
            push_queue(y);
        }
        std::reverse(flower_[b].begin() + 1, flower_[b].end());
        for (int x = v, y; x != lca; x = st_[pa_[y]]) {
            flower_[b].push_back(x);
            flower_[b].push_back(y = st_[match_[x]]);
            push_queue(y);
        }
        set_st(b, b);
        for (int x = 1; x <= n_total_; ++x) {
            edge(b, x).w = 0.0;
            edge(x, b).w = 0.0;
        }
        for (int x = 1; x <= n_; ++x) flower_from_[static_cast<std::size_t>(b) * (n_ + 1) + x] = 0;
        for (int xs : flower_[b]) {
            for (int x = 1; x <= n_total_; ++x) {
                if (edge(b, x).w == 0.0 || delta(edge(xs, x)) < delta(edge(b, x))) {
                    edge(b, x) = edge(xs, x);
                    edge(x, b) = edge(x, xs);
                }
            }
            for (int x = 1; x <= n_; ++x) {
                if (flower_from_[static_cast<std::size_t>(xs) * (n_ + 1) + x])
                    flower_from_[static_cast<std::size_t>(b) * (n_ + 1) + x] = xs;
            }
        }
        set_slack(b);
    }

    void expand_blossom(int b) {  // label_[b] == kInner, dual fell to zero
        for (int t : flower_[b]) set_st(t, t);
        const int xr = flower_from_[static_cast<std::size_t>(b) * (n_ + 1) + edge(b, pa_[b]).u];
        const int pr = get_pr(b, xr);
        for (int i = 0; i < pr; i += 2) {
            const int xs = flower_[b][static_cast<std::size_t>(i)];
            const int xns = flower_[b][static_cast<std::size_t>(i) + 1];
            pa_[xs] = edge(xns, xs).u;
            label_[xs] = kInner;
            label_[xns] = kOuter;
            slack_[xs] = 0;
            set_slack(xns);
            push_queue(xns);
        }
        label_[xr] = kInner;
        pa_[xr] = pa_[b];
        for (std::size_t i = static_cast<std::size_t>(pr) + 1; i < flower_[b].size(); ++i) {
            const int xs = flower_[b][i];
            label_[xs] = kUnlabeled;
            set_slack(xs);
        }
        st_[b] = 0;
    }

    bool on_found_edge(const Edge& e) {
        const int u = st_[e.u];
        const int v = st_[e.v];
        if (label_[v] == kUnlabeled) {
            pa_[v] = e.u;
            label_[v] = kInner;
            const int nu = st_[match_[v]];
            slack_[v] = 0;
            slack_[nu] = 0;
            label_[nu] = kOuter;
            push_queue(nu);
        } else if (label_[v] == kOuter) {
            const int lca = get_lca(u, v);
            if (!lca) {
                augment(u, v);
                augment(v, u);
                return true;
            }
            add_blossom(u, lca, v);
        }
        return false;
    }

    // One phase: grows alternating trees until an augmenting path is found.
    bool matching_phase() {
        std::fill(label_.begin(), label_.begin() + n_total_ + 1, kUnlabeled);
        std::fill(slack_.begin(), slack_.begin() + n_total_ + 1, 0);
        q_.clear();
        for (int x = 1; x <= n_total_; ++x) {
            if (st_[x] == x && !match_[x]) {
                pa_[x] = 0;
                label_[x] = kOuter;
                push_queue(x);
            }
        }
        if (q_.empty()) return false;
        for (;;) {
            while (!q_.empty()) {
                const int u = q_.front();
                q_.pop_front();
                if (label_[st_[u]] == kInner) continue;
                for (int v = 1; v <= n_; ++v) {
                    if (edge(u, v).w > 0.0 && st_[u] != st_[v]) {
                        if (tight(edge(u, v))) {
                            if (on_found_edge(edge(u, v))) return true;
                        } else {
                            update_slack(u, st_[v]);
                        }
                    }
                }
            }
            double d = std::numeric_limits<double>::infinity();
            for (int b = n_ + 1; b <= n_total_; ++b)
                if (st_[b] == b && label_[b] == kInner) d = std::min(d, lab_[b] / 2.0);
            for (int x = 1; x <= n_total_; ++x) {
                if (st_[x] == x && slack_[x]) {
                    if (label_[x] == kUnlabeled)
                        d = std::min(d, delta(edge(slack_[x], x)));
                    else if (label_[x] == kOuter)
                        d = std::min(d, delta(edge(slack_[x], x)) / 2.0);
                }
            }
            internal_check(std::isfinite(d), "blossom: dual adjustment unbounded");
            if (d < 0.0) d = 0.0;
            for (int u = 1; u <= n_; ++u) {
                if (label_[st_[u]] == kOuter) {
                    internal_check(lab_[u] > d - eps_, "blossom: vertex dual exhausted");
                    lab_[u] -= d;
                } else if (label_[st_[u]] == kInner) {
                    lab_[u] += d;
                }
            }
            for (int b = n_ + 1; b <= n_total_; ++b) {
                if (st_[b] == b && label_[b] != kUnlabeled) {
                    if (label_[b] == kOuter)
                        lab_[b] += 2.0 * d;
                    else
                        lab_[b] -= 2.0 * d;
                }
            }
            q_.clear();
            for (int x = 1; x <= n_total_; ++x) {
                if (st_[x] == x && slack_[x] && st_[slack_[x]] != x &&
                    tight(edge(slack_[x], x))) {
                    if (on_found_edge(edge(slack_[x], x))) return true;
                }
            }
            for (int b = n_ + 1; b <= n_total_; ++b) {
                if (st_[b] == b && label_[b] == kInner && lab_[b] <= eps_) expand_blossom(b);
            }
        }
    }

    void run() {
        const int cap = 2 * n_ + 1;
        match_.assign(static_cast<std::size_t>(cap), 0);
        pa_.assign(static_cast<std::size_t>(cap), 0);
        st_.assign(static_cast<std::size_t>(cap), 0);
        lab_.assign(static_cast<std::size_t>(cap), 0.0);
        slack_.assign(static_cast<std::size_t>(cap), 0);
        label_.assign(static_cast<std::size_t>(cap), kUnlabeled);
        vis_.assign(static_cast<std::size_t>(cap), 0);
        flower_.assign(static_cast<std::size_t>(cap), {});
        flower_from_.assign(static_cast<std::size_t>(cap) * (n_ + 1), 0);
        visit_stamp_ = 0;
        n_total_ = n_;
        for (int u = 0; u <= n_; ++u) st_[u] = u;
        double w_max = 0.0;
        for (int u = 1; u <= n_; ++u) {
            for (int v = 1; v <= n_; ++v) {
                flower_from_[static_cast<std::size_t>(u) * (n_ + 1) + v] = (u == v ? u : 0);
                w_max = std::max(w_max, edge(u, v).w);
            }
        }
        for (int u = 1; u <= n_; ++u) lab_[u] = w_max;
        while (matching_phase()) {
        }
    }

    int n_;
    int n_total_ = 0;
    double eps_ = 1e-12;
    std::vector<Edge> g_;
    std::vector<int> match_, pa_, st_, slack_, label_, vis_;
    std::vector<double> lab_;
    std::vector<std::vector<int>> flower_;
    std::vector<int> flower_from_;
    std::deque<int> q_;
    int visit_stamp_ = 0;
};

}  // namespace detail

// Exact minimum-cost perfect matching. Deterministic: the primal-dual search
// order is fixed by vertex ids, so a given instance always yields the same
// pair set.
inline Matching min_perfect_matching(const MatchingInstance& inst) {
    if (inst.count % 2 != 0) throw validation_error("matching: vertex count must be even");
    if (inst.count == 0) return Matching{};
    for (double c : inst.cost)
        if (!(c >= 0.0) || !std::isfinite(c))
            throw validation_error("matching: costs must be finite and non-negative");
    detail::BlossomMatcher solver(inst);
    const std::vector<int> mate = solver.solve();
    std::vector<std::pair<int, int>> pairs;
    for (int v = 0; v < inst.count; ++v)
        if (v < mate[static_cast<std::size_t>(v)]) pairs.emplace_back(v, mate[static_cast<std::size_t>(v)]);
    internal_check(static_cast<int>(pairs.size()) * 2 == inst.count,
                   "matching: result is not a perfect matching");
    return detail::finalize_matching(std::move(pairs), inst);
}

// Exhaustive oracle: minimum over all (count-1)!! pairings, enumerated in
// lexicographic order (lowest unmatched vertex pairs first), keeping the
// first optimum found, i.e. the lexicographically smallest optimal pair set.
inline Matching brute_force_matching(const MatchingInstance& inst) {
    if (inst.count % 2 != 0) throw validation_error("matching: vertex count must be even");
    if (inst.count > 12) throw size_cap_error("brute_force_matching: limited to 12 vertices");
    if (inst.count == 0) return Matching{};

    std::vector<int> mate(static_cast<std::size_t>(inst.count), -1);
    std::vector<std::pair<int, int>> current, best;
    double best_cost = std::numeric_limits<double>::infinity();
    auto rec = [&](auto&& self, double cost) -> void {
        int u = -1;
        for (int v = 0; v < inst.count; ++v) {
            if (mate[static_cast<std::size_t>(v)] < 0) {
                u = v;
                break;
            }
        }
        if (u < 0) {
            if (cost < best_cost) {
                best_cost = cost;
                best = current;
            }
            return;
        }
        for (int v = u + 1; v < inst.count; ++v) {
            if (mate[static_cast<std::size_t>(v)] >= 0) continue;
            mate[static_cast<std::size_t>(u)] = v;
            mate[static_cast<std::size_t>(v)] = u;
            current.emplace_back(u, v);
            self(self, cost + inst.at(u, v));
            current.pop_back();
            mate[static_cast<std::size_t>(u)] = -1;
            mate[static_cast<std::size_t>(v)] = -1;
        }
    };
    rec(rec, 0.0);
    return detail::finalize_matching(std::move(best), inst);
}

}  // namespace spp
