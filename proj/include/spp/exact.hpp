#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "spp/errors.hpp"
#include "spp/solution.hpp"
#include "spp/workspace.hpp"

namespace spp {

inline constexpr int kExactSolverCap = 14;
inline constexpr int kEnumerationCap = 6;

// Globally optimal tour by dynamic programming over (visited set, last
// subpath, orientation). Subpath 0 is pinned as the first subpath traversed
// forward: rotations and the whole-tour reflection (which flips every
// orientation) preserve length, so nothing is lost. Connector costs follow
// the shared entry/exit convention; arc lengths are a constant and are added
// at the end.
inline SppSolution solve_exact(const Workspace& ws) {
    const int n = ws.size();
    if (n > kExactSolverCap)
        throw size_cap_error("solve_exact: limited to " + std::to_string(kExactSolverCap) +
                             " subpaths");
    double arcs = 0.0;
    for (const Subpath& s : ws.subpaths()) arcs += s.arc_length;

    if (n == 1) {
        SppSolution sol;
        sol.order = {{0, Orientation::forward}};
        sol.length = workspace_tour_length(ws, sol.order);
        sol.h_trail = order_to_trail(n, sol.order);
        return sol;
    }

    auto exit_of = [&](int i, int o) {
        return o == 0 ? ws.subpath(i).end : ws.subpath(i).start;
    };
    auto entry_of = [&](int i, int o) {
        return o == 0 ? ws.subpath(i).start : ws.subpath(i).end;
    };

    const std::size_t masks = std::size_t{1} << n;
    const std::size_t states = static_cast<std::size_t>(2 * n);
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> cost(masks * states, inf);
    std::vector<std::int16_t> from(masks * states, -1);
    auto idx = [&](std::size_t mask, int last, int o) {
        return mask * states + static_cast<std::size_t>(2 * last + o);
    };
    cost[idx(1u, 0, 0)] = 0.0;

    for (std::size_t mask = 1; mask < masks; ++mask) {
        if (!(mask & 1u)) continue;  // subpath 0 is always first
        for (int last = 0; last < n; ++last) {
            if (!(mask >> last & 1u)) continue;
            for (int o = 0; o < 2; ++o) {
                const double c = cost[idx(mask, last, o)];
                if (c == inf) continue;
                for (int k = 1; k < n; ++k) {
                    if (mask >> k & 1u) continue;
                    const std::size_t next_mask = mask | (std::size_t{1} << k);
                    for (int ok = 0; ok < 2; ++ok) {
                        const double nc =
                            c + euclidean_distance(exit_of(last, o), entry_of(k, ok));
                        if (nc < cost[idx(next_mask, k, ok)]) {
                            cost[idx(next_mask, k, ok)] = nc;
                            from[idx(next_mask, k, ok)] =
                                static_cast<std::int16_t>(2 * last + o);
                        }
                    }
                }
            }
        }
    }

    const std::size_t full = masks - 1;
    double best = inf;
    int best_last = -1, best_o = -1;
    for (int last = 1; last < n; ++last) {
        for (int o = 0; o < 2; ++o) {
            const double c = cost[idx(full, last, o)];
            if (c == inf) continue;
            const double closed = c + euclidean_distance(exit_of(last, o), entry_of(0, 0));
            if (closed < best) {
                best = closed;
                best_last = last;
                best_o = o;
            }
        }
    }
    internal_check(best_last >= 0, "solve_exact: no closing state");

    SubpathOrder order;
    std::size_t mask = full;
    int last = best_last, o = best_o;
    while (last != 0) {
        order.emplace_back(last, o == 0 ? Orientation::forward : Orientation::reverse);
        const int prev = from[idx(mask, last, o)];
        internal_check(prev >= 0, "solve_exact: broken parent chain");
        mask &= ~(std::size_t{1} << last);
        last = prev / 2;
        o = prev % 2;
    }
    order.emplace_back(0, Orientation::forward);
    std::reverse(order.begin(), order.end());

    SppSolution sol;
    sol.order = std::move(order);
    sol.length = arcs + best;
    sol.h_trail = order_to_trail(n, sol.order);
    return sol;
}

// Every feasible tour: all n! orderings times all 2^n orientation choices.
// Rotations and reflections are *not* deduplicated; the count contract is
// exactly n! * 2^n.
inline std::vector<SppSolution> enumerate_all(const Workspace& ws) {
    const int n = ws.size();
    if (n > kEnumerationCap)
        throw size_cap_error("enumerate_all: limited to " + std::to_string(kEnumerationCap) +
                             " subpaths");
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<SppSolution> out;
    do {
        for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
            SppSolution sol;
            sol.order.reserve(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k) {
                sol.order.emplace_back(perm[static_cast<std::size_t>(k)],
                                       (bits >> k & 1u) ? Orientation::reverse
                                                        : Orientation::forward);
            }
            sol.length = workspace_tour_length(ws, sol.order);
            sol.h_trail = order_to_trail(n, sol.order);
            out.push_back(std::move(sol));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace spp
