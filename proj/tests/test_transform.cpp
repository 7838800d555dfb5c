#include <cmath>
#include <functional>
#include <vector>

#include <doctest.h>

#include "test_util.hpp"

using namespace spp;

namespace {

long long count_infinite_edges(const Graph& g) {
    long long count = 0;
    for (int a = 0; a < g.node_count(); ++a)
        for (int b = a + 1; b < g.node_count(); ++b)
            if (g.weight(a, b).is_infinite()) ++count;
    return count;
}

// Enumerates every finite Hamiltonian cycle of g (walking finite edges only),
// invoking visit(cycle) once per undirected cycle. Feasible for tiny graphs;
// the infinite middle edges prune the search hard.
void for_each_finite_hamiltonian(const Graph& g,
                                 const std::function<void(const std::vector<int>&)>& visit) {
    const int nodes = g.node_count();
    std::vector<int> path{0};
    std::vector<char> used(static_cast<std::size_t>(nodes), 0);
    used[0] = 1;
    std::function<void()> rec = [&] {
        if (static_cast<int>(path.size()) == nodes) {
            if (g.weight(path.back(), 0).is_finite() && path[1] < path.back()) visit(path);
            return;
        }
        for (int v = 1; v < nodes; ++v) {
            if (used[static_cast<std::size_t>(v)] || g.weight(path.back(), v).is_infinite())
                continue;
            used[static_cast<std::size_t>(v)] = 1;
            path.push_back(v);
            rec();
            path.pop_back();
            used[static_cast<std::size_t>(v)] = 0;
        }
    };
    rec();
}

}  // namespace

TEST_SUITE("transform") {

TEST_CASE("single subpath gives one finite edge") {
    const Workspace ws({{{0, 0}, {1, 0}, 1.0}});
    const Graph g = build_subpath_graph(ws);
    REQUIRE(g.node_count() == 2);
    CHECK(g.weight(g.start_node(0), g.end_node(0)) == Weight::finite(1.0));
}

TEST_CASE("two straight subpaths: hand-computed weights") {
    const Graph g = build_subpath_graph(spptest::two_straight());
    REQUIRE(g.node_count() == 4);
    CHECK(g.weight(g.end_node(0), g.start_node(1)) == Weight::finite(1.0));
    CHECK(g.weight(g.start_node(0), g.start_node(1)) == Weight::finite(2.0));
    CHECK(g.weight(g.end_node(0), g.end_node(1)) == Weight::finite(2.0));
    CHECK(g.weight(g.start_node(0), g.end_node(1)) == Weight::finite(3.0));
}

TEST_CASE("curved subpath weight comes from the arc, connectors from geometry") {
    const Workspace ws({{{0, 0}, {1, 0}, 5.0}, {{2, 0}, {3, 0}, 1.0}});
    const Graph g = build_subpath_graph(ws);
    CHECK(g.weight(g.start_node(0), g.end_node(0)) == Weight::finite(5.0));
    CHECK(g.weight(g.end_node(0), g.start_node(1)) == Weight::finite(1.0));
}

TEST_CASE("middle nodes split the subpath edge in half") {
    const Workspace ws({{{0, 0}, {1, 0}, 1.0}});
    const Graph g = add_middle_nodes(build_subpath_graph(ws));
    REQUIRE(g.node_count() == 3);
    CHECK(g.weight(g.start_node(0), g.middle_node(0)) == Weight::finite(0.5));
    CHECK(g.weight(g.middle_node(0), g.end_node(0)) == Weight::finite(0.5));
    CHECK(g.weight(g.start_node(0), g.end_node(0)) == Weight::finite(1.0));
    CHECK_THROWS_AS(add_middle_nodes(g), internal_error);
}

TEST_CASE("n=2 has exactly the five expected infinite edges") {
    const Graph g = build_tsp_graph(spptest::two_straight());
    const int s1 = g.start_node(0), e1 = g.end_node(0), m1 = g.middle_node(0);
    const int s2 = g.start_node(1), e2 = g.end_node(1), m2 = g.middle_node(1);
    CHECK(g.weight(m1, s2).is_infinite());
    CHECK(g.weight(m1, e2).is_infinite());
    CHECK(g.weight(m1, m2).is_infinite());
    CHECK(g.weight(m2, s1).is_infinite());
    CHECK(g.weight(m2, e1).is_infinite());
    CHECK(count_infinite_edges(g) == 5);
}

TEST_CASE("infinite edge count matches the closed form for n up to 10") {
    for (int n = 1; n <= 10; ++n) {
        const Workspace ws = generate_random_workspace(n, 50.0, 2.0, 77 + static_cast<std::uint64_t>(n));
        const Graph g = build_tsp_graph(ws);
        const long long expected =
            static_cast<long long>(n) * (3LL * n - 3) - static_cast<long long>(n) * (n - 1) / 2;
        CHECK(count_infinite_edges(g) == expected);
    }
}

TEST_CASE("connecting edges equal the Euclidean distances") {
    const Workspace ws = generate_random_workspace(8, 100.0, 2.0, 3);
    const Graph g = build_subpath_graph(ws);
    auto point_of = [&](int v) {
        const NodeRole r = g.role(v);
        return r.kind == NodeKind::start ? ws.subpath(r.subpath).start : ws.subpath(r.subpath).end;
    };
    for (int a = 0; a < g.node_count(); ++a) {
        for (int b = a + 1; b < g.node_count(); ++b) {
            if (g.role(a).subpath == g.role(b).subpath) continue;
            const double d = euclidean_distance(point_of(a), point_of(b));
            CHECK(std::abs(g.weight(a, b).value() - d) <= 1e-12 * std::max(1.0, d));
        }
    }
}

TEST_CASE("the canonical triple walk is always finite") {
    for (int n : {1, 2, 5, 9}) {
        const Workspace ws = generate_random_workspace(n, 80.0, 2.5, static_cast<std::uint64_t>(n));
        const Graph g = build_tsp_graph(ws);
        std::vector<int> canonical;
        for (int i = 0; i < n; ++i) {
            canonical.push_back(g.start_node(i));
            canonical.push_back(g.middle_node(i));
            canonical.push_back(g.end_node(i));
        }
        CHECK(tour_length(g, canonical).is_finite());
    }
}

TEST_CASE("every finite Hamiltonian tour walks straight through each subpath") {
    for (int n : {2, 3, 4}) {
        const Workspace ws = generate_random_workspace(n, 60.0, 2.0, 31 + static_cast<std::uint64_t>(n));
        const Graph g = build_tsp_graph(ws);
        long long cycles = 0;
        for_each_finite_hamiltonian(g, [&](const std::vector<int>& cycle) {
            ++cycles;
            const std::size_t len = cycle.size();
            for (std::size_t p = 0; p < len; ++p) {
                if (!g.is_middle(cycle[p])) continue;
                const int i = g.role(cycle[p]).subpath;
                const int before = cycle[(p + len - 1) % len];
                const int after = cycle[(p + 1) % len];
                const bool ok =
                    (before == g.start_node(i) && after == g.end_node(i)) ||
                    (before == g.end_node(i) && after == g.start_node(i));
                CHECK(ok);
            }
        });
        // (n-1)! * 2^(n-1) distinct undirected finite Hamiltonian cycles
        long long expected = 1;
        for (int k = 2; k < n; ++k) expected *= k;
        expected <<= (n - 1);
        CHECK(cycles == expected);
    }
}

}  // TEST_SUITE
