#include <cmath>
#include <vector>

#include <doctest.h>

#include "test_util.hpp"

using namespace spp;

TEST_SUITE("triangle_repair") {

TEST_CASE("degree of violation on two straight subpaths") {
    const Graph g = build_tsp_graph(spptest::two_straight());
    // best detour through s2: w(s1,s2) + w(e1,s2) = 2 + 1, subpath edge 1
    CHECK(violation_degree(g, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(violation_degree(g, 1) == doctest::Approx(0.5 * ((1.0 + 2.0) - 1.0)).epsilon(1e-12));
}

TEST_CASE("degree of violation on the curved fixture") {
    const Graph g = build_tsp_graph(spptest::curved_pair());
    const double expected = 0.5 * ((1.0 + std::sqrt(2.0)) - 5.0);
    CHECK(violation_degree(g, 0) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(violation_degree(g, 0) == doctest::Approx(-1.29289).epsilon(1e-5));
}

TEST_CASE("straight workspaces never violate") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Workspace ws = generate_random_workspace(8, 100.0, 1.0, seed);
        const Graph g = build_tsp_graph(ws);
        for (int i = 0; i < ws.size(); ++i) CHECK(violation_degree(g, i) >= 0.0);
        const auto [repaired, report] = repair_triangle_violations(g);
        for (bool u : report.updated) CHECK_FALSE(u);
        for (int a = 0; a < g.node_count(); ++a)
            for (int b = a + 1; b < g.node_count(); ++b)
                CHECK(repaired.weight(a, b) == g.weight(a, b));
    }
}

TEST_CASE("single subpath: no detour candidates, repair is a no-op") {
    const Workspace ws({{{0, 0}, {1, 0}, 5.0}});
    const Graph g = build_tsp_graph(ws);
    CHECK_THROWS_AS(violation_degree(g, 0), internal_error);
    const auto [repaired, report] = repair_triangle_violations(g);
    CHECK_FALSE(report.updated[0]);
    CHECK(repaired.weight(0, 1) == g.weight(0, 1));
    CHECK(repaired.weight(0, 2) == g.weight(0, 2));
}

TEST_CASE("repair of the curved fixture: hand-applied update") {
    const auto [g, report] = repair_triangle_violations(build_tsp_graph(spptest::curved_pair()));
    const int s1 = g.start_node(0), e1 = g.end_node(0), m1 = g.middle_node(0);
    const int s2 = g.start_node(1);
    const double dv = 0.5 * ((1.0 + std::sqrt(2.0)) - 5.0);
    const double shrink = -dv;  // about 1.29289

    CHECK(report.updated[0]);
    CHECK_FALSE(report.updated[1]);
    CHECK(report.dv[0] == doctest::Approx(dv).epsilon(1e-12));

    CHECK(g.weight(s1, e1).value() == doctest::Approx(5.0 - shrink).epsilon(1e-12));
    CHECK(g.weight(s1, e1).value() == doctest::Approx(3.70711).epsilon(1e-5));
    CHECK(g.weight(s1, m1).value() == doctest::Approx((5.0 - shrink) / 2.0).epsilon(1e-12));
    CHECK(g.weight(s1, m1).value() == doctest::Approx(1.85355).epsilon(1e-5));
    CHECK(g.weight(s1, s2).value() == doctest::Approx(1.0 + shrink / 2.0).epsilon(1e-12));
    CHECK(g.weight(s1, s2).value() == doctest::Approx(1.64645).epsilon(1e-5));
    CHECK(g.weight(e1, s2).value() ==
          doctest::Approx(std::sqrt(2.0) + shrink / 2.0).epsilon(1e-12));
    CHECK(g.weight(e1, s2).value() == doctest::Approx(2.06066).epsilon(1e-5));

    // the repaired minimizing triangle reaches exact equality
    CHECK(g.weight(s1, s2).value() + g.weight(e1, s2).value() ==
          doctest::Approx(g.weight(s1, e1).value()).epsilon(1e-12));
}

TEST_CASE("violation report json carries one entry per subpath") {
    const auto [g, report] = repair_triangle_violations(build_tsp_graph(spptest::curved_pair()));
    const std::string json = report.to_json();
    CHECK(json.find("\"index\":1") != std::string::npos);
    CHECK(json.find("\"index\":2") != std::string::npos);
    CHECK(json.find("\"updated\":true") != std::string::npos);
    for (std::size_t i = 0; i < report.dv.size(); ++i)
        CHECK(report.updated[i] == (report.dv[i] < 0.0));
}

TEST_CASE("after repair every violating triangle has exactly one infinite edge") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const int n = 2 + static_cast<int>(seed);
        const Workspace ws = generate_random_workspace(n, 60.0, 3.0, 1000 + seed);
        const Graph before = build_tsp_graph(ws);
        const auto [after, report] = repair_triangle_violations(before);
        const TriangleScan scan = scan_triangles(after);
        CHECK(scan.repaired_shape());
    }
    // sanity: the unrepaired curved fixture does violate on an all-finite triangle
    const TriangleScan raw = scan_triangles(build_tsp_graph(spptest::curved_pair()));
    CHECK(raw.violating > raw.violating_with_one_infinite);
}

TEST_CASE("finite Hamiltonian tour lengths are preserved") {
    Rng rng(42);
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const int n = 2 + static_cast<int>(seed);
        const Workspace ws = generate_random_workspace(n, 60.0, 3.0, 2000 + seed);
        const Graph before = build_tsp_graph(ws);
        const auto [after, report] = repair_triangle_violations(before);
        for (int rep = 0; rep < 100; ++rep) {
            const std::vector<int> trail = random_finite_trail(n, rng);
            const Weight a = tour_length(before, trail);
            const Weight b = tour_length(after, trail);
            REQUIRE(a.is_finite());
            REQUIRE(b.is_finite());
            CHECK(nearly_equal(a.value(), b.value()));
        }
    }
}

TEST_CASE("one pass suffices: no residual violation degree") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const int n = 2 + static_cast<int>(seed);
        const Workspace ws = generate_random_workspace(n, 60.0, 4.0, 16000 + seed);
        const auto [g, report] = repair_triangle_violations(build_tsp_graph(ws));
        for (int i = 0; i < n; ++i) CHECK(violation_degree(g, i) >= -1e-9);
    }
}

TEST_CASE("repair moves weights monotonically and keeps the halves consistent") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const int n = 3 + static_cast<int>(seed % 5);
        const Workspace ws = generate_random_workspace(n, 40.0, 3.0, 3000 + seed);
        const Graph before = build_tsp_graph(ws);
        const auto [after, report] = repair_triangle_violations(before);
        for (int i = 0; i < n; ++i) {
            const int s = after.start_node(i), e = after.end_node(i), m = after.middle_node(i);
            // subpath edges never increase, connectors never decrease
            CHECK(after.weight(s, e) <= before.weight(s, e));
            CHECK(after.weight(s, m).value() == after.weight(s, e).value() / 2.0);
            CHECK(after.weight(m, e).value() == after.weight(s, e).value() / 2.0);
            for (int q = 0; q < 2 * n; ++q) {
                if (q == s || q == e) continue;
                CHECK(after.weight(s, q) >= before.weight(s, q));
                CHECK(after.weight(e, q) >= before.weight(e, q));
            }
        }
        // all finite weights stay non-negative (Weight construction enforces it,
        // so reaching here means the invariant held)
        for (int a = 0; a < after.node_count(); ++a)
            for (int b = a + 1; b < after.node_count(); ++b)
                if (after.weight(a, b).is_finite()) CHECK(after.weight(a, b).value() >= 0.0);
    }
}

}  // TEST_SUITE
