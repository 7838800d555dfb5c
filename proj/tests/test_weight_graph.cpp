#include <algorithm>
#include <string>
#include <vector>

#include <doctest.h>

#include "test_util.hpp"

using namespace spp;

TEST_SUITE("graph") {

TEST_CASE("weight arithmetic and ordering") {
    const Weight a = Weight::finite(1.5);
    const Weight b = Weight::finite(2.0);
    const Weight inf = Weight::infinite();

    CHECK((a + b).value() == 3.5);
    CHECK((a + inf).is_infinite());
    CHECK((inf + inf).is_infinite());

    CHECK(a < b);
    CHECK(a < inf);
    CHECK(inf == Weight::infinite());
    CHECK_FALSE(inf < inf);
    CHECK(Weight::finite(2.0) == b);

    CHECK_THROWS_AS(Weight::finite(-1.0), internal_error);
    CHECK_THROWS_AS(Weight::finite(std::nan("")), internal_error);
    CHECK_THROWS_AS(inf.value(), internal_error);
}

TEST_CASE("weight ordering is total on random samples") {
    Rng rng(99);
    std::vector<Weight> ws;
    for (int i = 0; i < 40; ++i) ws.push_back(Weight::finite(rng.uniform(0.0, 10.0)));
    for (int i = 0; i < 5; ++i) ws.push_back(Weight::infinite());
    std::sort(ws.begin(), ws.end());
    for (std::size_t i = 0; i + 1 < ws.size(); ++i) {
        CHECK(ws[i] <= ws[i + 1]);
        CHECK_FALSE(ws[i + 1] < ws[i]);
    }
    // infinite values sort last
    CHECK(ws.back().is_infinite());
}

TEST_CASE("node layout and role tagging") {
    const Graph g = build_tsp_graph(spptest::two_straight());
    REQUIRE(g.node_count() == 6);
    CHECK(g.start_node(0) == 0);
    CHECK(g.end_node(0) == 2);
    CHECK(g.middle_node(0) == 4);
    CHECK(g.role(1).kind == NodeKind::start);
    CHECK(g.role(1).subpath == 1);
    CHECK(g.role(3).kind == NodeKind::end);
    CHECK(g.role(5).kind == NodeKind::middle);
    CHECK(g.is_middle(5));
    CHECK_FALSE(g.is_middle(0));
}

TEST_CASE("edge weights are symmetric and the diagonal is an error") {
    const Graph g = build_tsp_graph(spptest::two_straight());
    CHECK(g.weight(g.middle_node(0), g.start_node(1)).is_infinite());
    CHECK(g.weight(g.start_node(0), g.middle_node(0)) == Weight::finite(0.5));
    for (int a = 0; a < g.node_count(); ++a)
        for (int b = a + 1; b < g.node_count(); ++b) CHECK(g.weight(a, b) == g.weight(b, a));
    CHECK_THROWS_AS(g.weight(2, 2), internal_error);
}

TEST_CASE("tour length sums the cycle including the closing edge") {
    const Workspace ws({{{0, 0}, {1, 0}, 1.0}});
    const Graph g = build_tsp_graph(ws);
    const Weight len = tour_length(g, {g.start_node(0), g.middle_node(0), g.end_node(0)});
    CHECK(len == Weight::finite(2.0));

    const Graph g2 = build_tsp_graph(spptest::two_straight());
    // 0.5 + 0.5 + 1 + 0.5 + 0.5 + 3
    const Weight six = tour_length(g2, {0, 4, 2, 1, 5, 3});
    CHECK(six.is_finite());
    CHECK(six.value() == doctest::Approx(6.0).epsilon(1e-12));

    // any adjacency through a foreign middle is infinite
    CHECK(tour_length(g2, {4, 1, 0, 2, 5, 3}).is_infinite());

    CHECK_THROWS_AS(tour_length(g2, {0, 0, 1}), internal_error);
    CHECK_THROWS_AS(tour_length(g2, {0, 1}), internal_error);
}

TEST_CASE("tour length is invariant under rotation and reversal") {
    Rng rng(5);
    const Workspace ws = generate_random_workspace(6, 50.0, 2.0, 11);
    const Graph g = build_tsp_graph(ws);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<int> trail = random_finite_trail(ws.size(), rng);
        const Weight base = tour_length(g, trail);
        REQUIRE(base.is_finite());
        std::rotate(trail.begin(), trail.begin() + rng.uniform_int(0, static_cast<int>(trail.size()) - 1),
                    trail.end());
        // same edge multiset; only the floating-point summation order moves
        CHECK(nearly_equal(tour_length(g, trail).value(), base.value(), 1e-12));
        std::reverse(trail.begin(), trail.end());
        CHECK(nearly_equal(tour_length(g, trail).value(), base.value(), 1e-12));
    }
}

TEST_CASE("csv dump uses inf literals and nine significant digits") {
    const Graph g = build_tsp_graph(spptest::curved_pair());
    const std::string csv = g.to_csv();
    CHECK(csv.find("inf") != std::string::npos);
    CHECK(csv.find("1.41421356") != std::string::npos);  // sqrt(2) to 9 digits
    // one line per node, all lines have node_count cells
    const int lines = static_cast<int>(std::count(csv.begin(), csv.end(), '\n'));
    CHECK(lines == g.node_count());
}

}  // TEST_SUITE
