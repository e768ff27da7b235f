#include <doctest.h>

#include <fstream>
#include <sstream>

#include "sagecut/graph.hpp"
#include "sagecut/graph_io.hpp"
#include "sagecut/rng.hpp"
#include "support.hpp"

using namespace sagecut;

namespace {

std::pair<Graph, ValidationReport> graph_from_text(const std::string& text,
                                                   const LoadOptions& opts = {}) {
    testsupport::TempDir dir;
    const std::string path = dir.path("g.edges");
    std::ofstream(path) << text;
    return load_graph(path, opts);
}

}  // namespace

TEST_CASE("path graph loads with expected degrees") {
    auto [g, report] = graph_from_text("0 1\n1 2\n");
    CHECK(g.num_nodes == 3);
    CHECK(g.num_edges() == 2);
    CHECK(g.degrees == std::vector<NodeId>{1, 2, 1});
    CHECK(report.dropped_self_loops == 0);
    CHECK(report.merged_duplicate_edges == 0);
}

TEST_CASE("self-loops dropped and duplicates merged with counts") {
    auto [g, report] = graph_from_text("0 0\n0 1\n0 1\n");
    CHECK(g.num_edges() == 1);
    CHECK(report.dropped_self_loops == 1);
    CHECK(report.merged_duplicate_edges == 1);
}

TEST_CASE("reversed duplicates merge to one undirected edge") {
    auto [g, report] = graph_from_text("1 0\n0 1\n");
    CHECK(g.num_edges() == 1);
    CHECK(report.merged_duplicate_edges == 1);
    CHECK(g.edges.front() == Edge{0, 1});
}

TEST_CASE("loader errors carry line numbers") {
    CHECK_THROWS_WITH_AS(graph_from_text("0 1\nzzz\n"), doctest::Contains(":2:"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(graph_from_text("0 -4\n"), doctest::Contains("negative"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(graph_from_text("0 1 2\n"), doctest::Contains("trailing"),
                         std::runtime_error);
}

TEST_CASE("comments and overridden node counts") {
    auto [g, report] = graph_from_text("# header\n0 1\n", LoadOptions{5, false});
    CHECK(g.num_nodes == 5);
    CHECK(report.isolated_nodes == std::vector<NodeId>{2, 3, 4});
    CHECK_THROWS_AS(graph_from_text("0 3\n", LoadOptions{{}, true}), std::runtime_error);
}

TEST_CASE("karate fixture: degree sum and extremes against brute force") {
    const Graph& g = testsupport::karate();
    CHECK(g.num_nodes == 34);
    CHECK(g.num_edges() == 78);

    // Independent recount straight from the fixture file.
    std::ifstream in(testsupport::fixture_path("karate.edges"));
    std::vector<int> brute_deg(34, 0);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int u, v;
        ls >> u >> v;
        ++brute_deg[u];
        ++brute_deg[v];
    }
    long brute_sum = 0;
    int brute_min = 1 << 30, brute_max = 0;
    for (const int d : brute_deg) {
        brute_sum += d;
        brute_max = std::max(brute_max, d);
        if (d > 0) brute_min = std::min(brute_min, d);
    }
    CHECK(brute_sum == 156);

    long degree_sum = 0;
    for (NodeId v = 0; v < g.num_nodes; ++v) degree_sum += g.degree(v);
    CHECK(degree_sum == brute_sum);

    const auto [min_d, max_d] = degree_extremes(g);
    CHECK(min_d == brute_min);
    CHECK(max_d == brute_max);
    CHECK(min_d == 1);
    CHECK(max_d == 17);
}

TEST_CASE("degree extremes on tiny graphs") {
    auto [path3, r1] = graph_from_text("0 1\n1 2\n");
    CHECK(degree_extremes(path3) == std::pair<NodeId, NodeId>{1, 2});
    auto [star, r2] = graph_from_text("0 1\n0 2\n0 3\n0 4\n");
    CHECK(degree_extremes(star) == std::pair<NodeId, NodeId>{1, 4});
    auto [empty, r3] = graph_from_text("", LoadOptions{3, false});
    CHECK_THROWS_AS(degree_extremes(empty), std::invalid_argument);
}

TEST_CASE("degree sum equals twice the edge count and adjacency is symmetric") {
    Rng rng(123);
    for (int trial = 0; trial < 20; ++trial) {
        const NodeId n = 2 + static_cast<NodeId>(rng.next_below(40));
        std::vector<Edge> edges;
        const std::size_t attempts = rng.next_below(120);
        for (std::size_t k = 0; k < attempts; ++k) {
            const auto u = static_cast<NodeId>(rng.next_below(static_cast<std::uint64_t>(n)));
            const auto v = static_cast<NodeId>(rng.next_below(static_cast<std::uint64_t>(n)));
            edges.push_back(Edge{u, v});
        }
        auto [g, report] = build_graph(n, edges);

        long degree_sum = 0;
        for (NodeId v = 0; v < n; ++v) degree_sum += g.degree(v);
        CHECK(degree_sum == 2 * static_cast<long>(g.num_edges()));

        const AdjacencyView adj = g.adjacency();
        for (NodeId v = 0; v < n; ++v)
            for (const NodeId u : adj.neighbors_of(v)) {
                const auto back = adj.neighbors_of(u);
                CHECK(std::find(back.begin(), back.end(), v) != back.end());
            }
    }
}

TEST_CASE("edge list round trip is order-insensitive identical") {
    const Graph& g = testsupport::karate();
    testsupport::TempDir dir;
    save_edge_list(g, dir.path("k.edges"));
    auto [again, report] = load_graph(dir.path("k.edges"));
    CHECK(again.edges == g.edges);
    save_edge_list(again, dir.path("k2.edges"));
    CHECK(testsupport::slurp(dir.path("k.edges")) == testsupport::slurp(dir.path("k2.edges")));
}

TEST_CASE("feature CSV loading") {
    testsupport::TempDir dir;
    std::ofstream(dir.path("f.csv")) << "1.0,0.0\n0.0,1.0\n";
    const Eigen::MatrixXd m = load_features(dir.path("f.csv"), 2);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 2);
    CHECK(m.isApprox(Eigen::MatrixXd::Identity(2, 2)));

    std::ofstream(dir.path("bad.csv")) << "1.0,0.0\n0.0\n";
    CHECK_THROWS_WITH_AS(load_features(dir.path("bad.csv"), 2), doctest::Contains("ragged"),
                         std::runtime_error);

    std::ofstream(dir.path("nan.csv")) << "1.0,nan\n0.0,1.0\n";
    CHECK_THROWS_WITH_AS(load_features(dir.path("nan.csv"), 2),
                         doctest::Contains("non-finite value at row 0, col 1"),
                         std::runtime_error);

    std::ofstream(dir.path("short.csv")) << "1.0,0.0\n";
    CHECK_THROWS_AS(load_features(dir.path("short.csv"), 2), std::runtime_error);
}

TEST_CASE("binary feature format round trip") {
    testsupport::TempDir dir;
    Eigen::MatrixXd m(3, 4);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = r * 4 + c;
    save_features_binary(m, dir.path("f.bin"));

    // 4 magic + 16 header + 12 float32 payload bytes.
    CHECK(testsupport::slurp(dir.path("f.bin")).size() == 4 + 16 + 12 * 4);
    const Eigen::MatrixXd back = load_features(dir.path("f.bin"), 3);
    CHECK(back.isApprox(m));
    CHECK_THROWS_AS(load_features(dir.path("f.bin"), 4), std::runtime_error);
}

TEST_CASE("labels and masks round trip with validation") {
    testsupport::TempDir dir;
    auto [g, report] = graph_from_text("0 1\n1 2\n2 3\n");

    std::ofstream(dir.path("labels.txt")) << "0\n1\n1\n0\n";
    load_labels(dir.path("labels.txt"), g);
    CHECK(g.labels == std::vector<NodeId>{0, 1, 1, 0});
    CHECK(g.num_classes == 2);

    std::ofstream(dir.path("ml.txt")) << "1,0,1\n0,0,0\n1,1,1\n0,1,0\n";
    Graph g2 = g;
    load_labels(dir.path("ml.txt"), g2);
    CHECK(g2.is_multilabel());
    CHECK(g2.num_classes == 3);
    CHECK(g2.multilabels(0, 2) == 1.0);

    std::ofstream(dir.path("masks.txt")) << "train 0\ntrain 1\nval 2\ntest 3\n";
    load_masks(dir.path("masks.txt"), g);
    CHECK(g.train_mask == std::vector<std::uint8_t>{1, 1, 0, 0});
    CHECK(g.val_mask == std::vector<std::uint8_t>{0, 0, 1, 0});
    CHECK(g.test_mask == std::vector<std::uint8_t>{0, 0, 0, 1});

    save_masks(g, dir.path("masks2.txt"));
    Graph g3 = g;
    load_masks(dir.path("masks2.txt"), g3);
    CHECK(g3.train_mask == g.train_mask);
    CHECK(g3.val_mask == g.val_mask);
    CHECK(g3.test_mask == g.test_mask);

    std::ofstream(dir.path("overlap.txt")) << "train 0\nval 0\n";
    CHECK_THROWS_WITH_AS(load_masks(dir.path("overlap.txt"), g),
                         doctest::Contains("two splits"), std::runtime_error);
    std::ofstream(dir.path("range.txt")) << "train 9\n";
    CHECK_THROWS_AS(load_masks(dir.path("range.txt"), g), std::runtime_error);
}
