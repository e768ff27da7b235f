#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "sagecut/graph.hpp"
#include "sagecut/graph_io.hpp"
#include "sagecut/nn.hpp"
#include "sagecut/synth.hpp"

#ifndef SAGECUT_FIXTURE_DIR
#define SAGECUT_FIXTURE_DIR "tests/fixtures"
#endif

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
    return std::string(SAGECUT_FIXTURE_DIR) + "/" + name;
}

inline const sagecut::Graph& karate() {
    static const sagecut::Graph g = [] {
        auto [graph, report] = sagecut::load_graph(fixture_path("karate.edges"));
        (void)report;
        return graph;
    }();
    return g;
}

// The homophilic SBM fixture: n=200, C=4, p_in/p_out = 15, seed 7.
inline const sagecut::Graph& sbm200() {
    static const sagecut::Graph g = sagecut::gen_homophilic_sbm(
        sagecut::SbmSpec{200, 4, 0.15, 0.01, 8, 0.3, 7});
    return g;
}

inline const sagecut::Graph& power_law_10k() {
    static const sagecut::Graph g =
        sagecut::gen_power_law(sagecut::PowerLawSpec{10000, 2.5, 2, 1});
    return g;
}

// Scratch directory for file round-trip tests.
class TempDir {
public:
    TempDir() {
        base_ = std::filesystem::temp_directory_path() /
                ("sagecut_test_" + std::to_string(std::rand()) + "_" +
                 std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(base_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(base_, ec);
    }
    std::string path(const std::string& name) const { return (base_ / name).string(); }

private:
    std::filesystem::path base_;
};

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Straightforward per-node reference evaluation of the SAGE stack, kept free
// of the production code path (plain loops, no shared helpers).
inline sagecut::MatX<double> naive_sage_logits(const sagecut::SageModel<double>& model,
                                               const sagecut::Graph& g,
                                               const Eigen::MatrixXd& features) {
    using Eigen::Index;
    const auto n = static_cast<Index>(g.num_nodes);
    Eigen::MatrixXd h = features;
    for (const auto& layer : model.layers) {
        const Index hidden = layer.message.rows();
        const Index in = layer.message.cols();
        Eigen::MatrixXd next(n, layer.update.rows());
        for (Index v = 0; v < n; ++v) {
            Eigen::VectorXd mean = Eigen::VectorXd::Zero(hidden);
            int deg = 0;
            for (const auto& e : g.edges) {
                sagecut::NodeId other = -1;
                if (e.u == v) other = e.v;
                if (e.v == v) other = e.u;
                if (other < 0) continue;
                Eigen::VectorXd msg = layer.message * h.row(other).transpose();
                for (Index k = 0; k < hidden; ++k) msg(k) = std::max(msg(k), 0.0);
                mean += msg;
                ++deg;
            }
            if (deg > 0) mean /= static_cast<double>(deg);
            Eigen::VectorXd concat(hidden + in);
            concat.head(hidden) = mean;
            concat.tail(in) = h.row(v).transpose();
            next.row(v) = (layer.update * concat).transpose();
        }
        h = next;
    }
    return h * model.head.transpose();
}

}  // namespace testsupport
