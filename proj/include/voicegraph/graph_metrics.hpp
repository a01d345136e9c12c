#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>

#include "voicegraph/visibility.hpp"

namespace vg {

// The eight topology features of one graph.
struct GraphFeatureVector {
    double average_degree = 0.0;
    double average_clustering = 0.0;
    double density = 0.0;
    double transitivity = 0.0;
    double diameter = 0.0;
    double local_efficiency = 0.0;
    double global_efficiency = 0.0;
    double average_shortest_path = 0.0;

    static constexpr std::array<const char*, 8> names = {
        "avg_degree", "avg_clustering", "density",    "transitivity",
        "diameter",   "local_eff",      "global_eff", "avg_shortest_path"};

    Eigen::Matrix<double, 8, 1> as_vector() const {
        Eigen::Matrix<double, 8, 1> v;
        v << average_degree, average_clustering, density, transitivity, diameter,
            local_efficiency, global_efficiency, average_shortest_path;
        return v;
    }
};

// Hop-count distances via BFS from every node. Throws Disconnected when any
// pair is unreachable (impossible for builder-produced graphs, possible for
// imported ones). Intended for inspection and small graphs; the feature
// extractor streams BFS results instead of materializing this matrix.
Eigen::MatrixXi all_pairs_shortest_paths(const VisibilityGraph& graph);

// All eight features. Distance-based aggregates are accumulated through
// integer histograms and per-node terms are summed in sorted order, so the
// result is bit-identical under any node relabeling.
GraphFeatureVector extract_graph_features(const VisibilityGraph& graph);

} // namespace vg
