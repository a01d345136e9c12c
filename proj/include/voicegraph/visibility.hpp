#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "voicegraph/signal.hpp"

namespace vg {

// Undirected simple graph over time-series points, one node per point in time
// order. Always contains every chain edge (i, i+1), hence connected, when
// produced by a builder; imported graphs may violate that.
struct VisibilityGraph {
    int n_nodes = 0;
    std::vector<std::vector<int>> adjacency; // sorted ascending neighbor lists

    std::size_t edge_count() const;
    bool has_edge(int a, int b) const;
    int degree(int v) const { return static_cast<int>(adjacency[static_cast<std::size_t>(v)].size()); }
    // Edges as (i, j) with i < j, sorted lexicographically.
    std::vector<std::pair<int, int>> edges() const;

    // For imported graphs; deduplicates, drops self-loops, sorts neighbors.
    static VisibilityGraph from_edges(int n_nodes, const std::vector<std::pair<int, int>>& edges);
};

// Reference builder: tests every pair against every intermediate point with
// the line-of-sight condition, exactly as written. O(n^3) worst case. This is
// the correctness oracle for the fast builder.
VisibilityGraph build_vg_naive(const TimeSeries& series);

// Divide-and-conquer on the leftmost global maximum with outward maximum-
// slope sweeps. Identical edge set to build_vg_naive by construction;
// O(n log n) average on random series, O(n^2) on monotone ones.
VisibilityGraph build_vg_fast(const TimeSeries& series);

struct VgOptions {
    double window_ms = 20.0;       // envelope window
    double min_distance_ms = 10.0; // peak spacing
    double min_prominence = 0.01;  // of full scale
    bool on_raw_samples = false;   // build on raw samples instead of envelope peaks
};

// Envelope -> peaks -> fast builder. Throws NoPeaks when fewer than 2 graph
// nodes come out of the clip.
VisibilityGraph vg_from_audio(const AudioClip& clip, const VgOptions& options,
                              PeakSequence* out_peaks = nullptr);

// {"n_nodes": n, "edges": [[i, j], ...]} with i < j, lexicographic order.
nlohmann::ordered_json graph_to_json(const VisibilityGraph& graph);
std::string graph_to_json_string(const VisibilityGraph& graph);

} // namespace vg
