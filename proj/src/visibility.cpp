#include "voicegraph/visibility.hpp"

#include <algorithm>
#include <limits>

#include <nlohmann/json.hpp>

#include "voicegraph/errors.hpp"

namespace vg {

std::size_t VisibilityGraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& nbrs : adjacency) twice += nbrs.size();
    return twice / 2;
}

bool VisibilityGraph::has_edge(int a, int b) const {
    const auto& nbrs = adjacency[static_cast<std::size_t>(a)];
    return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

std::vector<std::pair<int, int>> VisibilityGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count());
    for (int i = 0; i < n_nodes; ++i) {
        for (int j : adjacency[static_cast<std::size_t>(i)]) {
            if (j > i) out.emplace_back(i, j);
        }
    }
    return out;
}

VisibilityGraph VisibilityGraph::from_edges(int n_nodes,
                                            const std::vector<std::pair<int, int>>& edges) {
    VisibilityGraph g;
    g.n_nodes = n_nodes;
    g.adjacency.assign(static_cast<std::size_t>(n_nodes), {});
    for (auto [a, b] : edges) {
        if (a == b) continue;
        if (a < 0 || b < 0 || a >= n_nodes || b >= n_nodes) {
            throw DataError("edge endpoint out of range");
        }
        g.adjacency[static_cast<std::size_t>(a)].push_back(b);
        g.adjacency[static_cast<std::size_t>(b)].push_back(a);
    }
    for (auto& nbrs : g.adjacency) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    return g;
}

namespace {

void check_graphable(const TimeSeries& series) {
    series.validate();
    if (series.size() < 2) {
        throw TooShort("need at least 2 points to build a graph, got " +
                       std::to_string(series.size()));
    }
}

VisibilityGraph finalize(int n, std::vector<std::pair<int, int>>&& edge_list) {
    VisibilityGraph g;
    g.n_nodes = n;
    g.adjacency.assign(static_cast<std::size_t>(n), {});
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    for (auto [a, b] : edge_list) {
        ++degree[static_cast<std::size_t>(a)];
        ++degree[static_cast<std::size_t>(b)];
    }
    for (int i = 0; i < n; ++i) g.adjacency[static_cast<std::size_t>(i)].reserve(degree[static_cast<std::size_t>(i)]);
    for (auto [a, b] : edge_list) {
        g.adjacency[static_cast<std::size_t>(a)].push_back(b);
        g.adjacency[static_cast<std::size_t>(b)].push_back(a);
    }
    for (auto& nbrs : g.adjacency) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

} // namespace

VisibilityGraph build_vg_naive(const TimeSeries& series) {
    check_graphable(series);
    const Eigen::Index n = series.size();
    const auto& t = series.t;
    const auto& y = series.y;

    std::vector<std::pair<int, int>> edge_list;
    for (Eigen::Index a = 0; a + 1 < n; ++a) {
        for (Eigen::Index b = a + 1; b < n; ++b) {
            bool visible = true;
            for (Eigen::Index c = a + 1; c < b; ++c) {
                if (!(y[c] < y[b] + (y[a] - y[b]) * (t[b] - t[c]) / (t[b] - t[a]))) {
                    visible = false;
                    break;
                }
            }
            if (visible) edge_list.emplace_back(static_cast<int>(a), static_cast<int>(b));
        }
    }
    return finalize(static_cast<int>(n), std::move(edge_list));
}

VisibilityGraph build_vg_fast(const TimeSeries& series) {
    check_graphable(series);
    const Eigen::Index n = series.size();
    const auto& t = series.t;
    const auto& y = series.y;

    std::vector<std::pair<int, int>> edge_list;
    edge_list.reserve(static_cast<std::size_t>(2 * n));

    // No edge can cross the range maximum (the chord would have to pass
    // strictly above it), so the maximum splits the problem: connect it to
    // its visible nodes on each side, then recurse on the two halves.
    std::vector<std::pair<Eigen::Index, Eigen::Index>> stack;
    stack.emplace_back(0, n - 1);
    while (!stack.empty()) {
        const auto [lo, hi] = stack.back();
        stack.pop_back();
        if (hi - lo < 1) continue;

        Eigen::Index k = lo;
        for (Eigen::Index i = lo + 1; i <= hi; ++i) {
            if (y[i] > y[k]) k = i; // leftmost maximum on ties
        }

        // Looking left from k: node i is visible iff its slope towards k is
        // strictly below every slope seen closer to k.
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = k - 1; i >= lo; --i) {
            const double slope = (y[i] - y[k]) / (t[i] - t[k]);
            if (slope < best) {
                edge_list.emplace_back(static_cast<int>(i), static_cast<int>(k));
                best = slope;
            }
        }
        // Looking right: mirrored with a running maximum.
        best = -std::numeric_limits<double>::infinity();
        for (Eigen::Index j = k + 1; j <= hi; ++j) {
            const double slope = (y[j] - y[k]) / (t[j] - t[k]);
            if (slope > best) {
                edge_list.emplace_back(static_cast<int>(k), static_cast<int>(j));
                best = slope;
            }
        }

        if (k - lo >= 2) stack.emplace_back(lo, k - 1);
        if (hi - k >= 2) stack.emplace_back(k + 1, hi);
    }
    return finalize(static_cast<int>(n), std::move(edge_list));
}

VisibilityGraph vg_from_audio(const AudioClip& clip, const VgOptions& options,
                              PeakSequence* out_peaks) {
    if (options.on_raw_samples) {
        TimeSeries raw;
        raw.y = clip.samples;
        raw.t = Eigen::ArrayXd::LinSpaced(clip.samples.size(), 0.0,
                                          static_cast<double>(clip.samples.size() - 1)) /
                clip.sample_rate;
        if (out_peaks) *out_peaks = PeakSequence{};
        return build_vg_fast(raw);
    }

    const TimeSeries envelope = compute_envelope(clip, options.window_ms);
    if (envelope.size() < 3) {
        throw NoPeaks("envelope of " + std::to_string(envelope.size()) +
                      " points cannot contain peaks");
    }
    PeakSequence peaks =
        detect_peaks(envelope, options.min_distance_ms, options.min_prominence);
    peaks.envelope_window_ms = options.window_ms;
    if (peaks.size() < 2) {
        throw NoPeaks("found " + std::to_string(peaks.size()) +
                      " peaks, need at least 2 for a graph");
    }
    VisibilityGraph g = build_vg_fast(peaks.points);
    if (out_peaks) *out_peaks = std::move(peaks);
    return g;
}

nlohmann::ordered_json graph_to_json(const VisibilityGraph& graph) {
    nlohmann::ordered_json j;
    j["n_nodes"] = graph.n_nodes;
    auto edges = nlohmann::ordered_json::array();
    for (auto [a, b] : graph.edges()) edges.push_back({a, b});
    j["edges"] = std::move(edges);
    return j;
}

std::string graph_to_json_string(const VisibilityGraph& graph) {
    return graph_to_json(graph).dump();
}

} // namespace vg
