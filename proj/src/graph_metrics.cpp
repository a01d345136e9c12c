#include "voicegraph/graph_metrics.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "voicegraph/errors.hpp"

namespace vg {

namespace {

// BFS over an adjacency list; dist[v] = -1 marks unreachable.
void bfs(const std::vector<std::vector<int>>& adjacency, int source, std::vector<int>& dist,
         std::vector<int>& queue) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.clear();
    queue.push_back(source);
    dist[static_cast<std::size_t>(source)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int u = queue[head];
        const int du = dist[static_cast<std::size_t>(u)];
        for (int v : adjacency[static_cast<std::size_t>(u)]) {
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = du + 1;
                queue.push_back(v);
            }
        }
    }
}

double sorted_sum(std::vector<double>& values) {
    std::sort(values.begin(), values.end());
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
}

// Count of edges among the neighbors of v (triangle corners at v).
long links_among_neighbors(const VisibilityGraph& g, int v) {
    const auto& nbrs = g.adjacency[static_cast<std::size_t>(v)];
    long links = 0;
    for (int u : nbrs) {
        const auto& nu = g.adjacency[static_cast<std::size_t>(u)];
        // sorted lists: count common neighbors w with w > u to see each pair once
        auto it = std::upper_bound(nu.begin(), nu.end(), u);
        auto jt = std::upper_bound(nbrs.begin(), nbrs.end(), u);
        while (it != nu.end() && jt != nbrs.end()) {
            if (*it < *jt) {
                ++it;
            } else if (*jt < *it) {
                ++jt;
            } else {
                ++links;
                ++it;
                ++jt;
            }
        }
    }
    return links;
}

// Distance histogram of the subgraph induced by the given sorted node set.
// Unreachable pairs contribute nothing (their inverse distance is zero).
std::vector<long> induced_distance_histogram(const VisibilityGraph& g,
                                             const std::vector<int>& nodes) {
    const int k = static_cast<int>(nodes.size());
    std::vector<std::vector<int>> sub(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a) {
        const auto& nbrs = g.adjacency[static_cast<std::size_t>(nodes[static_cast<std::size_t>(a)])];
        for (int b = a + 1; b < k; ++b) {
            if (std::binary_search(nbrs.begin(), nbrs.end(), nodes[static_cast<std::size_t>(b)])) {
                sub[static_cast<std::size_t>(a)].push_back(b);
                sub[static_cast<std::size_t>(b)].push_back(a);
            }
        }
    }
    std::vector<long> hist(static_cast<std::size_t>(k) + 1, 0);
    std::vector<int> dist(static_cast<std::size_t>(k));
    std::vector<int> queue;
    for (int s = 0; s < k; ++s) {
        bfs(sub, s, dist, queue);
        for (int v = s + 1; v < k; ++v) {
            const int d = dist[static_cast<std::size_t>(v)];
            if (d > 0) ++hist[static_cast<std::size_t>(d)];
        }
    }
    return hist;
}

} // namespace

Eigen::MatrixXi all_pairs_shortest_paths(const VisibilityGraph& graph) {
    const int n = graph.n_nodes;
    Eigen::MatrixXi distances(n, n);
    std::vector<int> dist(static_cast<std::size_t>(n));
    std::vector<int> queue;
    for (int s = 0; s < n; ++s) {
        bfs(graph.adjacency, s, dist, queue);
        for (int v = 0; v < n; ++v) {
            if (dist[static_cast<std::size_t>(v)] < 0) {
                throw Disconnected("no path between nodes " + std::to_string(s) + " and " +
                                   std::to_string(v));
            }
            distances(s, v) = dist[static_cast<std::size_t>(v)];
        }
    }
    return distances;
}

GraphFeatureVector extract_graph_features(const VisibilityGraph& graph) {
    const int n = graph.n_nodes;
    if (n < 2) throw TooSmall("graph features need at least 2 nodes, got " + std::to_string(n));

    const double edges = static_cast<double>(graph.edge_count());
    GraphFeatureVector f;
    f.average_degree = 2.0 * edges / n;
    f.density = 2.0 * edges / (static_cast<double>(n) * (n - 1));

    // Clustering and transitivity from triangle-corner counts.
    long triangle_corners = 0; // = 3 * triangles
    long connected_triples = 0;
    std::vector<double> per_node_clustering(static_cast<std::size_t>(n));
    std::vector<long> links(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        const long deg = graph.degree(v);
        const long l = links_among_neighbors(graph, v);
        links[static_cast<std::size_t>(v)] = l;
        triangle_corners += l;
        connected_triples += deg * (deg - 1) / 2;
        per_node_clustering[static_cast<std::size_t>(v)] =
            deg < 2 ? 0.0 : 2.0 * static_cast<double>(l) / (static_cast<double>(deg) * (deg - 1));
    }
    f.average_clustering = sorted_sum(per_node_clustering) / n;
    f.transitivity = connected_triples > 0
                         ? static_cast<double>(triangle_corners) / static_cast<double>(connected_triples)
                         : 0.0;

    // Distance aggregates via a global hop-count histogram.
    std::vector<long> hist(static_cast<std::size_t>(n) + 1, 0);
    int diameter = 0;
    {
        std::vector<int> dist(static_cast<std::size_t>(n));
        std::vector<int> queue;
        for (int s = 0; s < n; ++s) {
            bfs(graph.adjacency, s, dist, queue);
            for (int v = s + 1; v < n; ++v) {
                const int d = dist[static_cast<std::size_t>(v)];
                if (d < 0) throw Disconnected("graph is not connected");
                ++hist[static_cast<std::size_t>(d)];
                diameter = std::max(diameter, d);
            }
        }
    }
    const double n_pairs = static_cast<double>(n) * (n - 1) / 2.0;
    double path_sum = 0.0;
    double inv_sum = 0.0;
    for (std::size_t d = 1; d < hist.size(); ++d) {
        if (hist[d] == 0) continue;
        path_sum += static_cast<double>(hist[d]) * static_cast<double>(d);
        inv_sum += static_cast<double>(hist[d]) / static_cast<double>(d);
    }
    f.diameter = diameter;
    f.average_shortest_path = path_sum / n_pairs;
    f.global_efficiency = inv_sum / n_pairs;

    // Local efficiency: global efficiency of each node's neighbor subgraph.
    std::vector<double> per_node_eff(static_cast<std::size_t>(n), 0.0);
    for (int v = 0; v < n; ++v) {
        const auto& nbrs = graph.adjacency[static_cast<std::size_t>(v)];
        const long k = static_cast<long>(nbrs.size());
        if (k < 2) continue;
        const auto sub_hist = induced_distance_histogram(graph, nbrs);
        double sub_inv = 0.0;
        for (std::size_t d = 1; d < sub_hist.size(); ++d) {
            if (sub_hist[d] > 0) sub_inv += static_cast<double>(sub_hist[d]) / static_cast<double>(d);
        }
        per_node_eff[static_cast<std::size_t>(v)] = sub_inv / (static_cast<double>(k) * (k - 1) / 2.0);
    }
    f.local_efficiency = sorted_sum(per_node_eff) / n;
    return f;
}

} // namespace vg
