#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <utility>
#include <vector>

#include "test_helpers.hpp"
#include "voicegraph/errors.hpp"
#include "voicegraph/synth.hpp"
#include "voicegraph/visibility.hpp"

using namespace vg;
using namespace vgtest;

namespace {

std::set<std::pair<int, int>> edge_set(const VisibilityGraph& g) {
    const auto e = g.edges();
    return {e.begin(), e.end()};
}

} // namespace

TEST_CASE("naive builder: linear series is a path graph") {
    const VisibilityGraph g = build_vg_naive(series_of({1, 2, 3, 4}));
    CHECK(edge_set(g) == std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}});
}

TEST_CASE("naive builder: hand-checked 4-point series") {
    const VisibilityGraph g = build_vg_naive(series_of({1, 3, 2, 4}));
    CHECK(edge_set(g) == std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {1, 3}});
}

TEST_CASE("naive builder: convex series is complete") {
    const VisibilityGraph g = build_vg_naive(series_of({0, 1, 4, 9}));
    CHECK(g.edge_count() == 6);
    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) CHECK(g.has_edge(a, b));
    }
}

TEST_CASE("builders: input validation") {
    CHECK_THROWS_AS(build_vg_naive(series_of({1.0})), TooShort);
    CHECK_THROWS_AS(build_vg_fast(series_of({1.0})), TooShort);
    CHECK_THROWS_AS(build_vg_naive(series_of({0.0, 0.0, 1.0}, {1.0, 2.0, 3.0})),
                    NonIncreasingTime);
}

TEST_CASE("fast builder: two points give the single chain edge") {
    const VisibilityGraph g = build_vg_fast(series_of({5, 1}));
    CHECK(g.n_nodes == 2);
    CHECK(edge_set(g) == std::set<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("fast builder: equal-height plateaus stay a path") {
    const VisibilityGraph g = build_vg_fast(series_of({2, 2, 2, 2, 2}));
    CHECK(g.edge_count() == 4);
}

TEST_CASE("fast == naive on the worked examples") {
    for (const auto& values : std::vector<std::vector<double>>{
             {1, 2, 3, 4}, {1, 3, 2, 4}, {0, 1, 4, 9}, {3, 1, 2, 1, 3}, {1, 1, 1}}) {
        const TimeSeries s = series_of(values);
        CHECK(same_edges(build_vg_fast(s), build_vg_naive(s)));
    }
}

TEST_CASE("fast == naive on random series (uniform and random walk)") {
    Rng rng(42);
    for (int rep = 0; rep < 60; ++rep) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.below(255));
        const TimeSeries s =
            (rep % 2 == 0) ? random_uniform_series(rng, n) : random_walk_series(rng, n);
        const VisibilityGraph fast = build_vg_fast(s);
        const VisibilityGraph naive = build_vg_naive(s);
        REQUIRE(same_edges(fast, naive));
    }
}

TEST_CASE("fast == naive on a 1000-point uniform-random series") {
    Rng rng(1000);
    const TimeSeries s = random_uniform_series(rng, 1000);
    CHECK(same_edges(build_vg_fast(s), build_vg_naive(s)));
}

TEST_CASE("chain edges always present, graph connected") {
    Rng rng(7);
    for (int rep = 0; rep < 30; ++rep) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.below(100));
        const VisibilityGraph g = build_vg_fast(random_walk_series(rng, n));
        for (int i = 0; i + 1 < g.n_nodes; ++i) CHECK(g.has_edge(i, i + 1));
    }
}

TEST_CASE("affine invariance in y and in t") {
    Rng rng(99);
    for (int rep = 0; rep < 20; ++rep) {
        const Eigen::Index n = 3 + static_cast<Eigen::Index>(rng.below(80));
        const TimeSeries s = random_walk_series(rng, n);
        const VisibilityGraph base = build_vg_fast(s);
        for (int k = 0; k < 4; ++k) {
            const double a = rng.range(0.1, 10.0);
            const double b = rng.range(-5.0, 5.0);
            TimeSeries scaled = s;
            scaled.y = a * s.y + b;
            CHECK(same_edges(build_vg_fast(scaled), base));

            TimeSeries shifted = s;
            shifted.t = a * s.t + b;
            CHECK(same_edges(build_vg_fast(shifted), base));
        }
    }
}

TEST_CASE("vg_from_audio: two-bump clip gives the single edge") {
    const AudioClip clip = make_bump_train_clip({0.5, 0.5}, 16000);
    PeakSequence peaks;
    const VisibilityGraph g = vg_from_audio(clip, VgOptions{}, &peaks);
    CHECK(g.n_nodes == 2);
    CHECK(peaks.size() == 2);
    CHECK(edge_set(g) == std::set<std::pair<int, int>>{{0, 1}});
    CHECK(peaks.envelope_window_ms == 20.0);
}

TEST_CASE("vg_from_audio: equal-height bump train is a path graph") {
    const AudioClip clip = make_bump_train_clip(std::vector<double>(12, 0.6), 16000);
    const VisibilityGraph g = vg_from_audio(clip, VgOptions{});
    CHECK(g.n_nodes == 12);
    CHECK(g.edge_count() == 11); // equal peaks block every long chord
}

TEST_CASE("vg_from_audio: AM clip matches the naive builder on its peaks") {
    Rng rng(5);
    const AudioClip clip = make_am_clip(100.0, 2.0, 2.0, 16000, 0.9, 0.01, rng);
    PeakSequence peaks;
    const VisibilityGraph fast = vg_from_audio(clip, VgOptions{}, &peaks);
    REQUIRE(peaks.size() >= 2);
    CHECK(same_edges(fast, build_vg_naive(peaks.points)));
    for (int i = 0; i + 1 < fast.n_nodes; ++i) CHECK(fast.has_edge(i, i + 1));
}

TEST_CASE("vg_from_audio: constant clip has no peaks") {
    AudioClip clip;
    clip.sample_rate = 16000;
    clip.samples = Eigen::ArrayXd::Constant(16000, 0.5);
    CHECK_THROWS_AS(vg_from_audio(clip, VgOptions{}), NoPeaks);
}

TEST_CASE("vg_from_audio: raw mode builds on samples directly") {
    AudioClip clip;
    clip.sample_rate = 4;
    clip.samples.resize(4);
    clip.samples << 1, 3, 2, 4;
    VgOptions opt;
    opt.on_raw_samples = true;
    const VisibilityGraph g = vg_from_audio(clip, opt);
    CHECK(g.n_nodes == 4);
    CHECK(edge_set(g) == std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {1, 3}});
}

TEST_CASE("graph json export format is bit-exact") {
    const VisibilityGraph two = build_vg_fast(series_of({1, 2}));
    CHECK(graph_to_json_string(two) == R"({"n_nodes":2,"edges":[[0,1]]})");

    const VisibilityGraph four = build_vg_fast(series_of({1, 3, 2, 4}));
    CHECK(graph_to_json_string(four) ==
          R"({"n_nodes":4,"edges":[[0,1],[1,2],[1,3],[2,3]]})");
}

TEST_CASE("from_edges deduplicates and rejects bad endpoints") {
    const VisibilityGraph g =
        VisibilityGraph::from_edges(3, {{0, 1}, {1, 0}, {1, 2}, {2, 2}});
    CHECK(g.edge_count() == 2);
    CHECK_THROWS_AS(VisibilityGraph::from_edges(2, {{0, 5}}), DataError);
}
