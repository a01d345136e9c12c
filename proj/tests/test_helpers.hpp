#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "voicegraph/rng.hpp"
#include "voicegraph/signal.hpp"
#include "voicegraph/visibility.hpp"

namespace vgtest {

inline vg::TimeSeries series_of(const std::vector<double>& y) {
    vg::TimeSeries s;
    s.t.resize(static_cast<Eigen::Index>(y.size()));
    s.y.resize(static_cast<Eigen::Index>(y.size()));
    for (std::size_t i = 0; i < y.size(); ++i) {
        s.t[static_cast<Eigen::Index>(i)] = static_cast<double>(i);
        s.y[static_cast<Eigen::Index>(i)] = y[i];
    }
    return s;
}

inline vg::TimeSeries series_of(const std::vector<double>& t, const std::vector<double>& y) {
    vg::TimeSeries s;
    s.t.resize(static_cast<Eigen::Index>(t.size()));
    s.y.resize(static_cast<Eigen::Index>(y.size()));
    for (std::size_t i = 0; i < y.size(); ++i) {
        s.t[static_cast<Eigen::Index>(i)] = t[i];
        s.y[static_cast<Eigen::Index>(i)] = y[i];
    }
    return s;
}

// Random series generators used by equivalence and invariance suites.
inline vg::TimeSeries random_uniform_series(vg::Rng& rng, Eigen::Index n) {
    vg::TimeSeries s;
    s.t.resize(n);
    s.y.resize(n);
    double t = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        t += rng.range(0.1, 1.0); // irregular but strictly increasing
        s.t[i] = t;
        s.y[i] = rng.unit();
    }
    return s;
}

inline vg::TimeSeries random_walk_series(vg::Rng& rng, Eigen::Index n) {
    vg::TimeSeries s;
    s.t.resize(n);
    s.y.resize(n);
    double y = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        y += rng.normal();
        s.t[i] = static_cast<double>(i);
        s.y[i] = y;
    }
    return s;
}

inline bool same_edges(const vg::VisibilityGraph& a, const vg::VisibilityGraph& b) {
    return a.n_nodes == b.n_nodes && a.edges() == b.edges();
}

// Unique scratch directory under the system temp root.
inline std::filesystem::path temp_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / ("vgtest_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

inline std::string read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

} // namespace vgtest
