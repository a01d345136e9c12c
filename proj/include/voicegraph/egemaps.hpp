#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace vg {

inline constexpr int kEgemapsDim = 88;

// Externally computed 88-feature vectors, keyed by clip id, in file order.
struct EgemapsTable {
    std::vector<std::string> feature_names; // exactly 88
    std::vector<std::string> clip_ids;
    Eigen::MatrixXd values; // one row per clip id

    std::optional<Eigen::Index> row_of(const std::string& clip_id) const;
};

// CSV with a header; comma or semicolon delimited (auto-detected); one id
// column followed by exactly 88 numeric columns.
EgemapsTable ingest_egemaps_csv(const std::filesystem::path& path);

} // namespace vg
