#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "voicegraph/forest.hpp"
#include "voicegraph/manifest.hpp"

namespace vg {

// Per-clip feature rows for one feature family.
struct FeatureTable {
    std::vector<std::string> clip_ids;
    std::vector<std::string> feature_names;
    Eigen::MatrixXd values;

    Eigen::Index rows() const { return values.rows(); }
};

// Header: clip_id,<feature names>; values with 10 significant digits.
void write_feature_csv(const std::filesystem::path& path, const FeatureTable& table);
FeatureTable read_feature_csv(const std::filesystem::path& path);

// Per-subsequence probabilities keyed by subject, in file row order.
// Header: subject_id,subseq_id,probability.
std::map<std::string, std::vector<double>> read_text_scores_csv(const std::filesystem::path& path);

// Joins a family's feature rows with manifest labels for one split. Clips
// without a feature row (failed extraction) are skipped. Every subject in the
// split must carry a label.
LabeledDataset build_dataset(const FeatureTable& features, const Manifest& manifest,
                             const std::string& split);

} // namespace vg
