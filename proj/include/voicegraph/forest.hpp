#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace vg {

// Feature rows with binary labels and the owning subject of each row.
struct LabeledDataset {
    Eigen::MatrixXd X;
    std::vector<int> labels; // 0/1
    std::vector<std::string> subject_ids;
    std::vector<std::string> feature_names;
    std::string split;

    Eigen::Index rows() const { return X.rows(); }
    Eigen::Index dims() const { return X.cols(); }
};

struct ForestConfig {
    int n_trees = 200;
    int max_depth = 8;
    int min_leaf = 2;
    int features_per_split = 0; // 0 -> ceil(sqrt(d))
    std::uint64_t seed = 0;
    bool normalize = false; // z-score with train-split statistics
};

// feature < threshold goes left; feature == -1 marks a leaf.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double p0 = 0.0;
    double p1 = 0.0;

    bool is_leaf() const { return feature < 0; }
};

struct DecisionTree {
    std::vector<TreeNode> nodes; // nodes[0] is the root
};

struct Normalization {
    Eigen::VectorXd mean;
    Eigen::VectorXd std_dev; // zero-variance columns stored as 1
};

struct RandomForestModel {
    ForestConfig config;
    int n_features = 0;
    std::vector<std::string> feature_names;
    std::vector<std::string> train_subjects; // provenance, used by the leakage audit
    std::optional<Normalization> normalization;
    std::vector<DecisionTree> trees;

    nlohmann::ordered_json to_json() const;
    static RandomForestModel from_json(const nlohmann::json& j);
    void save(const std::filesystem::path& path) const;
    static RandomForestModel load(const std::filesystem::path& path);
};

// Bootstrap-resampled CART trees with Gini splits over random feature
// subsets. Byte-for-byte deterministic given the seed: rows are processed in
// a canonical order and every tree derives its own RNG stream, so serial and
// parallel training produce identical models.
RandomForestModel train_random_forest(const LabeledDataset& data, const ForestConfig& config,
                                      int threads = 1);

// Mean positive-class probability over trees.
double predict_proba(const RandomForestModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);

} // namespace vg
