#include "voicegraph/forest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <nlohmann/json.hpp>

#include "voicegraph/errors.hpp"
#include "voicegraph/rng.hpp"
#include "voicegraph/util.hpp"

namespace vg {

namespace {

struct SplitCandidate {
    bool valid = false;
    int feature = -1;
    double threshold = 0.0;
    double weighted_impurity = 0.0;
};

double gini(long c1, long total) {
    if (total == 0) return 0.0;
    const double p1 = static_cast<double>(c1) / static_cast<double>(total);
    const double p0 = 1.0 - p1;
    return 1.0 - p0 * p0 - p1 * p1;
}

class TreeBuilder {
public:
    TreeBuilder(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                const ForestConfig& cfg, Rng rng)
        : x_(x), labels_(labels), cfg_(cfg), rng_(rng),
          feature_pool_(static_cast<std::size_t>(x.cols())) {
        std::iota(feature_pool_.begin(), feature_pool_.end(), 0);
        k_features_ = cfg.features_per_split > 0
                          ? std::min<int>(cfg.features_per_split, static_cast<int>(x.cols()))
                          : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(x.cols()))));
    }

    DecisionTree build(std::vector<int> sample) {
        tree_.nodes.clear();
        grow(std::move(sample), 0);
        return std::move(tree_);
    }

private:
    int grow(std::vector<int> sample, int depth) {
        long c1 = 0;
        for (int idx : sample) c1 += labels_[static_cast<std::size_t>(idx)];
        const long total = static_cast<long>(sample.size());

        const int node_id = static_cast<int>(tree_.nodes.size());
        tree_.nodes.emplace_back();

        const bool pure = (c1 == 0 || c1 == total);
        if (pure || depth >= cfg_.max_depth || total < 2 * cfg_.min_leaf) {
            make_leaf(node_id, c1, total);
            return node_id;
        }
        const SplitCandidate split = best_split(sample);
        if (!split.valid) {
            make_leaf(node_id, c1, total);
            return node_id;
        }

        std::vector<int> left, right;
        left.reserve(sample.size());
        right.reserve(sample.size());
        for (int idx : sample) {
            if (x_(idx, split.feature) < split.threshold) {
                left.push_back(idx);
            } else {
                right.push_back(idx);
            }
        }
        sample.clear();
        sample.shrink_to_fit();

        tree_.nodes[static_cast<std::size_t>(node_id)].feature = split.feature;
        tree_.nodes[static_cast<std::size_t>(node_id)].threshold = split.threshold;
        const int l = grow(std::move(left), depth + 1);
        const int r = grow(std::move(right), depth + 1);
        tree_.nodes[static_cast<std::size_t>(node_id)].left = l;
        tree_.nodes[static_cast<std::size_t>(node_id)].right = r;
        return node_id;
    }

    void make_leaf(int node_id, long c1, long total) {
        auto& node = tree_.nodes[static_cast<std::size_t>(node_id)];
        node.feature = -1;
        node.p1 = static_cast<double>(c1) / static_cast<double>(total);
        node.p0 = static_cast<double>(total - c1) / static_cast<double>(total);
    }

    // Ties are broken towards the lowest feature index, then the lowest
    // threshold: features are scanned in ascending order and thresholds in
    // ascending order, and only a strictly better impurity wins.
    SplitCandidate best_split(const std::vector<int>& sample) {
        std::vector<int> subset = sample_features();
        SplitCandidate best;
        std::vector<std::pair<double, int>> column(sample.size());
        for (int f : subset) {
            for (std::size_t i = 0; i < sample.size(); ++i) {
                const int idx = sample[i];
                column[i] = {x_(idx, f), labels_[static_cast<std::size_t>(idx)]};
            }
            std::sort(column.begin(), column.end());

            const long total = static_cast<long>(column.size());
            long total1 = 0;
            for (const auto& [v, lab] : column) total1 += lab;

            long left_n = 0, left1 = 0;
            for (long i = 0; i + 1 < total; ++i) {
                ++left_n;
                left1 += column[static_cast<std::size_t>(i)].second;
                if (column[static_cast<std::size_t>(i)].first ==
                    column[static_cast<std::size_t>(i + 1)].first) {
                    continue; // threshold must separate distinct values
                }
                const long right_n = total - left_n;
                if (left_n < cfg_.min_leaf || right_n < cfg_.min_leaf) continue;
                const double weighted =
                    (static_cast<double>(left_n) * gini(left1, left_n) +
                     static_cast<double>(right_n) * gini(total1 - left1, right_n)) /
                    static_cast<double>(total);
                if (!best.valid || weighted < best.weighted_impurity) {
                    const double a = column[static_cast<std::size_t>(i)].first;
                    const double b = column[static_cast<std::size_t>(i + 1)].first;
                    double mid = 0.5 * (a + b);
                    if (!(mid > a)) mid = b; // keep the partition rule x < mid exact
                    best.valid = true;
                    best.feature = f;
                    best.threshold = mid;
                    best.weighted_impurity = weighted;
                }
            }
        }
        return best;
    }

    std::vector<int> sample_features() {
        // partial Fisher-Yates over a persistent pool
        std::vector<int>& pool = feature_pool_;
        const int d = static_cast<int>(pool.size());
        std::vector<int> subset(static_cast<std::size_t>(k_features_));
        for (int i = 0; i < k_features_; ++i) {
            const int j = i + static_cast<int>(rng_.below(static_cast<std::uint64_t>(d - i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
            subset[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(i)];
        }
        std::sort(subset.begin(), subset.end());
        return subset;
    }

    const Eigen::MatrixXd& x_;
    const std::vector<int>& labels_;
    const ForestConfig& cfg_;
    Rng rng_;
    std::vector<int> feature_pool_;
    int k_features_ = 0;
    DecisionTree tree_;
};

double tree_predict(const DecisionTree& tree, const Eigen::Ref<const Eigen::VectorXd>& x) {
    int node = 0;
    while (!tree.nodes[static_cast<std::size_t>(node)].is_leaf()) {
        const auto& n = tree.nodes[static_cast<std::size_t>(node)];
        node = x[n.feature] < n.threshold ? n.left : n.right;
    }
    return tree.nodes[static_cast<std::size_t>(node)].p1;
}

} // namespace

RandomForestModel train_random_forest(const LabeledDataset& data, const ForestConfig& config,
                                      int threads) {
    const Eigen::Index n = data.rows();
    const Eigen::Index d = data.dims();
    if (n == 0 || d == 0) throw EmptyData("cannot train on an empty dataset");
    if (n < 2) throw EmptyData("need at least 2 rows, got " + std::to_string(n));
    if (static_cast<Eigen::Index>(data.labels.size()) != n) {
        throw LengthMismatch("labels/rows length mismatch");
    }
    bool has0 = false, has1 = false;
    for (int lab : data.labels) {
        if (lab == 0) has0 = true;
        else if (lab == 1) has1 = true;
        else throw DataError("labels must be 0 or 1");
    }
    if (!has0 || !has1) throw SingleClass("training data contains a single class");
    if (config.n_trees < 1 || config.max_depth < 1 || config.min_leaf < 1) {
        throw ConfigError("forest hyperparameters must be positive");
    }

    RandomForestModel model;
    model.config = config;
    model.n_features = static_cast<int>(d);
    model.feature_names = data.feature_names;

    Eigen::MatrixXd x = data.X;
    if (config.normalize) {
        Normalization norm;
        norm.mean = x.colwise().mean();
        Eigen::VectorXd var =
            (x.rowwise() - norm.mean.transpose()).array().square().colwise().mean();
        norm.std_dev = var.array().sqrt();
        for (Eigen::Index c = 0; c < d; ++c) {
            if (norm.std_dev[c] <= 0.0) norm.std_dev[c] = 1.0;
        }
        x = (x.rowwise() - norm.mean.transpose()).array().rowwise() /
            norm.std_dev.transpose().array();
        model.normalization = std::move(norm);
    }

    {
        std::vector<std::string> subjects = data.subject_ids;
        std::sort(subjects.begin(), subjects.end());
        subjects.erase(std::unique(subjects.begin(), subjects.end()), subjects.end());
        model.train_subjects = std::move(subjects);
    }

    // Canonical row order (lexicographic by features, then label) makes the
    // bootstrap independent of how the caller happened to order the rows.
    std::vector<int> canonical(static_cast<std::size_t>(n));
    std::iota(canonical.begin(), canonical.end(), 0);
    std::sort(canonical.begin(), canonical.end(), [&](int a, int b) {
        for (Eigen::Index c = 0; c < d; ++c) {
            if (x(a, c) != x(b, c)) return x(a, c) < x(b, c);
        }
        return data.labels[static_cast<std::size_t>(a)] < data.labels[static_cast<std::size_t>(b)];
    });

    model.trees.resize(static_cast<std::size_t>(config.n_trees));
    parallel_for(static_cast<std::size_t>(config.n_trees), threads, [&](std::size_t t) {
        Rng rng(Rng::stream(config.seed, t));
        std::vector<int> sample(static_cast<std::size_t>(n));
        for (auto& idx : sample) {
            idx = canonical[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n)))];
        }
        TreeBuilder builder(x, data.labels, config, rng);
        model.trees[t] = builder.build(std::move(sample));
    });
    return model;
}

double predict_proba(const RandomForestModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
    if (x.size() != model.n_features) {
        throw DimensionMismatch("expected " + std::to_string(model.n_features) +
                                " features, got " + std::to_string(x.size()));
    }
    double acc = 0.0;
    if (model.normalization) {
        const Eigen::VectorXd z =
            (x - model.normalization->mean).cwiseQuotient(model.normalization->std_dev);
        for (const auto& tree : model.trees) acc += tree_predict(tree, z);
    } else {
        for (const auto& tree : model.trees) acc += tree_predict(tree, x);
    }
    return acc / static_cast<double>(model.trees.size());
}

nlohmann::ordered_json RandomForestModel::to_json() const {
    nlohmann::ordered_json j;
    j["format_version"] = 1;
    j["kind"] = "random_forest";
    j["config"] = {{"n_trees", config.n_trees},
                   {"max_depth", config.max_depth},
                   {"min_leaf", config.min_leaf},
                   {"features_per_split", config.features_per_split},
                   {"seed", config.seed},
                   {"normalize", config.normalize}};
    j["n_features"] = n_features;
    j["feature_names"] = feature_names;
    j["train_subjects"] = train_subjects;
    if (normalization) {
        std::vector<double> mean(normalization->mean.begin(), normalization->mean.end());
        std::vector<double> std_dev(normalization->std_dev.begin(), normalization->std_dev.end());
        j["normalization"] = {{"mean", mean}, {"std", std_dev}};
    } else {
        j["normalization"] = nullptr;
    }
    auto trees_json = nlohmann::ordered_json::array();
    for (const auto& tree : trees) {
        auto nodes = nlohmann::ordered_json::array();
        for (const auto& n : tree.nodes) {
            nodes.push_back({n.feature, n.threshold, n.left, n.right, n.p0, n.p1});
        }
        trees_json.push_back(std::move(nodes));
    }
    j["trees"] = std::move(trees_json);
    return j;
}

RandomForestModel RandomForestModel::from_json(const nlohmann::json& j) {
    RandomForestModel model;
    try {
        if (j.at("format_version").get<int>() != 1 || j.at("kind") != "random_forest") {
            throw DataError("unsupported model format");
        }
        const auto& cfg = j.at("config");
        model.config.n_trees = cfg.at("n_trees").get<int>();
        model.config.max_depth = cfg.at("max_depth").get<int>();
        model.config.min_leaf = cfg.at("min_leaf").get<int>();
        model.config.features_per_split = cfg.at("features_per_split").get<int>();
        model.config.seed = cfg.at("seed").get<std::uint64_t>();
        model.config.normalize = cfg.at("normalize").get<bool>();
        model.n_features = j.at("n_features").get<int>();
        model.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        model.train_subjects = j.at("train_subjects").get<std::vector<std::string>>();
        if (!j.at("normalization").is_null()) {
            const auto mean = j["normalization"].at("mean").get<std::vector<double>>();
            const auto std_dev = j["normalization"].at("std").get<std::vector<double>>();
            Normalization norm;
            norm.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), static_cast<Eigen::Index>(mean.size()));
            norm.std_dev =
                Eigen::Map<const Eigen::VectorXd>(std_dev.data(), static_cast<Eigen::Index>(std_dev.size()));
            model.normalization = std::move(norm);
        }
        for (const auto& tree_json : j.at("trees")) {
            DecisionTree tree;
            for (const auto& n : tree_json) {
                TreeNode node;
                node.feature = n.at(0).get<int>();
                node.threshold = n.at(1).get<double>();
                node.left = n.at(2).get<int>();
                node.right = n.at(3).get<int>();
                node.p0 = n.at(4).get<double>();
                node.p1 = n.at(5).get<double>();
                if (node.is_leaf()) {
                    if (std::abs(node.p0 + node.p1 - 1.0) > 1e-9) {
                        throw DataError("leaf probabilities do not sum to 1");
                    }
                } else if (node.feature >= model.n_features) {
                    throw DataError("split references feature beyond n_features");
                }
                tree.nodes.push_back(node);
            }
            if (tree.nodes.empty()) throw DataError("empty tree in model");
            model.trees.push_back(std::move(tree));
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed model json: ") + e.what());
    }
    return model;
}

void RandomForestModel::save(const std::filesystem::path& path) const {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write model file: " + path.string());
    out << to_json().dump() << '\n';
}

RandomForestModel RandomForestModel::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ModelMissing("cannot open model file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed model json in " + path.string() + ": " + e.what());
    }
    return from_json(j);
}

} // namespace vg
