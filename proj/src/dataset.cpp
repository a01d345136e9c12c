#include "voicegraph/dataset.hpp"

#include <unordered_map>

#include "voicegraph/csv.hpp"
#include "voicegraph/errors.hpp"

namespace vg {

void write_feature_csv(const std::filesystem::path& path, const FeatureTable& table) {
    std::vector<std::string> header;
    header.reserve(table.feature_names.size() + 1);
    header.push_back("clip_id");
    header.insert(header.end(), table.feature_names.begin(), table.feature_names.end());

    std::vector<std::vector<std::string>> rows;
    rows.reserve(table.clip_ids.size());
    for (Eigen::Index r = 0; r < table.rows(); ++r) {
        std::vector<std::string> row;
        row.reserve(header.size());
        row.push_back(table.clip_ids[static_cast<std::size_t>(r)]);
        for (Eigen::Index c = 0; c < table.values.cols(); ++c) {
            row.push_back(csv::format_value(table.values(r, c)));
        }
        rows.push_back(std::move(row));
    }
    csv::write(path, header, rows);
}

FeatureTable read_feature_csv(const std::filesystem::path& path) {
    const csv::Table raw = csv::read(path, ',');
    if (raw.header.empty() || raw.header[0] != "clip_id") {
        throw DataError("feature csv must start with a clip_id column: " + path.string());
    }
    FeatureTable table;
    table.feature_names.assign(raw.header.begin() + 1, raw.header.end());
    const auto d = static_cast<Eigen::Index>(table.feature_names.size());
    table.values.resize(static_cast<Eigen::Index>(raw.rows.size()), d);
    for (std::size_t r = 0; r < raw.rows.size(); ++r) {
        table.clip_ids.push_back(raw.rows[r][0]);
        for (Eigen::Index c = 0; c < d; ++c) {
            table.values(static_cast<Eigen::Index>(r), c) =
                csv::parse_number(raw.rows[r][static_cast<std::size_t>(c) + 1],
                                  path.string() + " row " + std::to_string(r + 2));
        }
    }
    return table;
}

std::map<std::string, std::vector<double>> read_text_scores_csv(const std::filesystem::path& path) {
    const csv::Table raw = csv::read_auto(path);
    if (raw.header.size() != 3) {
        throw WrongColumnCount("text scores csv needs subject_id,subseq_id,probability: " +
                               path.string());
    }
    std::map<std::string, std::vector<double>> out;
    for (std::size_t r = 0; r < raw.rows.size(); ++r) {
        const double p = csv::parse_number(raw.rows[r][2],
                                           path.string() + " row " + std::to_string(r + 2));
        if (p < 0.0 || p > 1.0) {
            throw DataError("text probability out of [0,1] in " + path.string());
        }
        out[raw.rows[r][0]].push_back(p);
    }
    return out;
}

LabeledDataset build_dataset(const FeatureTable& features, const Manifest& manifest,
                             const std::string& split) {
    std::unordered_map<std::string, std::pair<int, std::string>> labels_by_clip;
    for (const auto& subject : manifest.subjects) {
        if (subject.split != split) continue;
        if (!subject.label) {
            throw DataError("subject '" + subject.subject_id + "' in split '" + split +
                            "' has no label");
        }
        for (const auto& clip : subject.clips) {
            labels_by_clip[clip_id_of(clip)] = {*subject.label, subject.subject_id};
        }
    }

    std::vector<Eigen::Index> selected;
    for (Eigen::Index r = 0; r < features.rows(); ++r) {
        if (labels_by_clip.count(features.clip_ids[static_cast<std::size_t>(r)])) {
            selected.push_back(r);
        }
    }

    LabeledDataset data;
    data.split = split;
    data.feature_names = features.feature_names;
    data.X.resize(static_cast<Eigen::Index>(selected.size()), features.values.cols());
    for (std::size_t i = 0; i < selected.size(); ++i) {
        const auto r = selected[i];
        data.X.row(static_cast<Eigen::Index>(i)) = features.values.row(r);
        const auto& [label, subject] = labels_by_clip[features.clip_ids[static_cast<std::size_t>(r)]];
        data.labels.push_back(label);
        data.subject_ids.push_back(subject);
    }
    return data;
}

} // namespace vg
