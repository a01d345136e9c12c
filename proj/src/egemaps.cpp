#include "voicegraph/egemaps.hpp"

#include <unordered_set>

#include "voicegraph/csv.hpp"
#include "voicegraph/errors.hpp"

namespace vg {

std::optional<Eigen::Index> EgemapsTable::row_of(const std::string& clip_id) const {
    for (std::size_t i = 0; i < clip_ids.size(); ++i) {
        if (clip_ids[i] == clip_id) return static_cast<Eigen::Index>(i);
    }
    return std::nullopt;
}

EgemapsTable ingest_egemaps_csv(const std::filesystem::path& path) {
    const csv::Table table = csv::read_auto(path);
    if (table.header.size() != kEgemapsDim + 1) {
        throw WrongColumnCount("expected 1 id column + " + std::to_string(kEgemapsDim) +
                               " feature columns, got " + std::to_string(table.header.size()) +
                               " in " + path.string());
    }

    EgemapsTable out;
    out.feature_names.assign(table.header.begin() + 1, table.header.end());
    out.values.resize(static_cast<Eigen::Index>(table.rows.size()), kEgemapsDim);
    std::unordered_set<std::string> seen;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (!seen.insert(row[0]).second) {
            throw DuplicateId("duplicate clip id '" + row[0] + "' in " + path.string());
        }
        out.clip_ids.push_back(row[0]);
        for (int c = 0; c < kEgemapsDim; ++c) {
            out.values(static_cast<Eigen::Index>(r), c) = csv::parse_number(
                row[static_cast<std::size_t>(c) + 1], path.string() + " row " + std::to_string(r + 2));
        }
    }
    return out;
}

} // namespace vg
