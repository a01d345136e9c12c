#include "voicegraph/manifest.hpp"

#include <fstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "voicegraph/errors.hpp"

namespace vg {

std::string clip_id_of(const std::filesystem::path& wav_path) {
    return wav_path.stem().string();
}

namespace {

std::filesystem::path resolve(const std::filesystem::path& root, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : root / path;
}

void require_exists(const std::filesystem::path& p, const std::string& subject) {
    if (!std::filesystem::exists(p)) {
        throw ManifestInvalid("file referenced by subject '" + subject + "' missing: " + p.string());
    }
}

} // namespace

Manifest Manifest::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ManifestInvalid("cannot open manifest: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ManifestInvalid("manifest is not valid json: " + std::string(e.what()));
    }

    Manifest m;
    m.root = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    std::unordered_set<std::string> subject_ids;
    std::unordered_set<std::string> clip_ids;
    try {
        for (const auto& sj : j.at("subjects")) {
            SubjectEntry s;
            s.subject_id = sj.at("subject_id").get<std::string>();
            if (!subject_ids.insert(s.subject_id).second) {
                throw ManifestInvalid("duplicate subject id '" + s.subject_id + "'");
            }
            s.split = sj.at("split").get<std::string>();
            if (s.split != "train" && s.split != "val" && s.split != "test") {
                throw ManifestInvalid("subject '" + s.subject_id + "' has invalid split '" +
                                      s.split + "'");
            }
            if (sj.contains("label") && !sj["label"].is_null()) {
                const int label = sj["label"].get<int>();
                if (label != 0 && label != 1) {
                    throw ManifestInvalid("subject '" + s.subject_id + "' label must be 0 or 1");
                }
                s.label = label;
            }
            for (const auto& clip : sj.at("clips")) {
                auto p = resolve(m.root, clip.get<std::string>());
                require_exists(p, s.subject_id);
                if (!clip_ids.insert(clip_id_of(p)).second) {
                    throw ManifestInvalid("duplicate clip id (wav stem) '" + clip_id_of(p) + "'");
                }
                s.clips.push_back(std::move(p));
            }
            if (sj.contains("egemaps_csv") && !sj["egemaps_csv"].is_null()) {
                auto p = resolve(m.root, sj["egemaps_csv"].get<std::string>());
                require_exists(p, s.subject_id);
                s.egemaps_csv = std::move(p);
            }
            if (sj.contains("text_scores_csv") && !sj["text_scores_csv"].is_null()) {
                auto p = resolve(m.root, sj["text_scores_csv"].get<std::string>());
                require_exists(p, s.subject_id);
                s.text_scores_csv = std::move(p);
            }
            m.subjects.push_back(std::move(s));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ManifestInvalid("manifest structure error: " + std::string(e.what()));
    }
    if (m.subjects.empty()) throw ManifestInvalid("manifest lists no subjects");
    return m;
}

const SubjectEntry* Manifest::find(const std::string& subject_id) const {
    for (const auto& s : subjects) {
        if (s.subject_id == subject_id) return &s;
    }
    return nullptr;
}

std::vector<const SubjectEntry*> Manifest::in_split(const std::string& split) const {
    std::vector<const SubjectEntry*> out;
    for (const auto& s : subjects) {
        if (s.split == split) out.push_back(&s);
    }
    return out;
}

} // namespace vg
