#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace vg {

struct SubjectEntry {
    std::string subject_id;
    std::optional<int> label; // 0/1; may be absent for predict-only manifests
    std::string split;        // train | val | test
    std::vector<std::filesystem::path> clips; // absolute after load
    std::optional<std::filesystem::path> egemaps_csv;
    std::optional<std::filesystem::path> text_scores_csv;
};

// Dataset description: subjects with WAV clips and optional per-subject
// side files. Relative paths resolve against the manifest's directory.
struct Manifest {
    std::filesystem::path root;
    std::vector<SubjectEntry> subjects;

    static Manifest load(const std::filesystem::path& path);

    const SubjectEntry* find(const std::string& subject_id) const;
    std::vector<const SubjectEntry*> in_split(const std::string& split) const;
};

// Clip ids are WAV file stems; the manifest loader enforces their uniqueness.
std::string clip_id_of(const std::filesystem::path& wav_path);

} // namespace vg
