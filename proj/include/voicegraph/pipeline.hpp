#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "voicegraph/forest.hpp"
#include "voicegraph/manifest.hpp"
#include "voicegraph/scoring.hpp"
#include "voicegraph/visibility.hpp"

namespace vg {

// The three voice feature families of the batch pipeline.
inline constexpr std::array<const char*, 3> kFamilies = {"vg", "mfcc", "egemaps"};

// Every tunable of the pipeline. CLI flags mirror these fields; environment
// variables are deliberately not consulted.
struct RunConfig {
    // envelope / peaks / visibility graph
    double window_ms = 20.0;
    double min_distance_ms = 10.0;
    double min_prominence = 0.01;
    bool vg_on_raw = false;

    // spectral features
    double frame_ms = 25.0;
    double hop_ms = 10.0;
    int fft_size = 0; // 0 = next power of two >= frame length
    int n_mels = 26;
    int n_mfcc = 13;
    double f_min = 0.0;
    double f_max = 0.0; // 0 = Nyquist

    // learning and fusion
    ForestConfig forest;
    bool normalize = false;
    double c = 2.0;
    FusionStrategy fusion = FusionStrategy::average_merge;

    // run control
    std::uint64_t seed = 0;
    int threads = 1;

    void validate() const; // throws ConfigError
    VgOptions vg_options() const;
};

struct ExtractSummary {
    std::map<std::string, long> rows_per_family;
    long clip_errors = 0;
};

// Writes <out>/vg.csv, <out>/mfcc.csv, <out>/egemaps.csv plus an errors.csv
// sidecar. Per-clip failures are recorded and skipped; the run continues.
ExtractSummary cmd_extract(const Manifest& manifest, const RunConfig& config,
                           const std::filesystem::path& out_dir);

struct TrainSummary {
    std::vector<std::string> trained_families;
    std::vector<std::string> skipped_families; // with reasons, "family: why"
    std::map<std::string, Metrics> val_metrics; // per family, subject level
    bool fusion_trained = false;
};

// Trains one forest per family on the train split, reports validation
// metrics, and optionally trains the 2-feature fusion forest on the val
// split. Families without usable data are skipped with a warning.
TrainSummary cmd_train(const Manifest& manifest, const std::filesystem::path& features_dir,
                       const RunConfig& config, const std::filesystem::path& models_dir);

struct PredictSummary {
    long subjects_scored = 0;
    std::optional<Metrics> fused_metrics;
    std::map<std::string, Metrics> family_metrics;
};

// Scores the test split: per-clip probabilities -> per-family patient
// aggregation -> voice average -> fusion with the ingested text score.
// Writes report.csv (with a metrics block when labels are present) and
// family_scores.csv.
PredictSummary cmd_predict(const Manifest& manifest, const std::filesystem::path& features_dir,
                           const std::filesystem::path& models_dir, const RunConfig& config,
                           const std::filesystem::path& out_dir);

// Visibility graph JSON + one-row feature CSV for a single WAV.
void cmd_graph_export(const std::filesystem::path& wav_path, const RunConfig& config,
                      const std::filesystem::path& json_out,
                      const std::filesystem::path& features_csv_out);

// Re-evaluates a prediction report against manifest labels.
Metrics cmd_report(const std::filesystem::path& predictions_csv, const Manifest& manifest);

// Post-run audit: re-reads written artifacts and verifies that no subject
// crossed splits (training provenance subset of train, report subjects subset
// of test, empty intersection).
void audit_no_leakage(const Manifest& manifest, const std::filesystem::path& models_dir,
                      const std::filesystem::path& report_csv);

} // namespace vg
