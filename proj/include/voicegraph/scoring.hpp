#pragma once

#include <optional>
#include <span>
#include <string>

#include "voicegraph/forest.hpp"

namespace vg {

// Blend of the maximum and mean of a patient's per-subsequence probabilities,
// weighted by the subsequence count n against the scaling factor c:
//   (p_max + p_mean * n/c) / (1 + n/c)
// A convex combination, so the result always lies in [p_mean, p_max].
struct PatientAggregate {
    std::string subject_id;
    long n = 0;
    double p_max = 0.0;
    double p_mean = 0.0;
    double c = 0.0;

    double value() const;
};

double aggregate_patient(std::span<const double> scores, double c);
PatientAggregate make_patient_aggregate(std::string subject_id, std::span<const double> scores,
                                        double c);

enum class FusionStrategy { average_merge, forest };

FusionStrategy fusion_strategy_from_string(const std::string& name);
std::string to_string(FusionStrategy strategy);

struct VoiceScores {
    double mfcc_p = 0.0;
    double egemaps_p = 0.0;
    double vg_p = 0.0;
};

struct FusionResult {
    double voice_avg = 0.0;
    double final_p = 0.0;
    int label = 0; // final_p >= 0.5 classifies positive
};

// average_merge: mean of the three voice probabilities, then mean with the
// text probability. forest: a trained 2-feature fusion model applied to
// (voice_avg, text_p).
FusionResult fuse_scores(const VoiceScores& voice, double text_p, FusionStrategy strategy,
                         const RandomForestModel* fusion_model = nullptr);

struct Metrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::optional<double> roc_auc; // absent when truth has a single class
    long tp = 0, fp = 0, tn = 0, fn = 0;
};

// Confusion metrics from hard labels plus rank-based ROC-AUC from scores
// (tied scores get their average rank).
Metrics evaluate(std::span<const int> predicted, std::span<const double> scores,
                 std::span<const int> truth);

} // namespace vg
