#include "voicegraph/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "voicegraph/errors.hpp"

namespace vg {

double PatientAggregate::value() const {
    const double ratio = static_cast<double>(n) / c;
    return (p_max + p_mean * ratio) / (1.0 + ratio);
}

PatientAggregate make_patient_aggregate(std::string subject_id, std::span<const double> scores,
                                        double c) {
    if (!(c > 0.0)) throw BadC("scaling factor c must be positive, got " + std::to_string(c));
    if (scores.empty()) throw EmptyScores("no scores to aggregate for " + subject_id);
    PatientAggregate agg;
    agg.subject_id = std::move(subject_id);
    agg.c = c;
    agg.n = static_cast<long>(scores.size());
    for (double s : scores) {
        if (!(s >= 0.0 && s <= 1.0)) {
            throw DataError("probability out of [0,1]: " + std::to_string(s));
        }
    }
    // Summing in sorted order makes the aggregate exactly permutation
    // invariant, not just up to rounding.
    std::vector<double> sorted(scores.begin(), scores.end());
    std::sort(sorted.begin(), sorted.end());
    double sum = 0.0;
    for (double s : sorted) sum += s;
    agg.p_max = sorted.back();
    agg.p_mean = sum / static_cast<double>(agg.n);
    return agg;
}

double aggregate_patient(std::span<const double> scores, double c) {
    return make_patient_aggregate("", scores, c).value();
}

FusionStrategy fusion_strategy_from_string(const std::string& name) {
    if (name == "average_merge") return FusionStrategy::average_merge;
    if (name == "forest") return FusionStrategy::forest;
    throw ConfigError("unknown fusion strategy '" + name + "'");
}

std::string to_string(FusionStrategy strategy) {
    return strategy == FusionStrategy::average_merge ? "average_merge" : "forest";
}

FusionResult fuse_scores(const VoiceScores& voice, double text_p, FusionStrategy strategy,
                         const RandomForestModel* fusion_model) {
    const double inputs[4] = {voice.mfcc_p, voice.egemaps_p, voice.vg_p, text_p};
    for (double v : inputs) {
        if (!std::isfinite(v)) throw MissingScore("a fusion input is missing or non-finite");
        if (v < 0.0 || v > 1.0) throw DataError("fusion input out of [0,1]: " + std::to_string(v));
    }
    FusionResult out;
    out.voice_avg = (voice.mfcc_p + voice.egemaps_p + voice.vg_p) / 3.0;
    if (strategy == FusionStrategy::average_merge) {
        out.final_p = 0.5 * (out.voice_avg + text_p);
    } else {
        if (fusion_model == nullptr) {
            throw UntrainedFusion("forest fusion requested but no fusion model is available");
        }
        Eigen::Vector2d x(out.voice_avg, text_p);
        out.final_p = predict_proba(*fusion_model, x);
    }
    out.label = out.final_p >= 0.5 ? 1 : 0;
    return out;
}

Metrics evaluate(std::span<const int> predicted, std::span<const double> scores,
                 std::span<const int> truth) {
    if (predicted.size() != truth.size() || scores.size() != truth.size()) {
        throw LengthMismatch("predictions, scores and truth must have equal length");
    }
    if (truth.empty()) throw LengthMismatch("cannot evaluate empty prediction set");

    Metrics m;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool pos = truth[i] == 1;
        const bool hat = predicted[i] == 1;
        if (pos && hat) ++m.tp;
        else if (!pos && hat) ++m.fp;
        else if (pos && !hat) ++m.fn;
        else ++m.tn;
    }
    const double n = static_cast<double>(truth.size());
    m.accuracy = static_cast<double>(m.tp + m.tn) / n;
    m.precision = (m.tp + m.fp) > 0 ? static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp) : 0.0;
    m.recall = (m.tp + m.fn) > 0 ? static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn) : 0.0;
    m.f1 = (m.precision + m.recall) > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;

    const long n_pos = m.tp + m.fn;
    const long n_neg = m.fp + m.tn;
    if (n_pos > 0 && n_neg > 0) {
        // Mann-Whitney formulation with average ranks over tied scores;
        // identical to the trapezoidal ROC area with tie grouping.
        std::vector<std::size_t> order(truth.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&scores](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
        double positive_rank_sum = 0.0;
        std::size_t i = 0;
        while (i < order.size()) {
            std::size_t j = i;
            while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
            const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
            for (std::size_t k = i; k <= j; ++k) {
                if (truth[order[k]] == 1) positive_rank_sum += avg_rank;
            }
            i = j + 1;
        }
        m.roc_auc = (positive_rank_sum - static_cast<double>(n_pos) * (n_pos + 1) / 2.0) /
                    (static_cast<double>(n_pos) * static_cast<double>(n_neg));
    }
    return m;
}

} // namespace vg
