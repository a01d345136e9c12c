#include "voicegraph/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "voicegraph/rng.hpp"

#include "voicegraph/csv.hpp"
#include "voicegraph/dataset.hpp"
#include "voicegraph/egemaps.hpp"
#include "voicegraph/errors.hpp"
#include "voicegraph/graph_metrics.hpp"
#include "voicegraph/spectral.hpp"
#include "voicegraph/util.hpp"

namespace vg {

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

int next_power_of_two(int v) {
    int p = 1;
    while (p < v) p *= 2;
    return p;
}

std::string metric_cell(const std::optional<double>& v) {
    return v ? csv::format_value(*v) : std::string();
}

// Error messages land in a CSV cell; keep them delimiter-free.
std::string csv_safe(std::string text) {
    for (char& ch : text) {
        if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
    }
    return text;
}

} // namespace

void RunConfig::validate() const {
    if (!(window_ms > 0.0)) throw ConfigError("window_ms must be positive");
    if (min_distance_ms < 0.0) throw ConfigError("min_distance_ms must be >= 0");
    if (min_prominence < 0.0) throw ConfigError("min_prominence must be >= 0");
    if (!(hop_ms > 0.0) || frame_ms < hop_ms) throw ConfigError("need frame_ms >= hop_ms > 0");
    if (fft_size != 0 && !is_power_of_two(fft_size)) {
        throw BadFftSize("fft_size must be 0 (auto) or a power of two");
    }
    if (n_mels < 1) throw ConfigError("n_mels must be >= 1");
    if (n_mfcc < 1 || n_mfcc > n_mels) throw ConfigError("n_mfcc must be in [1, n_mels]");
    if (f_min < 0.0 || f_max < 0.0) throw ConfigError("f_min/f_max must be >= 0");
    if (!(c > 0.0)) throw BadC("scaling factor c must be positive");
    if (forest.n_trees < 1 || forest.max_depth < 1 || forest.min_leaf < 1) {
        throw ConfigError("forest hyperparameters must be positive");
    }
    if (forest.features_per_split < 0) throw ConfigError("features_per_split must be >= 0");
    if (threads < 1) throw ConfigError("threads must be >= 1");
}

VgOptions RunConfig::vg_options() const {
    VgOptions opt;
    opt.window_ms = window_ms;
    opt.min_distance_ms = min_distance_ms;
    opt.min_prominence = min_prominence;
    opt.on_raw_samples = vg_on_raw;
    return opt;
}

namespace {

constexpr std::array<const char*, 9> kVgHeader = {
    "clip_id",  "avg_degree", "avg_clustering", "density",          "transitivity",
    "diameter", "local_eff",  "global_eff",     "avg_shortest_path"};

// Low-level spectral vector of one clip: pooled MFCC plus pooled log-mel.
// Dimensionality is rate-independent, so mixed-rate corpora stay compatible.
ClipFeatureVector low_level_vector(const AudioClip& clip, const RunConfig& cfg) {
    const auto frame_len =
        static_cast<int>(std::llround(cfg.frame_ms * clip.sample_rate / 1000.0));
    const int fft = cfg.fft_size > 0 ? cfg.fft_size : next_power_of_two(frame_len);
    const SpectrogramMatrix spec = spectrogram(clip, fft, cfg.frame_ms, cfg.hop_ms);
    const double f_max = cfg.f_max > 0.0 ? cfg.f_max : spec.nyquist_hz();
    const Eigen::MatrixXd mel = mel_spectrogram(spec, cfg.n_mels, cfg.f_min, f_max);
    const MfccMatrix coeffs = mfcc(mel, cfg.n_mfcc);

    const ClipFeatureVector mfcc_pooled = pool_clip(coeffs.values, "mfcc", "mfcc");
    const Eigen::MatrixXd log_mel = mel.cwiseMax(kLogFloor).array().log().matrix();
    const ClipFeatureVector mel_pooled = pool_clip(log_mel, "mel", "mel");

    ClipFeatureVector out;
    out.provenance = "mfcc";
    out.names = mfcc_pooled.names;
    out.names.insert(out.names.end(), mel_pooled.names.begin(), mel_pooled.names.end());
    out.values.resize(mfcc_pooled.values.size() + mel_pooled.values.size());
    out.values << mfcc_pooled.values, mel_pooled.values;
    return out;
}

struct ClipJob {
    const SubjectEntry* subject = nullptr;
    std::filesystem::path wav;
    std::string clip_id;
};

struct ClipOutcome {
    std::optional<Eigen::Matrix<double, 8, 1>> vg_row;
    std::optional<ClipFeatureVector> low_level;
    std::vector<std::pair<std::string, std::string>> errors; // (family, message)
};

} // namespace

ExtractSummary cmd_extract(const Manifest& manifest, const RunConfig& config,
                           const std::filesystem::path& out_dir) {
    config.validate();
    std::filesystem::create_directories(out_dir);

    std::vector<ClipJob> jobs;
    for (const auto& subject : manifest.subjects) {
        for (const auto& clip : subject.clips) {
            jobs.push_back({&subject, clip, clip_id_of(clip)});
        }
    }

    std::vector<ClipOutcome> outcomes(jobs.size());
    parallel_for(jobs.size(), config.threads, [&](std::size_t i) {
        const ClipJob& job = jobs[i];
        ClipOutcome& res = outcomes[i];
        AudioClip clip;
        try {
            clip = load_wav(job.wav);
        } catch (const Error& e) {
            res.errors.emplace_back("vg", e.what());
            res.errors.emplace_back("mfcc", e.what());
            return;
        }
        try {
            const VisibilityGraph g = vg_from_audio(clip, config.vg_options());
            res.vg_row = extract_graph_features(g).as_vector();
        } catch (const Error& e) {
            res.errors.emplace_back("vg", e.what());
        }
        try {
            res.low_level = low_level_vector(clip, config);
        } catch (const Error& e) {
            res.errors.emplace_back("mfcc", e.what());
        }
    });

    // Assemble family tables in manifest order.
    FeatureTable vg_table;
    vg_table.feature_names.assign(kVgHeader.begin() + 1, kVgHeader.end());
    FeatureTable low_table;
    std::vector<std::vector<std::string>> error_rows;

    std::vector<Eigen::VectorXd> low_rows;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& res = outcomes[i];
        if (res.vg_row) {
            vg_table.clip_ids.push_back(jobs[i].clip_id);
            vg_table.values.conservativeResize(
                static_cast<Eigen::Index>(vg_table.clip_ids.size()), 8);
            vg_table.values.row(static_cast<Eigen::Index>(vg_table.clip_ids.size()) - 1) =
                res.vg_row->transpose();
        }
        if (res.low_level) {
            if (low_table.feature_names.empty()) {
                low_table.feature_names = res.low_level->names;
            }
            low_table.clip_ids.push_back(jobs[i].clip_id);
            low_rows.push_back(res.low_level->values);
        }
        for (const auto& [family, message] : res.errors) {
            error_rows.push_back({jobs[i].clip_id, family, csv_safe(message)});
        }
    }
    if (!low_rows.empty()) {
        low_table.values.resize(static_cast<Eigen::Index>(low_rows.size()),
                                low_rows.front().size());
        for (std::size_t r = 0; r < low_rows.size(); ++r) {
            low_table.values.row(static_cast<Eigen::Index>(r)) = low_rows[r].transpose();
        }
    }

    // eGeMAPS family: ingest per-subject side files.
    FeatureTable ege_table;
    for (const auto& subject : manifest.subjects) {
        if (!subject.egemaps_csv) continue;
        EgemapsTable ingested;
        try {
            ingested = ingest_egemaps_csv(*subject.egemaps_csv);
        } catch (const Error& e) {
            for (const auto& clip : subject.clips) {
                error_rows.push_back({clip_id_of(clip), "egemaps", csv_safe(e.what())});
            }
            continue;
        }
        if (ege_table.feature_names.empty()) {
            ege_table.feature_names = ingested.feature_names;
        } else if (ege_table.feature_names != ingested.feature_names) {
            throw FamilyMismatch("egemaps feature names differ between subjects (" +
                                 subject.egemaps_csv->string() + ")");
        }
        for (const auto& clip : subject.clips) {
            const std::string cid = clip_id_of(clip);
            const auto row = ingested.row_of(cid);
            if (!row) {
                error_rows.push_back({cid, "egemaps", "no egemaps row for clip"});
                continue;
            }
            ege_table.clip_ids.push_back(cid);
            ege_table.values.conservativeResize(
                static_cast<Eigen::Index>(ege_table.clip_ids.size()), kEgemapsDim);
            ege_table.values.row(static_cast<Eigen::Index>(ege_table.clip_ids.size()) - 1) =
                ingested.values.row(*row);
        }
    }

    write_feature_csv(out_dir / "vg.csv", vg_table);
    write_feature_csv(out_dir / "mfcc.csv", low_table);
    if (!ege_table.clip_ids.empty()) write_feature_csv(out_dir / "egemaps.csv", ege_table);
    csv::write(out_dir / "errors.csv", {"clip_id", "family", "error"}, error_rows);

    ExtractSummary summary;
    summary.rows_per_family["vg"] = static_cast<long>(vg_table.clip_ids.size());
    summary.rows_per_family["mfcc"] = static_cast<long>(low_table.clip_ids.size());
    summary.rows_per_family["egemaps"] = static_cast<long>(ege_table.clip_ids.size());
    summary.clip_errors = static_cast<long>(error_rows.size());
    return summary;
}

namespace {

// Per-subject aggregated score for one family: the max/mean blend of the
// clip probabilities.
std::optional<PatientAggregate> family_subject_score(
    const RandomForestModel& model, const FeatureTable& features, const SubjectEntry& subject,
    double c) {
    std::unordered_map<std::string, Eigen::Index> row_of;
    for (Eigen::Index r = 0; r < features.rows(); ++r) {
        row_of.emplace(features.clip_ids[static_cast<std::size_t>(r)], r);
    }
    std::vector<double> scores;
    for (const auto& clip : subject.clips) {
        const auto it = row_of.find(clip_id_of(clip));
        if (it == row_of.end()) continue;
        scores.push_back(predict_proba(model, features.values.row(it->second).transpose()));
    }
    if (scores.empty()) return std::nullopt;
    return make_patient_aggregate(subject.subject_id, scores, c);
}

std::optional<Metrics> subject_level_metrics(
    const std::vector<const SubjectEntry*>& subjects,
    const std::map<std::string, double>& score_by_subject) {
    std::vector<int> predicted, truth;
    std::vector<double> scores;
    for (const SubjectEntry* s : subjects) {
        const auto it = score_by_subject.find(s->subject_id);
        if (it == score_by_subject.end() || !s->label) continue;
        predicted.push_back(it->second >= 0.5 ? 1 : 0);
        scores.push_back(it->second);
        truth.push_back(*s->label);
    }
    if (truth.empty()) return std::nullopt;
    return evaluate(predicted, scores, truth);
}

} // namespace

TrainSummary cmd_train(const Manifest& manifest, const std::filesystem::path& features_dir,
                       const RunConfig& config, const std::filesystem::path& models_dir) {
    config.validate();
    std::filesystem::create_directories(models_dir);
    TrainSummary summary;

    const auto val_subjects = manifest.in_split("val");
    std::vector<std::vector<std::string>> report_rows;
    std::map<std::string, std::map<std::string, double>> val_scores_by_family;

    for (std::size_t fi = 0; fi < kFamilies.size(); ++fi) {
        const std::string family = kFamilies[fi];
        const auto csv_path = features_dir / (family + ".csv");
        if (!std::filesystem::exists(csv_path)) {
            summary.skipped_families.push_back(family + ": no feature csv");
            std::cerr << "[train] skipping family '" << family << "': no " << csv_path.string()
                      << "\n";
            continue;
        }
        const FeatureTable features = read_feature_csv(csv_path);
        const LabeledDataset train_data = build_dataset(features, manifest, "train");
        ForestConfig forest_cfg = config.forest;
        forest_cfg.seed = Rng::stream(config.seed, fi);
        forest_cfg.normalize = config.normalize;

        RandomForestModel model;
        try {
            model = train_random_forest(train_data, forest_cfg, config.threads);
        } catch (const Error& e) {
            summary.skipped_families.push_back(family + ": " + e.what());
            std::cerr << "[train] skipping family '" << family << "': " << e.what() << "\n";
            continue;
        }
        model.save(models_dir / (family + ".json"));
        summary.trained_families.push_back(family);

        // Subject-level validation metrics via patient aggregation.
        std::map<std::string, double> val_scores;
        for (const SubjectEntry* subject : val_subjects) {
            const auto agg = family_subject_score(model, features, *subject, config.c);
            if (agg) val_scores[subject->subject_id] = agg->value();
        }
        val_scores_by_family[family] = val_scores;
        const auto metrics = subject_level_metrics(val_subjects, val_scores);
        std::vector<std::string> row{family, std::to_string(train_data.rows()),
                                     std::to_string(val_scores.size())};
        if (metrics) {
            summary.val_metrics[family] = *metrics;
            row.push_back(csv::format_value(metrics->accuracy));
            row.push_back(csv::format_value(metrics->precision));
            row.push_back(csv::format_value(metrics->recall));
            row.push_back(csv::format_value(metrics->f1));
            row.push_back(metric_cell(metrics->roc_auc));
        } else {
            row.insert(row.end(), 5, std::string());
        }
        report_rows.push_back(std::move(row));
    }
    if (summary.trained_families.empty()) {
        throw DataError("no feature family could be trained");
    }

    // Optional fusion forest over (voice_avg, text_p), trained on val.
    if (config.fusion == FusionStrategy::forest) {
        std::vector<Eigen::Vector2d> rows;
        std::vector<int> labels;
        std::vector<std::string> row_subjects;
        for (const SubjectEntry* subject : val_subjects) {
            if (!subject->label || !subject->text_scores_csv) continue;
            double voice_sum = 0.0;
            int voice_n = 0;
            for (const auto& [family, scores] : val_scores_by_family) {
                const auto it = scores.find(subject->subject_id);
                if (it != scores.end()) {
                    voice_sum += it->second;
                    ++voice_n;
                }
            }
            if (voice_n == 0) continue;
            const auto text = read_text_scores_csv(*subject->text_scores_csv);
            const auto it = text.find(subject->subject_id);
            if (it == text.end() || it->second.empty()) continue;
            const double text_p = make_patient_aggregate(subject->subject_id, it->second, config.c).value();
            rows.emplace_back(voice_sum / voice_n, text_p);
            labels.push_back(*subject->label);
            row_subjects.push_back(subject->subject_id);
        }
        LabeledDataset fusion_data;
        fusion_data.split = "val";
        fusion_data.feature_names = {"voice_avg", "text_p"};
        fusion_data.X.resize(static_cast<Eigen::Index>(rows.size()), 2);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            fusion_data.X.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
        }
        fusion_data.labels = labels;
        fusion_data.subject_ids = row_subjects;
        try {
            ForestConfig fusion_cfg = config.forest;
            fusion_cfg.seed = Rng::stream(config.seed, 1000);
            fusion_cfg.normalize = false;
            RandomForestModel fusion_model =
                train_random_forest(fusion_data, fusion_cfg, config.threads);
            fusion_model.save(models_dir / "fusion.json");
            summary.fusion_trained = true;
        } catch (const Error& e) {
            std::cerr << "[train] fusion forest not trained: " << e.what() << "\n";
        }
    }

    csv::write(models_dir / "train_report.csv",
               {"family", "n_train_clips", "n_val_subjects", "accuracy", "precision", "recall",
                "f1", "roc_auc"},
               report_rows,
               {"config,c=" + csv::format_value(config.c) + ",fusion=" + to_string(config.fusion) +
                ",seed=" + std::to_string(config.seed) +
                ",normalize=" + (config.normalize ? std::string("1") : std::string("0"))});

    audit_no_leakage(manifest, models_dir, {});
    return summary;
}

PredictSummary cmd_predict(const Manifest& manifest, const std::filesystem::path& features_dir,
                           const std::filesystem::path& models_dir, const RunConfig& config,
                           const std::filesystem::path& out_dir) {
    config.validate();
    std::filesystem::create_directories(out_dir);

    std::map<std::string, RandomForestModel> models;
    std::map<std::string, FeatureTable> features;
    for (const auto family : kFamilies) {
        const auto model_path = models_dir / (std::string(family) + ".json");
        const auto csv_path = features_dir / (std::string(family) + ".csv");
        if (!std::filesystem::exists(model_path) || !std::filesystem::exists(csv_path)) continue;
        RandomForestModel model = RandomForestModel::load(model_path);
        FeatureTable table = read_feature_csv(csv_path);
        if (model.feature_names != table.feature_names) {
            throw FamilyMismatch("model for family '" + std::string(family) +
                                 "' was trained on different feature names");
        }
        models.emplace(family, std::move(model));
        features.emplace(family, std::move(table));
    }
    if (models.empty()) {
        throw ModelMissing("no usable (model, features) pair under " + models_dir.string() +
                           " and " + features_dir.string());
    }
    std::optional<RandomForestModel> fusion_model;
    if (config.fusion == FusionStrategy::forest) {
        const auto fusion_path = models_dir / "fusion.json";
        if (std::filesystem::exists(fusion_path)) {
            fusion_model = RandomForestModel::load(fusion_path);
        } else {
            throw UntrainedFusion("forest fusion requested but " + fusion_path.string() +
                                  " does not exist");
        }
    }

    const auto test_subjects = manifest.in_split("test");
    std::vector<std::vector<std::string>> report_rows;
    std::vector<std::vector<std::string>> family_rows;
    std::map<std::string, double> final_by_subject;
    std::map<std::string, std::map<std::string, double>> family_by_subject;

    PredictSummary summary;
    for (const SubjectEntry* subject : test_subjects) {
        double voice_sum = 0.0;
        int voice_n = 0;
        for (const auto family : kFamilies) {
            const auto mit = models.find(family);
            if (mit == models.end()) continue;
            const auto agg =
                family_subject_score(mit->second, features.at(family), *subject, config.c);
            if (!agg) continue;
            family_rows.push_back({subject->subject_id, family, std::to_string(agg->n),
                                   csv::format_value(agg->p_max), csv::format_value(agg->p_mean),
                                   csv::format_value(agg->c), csv::format_value(agg->value())});
            family_by_subject[subject->subject_id][family] = agg->value();
            voice_sum += agg->value();
            ++voice_n;
        }
        if (voice_n == 0) {
            std::cerr << "[predict] no voice features for subject '" << subject->subject_id
                      << "', skipped\n";
            continue;
        }
        const double voice_avg = voice_sum / voice_n;

        std::optional<double> text_p;
        if (subject->text_scores_csv) {
            const auto text = read_text_scores_csv(*subject->text_scores_csv);
            const auto it = text.find(subject->subject_id);
            if (it != text.end() && !it->second.empty()) {
                text_p = make_patient_aggregate(subject->subject_id, it->second, config.c).value();
            }
        }

        double final_p = voice_avg;
        if (text_p) {
            if (config.fusion == FusionStrategy::average_merge) {
                final_p = 0.5 * (voice_avg + *text_p);
            } else {
                Eigen::Vector2d x(voice_avg, *text_p);
                final_p = predict_proba(*fusion_model, x);
            }
        }
        const int label = final_p >= 0.5 ? 1 : 0;
        final_by_subject[subject->subject_id] = final_p;
        report_rows.push_back({subject->subject_id, csv::format_value(voice_avg),
                               text_p ? csv::format_value(*text_p) : std::string(),
                               csv::format_value(final_p), std::to_string(label)});
        ++summary.subjects_scored;
    }

    // Metrics block (subject level) when every scored subject is labeled.
    std::vector<std::string> comments;
    comments.push_back("config,c=" + csv::format_value(config.c) +
                       ",fusion=" + to_string(config.fusion) +
                       ",seed=" + std::to_string(config.seed));
    summary.fused_metrics = subject_level_metrics(test_subjects, final_by_subject);
    if (summary.fused_metrics) {
        const Metrics& m = *summary.fused_metrics;
        comments.push_back("metrics,accuracy=" + csv::format_value(m.accuracy) +
                           ",precision=" + csv::format_value(m.precision) +
                           ",recall=" + csv::format_value(m.recall) +
                           ",f1=" + csv::format_value(m.f1) +
                           (m.roc_auc ? ",roc_auc=" + csv::format_value(*m.roc_auc) : std::string()));
        for (const auto family : kFamilies) {
            std::map<std::string, double> scores;
            for (const auto& [sid, fam_scores] : family_by_subject) {
                const auto it = fam_scores.find(family);
                if (it != fam_scores.end()) scores[sid] = it->second;
            }
            const auto fm = subject_level_metrics(test_subjects, scores);
            if (!fm) continue;
            summary.family_metrics[family] = *fm;
            comments.push_back(std::string("family_metrics,") + family +
                               ",f1=" + csv::format_value(fm->f1) +
                               ",accuracy=" + csv::format_value(fm->accuracy) +
                               (fm->roc_auc ? ",roc_auc=" + csv::format_value(*fm->roc_auc)
                                            : std::string()));
        }
    }

    csv::write(out_dir / "report.csv", {"subject_id", "voice_avg", "text_p", "final_p", "label"},
               report_rows, comments);
    csv::write(out_dir / "family_scores.csv",
               {"subject_id", "family", "n", "p_max", "p_mean", "c", "aggregate"}, family_rows);

    audit_no_leakage(manifest, models_dir, out_dir / "report.csv");
    return summary;
}

void cmd_graph_export(const std::filesystem::path& wav_path, const RunConfig& config,
                      const std::filesystem::path& json_out,
                      const std::filesystem::path& features_csv_out) {
    config.validate();
    const AudioClip clip = load_wav(wav_path);
    const VisibilityGraph graph = vg_from_audio(clip, config.vg_options());

    if (json_out.has_parent_path()) std::filesystem::create_directories(json_out.parent_path());
    std::ofstream jf(json_out, std::ios::binary);
    if (!jf) throw DataError("cannot write " + json_out.string());
    jf << graph_to_json_string(graph) << '\n';

    const GraphFeatureVector f = extract_graph_features(graph);
    FeatureTable table;
    table.feature_names.assign(kVgHeader.begin() + 1, kVgHeader.end());
    table.clip_ids.push_back(clip_id_of(wav_path));
    table.values = f.as_vector().transpose();
    write_feature_csv(features_csv_out, table);
}

Metrics cmd_report(const std::filesystem::path& predictions_csv, const Manifest& manifest) {
    const csv::Table table = csv::read(predictions_csv, ',');
    if (table.header != std::vector<std::string>{"subject_id", "voice_avg", "text_p", "final_p",
                                                 "label"}) {
        throw DataError("unexpected report header in " + predictions_csv.string());
    }
    std::vector<int> predicted, truth;
    std::vector<double> scores;
    for (const auto& row : table.rows) {
        const SubjectEntry* subject = manifest.find(row[0]);
        if (subject == nullptr || !subject->label) {
            throw DataError("report subject '" + row[0] + "' has no label in the manifest");
        }
        const double final_p = csv::parse_number(row[3], predictions_csv.string());
        scores.push_back(final_p);
        predicted.push_back(final_p >= 0.5 ? 1 : 0);
        truth.push_back(*subject->label);
    }
    return evaluate(predicted, scores, truth);
}

void audit_no_leakage(const Manifest& manifest, const std::filesystem::path& models_dir,
                      const std::filesystem::path& report_csv) {
    std::set<std::string> train_ids, test_ids;
    for (const auto& s : manifest.subjects) {
        if (s.split == "train") train_ids.insert(s.subject_id);
        if (s.split == "test") test_ids.insert(s.subject_id);
    }

    std::set<std::string> trained_on;
    if (!models_dir.empty() && std::filesystem::exists(models_dir)) {
        for (const auto family : kFamilies) {
            const auto path = models_dir / (std::string(family) + ".json");
            if (!std::filesystem::exists(path)) continue;
            const RandomForestModel model = RandomForestModel::load(path);
            for (const auto& sid : model.train_subjects) {
                trained_on.insert(sid);
                if (!train_ids.count(sid)) {
                    throw Error("leakage: model '" + std::string(family) +
                                "' trained on non-train subject '" + sid + "'");
                }
            }
        }
    }
    if (!report_csv.empty() && std::filesystem::exists(report_csv)) {
        const csv::Table table = csv::read(report_csv, ',');
        for (const auto& row : table.rows) {
            if (!test_ids.count(row[0])) {
                throw Error("leakage: report contains non-test subject '" + row[0] + "'");
            }
            if (trained_on.count(row[0])) {
                throw Error("leakage: subject '" + row[0] + "' appears in training and report");
            }
        }
    }
}

} // namespace vg
