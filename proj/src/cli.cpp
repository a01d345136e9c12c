#include "voicegraph/cli.hpp"

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "voicegraph/errors.hpp"
#include "voicegraph/pipeline.hpp"
#include "voicegraph/synth.hpp"

namespace vg::cli {

namespace {

void add_dsp_flags(CLI::App* cmd, RunConfig& cfg, std::string& vg_input) {
    cmd->add_option("--window-ms", cfg.window_ms, "Envelope RMS window (ms)");
    cmd->add_option("--min-distance-ms", cfg.min_distance_ms, "Minimum peak spacing (ms)");
    cmd->add_option("--min-prominence", cfg.min_prominence, "Minimum peak prominence (full scale)");
    cmd->add_option("--frame-ms", cfg.frame_ms, "Analysis frame length (ms)");
    cmd->add_option("--hop-ms", cfg.hop_ms, "Analysis hop (ms)");
    cmd->add_option("--fft-size", cfg.fft_size, "FFT size (0 = next power of two)");
    cmd->add_option("--n-mels", cfg.n_mels, "Mel bands");
    cmd->add_option("--n-mfcc", cfg.n_mfcc, "MFCC coefficients");
    cmd->add_option("--f-min", cfg.f_min, "Mel band lower edge (Hz)");
    cmd->add_option("--f-max", cfg.f_max, "Mel band upper edge (Hz, 0 = Nyquist)");
    cmd->add_option("--vg-input", vg_input, "Build graphs on 'peaks' or 'raw' samples")
        ->check(CLI::IsMember({"peaks", "raw"}));
}

void add_learn_flags(CLI::App* cmd, RunConfig& cfg, std::string& fusion_name) {
    cmd->add_option("--trees", cfg.forest.n_trees, "Trees per forest");
    cmd->add_option("--max-depth", cfg.forest.max_depth, "Maximum tree depth");
    cmd->add_option("--min-leaf", cfg.forest.min_leaf, "Minimum samples per leaf");
    cmd->add_option("--features-per-split", cfg.forest.features_per_split,
                    "Random features per split (0 = ceil(sqrt(d)))");
    cmd->add_flag("--normalize", cfg.normalize, "Z-score features with train-split statistics");
    cmd->add_option("--c", cfg.c, "Patient aggregation scaling factor");
    cmd->add_option("--fusion", fusion_name, "Fusion strategy: average_merge or forest")
        ->check(CLI::IsMember({"average_merge", "forest"}));
}

void add_run_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--seed", cfg.seed, "Deterministic seed");
    cmd->add_option("--threads", cfg.threads, "Worker threads");
}

void print_metrics(const Metrics& m) {
    std::printf("F1 %.1f  PREC. %.1f  RECALL %.1f  ACC. %.1f", 100.0 * m.f1, 100.0 * m.precision,
                100.0 * m.recall, 100.0 * m.accuracy);
    if (m.roc_auc) std::printf("  AUC %.1f", 100.0 * *m.roc_auc);
    std::printf("\n");
    std::printf("confusion tp=%ld fp=%ld tn=%ld fn=%ld\n", m.tp, m.fp, m.tn, m.fn);
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"voice-to-visibility-graph feature extraction, training and scoring pipeline"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string fusion_name = "average_merge";
    std::string vg_input = "peaks";
    std::string manifest_path, features_dir, models_dir, out_dir;
    std::string wav_path, json_out, features_csv_out, predictions_csv;
    SynthConfig synth_cfg;
    bool synth_split_given = false;

    auto* extract = app.add_subcommand("extract", "Extract per-clip feature families to CSV");
    extract->add_option("--manifest", manifest_path, "Dataset manifest (json)")->required();
    extract->add_option("--out", out_dir, "Output directory for feature CSVs")->required();
    add_dsp_flags(extract, cfg, vg_input);
    add_run_flags(extract, cfg);

    auto* train = app.add_subcommand("train", "Train per-family forests and the optional fusion model");
    train->add_option("--manifest", manifest_path)->required();
    train->add_option("--features", features_dir, "Directory with feature CSVs")->required();
    train->add_option("--out", models_dir, "Output directory for models")->required();
    add_learn_flags(train, cfg, fusion_name);
    add_run_flags(train, cfg);

    auto* predict = app.add_subcommand("predict", "Score the test split and write the report");
    predict->add_option("--manifest", manifest_path)->required();
    predict->add_option("--features", features_dir)->required();
    predict->add_option("--models", models_dir)->required();
    predict->add_option("--out", out_dir, "Output directory for the report")->required();
    add_learn_flags(predict, cfg, fusion_name);
    add_run_flags(predict, cfg);

    auto* graph_export = app.add_subcommand("graph-export", "Export one WAV's visibility graph");
    graph_export->add_option("wav", wav_path, "Input WAV file")->required();
    graph_export->add_option("--json", json_out, "Graph JSON output path")->required();
    graph_export->add_option("--features-csv", features_csv_out, "Feature row output path")
        ->required();
    add_dsp_flags(graph_export, cfg, vg_input);

    auto* synth = app.add_subcommand("synth", "Generate the synthetic two-class corpus");
    synth->add_option("--out", out_dir, "Corpus output directory")->required();
    synth->add_option("--subjects-per-class", synth_cfg.subjects_per_class);
    synth->add_option("--clips-per-subject", synth_cfg.clips_per_subject);
    synth->add_option("--sample-rate", synth_cfg.sample_rate);
    auto* split_opt = synth->add_option("--split", "train/val/test subjects per class, e.g. 40,10,10")
                          ->expected(1);
    synth->add_option("--seed", synth_cfg.seed, "Deterministic seed");

    auto* report = app.add_subcommand("report", "Evaluate a prediction report against labels");
    report->add_option("--predictions", predictions_csv, "report.csv from predict")->required();
    report->add_option("--manifest", manifest_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        cfg.fusion = fusion_strategy_from_string(fusion_name);
        cfg.vg_on_raw = (vg_input == "raw");

        if (extract->parsed()) {
            const Manifest manifest = Manifest::load(manifest_path);
            const ExtractSummary s = cmd_extract(manifest, cfg, out_dir);
            for (const auto& [family, rows] : s.rows_per_family) {
                std::printf("extract %s: %ld rows\n", family.c_str(), rows);
            }
            std::printf("extract errors: %ld (see errors.csv)\n", s.clip_errors);
        } else if (train->parsed()) {
            const Manifest manifest = Manifest::load(manifest_path);
            const TrainSummary s = cmd_train(manifest, features_dir, cfg, models_dir);
            for (const auto& family : s.trained_families) {
                std::printf("trained %s", family.c_str());
                const auto it = s.val_metrics.find(family);
                if (it != s.val_metrics.end()) {
                    std::printf("  (val F1 %.3f)", it->second.f1);
                }
                std::printf("\n");
            }
            for (const auto& skip : s.skipped_families) {
                std::printf("skipped %s\n", skip.c_str());
            }
            if (cfg.fusion == FusionStrategy::forest) {
                std::printf("fusion forest: %s\n", s.fusion_trained ? "trained" : "not trained");
            }
        } else if (predict->parsed()) {
            const Manifest manifest = Manifest::load(manifest_path);
            const PredictSummary s = cmd_predict(manifest, features_dir, models_dir, cfg, out_dir);
            std::printf("scored %ld subjects\n", s.subjects_scored);
            if (s.fused_metrics) print_metrics(*s.fused_metrics);
        } else if (graph_export->parsed()) {
            cmd_graph_export(wav_path, cfg, json_out, features_csv_out);
            std::printf("wrote %s and %s\n", json_out.c_str(), features_csv_out.c_str());
        } else if (synth->parsed()) {
            synth_cfg.out_dir = out_dir;
            if (split_opt->count() > 0) {
                const std::string value = split_opt->as<std::string>();
                int a = 0, b = 0, c = 0;
                if (std::sscanf(value.c_str(), "%d,%d,%d", &a, &b, &c) != 3) {
                    throw ConfigError("--split expects three comma-separated counts");
                }
                synth_cfg.train_per_class = a;
                synth_cfg.val_per_class = b;
                synth_cfg.test_per_class = c;
                synth_split_given = true;
            }
            if (!synth_split_given) {
                synth_cfg.train_per_class = synth_cfg.subjects_per_class * 2 / 3;
                const int rest = synth_cfg.subjects_per_class - synth_cfg.train_per_class;
                synth_cfg.val_per_class = rest / 2;
                synth_cfg.test_per_class = rest - synth_cfg.val_per_class;
            }
            generate_corpus(synth_cfg);
            std::printf("synthetic corpus written to %s\n", out_dir.c_str());
        } else if (report->parsed()) {
            const Manifest manifest = Manifest::load(manifest_path);
            print_metrics(cmd_report(predictions_csv, manifest));
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("voicegraph");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

} // namespace vg::cli
