#include "voicegraph/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include <nlohmann/json.hpp>

#include "voicegraph/csv.hpp"
#include "voicegraph/egemaps.hpp"
#include "voicegraph/errors.hpp"

namespace vg {

AudioClip make_sine_clip(double freq_hz, double seconds, int sample_rate, double amplitude) {
    AudioClip clip;
    clip.sample_rate = sample_rate;
    clip.source_id = "sine";
    const auto n = static_cast<Eigen::Index>(std::llround(seconds * sample_rate));
    clip.samples.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        clip.samples[i] =
            amplitude * std::sin(2.0 * std::numbers::pi * freq_hz * static_cast<double>(i) / sample_rate);
    }
    return clip;
}

AudioClip make_am_clip(double f0_hz, double mod_hz, double seconds, int sample_rate,
                       double mod_depth, double noise_level, Rng& rng) {
    AudioClip clip;
    clip.sample_rate = sample_rate;
    clip.source_id = "am";
    const auto n = static_cast<Eigen::Index>(std::llround(seconds * sample_rate));
    clip.samples.resize(n);
    const double harmonic_gains[3] = {1.0, 0.5, 0.25};
    for (Eigen::Index i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / sample_rate;
        double carrier = 0.0;
        for (int h = 0; h < 3; ++h) {
            carrier += harmonic_gains[h] *
                       std::sin(2.0 * std::numbers::pi * f0_hz * (h + 1) * t);
        }
        const double mod =
            (1.0 - mod_depth) + mod_depth * 0.5 *
                                    (1.0 + std::sin(2.0 * std::numbers::pi * mod_hz * t));
        clip.samples[i] = 0.45 * mod * carrier + noise_level * rng.normal();
    }
    clip.samples = clip.samples.cwiseMax(-1.0).cwiseMin(1.0);
    return clip;
}

AudioClip make_noise_clip(double seconds, int sample_rate, double level, Rng& rng) {
    AudioClip clip;
    clip.sample_rate = sample_rate;
    clip.source_id = "noise";
    const auto n = static_cast<Eigen::Index>(std::llround(seconds * sample_rate));

    // Burst envelope: random walk, smoothed, rectified and rescaled.
    const Eigen::Index knots = std::max<Eigen::Index>(8, n / (sample_rate / 20));
    Eigen::ArrayXd walk(knots);
    walk[0] = rng.range(0.3, 1.0);
    for (Eigen::Index k = 1; k < knots; ++k) {
        walk[k] = std::clamp(walk[k - 1] + 0.35 * rng.normal(), 0.05, 1.5);
    }
    clip.samples.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double pos = static_cast<double>(i) / static_cast<double>(n - 1) *
                           static_cast<double>(knots - 1);
        const auto k0 = static_cast<Eigen::Index>(pos);
        const Eigen::Index k1 = std::min(k0 + 1, knots - 1);
        const double frac = pos - static_cast<double>(k0);
        const double env = (1.0 - frac) * walk[k0] + frac * walk[k1];
        clip.samples[i] = level * env * rng.normal();
    }
    clip.samples = clip.samples.cwiseMax(-1.0).cwiseMin(1.0);
    return clip;
}

AudioClip make_bump_train_clip(const std::vector<double>& heights, int sample_rate,
                               double spacing_s, double bump_width_s) {
    const auto width = static_cast<Eigen::Index>(std::llround(bump_width_s * sample_rate));
    const auto spacing = static_cast<Eigen::Index>(std::llround(spacing_s * sample_rate));
    const auto count = static_cast<Eigen::Index>(heights.size());

    // One bump shape, computed once and copied, so equal heights give
    // bit-identical envelope peaks.
    Eigen::ArrayXd bump(width);
    for (Eigen::Index i = 0; i < width; ++i) {
        bump[i] = std::sin(std::numbers::pi * static_cast<double>(i) / (width - 1));
    }

    AudioClip clip;
    clip.sample_rate = sample_rate;
    clip.source_id = "bumps";
    clip.samples = Eigen::ArrayXd::Zero(spacing * count + spacing);
    for (Eigen::Index k = 0; k < count; ++k) {
        const Eigen::Index start = spacing / 2 + k * spacing;
        clip.samples.segment(start, width) = heights[static_cast<std::size_t>(k)] * bump;
    }
    return clip;
}

namespace {

std::string subject_name(int cls, int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "c%d_%03d", cls, index);
    return buf;
}

std::string split_of(int index, const SynthConfig& cfg) {
    if (index < cfg.train_per_class) return "train";
    if (index < cfg.train_per_class + cfg.val_per_class) return "val";
    return "test";
}

} // namespace

void generate_corpus(const SynthConfig& cfg) {
    if (cfg.subjects_per_class < 1 || cfg.clips_per_subject < 1) {
        throw ConfigError("synth needs at least one subject and one clip per subject");
    }
    if (cfg.train_per_class + cfg.val_per_class + cfg.test_per_class != cfg.subjects_per_class) {
        throw ConfigError("train+val+test per class must equal subjects per class");
    }
    const auto& out = cfg.out_dir;
    std::filesystem::create_directories(out / "wavs");
    std::filesystem::create_directories(out / "egemaps");
    std::filesystem::create_directories(out / "text");

    nlohmann::ordered_json subjects = nlohmann::ordered_json::array();
    int subject_counter = 0;
    for (int cls = 0; cls < 2; ++cls) {
        for (int s = 0; s < cfg.subjects_per_class; ++s, ++subject_counter) {
            const std::string sid = subject_name(cls, s);
            Rng rng(Rng::stream(cfg.seed, static_cast<std::uint64_t>(subject_counter)));

            // Per-subject voice characteristics.
            const double f0 = rng.range(110.0, 220.0);
            const double mod = rng.range(2.5, 5.0);
            const double noise_lvl = rng.range(0.25, 0.5);

            nlohmann::ordered_json subject;
            subject["subject_id"] = sid;
            subject["label"] = cls;
            subject["split"] = split_of(s, cfg);
            auto clips = nlohmann::ordered_json::array();
            for (int k = 0; k < cfg.clips_per_subject; ++k) {
                const double seconds = rng.range(2.0, 3.0);
                AudioClip clip =
                    cls == 1 ? make_am_clip(f0, mod, seconds, cfg.sample_rate,
                                            rng.range(0.7, 0.95), rng.range(0.01, 0.03), rng)
                             : make_noise_clip(seconds, cfg.sample_rate, noise_lvl, rng);
                const std::string rel = "wavs/" + sid + "_" + std::to_string(k) + ".wav";
                write_wav(out / rel, clip);
                clips.push_back(rel);
            }
            subject["clips"] = std::move(clips);

            // Synthetic eGeMAPS-style vectors: standard-normal background with
            // a class shift on a few informative dimensions.
            {
                std::vector<std::string> header;
                header.push_back("clip_id");
                for (int c = 0; c < kEgemapsDim; ++c) {
                    char buf[32];
                    std::snprintf(buf, sizeof(buf), "egemaps_%02d", c);
                    header.emplace_back(buf);
                }
                std::vector<std::vector<std::string>> rows;
                for (int k = 0; k < cfg.clips_per_subject; ++k) {
                    std::vector<std::string> row;
                    row.push_back(sid + "_" + std::to_string(k));
                    for (int c = 0; c < kEgemapsDim; ++c) {
                        double v = rng.normal();
                        if (c % 11 == 0) v += (cls == 1 ? 1.2 : -1.2);
                        row.push_back(csv::format_value(v));
                    }
                    rows.push_back(std::move(row));
                }
                csv::write(out / "egemaps" / (sid + ".csv"), header, rows);
                subject["egemaps_csv"] = "egemaps/" + sid + ".csv";
            }

            // Informative but noisy per-subsequence text probabilities.
            {
                const int n_subseq = 5 + static_cast<int>(rng.below(11));
                std::vector<std::vector<std::string>> rows;
                for (int q = 0; q < n_subseq; ++q) {
                    const double center = cls == 1 ? 0.68 : 0.32;
                    const double p = std::clamp(center + 0.18 * rng.normal(), 0.0, 1.0);
                    rows.push_back({sid, std::to_string(q), csv::format_value(p)});
                }
                csv::write(out / "text" / (sid + ".csv"),
                           {"subject_id", "subseq_id", "probability"}, rows);
                subject["text_scores_csv"] = "text/" + sid + ".csv";
            }
            subjects.push_back(std::move(subject));
        }
    }

    nlohmann::ordered_json manifest;
    manifest["subjects"] = std::move(subjects);
    std::ofstream mf(out / "manifest.json", std::ios::binary);
    if (!mf) throw DataError("cannot write manifest under " + out.string());
    mf << manifest.dump(2) << '\n';
}

} // namespace vg
