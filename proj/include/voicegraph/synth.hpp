#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "voicegraph/rng.hpp"
#include "voicegraph/wav.hpp"

namespace vg {

// Deterministic signal builders. The batch `synth` command uses them to
// produce a self-contained two-class corpus; tests use them directly.

AudioClip make_sine_clip(double freq_hz, double seconds, int sample_rate, double amplitude = 1.0);

// Harmonic carrier with slow amplitude modulation and additive noise.
AudioClip make_am_clip(double f0_hz, double mod_hz, double seconds, int sample_rate,
                       double mod_depth, double noise_level, Rng& rng);

// Noise whose amplitude follows a smoothed random walk (irregular bursts).
AudioClip make_noise_clip(double seconds, int sample_rate, double level, Rng& rng);

// Isolated identical-shape bumps at regular spacing with the given heights.
// Identical heights give bit-identical envelope peaks.
AudioClip make_bump_train_clip(const std::vector<double>& heights, int sample_rate,
                               double spacing_s = 0.1, double bump_width_s = 0.04);

struct SynthConfig {
    std::filesystem::path out_dir;
    int subjects_per_class = 60;
    int clips_per_subject = 3;
    int train_per_class = 40;
    int val_per_class = 10;
    int test_per_class = 10;
    int sample_rate = 16000;
    std::uint64_t seed = 0;
};

// Writes wavs/, egemaps/, text/ and manifest.json under out_dir. Class 0 is
// noise-dominated, class 1 is amplitude-modulated harmonic; labels, splits
// and synthetic side files (88-dim vectors, per-subsequence text
// probabilities) come along so the whole pipeline can run on the output.
void generate_corpus(const SynthConfig& config);

} // namespace vg
