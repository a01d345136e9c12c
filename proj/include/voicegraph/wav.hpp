#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>

namespace vg {

// Mono audio in [-1, 1] at a native sample rate. Clips are immutable values;
// nothing in the pipeline resamples them.
struct AudioClip {
    Eigen::ArrayXd samples;
    int sample_rate = 0;
    std::string source_id;

    Eigen::Index size() const { return samples.size(); }
    double duration_s() const { return static_cast<double>(samples.size()) / sample_rate; }
};

// Reads a RIFF/WAVE file. PCM 16-bit little-endian only; multi-channel input
// is averaged to mono and samples are normalized by 1/32768.
AudioClip load_wav(const std::filesystem::path& path);

// Writes a mono PCM 16-bit WAV (values clamped to [-1, 1]).
void write_wav(const std::filesystem::path& path, const AudioClip& clip);

} // namespace vg
