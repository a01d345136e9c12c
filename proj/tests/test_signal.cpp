#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "test_helpers.hpp"
#include "voicegraph/errors.hpp"
#include "voicegraph/signal.hpp"
#include "voicegraph/synth.hpp"
#include "voicegraph/wav.hpp"

using namespace vg;
using namespace vgtest;

namespace {

// Raw WAV writer used to craft valid and malformed files independently of
// the library's own writer.
std::string wav_bytes(const std::vector<std::vector<std::int16_t>>& frames, int sample_rate,
                      std::uint16_t format = 1, std::uint16_t bits = 16) {
    const std::uint16_t channels = frames.empty() ? 1 : static_cast<std::uint16_t>(frames[0].size());
    std::string out;
    auto u16 = [&out](std::uint16_t v) {
        out.push_back(static_cast<char>(v & 0xff));
        out.push_back(static_cast<char>(v >> 8));
    };
    auto u32 = [&out](std::uint32_t v) {
        for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    };
    const std::uint32_t data_size = static_cast<std::uint32_t>(frames.size()) * channels * 2;
    out += "RIFF";
    u32(36 + data_size);
    out += "WAVEfmt ";
    u32(16);
    u16(format);
    u16(channels);
    u32(static_cast<std::uint32_t>(sample_rate));
    u32(static_cast<std::uint32_t>(sample_rate) * channels * 2);
    u16(static_cast<std::uint16_t>(channels * 2));
    u16(bits);
    out += "data";
    u32(data_size);
    for (const auto& frame : frames) {
        for (std::int16_t s : frame) u16(static_cast<std::uint16_t>(s));
    }
    return out;
}

AudioClip constant_clip(double value, Eigen::Index n, int rate) {
    AudioClip clip;
    clip.sample_rate = rate;
    clip.samples = Eigen::ArrayXd::Constant(n, value);
    return clip;
}

// Independent prominence oracle: direct definition, no shared logic with the
// implementation's walk.
double oracle_prominence(const Eigen::ArrayXd& y, Eigen::Index i) {
    Eigen::Index left_stop = 0;
    for (Eigen::Index j = i - 1; j >= 0; --j) {
        if (y[j] > y[i]) {
            left_stop = j + 1;
            break;
        }
    }
    Eigen::Index right_stop = y.size() - 1;
    for (Eigen::Index j = i + 1; j < y.size(); ++j) {
        if (y[j] > y[i]) {
            right_stop = j - 1;
            break;
        }
    }
    double left_min = y[i], right_min = y[i];
    for (Eigen::Index j = left_stop; j < i; ++j) left_min = std::min(left_min, y[j]);
    for (Eigen::Index j = i + 1; j <= right_stop; ++j) right_min = std::min(right_min, y[j]);
    return y[i] - std::max(left_min, right_min);
}

} // namespace

TEST_CASE("load_wav: zero mono file") {
    const auto dir = temp_dir("wav_zero");
    std::vector<std::vector<std::int16_t>> frames(16000, {0});
    write_bytes(dir / "zero.wav", wav_bytes(frames, 16000));
    const AudioClip clip = load_wav(dir / "zero.wav");
    CHECK(clip.sample_rate == 16000);
    CHECK(clip.samples.size() == 16000);
    CHECK(clip.samples.abs().maxCoeff() == 0.0);
}

TEST_CASE("load_wav: symmetric stereo averages to zero") {
    const auto dir = temp_dir("wav_stereo");
    std::vector<std::vector<std::int16_t>> frames(100, {16384, -16384});
    write_bytes(dir / "st.wav", wav_bytes(frames, 8000));
    const AudioClip clip = load_wav(dir / "st.wav");
    CHECK(clip.samples.size() == 100);
    CHECK(clip.samples.abs().maxCoeff() == 0.0);
}

TEST_CASE("load_wav: full-scale negative sample maps to -1") {
    const auto dir = temp_dir("wav_fullscale");
    std::vector<std::vector<std::int16_t>> frames = {{-32768}, {32767}, {0}};
    write_bytes(dir / "fs.wav", wav_bytes(frames, 44100));
    const AudioClip clip = load_wav(dir / "fs.wav");
    CHECK(clip.samples[0] == -1.0);
    CHECK(clip.samples[1] == doctest::Approx(32767.0 / 32768.0).epsilon(1e-12));
    CHECK(clip.samples[2] == 0.0);
}

TEST_CASE("load_wav: malformed and unsupported files") {
    const auto dir = temp_dir("wav_bad");
    write_bytes(dir / "short.wav", "RIFFxx");
    CHECK_THROWS_AS(load_wav(dir / "short.wav"), MalformedWav);

    write_bytes(dir / "notwave.wav", std::string("RIFF\x24\x00\x00\x00JUNKfmt ", 16));
    CHECK_THROWS_AS(load_wav(dir / "notwave.wav"), MalformedWav);

    std::vector<std::vector<std::int16_t>> frames(10, {0});
    write_bytes(dir / "float.wav", wav_bytes(frames, 16000, /*format=*/3));
    CHECK_THROWS_AS(load_wav(dir / "float.wav"), UnsupportedEncoding);

    // truncated data chunk
    auto bytes = wav_bytes(frames, 16000);
    bytes.resize(bytes.size() - 6);
    write_bytes(dir / "trunc.wav", bytes);
    CHECK_THROWS_AS(load_wav(dir / "trunc.wav"), MalformedWav);

    write_bytes(dir / "missing.wav", wav_bytes({{1}, {2}}, 16000).substr(0, 20));
    CHECK_THROWS_AS(load_wav(dir / "missing.wav"), MalformedWav);
}

TEST_CASE("wav round trip through writer and loader") {
    const auto dir = temp_dir("wav_rt");
    Rng rng(11);
    AudioClip clip;
    clip.sample_rate = 22050;
    clip.samples.resize(500);
    for (Eigen::Index i = 0; i < 500; ++i) clip.samples[i] = rng.range(-0.9, 0.9);
    write_wav(dir / "rt.wav", clip);
    const AudioClip back = load_wav(dir / "rt.wav");
    REQUIRE(back.samples.size() == clip.samples.size());
    CHECK(back.sample_rate == 22050);
    // quantization to 32767 steps plus the 1/32768 read-back scale
    CHECK((back.samples - clip.samples).abs().maxCoeff() < 1.5 / 32768.0);
}

TEST_CASE("compute_envelope: constant amplitude") {
    const AudioClip clip = constant_clip(0.8, 4000, 16000);
    const TimeSeries env = compute_envelope(clip, 20.0);
    REQUIRE(env.size() > 0);
    for (Eigen::Index i = 0; i < env.size(); ++i) {
        CHECK(env.y[i] == doctest::Approx(0.8).epsilon(1e-9));
    }
}

TEST_CASE("compute_envelope: zero clip") {
    const AudioClip clip = constant_clip(0.0, 4000, 16000);
    const TimeSeries env = compute_envelope(clip, 20.0);
    CHECK(env.y.abs().maxCoeff() == 0.0);
}

TEST_CASE("compute_envelope: sine RMS is 1/sqrt(2)") {
    const AudioClip clip = make_sine_clip(440.0, 1.0, 16000);
    const TimeSeries env = compute_envelope(clip, 50.0);
    const double expected = 1.0 / std::sqrt(2.0);
    for (Eigen::Index i = 2; i + 2 < env.size(); ++i) {
        CHECK(env.y[i] == doctest::Approx(expected).epsilon(0.014));
    }
}

TEST_CASE("compute_envelope: window validation") {
    const AudioClip clip = constant_clip(0.1, 100, 16000);
    CHECK_THROWS_AS(compute_envelope(clip, 1000.0), WindowTooLong);
    CHECK_THROWS_AS(compute_envelope(clip, 0.0), ConfigError);
}

TEST_CASE("envelope is invariant to sign flip") {
    Rng rng(3);
    AudioClip clip;
    clip.sample_rate = 8000;
    clip.samples.resize(2000);
    for (Eigen::Index i = 0; i < 2000; ++i) clip.samples[i] = rng.range(-1.0, 1.0);
    AudioClip flipped = clip;
    flipped.samples = -flipped.samples;
    const TimeSeries a = compute_envelope(clip, 15.0);
    const TimeSeries b = compute_envelope(flipped, 15.0);
    CHECK((a.y - b.y).abs().maxCoeff() == 0.0);
}

TEST_CASE("detect_peaks: strict local maxima") {
    const TimeSeries s = series_of({0, 1, 0, 2, 0});
    const PeakSequence peaks = detect_peaks(s, 0.0, 0.0);
    REQUIRE(peaks.size() == 2);
    CHECK(peaks.source_indices[0] == 1);
    CHECK(peaks.source_indices[1] == 3);
}

TEST_CASE("detect_peaks: strictly increasing series has no peaks") {
    const TimeSeries s = series_of({0, 1, 2, 3, 4, 5});
    CHECK(detect_peaks(s, 0.0, 0.0).size() == 0);
}

TEST_CASE("detect_peaks: 10 Hz sine at 1 kHz gives exactly 10 peaks") {
    const AudioClip clip = make_sine_clip(10.0, 1.0, 1000);
    TimeSeries s;
    s.y = clip.samples;
    s.t = Eigen::ArrayXd::LinSpaced(clip.samples.size(), 0.0,
                                    static_cast<double>(clip.samples.size() - 1)) /
          1000.0;
    const PeakSequence peaks = detect_peaks(s, 50.0, 0.0);
    CHECK(peaks.size() == 10);
}

TEST_CASE("detect_peaks: too short input") {
    CHECK_THROWS_AS(detect_peaks(series_of({0, 1}), 0.0, 0.0), TooShort);
}

TEST_CASE("detect_peaks: plateau maxima are not strict") {
    const TimeSeries s = series_of({0, 1, 1, 0, 2, 0});
    const PeakSequence peaks = detect_peaks(s, 0.0, 0.0);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks.source_indices[0] == 4);
}

TEST_CASE("detect_peaks: close peaks keep the larger, ties keep the earlier") {
    // peaks at t=1 (y=2), t=2.5 (y=3): closer than 2s, larger survives
    const TimeSeries s =
        series_of({0.0, 1.0, 2.0, 2.5, 3.5}, {0.0, 2.0, 0.0, 3.0, 0.0});
    const PeakSequence p1 = detect_peaks(s, 2000.0, 0.0);
    REQUIRE(p1.size() == 1);
    CHECK(p1.points.y[0] == 3.0);

    // equal heights: earlier wins
    const TimeSeries tie =
        series_of({0.0, 1.0, 2.0, 2.5, 3.5}, {0.0, 3.0, 0.0, 3.0, 0.0});
    const PeakSequence p2 = detect_peaks(tie, 2000.0, 0.0);
    REQUIRE(p2.size() == 1);
    CHECK(p2.points.t[0] == 1.0);
}

TEST_CASE("detect_peaks: properties on random series") {
    Rng rng(17);
    for (int rep = 0; rep < 40; ++rep) {
        const Eigen::Index n = 20 + static_cast<Eigen::Index>(rng.below(200));
        TimeSeries s = random_walk_series(rng, n);
        const double min_dist_ms = rng.range(0.0, 3.0) * 1000.0;
        const double min_prom = rng.range(0.0, 1.0);
        const PeakSequence peaks = detect_peaks(s, min_dist_ms, min_prom);

        for (std::size_t k = 0; k < peaks.source_indices.size(); ++k) {
            const Eigen::Index i = peaks.source_indices[k];
            // strict local maximum exactly as stored
            CHECK(s.y[i] > s.y[i - 1]);
            CHECK(s.y[i] > s.y[i + 1]);
            // prominence honored (brute-force oracle)
            if (min_prom > 0.0) CHECK(oracle_prominence(s.y, i) >= min_prom);
            // strictly increasing subsequence of input times
            if (k > 0) {
                CHECK(peaks.points.t[static_cast<Eigen::Index>(k)] >
                      peaks.points.t[static_cast<Eigen::Index>(k - 1)]);
            }
        }
        // min distance honored
        for (std::size_t a = 0; a + 1 < peaks.source_indices.size(); ++a) {
            CHECK(peaks.points.t[static_cast<Eigen::Index>(a + 1)] -
                      peaks.points.t[static_cast<Eigen::Index>(a)] >=
                  min_dist_ms / 1000.0);
        }
    }
}

TEST_CASE("frame_signal: frame counts") {
    AudioClip clip = constant_clip(1.0, 400, 16000);
    const FrameMatrix one = frame_signal(clip, 25.0, 10.0, WindowKind::rect);
    CHECK(one.n_frames() == 1);
    CHECK(one.frame_len() == 400);

    clip = constant_clip(1.0, 560, 16000);
    const FrameMatrix two = frame_signal(clip, 25.0, 10.0, WindowKind::rect);
    CHECK(two.n_frames() == 2);

    // rect window on all ones passes values through untouched
    CHECK(two.frames.minCoeff() == 1.0);
    CHECK(two.frames.maxCoeff() == 1.0);
}

TEST_CASE("frame_signal: validation") {
    const AudioClip clip = constant_clip(1.0, 100, 16000);
    CHECK_THROWS_AS(frame_signal(clip, 25.0, 10.0, WindowKind::hamming), ClipTooShort);
    CHECK_THROWS_AS(frame_signal(clip, 5.0, 10.0, WindowKind::hamming), ConfigError);
    CHECK_THROWS_AS(frame_signal(clip, 5.0, 0.0, WindowKind::hamming), ConfigError);
}

TEST_CASE("frame_signal: count formula holds for random parameters") {
    Rng rng(23);
    for (int rep = 0; rep < 50; ++rep) {
        const int rate = 8000 + static_cast<int>(rng.below(3)) * 4000;
        const Eigen::Index n = 500 + static_cast<Eigen::Index>(rng.below(5000));
        const double hop_ms = rng.range(2.0, 20.0);
        const double frame_ms = hop_ms + rng.range(0.0, 30.0);
        const AudioClip clip = constant_clip(0.5, n, rate);
        const auto frame_len = static_cast<Eigen::Index>(std::llround(frame_ms * rate / 1000.0));
        const auto hop_len = std::max<Eigen::Index>(
            1, static_cast<Eigen::Index>(std::llround(hop_ms * rate / 1000.0)));
        if (frame_len < 1 || frame_len > n) continue;
        const FrameMatrix fm = frame_signal(clip, frame_ms, hop_ms, WindowKind::hann);
        CHECK(fm.n_frames() == (n - frame_len) / hop_len + 1);
        CHECK(fm.frame_len() == frame_len);
    }
}
