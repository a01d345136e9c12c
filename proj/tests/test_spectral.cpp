#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "test_helpers.hpp"
#include "voicegraph/egemaps.hpp"
#include "voicegraph/errors.hpp"
#include "voicegraph/spectral.hpp"
#include "voicegraph/synth.hpp"

using namespace vg;
using namespace vgtest;

namespace {

AudioClip zero_clip(Eigen::Index n, int rate) {
    AudioClip clip;
    clip.sample_rate = rate;
    clip.samples = Eigen::ArrayXd::Zero(n);
    return clip;
}

} // namespace

TEST_CASE("spectrogram: zero clip gives a zero matrix") {
    const SpectrogramMatrix spec = spectrogram(zero_clip(8000, 16000), 512, 25.0, 10.0);
    CHECK(spec.n_bins() == 257);
    CHECK(spec.values.maxCoeff() == 0.0);
    CHECK(spec.bin_hz == doctest::Approx(16000.0 / 512.0));
}

TEST_CASE("spectrogram: 440 Hz tone peaks in bin 14 at fft 512 / 16 kHz") {
    const AudioClip clip = make_sine_clip(440.0, 1.0, 16000);
    const SpectrogramMatrix spec = spectrogram(clip, 512, 25.0, 10.0);
    for (Eigen::Index f = 0; f < spec.n_frames(); ++f) {
        Eigen::Index argmax = 0;
        spec.values.row(f).maxCoeff(&argmax);
        CHECK(argmax == 14);
    }
}

TEST_CASE("spectrogram: Parseval per frame") {
    Rng rng(8);
    AudioClip clip;
    clip.sample_rate = 16000;
    clip.samples.resize(4000);
    for (Eigen::Index i = 0; i < 4000; ++i) clip.samples[i] = rng.range(-1.0, 1.0);

    const SpectrogramMatrix spec = spectrogram(clip, 512, 25.0, 10.0);
    const FrameMatrix framed = frame_signal(clip, 25.0, 10.0, WindowKind::hamming);
    REQUIRE(framed.n_frames() == spec.n_frames());
    for (Eigen::Index f = 0; f < spec.n_frames(); ++f) {
        const double energy = framed.frames.row(f).squaredNorm();
        double bins = spec.values(f, 0) + spec.values(f, spec.n_bins() - 1);
        for (Eigen::Index b = 1; b + 1 < spec.n_bins(); ++b) bins += 2.0 * spec.values(f, b);
        CHECK(bins == doctest::Approx(energy).epsilon(1e-6));
    }
}

TEST_CASE("spectrogram: fft size validation") {
    const AudioClip clip = zero_clip(8000, 16000);
    CHECK_THROWS_AS(spectrogram(clip, 500, 25.0, 10.0), BadFftSize); // not a power of two
    CHECK_THROWS_AS(spectrogram(clip, 256, 25.0, 10.0), BadFftSize); // smaller than frame
    CHECK_THROWS_AS(spectrogram(zero_clip(100, 16000), 512, 25.0, 10.0), ClipTooShort);
}

TEST_CASE("mel filterbank: unit weight sums and band validation") {
    const Eigen::MatrixXd bank = mel_filterbank(26, 512, 16000, 0.0, 8000.0);
    CHECK(bank.rows() == 26);
    CHECK(bank.cols() == 257);
    for (Eigen::Index m = 0; m < bank.rows(); ++m) {
        CHECK(bank.row(m).sum() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(bank.row(m).minCoeff() >= 0.0);
    }
    CHECK_THROWS_AS(mel_filterbank(26, 512, 16000, 4000.0, 1000.0), BadBand);
    CHECK_THROWS_AS(mel_filterbank(26, 512, 16000, 0.0, 9000.0), BadBand); // above Nyquist
}

TEST_CASE("mel_spectrogram: all-ones power frame maps to all-ones mel frame") {
    SpectrogramMatrix spec;
    spec.fft_size = 512;
    spec.sample_rate = 16000;
    spec.bin_hz = 16000.0 / 512.0;
    spec.values = Eigen::MatrixXd::Ones(3, 257);
    const Eigen::MatrixXd mel = mel_spectrogram(spec, 26, 0.0, 8000.0);
    CHECK(mel.rows() == 3);
    CHECK(mel.cols() == 26);
    CHECK((mel.array() - 1.0).abs().maxCoeff() < 1e-12);

    spec.values.setZero();
    CHECK(mel_spectrogram(spec, 26, 0.0, 8000.0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("mel_spectrogram: tone at a filter center dominates its neighbors") {
    // Center frequency of filter 12 (0-based) for 26 bands over 0..8000 Hz.
    const double mel_hi = hz_to_mel(8000.0);
    const double center_hz = mel_to_hz(mel_hi * 13.0 / 27.0);
    const AudioClip clip = make_sine_clip(center_hz, 1.0, 16000);
    const SpectrogramMatrix spec = spectrogram(clip, 512, 25.0, 10.0);
    const Eigen::MatrixXd mel = mel_spectrogram(spec, 26, 0.0, 8000.0);
    const Eigen::RowVectorXd mean = mel.colwise().mean();
    CHECK(mean(12) > mean(11));
    CHECK(mean(12) > mean(13));
}

TEST_CASE("mfcc: constant log-mel concentrates in coefficient 0") {
    const double c = 2.5; // log-mel value; power e^c
    const Eigen::MatrixXd mel = Eigen::MatrixXd::Constant(4, 26, std::exp(c));
    const MfccMatrix out = mfcc(mel, 13);
    REQUIRE(out.values.cols() == 13);
    for (Eigen::Index f = 0; f < out.values.rows(); ++f) {
        CHECK(out.values(f, 0) == doctest::Approx(c * std::sqrt(26.0)).epsilon(1e-9));
        for (Eigen::Index k = 1; k < 13; ++k) CHECK(std::abs(out.values(f, k)) < 1e-9);
    }
}

TEST_CASE("mfcc: zero mel frame hits the log floor") {
    const Eigen::MatrixXd mel = Eigen::MatrixXd::Zero(1, 26);
    const MfccMatrix out = mfcc(mel, 13);
    CHECK(out.values(0, 0) ==
          doctest::Approx(std::log(1e-10) * std::sqrt(26.0)).epsilon(1e-12));
    for (Eigen::Index k = 1; k < 13; ++k) CHECK(std::abs(out.values(0, k)) < 1e-9);
}

TEST_CASE("mfcc: orthonormal DCT inverts exactly with full coefficients") {
    Rng rng(12);
    Eigen::MatrixXd mel(5, 20);
    for (Eigen::Index i = 0; i < mel.size(); ++i) {
        mel(i / 20, i % 20) = rng.range(0.001, 10.0);
    }
    const MfccMatrix full = mfcc(mel, 20);
    const Eigen::MatrixXd log_mel = mel.array().max(1e-10).log().matrix();
    const Eigen::MatrixXd back = full.values * dct2_matrix(20, 20);
    CHECK((back - log_mel).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("mfcc: coefficient count validation") {
    const Eigen::MatrixXd mel = Eigen::MatrixXd::Ones(1, 8);
    CHECK_THROWS_AS(mfcc(mel, 9), ConfigError);
    CHECK_THROWS_AS(mfcc(mel, 0), ConfigError);
}

TEST_CASE("pool_clip: single frame, two frames, constant frames") {
    Eigen::MatrixXd single(1, 3);
    single << 1.0, -2.0, 0.5;
    const ClipFeatureVector a = pool_clip(single, "mfcc", "x");
    CHECK(a.values.head(3) == single.row(0).transpose());
    CHECK(a.values.tail(3).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.names.front() == "x_mean_00");
    CHECK(a.names.back() == "x_std_02");

    Eigen::MatrixXd two(2, 1);
    two << 0.0, 2.0;
    const ClipFeatureVector b = pool_clip(two, "mfcc", "x");
    CHECK(b.values[0] == 1.0); // mean
    CHECK(b.values[1] == 1.0); // population std

    const Eigen::MatrixXd constant = Eigen::MatrixXd::Constant(7, 13, 3.25);
    const ClipFeatureVector c = pool_clip(constant, "mfcc", "x");
    CHECK(c.values.size() == 26);
    CHECK(c.values.tail(13).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(pool_clip(Eigen::MatrixXd(0, 3), "mfcc", "x"), EmptyFrames);
}

TEST_CASE("amplitude scaling shifts only MFCC coefficient 0") {
    const AudioClip clip = make_sine_clip(300.0, 0.5, 16000, 0.3);
    AudioClip scaled = clip;
    const double a = 2.5;
    scaled.samples *= a;

    auto coeffs = [](const AudioClip& c) {
        const SpectrogramMatrix spec = spectrogram(c, 512, 25.0, 10.0);
        const Eigen::MatrixXd mel = mel_spectrogram(spec, 26, 0.0, 8000.0);
        return mfcc(mel, 13).values;
    };
    const Eigen::MatrixXd base = coeffs(clip);
    const Eigen::MatrixXd loud = coeffs(scaled);
    REQUIRE(base.rows() == loud.rows());
    // c0 shift = log(a^2) spread by the orthonormal DCT scale sqrt(n_mels)
    const double expected_shift = std::log(a * a) * std::sqrt(26.0);
    for (Eigen::Index f = 0; f < base.rows(); ++f) {
        CHECK(loud(f, 0) - base(f, 0) == doctest::Approx(expected_shift).epsilon(1e-6));
        for (Eigen::Index k = 1; k < 13; ++k) {
            CHECK(loud(f, k) == doctest::Approx(base(f, k)).epsilon(1e-6));
        }
    }
}

TEST_CASE("pooled features are robust to circular time shift") {
    // Exactly 125-sample-periodic clip (128 Hz harmonic stack plus a
    // repeated noise pattern), so a circular shift is a pure phase change.
    // The dense line spectrum keeps every mel band well above the log floor,
    // and the 125-sample period is incommensurate with the 160-sample hop,
    // so frames sample 25 distinct phases for the pooling to average over.
    AudioClip clip;
    clip.sample_rate = 16000;
    clip.samples = Eigen::ArrayXd::Zero(16000);
    Rng rng(40);
    Eigen::ArrayXd pattern(125);
    for (Eigen::Index i = 0; i < 125; ++i) pattern[i] = 0.04 * rng.normal();
    for (Eigen::Index i = 0; i < clip.samples.size(); ++i) {
        double v = pattern[i % 125];
        for (int h = 1; h <= 40; ++h) {
            v += (0.35 / h) * std::sin(2.0 * std::numbers::pi * 128.0 * h *
                                       static_cast<double>(i % 125) / 16000.0);
        }
        clip.samples[i] = v;
    }
    AudioClip shifted = clip;
    const Eigen::Index shift = 777;
    const Eigen::Index n = clip.samples.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        shifted.samples[i] = clip.samples[(i + shift) % n];
    }
    auto pooled = [](const AudioClip& c) {
        const SpectrogramMatrix spec = spectrogram(c, 512, 25.0, 10.0);
        const Eigen::MatrixXd mel = mel_spectrogram(spec, 26, 0.0, 8000.0);
        return pool_clip(mfcc(mel, 13).values, "mfcc", "mfcc").values;
    };
    const Eigen::VectorXd a = pooled(clip);
    const Eigen::VectorXd b = pooled(shifted);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        // 1% relative, with an absolute floor for the near-zero coefficients
        // where a relative bound is meaningless (coefficients are O(1..40)).
        const double tol = std::max(0.01 * std::max(std::abs(a[i]), std::abs(b[i])), 2e-3);
        CHECK(std::abs(a[i] - b[i]) <= tol);
    }
}

TEST_CASE("egemaps ingest: well-formed, delimiter variants, errors") {
    const auto dir = temp_dir("egemaps");
    std::string header = "clip_id";
    std::string row1 = "clip_a";
    std::string row2 = "clip_b";
    for (int i = 0; i < 88; ++i) {
        header += ",f" + std::to_string(i);
        row1 += "," + std::to_string(0.5 * i);
        row2 += "," + std::to_string(1.5 * i);
    }
    write_bytes(dir / "ok.csv", header + "\n" + row1 + "\n" + row2 + "\n");
    const EgemapsTable table = ingest_egemaps_csv(dir / "ok.csv");
    CHECK(table.clip_ids == std::vector<std::string>{"clip_a", "clip_b"});
    CHECK(table.values.rows() == 2);
    CHECK(table.values(1, 2) == doctest::Approx(3.0));

    // semicolon-delimited variant parses identically
    std::string semi = header + "\n" + row1 + "\n" + row2 + "\n";
    std::replace(semi.begin(), semi.end(), ',', ';');
    write_bytes(dir / "semi.csv", semi);
    const EgemapsTable table2 = ingest_egemaps_csv(dir / "semi.csv");
    CHECK(table2.clip_ids == table.clip_ids);
    CHECK(table2.values == table.values);

    // 87 numeric columns
    std::string short_header = "clip_id";
    std::string short_row = "clip_a";
    for (int i = 0; i < 87; ++i) {
        short_header += ",f" + std::to_string(i);
        short_row += ",1.0";
    }
    write_bytes(dir / "short.csv", short_header + "\n" + short_row + "\n");
    CHECK_THROWS_AS(ingest_egemaps_csv(dir / "short.csv"), WrongColumnCount);

    // duplicate id
    write_bytes(dir / "dup.csv", header + "\n" + row1 + "\n" + row1 + "\n");
    CHECK_THROWS_AS(ingest_egemaps_csv(dir / "dup.csv"), DuplicateId);

    // non-numeric cell
    std::string bad = row2;
    bad.replace(bad.find(",1.5"), 4, ",oops");
    write_bytes(dir / "bad.csv", header + "\n" + bad + "\n");
    CHECK_THROWS_AS(ingest_egemaps_csv(dir / "bad.csv"), NonNumericCell);
}
