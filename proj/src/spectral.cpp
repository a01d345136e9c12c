#include "voicegraph/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "voicegraph/errors.hpp"

namespace vg {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

// In-place iterative radix-2 FFT. Size must be a power of two, which the
// spectrogram precondition guarantees.
void fft_inplace(std::vector<std::complex<double>>& a,
                 const std::vector<std::complex<double>>& twiddles) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> w = twiddles[k * stride];
                const std::complex<double> u = a[start + k];
                const std::complex<double> v = a[start + k + len / 2] * w;
                a[start + k] = u + v;
                a[start + k + len / 2] = u - v;
            }
        }
    }
}

std::vector<std::complex<double>> make_twiddles(std::size_t n) {
    std::vector<std::complex<double>> tw(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        tw[k] = {std::cos(angle), std::sin(angle)};
    }
    return tw;
}

} // namespace

SpectrogramMatrix spectrogram(const AudioClip& clip, int fft_size, double frame_ms,
                              double hop_ms) {
    if (!is_power_of_two(fft_size)) {
        throw BadFftSize("fft_size must be a power of two, got " + std::to_string(fft_size));
    }
    const FrameMatrix framed = frame_signal(clip, frame_ms, hop_ms, WindowKind::hamming);
    if (framed.frame_len() > fft_size) {
        throw BadFftSize("fft_size " + std::to_string(fft_size) + " smaller than frame length " +
                         std::to_string(framed.frame_len()));
    }

    SpectrogramMatrix spec;
    spec.fft_size = fft_size;
    spec.sample_rate = clip.sample_rate;
    spec.bin_hz = static_cast<double>(clip.sample_rate) / fft_size;
    spec.frame_ms = frame_ms;
    spec.hop_ms = hop_ms;
    const Eigen::Index n_bins = fft_size / 2 + 1;
    spec.values.resize(framed.n_frames(), n_bins);

    const auto twiddles = make_twiddles(static_cast<std::size_t>(fft_size));
    std::vector<std::complex<double>> buf(static_cast<std::size_t>(fft_size));
    for (Eigen::Index k = 0; k < framed.n_frames(); ++k) {
        for (Eigen::Index i = 0; i < framed.frame_len(); ++i) {
            buf[static_cast<std::size_t>(i)] = {framed.frames(k, i), 0.0};
        }
        std::fill(buf.begin() + framed.frame_len(), buf.end(), std::complex<double>{0.0, 0.0});
        fft_inplace(buf, twiddles);
        for (Eigen::Index b = 0; b < n_bins; ++b) {
            spec.values(k, b) = std::norm(buf[static_cast<std::size_t>(b)]) / fft_size;
        }
    }
    return spec;
}

Eigen::MatrixXd mel_filterbank(int n_mels, int fft_size, int sample_rate, double f_min,
                               double f_max) {
    const double nyquist = sample_rate / 2.0;
    if (!(f_min >= 0.0) || !(f_min < f_max) || !(f_max <= nyquist)) {
        throw BadBand("need 0 <= f_min < f_max <= Nyquist (" + std::to_string(nyquist) + " Hz )");
    }
    if (n_mels < 1) throw BadBand("need at least one mel band");

    const Eigen::Index n_bins = fft_size / 2 + 1;
    const double mel_lo = hz_to_mel(f_min);
    const double mel_hi = hz_to_mel(f_max);
    std::vector<double> corners(static_cast<std::size_t>(n_mels) + 2);
    for (std::size_t j = 0; j < corners.size(); ++j) {
        corners[j] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(j) /
                                            static_cast<double>(n_mels + 1));
    }

    Eigen::MatrixXd bank = Eigen::MatrixXd::Zero(n_mels, n_bins);
    for (int m = 0; m < n_mels; ++m) {
        const double lo = corners[static_cast<std::size_t>(m)];
        const double mid = corners[static_cast<std::size_t>(m) + 1];
        const double hi = corners[static_cast<std::size_t>(m) + 2];
        double weight_sum = 0.0;
        for (Eigen::Index b = 0; b < n_bins; ++b) {
            const double f = static_cast<double>(b) * sample_rate / fft_size;
            double w = 0.0;
            if (f > lo && f < mid) {
                w = (f - lo) / (mid - lo);
            } else if (f == mid) {
                w = 1.0;
            } else if (f > mid && f < hi) {
                w = (hi - f) / (hi - mid);
            }
            bank(m, b) = w;
            weight_sum += w;
        }
        if (weight_sum <= 0.0) {
            throw BadBand("mel filter " + std::to_string(m) +
                          " covers no FFT bin; widen the band or lower n_mels");
        }
        bank.row(m) /= weight_sum;
    }
    return bank;
}

Eigen::MatrixXd mel_spectrogram(const SpectrogramMatrix& spec, int n_mels, double f_min,
                                double f_max) {
    const Eigen::MatrixXd bank =
        mel_filterbank(n_mels, spec.fft_size, spec.sample_rate, f_min, f_max);
    return spec.values * bank.transpose();
}

Eigen::MatrixXd dct2_matrix(Eigen::Index n_out, Eigen::Index n_in) {
    Eigen::MatrixXd d(n_out, n_in);
    const double scale0 = std::sqrt(1.0 / static_cast<double>(n_in));
    const double scale = std::sqrt(2.0 / static_cast<double>(n_in));
    for (Eigen::Index k = 0; k < n_out; ++k) {
        for (Eigen::Index m = 0; m < n_in; ++m) {
            const double angle = std::numbers::pi * static_cast<double>(k) *
                                 (2.0 * static_cast<double>(m) + 1.0) /
                                 (2.0 * static_cast<double>(n_in));
            d(k, m) = (k == 0 ? scale0 : scale) * std::cos(angle);
        }
    }
    return d;
}

MfccMatrix mfcc(const Eigen::MatrixXd& mel_power, int n_coeffs) {
    if (n_coeffs < 1 || n_coeffs > mel_power.cols()) {
        throw ConfigError("n_coeffs must be in [1, n_mels], got " + std::to_string(n_coeffs));
    }
    const Eigen::MatrixXd log_mel = mel_power.cwiseMax(kLogFloor).array().log().matrix();
    MfccMatrix out;
    out.values = log_mel * dct2_matrix(n_coeffs, mel_power.cols()).transpose();
    return out;
}

ClipFeatureVector pool_clip(const Eigen::MatrixXd& frames, std::string_view provenance,
                            std::string_view name_prefix) {
    if (frames.rows() < 1) throw EmptyFrames("cannot pool an empty frame matrix");
    const Eigen::Index d = frames.cols();
    const Eigen::RowVectorXd mean = frames.colwise().mean();
    const Eigen::RowVectorXd var =
        (frames.rowwise() - mean).array().square().colwise().mean();

    ClipFeatureVector out;
    out.provenance = std::string(provenance);
    out.values.resize(2 * d);
    out.values.head(d) = mean.transpose();
    out.values.tail(d) = var.array().sqrt().matrix().transpose();
    out.names.reserve(static_cast<std::size_t>(2 * d));
    char buf[64];
    for (Eigen::Index i = 0; i < d; ++i) {
        std::snprintf(buf, sizeof(buf), "%s_mean_%02ld", std::string(name_prefix).c_str(),
                      static_cast<long>(i));
        out.names.emplace_back(buf);
    }
    for (Eigen::Index i = 0; i < d; ++i) {
        std::snprintf(buf, sizeof(buf), "%s_std_%02ld", std::string(name_prefix).c_str(),
                      static_cast<long>(i));
        out.names.emplace_back(buf);
    }
    return out;
}

} // namespace vg
