#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

#include "voicegraph/signal.hpp"

namespace vg {

// Power spectrogram, one frame per row, bins 0..fft_size/2.
struct SpectrogramMatrix {
    Eigen::MatrixXd values; // n_frames x n_bins, nonnegative
    double bin_hz = 0.0;
    int fft_size = 0;
    double frame_ms = 0.0;
    double hop_ms = 0.0;
    int sample_rate = 0;

    Eigen::Index n_frames() const { return values.rows(); }
    Eigen::Index n_bins() const { return values.cols(); }
    double nyquist_hz() const { return sample_rate / 2.0; }
};

struct MfccMatrix {
    Eigen::MatrixXd values; // n_frames x n_coeffs
    Eigen::Index n_coeffs() const { return values.cols(); }
};

// Fixed-size per-clip vector: column means followed by column standard
// deviations of a frame-level feature matrix.
struct ClipFeatureVector {
    std::vector<std::string> names;
    Eigen::VectorXd values;
    std::string provenance; // mfcc | spectro | mel | egemaps
};

double hz_to_mel(double hz);
double mel_to_hz(double mel);

// Hamming-windowed frames, zero-padded to fft_size, squared-magnitude DFT of
// the nonnegative bins scaled by 1/fft_size (so the doubled bin sum equals
// the windowed-frame energy).
SpectrogramMatrix spectrogram(const AudioClip& clip, int fft_size, double frame_ms,
                              double hop_ms);

// Triangular HTK-mel filters, each normalized to unit weight sum.
// Rows are filters, columns are FFT bins.
Eigen::MatrixXd mel_filterbank(int n_mels, int fft_size, int sample_rate, double f_min,
                               double f_max);

Eigen::MatrixXd mel_spectrogram(const SpectrogramMatrix& spec, int n_mels, double f_min,
                                double f_max);

// Orthonormal DCT-II matrix (n_out x n_in).
Eigen::MatrixXd dct2_matrix(Eigen::Index n_out, Eigen::Index n_in);

// log (floored at 1e-10) then orthonormal DCT-II across the mel axis.
MfccMatrix mfcc(const Eigen::MatrixXd& mel_power, int n_coeffs);

inline constexpr double kLogFloor = 1e-10;

// Per-column mean and population standard deviation, concatenated mean||std.
ClipFeatureVector pool_clip(const Eigen::MatrixXd& frames, std::string_view provenance,
                            std::string_view name_prefix);

} // namespace vg
