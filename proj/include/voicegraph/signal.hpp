#pragma once

#include <Eigen/Dense>
#include <vector>

#include "voicegraph/wav.hpp"

namespace vg {

// Ordered (t, y) samples with strictly increasing t. This is the domain of
// the visibility mapping; an envelope peak sequence is one of these.
struct TimeSeries {
    Eigen::ArrayXd t; // seconds
    Eigen::ArrayXd y; // dimensionless amplitude

    Eigen::Index size() const { return t.size(); }
    // Throws NonIncreasingTime / DataError on invariant violations.
    void validate() const;
};

// Local maxima of an envelope, with the detection parameters that produced
// them. envelope_window_ms is 0 when peaks were detected on a raw series.
struct PeakSequence {
    TimeSeries points;
    std::vector<Eigen::Index> source_indices; // indices into the source series
    double envelope_window_ms = 0.0;
    double min_distance_ms = 0.0;
    double min_prominence = 0.0;

    Eigen::Index size() const { return points.size(); }
};

enum class WindowKind { hamming, hann, rect };

// Windowed frames of a clip, one frame per row.
struct FrameMatrix {
    Eigen::MatrixXd frames; // n_frames x frame_len
    double frame_ms = 0.0;
    double hop_ms = 0.0;
    WindowKind window = WindowKind::hamming;
    int sample_rate = 0;
    Eigen::Index hop_len = 0;

    Eigen::Index n_frames() const { return frames.rows(); }
    Eigen::Index frame_len() const { return frames.cols(); }
};

Eigen::ArrayXd make_window(WindowKind kind, Eigen::Index length);

// Moving-RMS envelope with hop = window / 2. Timestamps are window centers.
TimeSeries compute_envelope(const AudioClip& clip, double window_ms);

// Strict local maxima, pruned by minimum peak distance (the larger of two
// close peaks wins, earlier on ties) and by topographic prominence.
PeakSequence detect_peaks(const TimeSeries& series, double min_distance_ms,
                          double min_prominence);

// Frames at hop intervals, each multiplied by the chosen window. A trailing
// partial frame is dropped, never padded.
FrameMatrix frame_signal(const AudioClip& clip, double frame_ms, double hop_ms,
                         WindowKind window);

} // namespace vg
