#include "voicegraph/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "voicegraph/errors.hpp"

namespace vg {

void TimeSeries::validate() const {
    if (t.size() != y.size()) throw DataError("time series t/y length mismatch");
    if (!t.isFinite().all() || !y.isFinite().all()) throw DataError("non-finite time series value");
    for (Eigen::Index i = 1; i < t.size(); ++i) {
        if (!(t[i] > t[i - 1])) throw NonIncreasingTime("timestamps not strictly increasing");
    }
}

Eigen::ArrayXd make_window(WindowKind kind, Eigen::Index length) {
    Eigen::ArrayXd w(length);
    if (length == 1) {
        w[0] = 1.0;
        return w;
    }
    const double denom = static_cast<double>(length - 1);
    for (Eigen::Index n = 0; n < length; ++n) {
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(n) / denom;
        switch (kind) {
        case WindowKind::hamming: w[n] = 0.54 - 0.46 * std::cos(phase); break;
        case WindowKind::hann: w[n] = 0.5 * (1.0 - std::cos(phase)); break;
        case WindowKind::rect: w[n] = 1.0; break;
        }
    }
    return w;
}

TimeSeries compute_envelope(const AudioClip& clip, double window_ms) {
    const Eigen::Index n = clip.samples.size();
    const auto window_len =
        static_cast<Eigen::Index>(std::llround(window_ms * clip.sample_rate / 1000.0));
    if (window_len < 1) throw ConfigError("envelope window shorter than one sample");
    if (window_len > n) {
        throw WindowTooLong("envelope window of " + std::to_string(window_len) +
                            " samples exceeds clip length " + std::to_string(n));
    }
    const Eigen::Index hop = std::max<Eigen::Index>(1, window_len / 2);
    const Eigen::Index count = (n - window_len) / hop + 1;

    TimeSeries env;
    env.t.resize(count);
    env.y.resize(count);
    for (Eigen::Index k = 0; k < count; ++k) {
        const Eigen::Index start = k * hop;
        const double energy = clip.samples.segment(start, window_len).square().mean();
        env.y[k] = std::sqrt(energy);
        env.t[k] = (static_cast<double>(start) + (window_len - 1) / 2.0) / clip.sample_rate;
    }
    return env;
}

namespace {

// Topographic prominence: height above the higher of the two valley floors
// between the peak and the nearest strictly higher sample on each side (the
// series border when no higher sample exists).
double prominence_at(const Eigen::ArrayXd& y, Eigen::Index i) {
    double left_min = y[i];
    for (Eigen::Index j = i - 1; j >= 0; --j) {
        if (y[j] > y[i]) break;
        left_min = std::min(left_min, y[j]);
    }
    double right_min = y[i];
    for (Eigen::Index j = i + 1; j < y.size(); ++j) {
        if (y[j] > y[i]) break;
        right_min = std::min(right_min, y[j]);
    }
    return y[i] - std::max(left_min, right_min);
}

} // namespace

PeakSequence detect_peaks(const TimeSeries& series, double min_distance_ms,
                          double min_prominence) {
    series.validate();
    const Eigen::Index n = series.size();
    if (n < 3) throw TooShort("peak detection needs at least 3 points, got " + std::to_string(n));

    std::vector<Eigen::Index> candidates;
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
        if (series.y[i] > series.y[i - 1] && series.y[i] > series.y[i + 1]) {
            candidates.push_back(i);
        }
    }

    // Distance pruning: visit tallest first (earlier index on ties) and drop
    // any candidate closer than min_distance to an already kept peak.
    std::vector<Eigen::Index> kept = candidates;
    if (min_distance_ms > 0.0 && candidates.size() > 1) {
        const double min_dist_s = min_distance_ms / 1000.0;
        std::vector<Eigen::Index> order = candidates;
        std::sort(order.begin(), order.end(), [&series](Eigen::Index a, Eigen::Index b) {
            if (series.y[a] != series.y[b]) return series.y[a] > series.y[b];
            return a < b;
        });
        std::set<double> chosen_times;
        std::vector<Eigen::Index> chosen;
        for (Eigen::Index cand : order) {
            const double t = series.t[cand];
            auto next = chosen_times.lower_bound(t);
            bool blocked = next != chosen_times.end() && *next - t < min_dist_s;
            if (!blocked && next != chosen_times.begin()) {
                blocked = t - *std::prev(next) < min_dist_s;
            }
            if (!blocked) {
                chosen_times.insert(t);
                chosen.push_back(cand);
            }
        }
        std::sort(chosen.begin(), chosen.end());
        kept = std::move(chosen);
    }

    std::vector<Eigen::Index> final_peaks;
    for (Eigen::Index i : kept) {
        if (min_prominence <= 0.0 || prominence_at(series.y, i) >= min_prominence) {
            final_peaks.push_back(i);
        }
    }

    PeakSequence peaks;
    peaks.min_distance_ms = min_distance_ms;
    peaks.min_prominence = min_prominence;
    peaks.source_indices = final_peaks;
    const auto count = static_cast<Eigen::Index>(final_peaks.size());
    peaks.points.t.resize(count);
    peaks.points.y.resize(count);
    for (Eigen::Index k = 0; k < count; ++k) {
        peaks.points.t[k] = series.t[final_peaks[static_cast<std::size_t>(k)]];
        peaks.points.y[k] = series.y[final_peaks[static_cast<std::size_t>(k)]];
    }
    return peaks;
}

FrameMatrix frame_signal(const AudioClip& clip, double frame_ms, double hop_ms,
                         WindowKind window) {
    if (!(hop_ms > 0.0) || frame_ms < hop_ms) {
        throw ConfigError("need frame_ms >= hop_ms > 0");
    }
    const Eigen::Index n = clip.samples.size();
    const auto frame_len =
        static_cast<Eigen::Index>(std::llround(frame_ms * clip.sample_rate / 1000.0));
    const auto hop_len =
        std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::llround(hop_ms * clip.sample_rate / 1000.0)));
    if (frame_len < 1) throw ConfigError("frame shorter than one sample");
    if (n < frame_len) {
        throw ClipTooShort("clip of " + std::to_string(n) + " samples shorter than one frame (" +
                           std::to_string(frame_len) + ")");
    }
    const Eigen::Index n_frames = (n - frame_len) / hop_len + 1;
    const Eigen::ArrayXd w = make_window(window, frame_len);

    FrameMatrix out;
    out.frame_ms = frame_ms;
    out.hop_ms = hop_ms;
    out.window = window;
    out.sample_rate = clip.sample_rate;
    out.hop_len = hop_len;
    out.frames.resize(n_frames, frame_len);
    for (Eigen::Index k = 0; k < n_frames; ++k) {
        out.frames.row(k) = (clip.samples.segment(k * hop_len, frame_len) * w).matrix();
    }
    return out;
}

} // namespace vg
