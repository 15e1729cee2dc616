#pragma once

// Stereo-aware augmentations: waveform-level channel swapping with the
// paired label transform, and spectrogram-level FilterAugment, frequency
// shifting, and inter-channel-aware TF masking.
//
// Every random procedure documents its exact draw order against the Rng so
// that a seeded run is reproducible byte for byte.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stereoseld/rng.hpp"
#include "stereoseld/stereo_features.hpp"
#include "stereoseld/tensor.hpp"
#include "stereoseld/wave_io.hpp"

namespace stereoseld {

struct FilterAugmentConfig {
    int min_bands = 3;
    int max_bands = 6;
    double min_gain_db = -6.0;
    double max_gain_db = 6.0;
};

struct FreqShiftConfig {
    int max_shift_bins = 10;
};

struct ItfmConfig {
    int max_time_masks = 2;
    int max_time_width = 40;   // frames
    int max_freq_masks = 2;
    int max_freq_width = 16;   // mel bands
    bool rectangles = false;   // stripes by default
};

struct AugmentConfig {
    std::uint64_t seed = 0;
    FilterAugmentConfig filteraug;
    FreqShiftConfig freqshift;
    ItfmConfig itfm;
};

// Half-open TF rectangle [t0,t1) x [k0,k1).
struct MaskRect {
    std::size_t t0, t1, k0, k1;
};
using MaskSet = std::vector<MaskRect>;

// Azimuth reflection about the frontal axis on the [-180, 180) wrap:
// -180 is its own image (+180 is not representable).
inline double invert_azimuth(double az) { return az == -180.0 ? -180.0 : -az; }

// Audio channel swap with the paired label transform. The swap is bit-exact
// and the whole operation is an involution.
inline std::pair<StereoClip, EventList> acs(StereoClip clip, EventList events) {
    std::swap(clip.left, clip.right);
    for (auto& e : events.entries) e.azimuth_deg = invert_azimuth(e.azimuth_deg);
    return {std::move(clip), std::move(events)};
}

namespace detail {

inline void require_stack_layout(const Tensor& stack) {
    if (stack.rank() != 3 || (stack.dim(0) != 5 && stack.dim(0) != 6))
        throw std::invalid_argument("augment: expected a 5- or 6-channel feature stack");
}

}  // namespace detail

// Adds the step gain profile to the four log-mel channels only. boundaries
// are interior band indices (sorted, in (0, K)); gains_db has one entry per
// band, i.e. boundaries.size() + 1.
inline Tensor apply_band_gains(Tensor stack, const std::vector<std::size_t>& boundaries,
                               const std::vector<double>& gains_db) {
    detail::require_stack_layout(stack);
    if (gains_db.size() != boundaries.size() + 1)
        throw std::invalid_argument("apply_band_gains: need one gain per band");
    const std::size_t frames = stack.dim(1), bands = stack.dim(2);

    std::vector<float> gain_per_band(bands);
    std::size_t b = 0;
    for (std::size_t k = 0; k < bands; ++k) {
        while (b < boundaries.size() && k >= boundaries[b]) ++b;
        gain_per_band[k] = static_cast<float>(gains_db[b]);
    }
    for (std::size_t ch = 0; ch <= kChLogMelS; ++ch)
        for (std::size_t t = 0; t < frames; ++t)
            for (std::size_t k = 0; k < bands; ++k) stack.at(ch, t, k) += gain_per_band[k];
    return stack;
}

// FilterAugment. Draw order: n_bands = int_in(min_bands, max_bands); then
// n_bands-1 distinct interior boundaries, each via int_in(1, K-1) redrawn on
// collision; then one gain per band via real_in(min_gain, max_gain) in
// ascending band order.
inline Tensor filter_augment(const Tensor& stack, const FilterAugmentConfig& cfg, Rng& rng) {
    detail::require_stack_layout(stack);
    if (cfg.min_bands < 1 || cfg.max_bands < cfg.min_bands)
        throw std::invalid_argument("filter_augment: empty band-count range");
    const std::size_t bands = stack.dim(2);
    if (static_cast<std::size_t>(cfg.max_bands) > bands)
        throw std::invalid_argument("filter_augment: more bands than mel bins");

    const int n_bands = static_cast<int>(rng.int_in(cfg.min_bands, cfg.max_bands));
    std::vector<std::size_t> boundaries;
    while (boundaries.size() + 1 < static_cast<std::size_t>(n_bands)) {
        const auto cand = static_cast<std::size_t>(rng.int_in(1, static_cast<long long>(bands) - 1));
        if (std::find(boundaries.begin(), boundaries.end(), cand) == boundaries.end())
            boundaries.push_back(cand);
    }
    std::sort(boundaries.begin(), boundaries.end());
    std::vector<double> gains(static_cast<std::size_t>(n_bands));
    for (auto& gain : gains) gain = rng.real_in(cfg.min_gain_db, cfg.max_gain_db);
    return apply_band_gains(stack, boundaries, gains);
}

// Shifts every channel along the mel axis by k bands (positive = upward).
// Vacated bands take the channel's pre-shift minimum for the log-mel
// channels and 0 for IV/MSC.
inline Tensor shift_mel(const Tensor& stack, int k) {
    detail::require_stack_layout(stack);
    const std::size_t channels = stack.dim(0), frames = stack.dim(1), bands = stack.dim(2);
    if (static_cast<std::size_t>(std::abs(k)) >= bands)
        throw std::invalid_argument("shift_mel: |shift| must be smaller than the band count");
    if (k == 0) return stack;

    Tensor out(stack.shape);
    for (std::size_t ch = 0; ch < channels; ++ch) {
        float fill = 0.0f;
        if (ch <= kChLogMelS) {
            fill = stack.at(ch, 0, 0);
            for (std::size_t t = 0; t < frames; ++t)
                for (std::size_t b = 0; b < bands; ++b) fill = std::min(fill, stack.at(ch, t, b));
        }
        for (std::size_t t = 0; t < frames; ++t) {
            for (std::size_t b = 0; b < bands; ++b) {
                const long long src = static_cast<long long>(b) - k;
                out.at(ch, t, b) = (src >= 0 && src < static_cast<long long>(bands))
                                       ? stack.at(ch, t, static_cast<std::size_t>(src))
                                       : fill;
            }
        }
    }
    return out;
}

// Frequency shifting. Draw order: k = int_in(-max_shift_bins, +max_shift_bins).
inline Tensor freq_shift(const Tensor& stack, const FreqShiftConfig& cfg, Rng& rng) {
    if (cfg.max_shift_bins < 0) throw std::invalid_argument("freq_shift: negative range");
    const int k = static_cast<int>(rng.int_in(-cfg.max_shift_bins, cfg.max_shift_bins));
    return shift_mel(stack, k);
}

// ITFM mask draw. Order: n_time = int_in(0, max_time_masks); per mask width =
// int_in(1, max_time_width) then start = int_in(0, T-width); the same for
// frequency masks. In rectangle mode each time mask additionally draws a
// frequency extent (width, start) and vice versa, immediately after its own.
inline MaskSet draw_itfm_masks(std::size_t frames, std::size_t bands, const ItfmConfig& cfg,
                               Rng& rng) {
    if (cfg.max_time_width <= 0 || static_cast<std::size_t>(cfg.max_time_width) >= frames ||
        cfg.max_freq_width <= 0 || static_cast<std::size_t>(cfg.max_freq_width) >= bands)
        throw std::invalid_argument("itfm: mask widths must be positive and smaller than the axis");

    MaskSet masks;
    auto draw_extent = [&rng](std::size_t axis_len, int max_width) {
        const auto width = static_cast<std::size_t>(rng.int_in(1, max_width));
        const auto start = static_cast<std::size_t>(
            rng.int_in(0, static_cast<long long>(axis_len - width)));
        return std::make_pair(start, start + width);
    };

    const auto n_time = rng.int_in(0, cfg.max_time_masks);
    for (long long i = 0; i < n_time; ++i) {
        const auto [t0, t1] = draw_extent(frames, cfg.max_time_width);
        if (cfg.rectangles) {
            const auto [k0, k1] = draw_extent(bands, cfg.max_freq_width);
            masks.push_back({t0, t1, k0, k1});
        } else {
            masks.push_back({t0, t1, 0, bands});
        }
    }
    const auto n_freq = rng.int_in(0, cfg.max_freq_masks);
    for (long long i = 0; i < n_freq; ++i) {
        const auto [k0, k1] = draw_extent(bands, cfg.max_freq_width);
        if (cfg.rectangles) {
            const auto [t0, t1] = draw_extent(frames, cfg.max_time_width);
            masks.push_back({t0, t1, k0, k1});
        } else {
            masks.push_back({0, frames, k0, k1});
        }
    }
    return masks;
}

// Applies inter-channel-aware masking: the LR and MS log-mel differences are
// captured before masking and rebuilt inside every masked cell around the
// channel-mean fill, so D_LR and D_MS survive the mask. IV and MSC are
// zeroed inside masks. Arithmetic runs in double; the residual error is the
// float32 quantization of the rebuilt partner channel.
inline Tensor apply_itfm_masks(Tensor stack, const MaskSet& masks) {
    detail::require_stack_layout(stack);
    const std::size_t channels = stack.dim(0), frames = stack.dim(1), bands = stack.dim(2);
    for (const auto& m : masks)
        if (m.t0 > m.t1 || m.t1 > frames || m.k0 > m.k1 || m.k1 > bands)
            throw std::invalid_argument("itfm: mask rectangle out of bounds");
    if (masks.empty()) return stack;

    Mat d_lr(frames, bands), d_ms(frames, bands);
    double sum_l = 0.0, sum_m = 0.0;
    for (std::size_t t = 0; t < frames; ++t) {
        for (std::size_t k = 0; k < bands; ++k) {
            d_lr.at(t, k) = static_cast<double>(stack.at(kChLogMelL, t, k)) -
                            static_cast<double>(stack.at(kChLogMelR, t, k));
            d_ms.at(t, k) = static_cast<double>(stack.at(kChLogMelM, t, k)) -
                            static_cast<double>(stack.at(kChLogMelS, t, k));
            sum_l += stack.at(kChLogMelL, t, k);
            sum_m += stack.at(kChLogMelM, t, k);
        }
    }
    // The fill is quantized to float32 up front; the partner channel is then
    // derived from the quantized fill, so the stored difference carries a
    // single rounding (half an ulp of |fill - D|).
    const auto fill_l = static_cast<float>(sum_l / static_cast<double>(frames * bands));
    const auto fill_m = static_cast<float>(sum_m / static_cast<double>(frames * bands));

    for (const auto& m : masks) {
        for (std::size_t t = m.t0; t < m.t1; ++t) {
            for (std::size_t k = m.k0; k < m.k1; ++k) {
                stack.at(kChLogMelL, t, k) = fill_l;
                stack.at(kChLogMelR, t, k) =
                    static_cast<float>(static_cast<double>(fill_l) - d_lr.at(t, k));
                stack.at(kChLogMelM, t, k) = fill_m;
                stack.at(kChLogMelS, t, k) =
                    static_cast<float>(static_cast<double>(fill_m) - d_ms.at(t, k));
                stack.at(kChIv, t, k) = 0.0f;
                if (channels > kChMsc) stack.at(kChMsc, t, k) = 0.0f;
            }
        }
    }
    return stack;
}

inline Tensor itfm(const Tensor& stack, const ItfmConfig& cfg, Rng& rng) {
    detail::require_stack_layout(stack);
    return apply_itfm_masks(stack, draw_itfm_masks(stack.dim(1), stack.dim(2), cfg, rng));
}

enum class AugmentMode { none, itfm, fafs, acs_offline };

// Builds the per-clip spectrogram augmentation. ITFM applies masking alone;
// FAFS applies FilterAugment then frequency shifting through one Rng stream.
// The result depends only on (cfg.seed, clip_key), never on call order.
inline std::function<Tensor(const Tensor&, std::uint64_t)> compose_pipeline(
    AugmentMode mode, const AugmentConfig& cfg) {
    switch (mode) {
        case AugmentMode::none:
        case AugmentMode::acs_offline:
            return [](const Tensor& stack, std::uint64_t) { return stack; };
        case AugmentMode::itfm:
            return [cfg](const Tensor& stack, std::uint64_t clip_key) {
                Rng rng(mix_seed(cfg.seed, clip_key));
                return itfm(stack, cfg.itfm, rng);
            };
        case AugmentMode::fafs:
            return [cfg](const Tensor& stack, std::uint64_t clip_key) {
                Rng rng(mix_seed(cfg.seed, clip_key));
                Tensor out = filter_augment(stack, cfg.filteraug, rng);
                return freq_shift(out, cfg.freqshift, rng);
            };
    }
    throw std::invalid_argument("unknown augmentation mode");
}

}  // namespace stereoseld
