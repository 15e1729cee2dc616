#pragma once

// Stereo spatial features: mid-side spectra, the MS intensity vector, and
// magnitude-squared coherence, assembled into the MSI / MSIC stacks.
//
// Stack channel order is fixed and load-bearing for the augmentations:
//   0 logmel_L, 1 logmel_R, 2 logmel_M, 3 logmel_S, 4 IV, 5 MSC (MSIC only)

#include <complex>
#include <stdexcept>
#include <vector>

#include "stereoseld/dsp.hpp"
#include "stereoseld/tensor.hpp"
#include "stereoseld/wave_io.hpp"

namespace stereoseld {

inline constexpr std::size_t kChLogMelL = 0;
inline constexpr std::size_t kChLogMelR = 1;
inline constexpr std::size_t kChLogMelM = 2;
inline constexpr std::size_t kChLogMelS = 3;
inline constexpr std::size_t kChIv = 4;
inline constexpr std::size_t kChMsc = 5;

struct MidSideClip {
    std::vector<double> mid;
    std::vector<double> side;
};

// mid = (L+R)/2, side = (L-R)/2. Reconstruction L = m+s, R = m-s holds to
// double rounding (well under 1e-12).
inline MidSideClip mid_side(const StereoClip& clip) {
    if (clip.left.size() != clip.right.size())
        throw std::invalid_argument("mid_side: channel lengths differ");
    MidSideClip ms;
    ms.mid.resize(clip.left.size());
    ms.side.resize(clip.left.size());
    for (std::size_t i = 0; i < clip.left.size(); ++i) {
        ms.mid[i] = (clip.left[i] + clip.right[i]) / 2.0;
        ms.side[i] = (clip.left[i] - clip.right[i]) / 2.0;
    }
    return ms;
}

// Real part of the MS cross-spectrum normalized by total MS power. The
// output is bounded to [-0.5, 0.5]: |Re{M S*}| <= |M||S| <= (|M|^2+|S|^2)/2.
inline Mat ms_intensity(const Spectrogram& mid, const Spectrogram& side, double eps = 1e-8) {
    if (mid.frames != side.frames || mid.bins != side.bins)
        throw std::invalid_argument("ms_intensity: spectrogram shapes differ");
    if (!(eps > 0)) throw std::invalid_argument("ms_intensity: eps must be positive");
    Mat out(mid.frames, mid.bins);
    for (std::size_t t = 0; t < mid.frames; ++t) {
        for (std::size_t f = 0; f < mid.bins; ++f) {
            const auto m = mid.at(t, f);
            const auto s = side.at(t, f);
            const double cross = m.real() * s.real() + m.imag() * s.imag();
            out.at(t, f) = cross / (std::norm(m) + std::norm(s) + eps);
        }
    }
    return out;
}

// Per-clip recursive cross-PSD state for the coherence estimate. The three
// auto/cross estimates share one recursion, which keeps the Cauchy-Schwarz
// bound |phi_lr|^2 <= phi_ll * phi_rr intact at every step.
struct CoherenceEstimator {
    double lambda = 0.8;
    double eps = 1e-8;

    std::vector<double> phi_ll;
    std::vector<double> phi_rr;
    std::vector<std::complex<double>> phi_lr;
    bool primed = false;

    void reset(std::size_t bins) {
        phi_ll.assign(bins, 0.0);
        phi_rr.assign(bins, 0.0);
        phi_lr.assign(bins, {0.0, 0.0});
        primed = false;
    }

    // Feeds one STFT frame and writes the per-bin coherence for it. The
    // first frame primes the state with the instantaneous products.
    void step(const std::complex<double>* l, const std::complex<double>* r,
              double* gamma_out, std::size_t bins) {
        for (std::size_t f = 0; f < bins; ++f) {
            const double inst_ll = std::norm(l[f]);
            const double inst_rr = std::norm(r[f]);
            const std::complex<double> inst_lr = l[f] * std::conj(r[f]);
            if (!primed) {
                phi_ll[f] = inst_ll;
                phi_rr[f] = inst_rr;
                phi_lr[f] = inst_lr;
            } else {
                phi_ll[f] = lambda * phi_ll[f] + (1.0 - lambda) * inst_ll;
                phi_rr[f] = lambda * phi_rr[f] + (1.0 - lambda) * inst_rr;
                phi_lr[f] = lambda * phi_lr[f] + (1.0 - lambda) * inst_lr;
            }
            double g = std::norm(phi_lr[f]) / (phi_ll[f] * phi_rr[f] + eps);
            if (g < 0.0) g = 0.0;
            if (g > 1.0) g = 1.0;  // guards rounding at the Cauchy-Schwarz boundary
            gamma_out[f] = g;
        }
        primed = true;
    }
};

// Magnitude-squared coherence over a whole clip. Resets the estimator and
// runs the time recursion front to back; values lie in [0, 1].
inline Mat msc(const Spectrogram& left, const Spectrogram& right, CoherenceEstimator& est) {
    if (left.frames != right.frames || left.bins != right.bins)
        throw std::invalid_argument("msc: spectrogram shapes differ");
    est.reset(left.bins);
    Mat gamma(left.frames, left.bins);
    for (std::size_t t = 0; t < left.frames; ++t)
        est.step(left.row(t), right.row(t), gamma.row(t), left.bins);
    return gamma;
}

// Mel projections of the spatial planes. Both apply the filterbank to the
// raw linear values (no log).
inline Mat project_iv_to_mel(const Mat& iv, const MelFilterbank& fb) {
    return project_to_mel(iv, fb);
}

inline Mat project_msc_to_mel(const Mat& gamma, const MelFilterbank& fb) {
    return project_to_mel(gamma, fb);
}

enum class FeatureKind { msi, msic };

inline std::size_t channel_count(FeatureKind kind) {
    return kind == FeatureKind::msi ? 5 : 6;
}

struct FeatureParams {
    StftParams stft;
    std::size_t n_mels = 96;
    double f_min = 0.0;
    double f_max = -1.0;  // <= 0 means Nyquist
    MelScale mel_scale = MelScale::slaney;
    double log_floor = 1e-10;
    double eps = 1e-8;
    double msc_lambda = 0.8;
};

// Computes the full per-clip feature stack: channels x frames x mel bands,
// float32. A 5 s clip at 24 kHz yields 400 frames x 96 bands.
inline Tensor assemble_stack(const StereoClip& clip, FeatureKind kind,
                             const FeatureParams& params = {}) {
    if (clip.left.size() != clip.right.size())
        throw std::invalid_argument("assemble_stack: channel lengths differ");
    if (clip.left.empty()) throw std::invalid_argument("assemble_stack: empty clip");

    const double f_max =
        params.f_max > 0 ? params.f_max : static_cast<double>(clip.sample_rate_hz) / 2.0;
    const MelFilterbank fb = build_mel_filterbank(clip.sample_rate_hz, params.stft.fft_size,
                                                  params.n_mels, params.f_min, f_max,
                                                  params.mel_scale);

    const Spectrogram spec_l = stft(clip.left, params.stft);
    const Spectrogram spec_r = stft(clip.right, params.stft);
    const MidSideClip ms = mid_side(clip);
    const Spectrogram spec_m = stft(ms.mid, params.stft);
    const Spectrogram spec_s = stft(ms.side, params.stft);

    const Mat lm_l = log_mel(spec_l, fb, params.log_floor);
    const Mat lm_r = log_mel(spec_r, fb, params.log_floor);
    const Mat lm_m = log_mel(spec_m, fb, params.log_floor);
    const Mat lm_s = log_mel(spec_s, fb, params.log_floor);
    const Mat iv = project_iv_to_mel(ms_intensity(spec_m, spec_s, params.eps), fb);

    const std::size_t channels = channel_count(kind);
    Tensor stack({channels, spec_l.frames, fb.n_mels});
    auto copy_plane = [&](std::size_t ch, const Mat& plane) {
        for (std::size_t t = 0; t < plane.rows; ++t)
            for (std::size_t k = 0; k < plane.cols; ++k)
                stack.at(ch, t, k) = static_cast<float>(plane.at(t, k));
    };
    copy_plane(kChLogMelL, lm_l);
    copy_plane(kChLogMelR, lm_r);
    copy_plane(kChLogMelM, lm_m);
    copy_plane(kChLogMelS, lm_s);
    copy_plane(kChIv, iv);
    if (kind == FeatureKind::msic) {
        CoherenceEstimator est;
        est.lambda = params.msc_lambda;
        est.eps = params.eps;
        copy_plane(kChMsc, project_msc_to_mel(msc(spec_l, spec_r, est), fb));
    }
    return stack;
}

}  // namespace stereoseld
