#pragma once

// Windowed STFT and mel-scale projection shared by every feature extractor.
// All analysis runs in double precision; feature stacks are cast to float32
// only at assembly time.

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "stereoseld/tensor.hpp"

namespace stereoseld {

struct StftParams {
    std::size_t fft_size = 1024;
    std::size_t hop = 300;
};

struct Spectrogram {
    std::size_t frames = 0;
    std::size_t bins = 0;  // fft_size / 2 + 1
    std::vector<std::complex<double>> v;

    Spectrogram() = default;
    Spectrogram(std::size_t t, std::size_t f) : frames(t), bins(f), v(t * f) {}

    std::complex<double>& at(std::size_t t, std::size_t f) { return v[t * bins + f]; }
    const std::complex<double>& at(std::size_t t, std::size_t f) const { return v[t * bins + f]; }
    std::complex<double>* row(std::size_t t) { return v.data() + t * bins; }
    const std::complex<double>* row(std::size_t t) const { return v.data() + t * bins; }
};

// DFT-even (periodic) Hann window.
inline std::vector<double> hann_periodic(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = 0.5 - 0.5 * std::cos(2.0 * 3.14159265358979323846 * static_cast<double>(i) /
                                    static_cast<double>(n));
    return w;
}

namespace detail {

// Radix-2 plan reused across the frames of one clip.
struct FftPlan {
    std::size_t n;
    std::vector<std::size_t> bitrev;
    std::vector<std::complex<double>> twiddle;  // e^{-2pi i k / n}, k < n/2

    explicit FftPlan(std::size_t size) : n(size), bitrev(size) {
        if (n == 0 || (n & (n - 1)) != 0)
            throw std::invalid_argument("FFT size must be a power of two");
        std::size_t log2n = 0;
        while ((std::size_t{1} << log2n) < n) ++log2n;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (std::size_t b = 0; b < log2n; ++b)
                if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2n - 1 - b);
            bitrev[i] = r;
        }
        twiddle.resize(n / 2);
        for (std::size_t k = 0; k < n / 2; ++k) {
            const double a = -2.0 * 3.14159265358979323846 * static_cast<double>(k) /
                             static_cast<double>(n);
            twiddle[k] = {std::cos(a), std::sin(a)};
        }
    }

    void run(std::complex<double>* a) const {
        for (std::size_t i = 0; i < n; ++i)
            if (i < bitrev[i]) std::swap(a[i], a[bitrev[i]]);
        for (std::size_t len = 2; len <= n; len <<= 1) {
            const std::size_t stride = n / len;
            for (std::size_t i = 0; i < n; i += len) {
                for (std::size_t j = 0; j < len / 2; ++j) {
                    const auto w = twiddle[j * stride];
                    const auto u = a[i + j];
                    const auto t = a[i + j + len / 2] * w;
                    a[i + j] = u + t;
                    a[i + j + len / 2] = u - t;
                }
            }
        }
    }
};

// numpy-style reflect index (boundary sample not repeated); a length-1
// signal degenerates to its single value.
inline std::size_t reflect_index(long long idx, long long n) {
    if (n == 1) return 0;
    const long long period = 2 * (n - 1);
    long long m = idx % period;
    if (m < 0) m += period;
    if (m >= n) m = period - m;
    return static_cast<std::size_t>(m);
}

}  // namespace detail

// Center-padded STFT. Frame t covers fft_size samples centered at t*hop,
// with reflect padding at the edges. The frame count is floor(len/hop)+1,
// truncated to floor(len/hop) when len is an exact hop multiple, so a
// 120000-sample clip at hop 300 yields exactly 400 frames.
inline Spectrogram stft(std::span<const double> x, const StftParams& p) {
    if (x.empty()) throw std::invalid_argument("stft: empty input");
    if (p.hop == 0 || p.hop > p.fft_size)
        throw std::invalid_argument("stft: hop must be in [1, fft_size]");

    const detail::FftPlan plan(p.fft_size);
    const auto window = hann_periodic(p.fft_size);

    const std::size_t len = x.size();
    const std::size_t frames = len % p.hop == 0 ? len / p.hop : len / p.hop + 1;
    const std::size_t bins = p.fft_size / 2 + 1;

    Spectrogram spec(frames, bins);
    std::vector<std::complex<double>> buf(p.fft_size);
    const long long half = static_cast<long long>(p.fft_size) / 2;
    for (std::size_t t = 0; t < frames; ++t) {
        const long long start = static_cast<long long>(t * p.hop) - half;
        for (std::size_t i = 0; i < p.fft_size; ++i) {
            const std::size_t src = detail::reflect_index(start + static_cast<long long>(i),
                                                          static_cast<long long>(len));
            buf[i] = window[i] * x[src];
        }
        plan.run(buf.data());
        for (std::size_t f = 0; f < bins; ++f) spec.at(t, f) = buf[f];
    }
    return spec;
}

enum class MelScale { slaney, htk };

inline double hz_to_mel(double hz, MelScale scale) {
    if (scale == MelScale::htk) return 2595.0 * std::log10(1.0 + hz / 700.0);
    // Slaney: linear below 1 kHz, logarithmic above.
    constexpr double f_sp = 200.0 / 3.0;
    constexpr double min_log_hz = 1000.0;
    constexpr double min_log_mel = min_log_hz / f_sp;
    const double logstep = std::log(6.4) / 27.0;
    if (hz < min_log_hz) return hz / f_sp;
    return min_log_mel + std::log(hz / min_log_hz) / logstep;
}

inline double mel_to_hz(double mel, MelScale scale) {
    if (scale == MelScale::htk) return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
    constexpr double f_sp = 200.0 / 3.0;
    constexpr double min_log_hz = 1000.0;
    constexpr double min_log_mel = min_log_hz / f_sp;
    const double logstep = std::log(6.4) / 27.0;
    if (mel < min_log_mel) return mel * f_sp;
    return min_log_hz * std::exp(logstep * (mel - min_log_mel));
}

struct MelFilterbank {
    std::size_t n_mels = 0;
    std::size_t n_bins = 0;
    std::vector<double> w;  // n_mels x n_bins, row-major

    double weight(std::size_t m, std::size_t f) const { return w[m * n_bins + f]; }
    const double* row(std::size_t m) const { return w.data() + m * n_bins; }
    double row_sum(std::size_t m) const {
        double s = 0;
        for (std::size_t f = 0; f < n_bins; ++f) s += weight(m, f);
        return s;
    }
};

// Triangular filters with centers uniformly spaced on the mel scale,
// area-normalized per filter (each triangle integrates to ~1 in Hz).
inline MelFilterbank build_mel_filterbank(double sample_rate_hz, std::size_t fft_size,
                                          std::size_t n_mels, double f_min, double f_max,
                                          MelScale scale = MelScale::slaney) {
    if (n_mels == 0) throw std::invalid_argument("mel filterbank: band count must be positive");
    if (!(f_min >= 0.0) || !(f_min < f_max) || f_max > sample_rate_hz / 2.0 + 1e-9)
        throw std::invalid_argument("mel filterbank: need 0 <= f_min < f_max <= sample_rate/2");

    const std::size_t n_bins = fft_size / 2 + 1;
    const double mel_lo = hz_to_mel(f_min, scale);
    const double mel_hi = hz_to_mel(f_max, scale);
    std::vector<double> edges_hz(n_mels + 2);
    for (std::size_t m = 0; m < n_mels + 2; ++m)
        edges_hz[m] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(m) /
                                             static_cast<double>(n_mels + 1),
                                scale);

    MelFilterbank fb;
    fb.n_mels = n_mels;
    fb.n_bins = n_bins;
    fb.w.assign(n_mels * n_bins, 0.0);
    for (std::size_t m = 0; m < n_mels; ++m) {
        const double lo = edges_hz[m], center = edges_hz[m + 1], hi = edges_hz[m + 2];
        const double enorm = 2.0 / (hi - lo);
        for (std::size_t f = 0; f < n_bins; ++f) {
            const double hz = static_cast<double>(f) * sample_rate_hz / static_cast<double>(fft_size);
            const double up = (hz - lo) / (center - lo);
            const double down = (hi - hz) / (hi - center);
            const double tri = std::max(0.0, std::min(up, down));
            fb.w[m * n_bins + f] = tri * enorm;
        }
    }
    for (std::size_t m = 0; m < n_mels; ++m)
        if (fb.row_sum(m) <= 0.0)
            throw std::invalid_argument("mel filterbank: band " + std::to_string(m) +
                                        " has no contributing FFT bins");
    return fb;
}

inline Mat power_spectrum(const Spectrogram& spec) {
    Mat p(spec.frames, spec.bins);
    for (std::size_t t = 0; t < spec.frames; ++t)
        for (std::size_t f = 0; f < spec.bins; ++f) p.at(t, f) = std::norm(spec.at(t, f));
    return p;
}

// Projects a T x bins plane onto the mel bands: out[t,k] = sum_f in[t,f] * w[k,f].
inline Mat project_to_mel(const Mat& tf, const MelFilterbank& fb) {
    if (tf.cols != fb.n_bins)
        throw std::invalid_argument("project_to_mel: bin count mismatch");
    Mat out(tf.rows, fb.n_mels);
    for (std::size_t t = 0; t < tf.rows; ++t) {
        const double* in = tf.row(t);
        for (std::size_t m = 0; m < fb.n_mels; ++m) {
            const double* wr = fb.row(m);
            double acc = 0.0;
            for (std::size_t f = 0; f < tf.cols; ++f) acc += in[f] * wr[f];
            out.at(t, m) = acc;
        }
    }
    return out;
}

// 10*log10(power . fb + floor); finite everywhere by construction.
inline Mat log_mel(const Spectrogram& spec, const MelFilterbank& fb,
                   double floor_power = 1e-10) {
    Mat mel = project_to_mel(power_spectrum(spec), fb);
    for (double& x : mel.v) x = 10.0 * std::log10(x + floor_power);
    return mel;
}

}  // namespace stereoseld
