#pragma once

// Shared fixtures and independent oracles for the test suites. Everything
// here re-derives results from first principles (naive DFT, naive matrix
// products, exhaustive assignment search) so the library implementation is
// checked against a second route, not against itself.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <unistd.h>

#include "stereoseld/dsp.hpp"
#include "stereoseld/rng.hpp"
#include "stereoseld/tensor.hpp"
#include "stereoseld/wave_io.hpp"

namespace testhelp {

constexpr double kPi = 3.14159265358979323846;

inline stereoseld::StereoClip noise_clip(std::uint64_t seed, std::size_t n, int sr,
                                         double amplitude = 0.5) {
    stereoseld::Rng rng(seed);
    stereoseld::StereoClip clip;
    clip.sample_rate_hz = sr;
    clip.left.resize(n);
    clip.right.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        clip.left[i] = amplitude * rng.real_in(-1.0, 1.0);
        clip.right[i] = amplitude * rng.real_in(-1.0, 1.0);
    }
    return clip;
}

inline std::vector<double> sine(std::size_t n, double freq_hz, int sr, double amplitude = 1.0,
                                double phase = 0.0) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = amplitude * std::sin(2.0 * kPi * freq_hz * static_cast<double>(i) / sr + phase);
    return x;
}

// Brute-force STFT oracle: re-derives the framing convention (reflect
// padding, frames centered at t*hop, periodic Hann) and evaluates each bin
// as an O(N^2) DFT sum.
inline stereoseld::Spectrogram dft_stft_oracle(const std::vector<double>& x, std::size_t fft_size,
                                               std::size_t hop) {
    const std::size_t len = x.size();
    const std::size_t frames = len % hop == 0 ? len / hop : len / hop + 1;
    const std::size_t bins = fft_size / 2 + 1;

    auto reflect = [&](long long idx) -> double {
        const long long n = static_cast<long long>(len);
        if (n == 1) return x[0];
        const long long period = 2 * (n - 1);
        long long m = idx % period;
        if (m < 0) m += period;
        if (m >= n) m = period - m;
        return x[static_cast<std::size_t>(m)];
    };

    stereoseld::Spectrogram spec(frames, bins);
    for (std::size_t t = 0; t < frames; ++t) {
        std::vector<double> frame(fft_size);
        const long long start =
            static_cast<long long>(t * hop) - static_cast<long long>(fft_size) / 2;
        for (std::size_t i = 0; i < fft_size; ++i) {
            const double w =
                0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / fft_size);
            frame[i] = w * reflect(start + static_cast<long long>(i));
        }
        for (std::size_t f = 0; f < bins; ++f) {
            std::complex<double> acc{0.0, 0.0};
            for (std::size_t i = 0; i < fft_size; ++i) {
                const double a = -2.0 * kPi * static_cast<double>(f) * static_cast<double>(i) /
                                 static_cast<double>(fft_size);
                acc += frame[i] * std::complex<double>(std::cos(a), std::sin(a));
            }
            spec.at(t, f) = acc;
        }
    }
    return spec;
}

// Naive double-loop mel projection.
inline stereoseld::Mat naive_project(const stereoseld::Mat& tf,
                                     const stereoseld::MelFilterbank& fb) {
    stereoseld::Mat out(tf.rows, fb.n_mels);
    for (std::size_t t = 0; t < tf.rows; ++t)
        for (std::size_t m = 0; m < fb.n_mels; ++m) {
            double acc = 0;
            for (std::size_t f = 0; f < tf.cols; ++f) acc += tf.at(t, f) * fb.weight(m, f);
            out.at(t, m) = acc;
        }
    return out;
}

// Exhaustive minimum-cost assignment, written independently of the library:
// recursion over all ways to pair rows with columns.
inline double exhaustive_min_cost(const stereoseld::Mat& cost) {
    const std::size_t pairs = std::min(cost.rows, cost.cols);
    if (pairs == 0) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> cols(cost.cols);
    std::iota(cols.begin(), cols.end(), 0);
    std::vector<std::size_t> rows(cost.rows);
    std::iota(rows.begin(), rows.end(), 0);

    // Permute the larger axis; pair the first `pairs` entries.
    if (cost.rows <= cost.cols) {
        std::sort(cols.begin(), cols.end());
        do {
            double total = 0;
            for (std::size_t i = 0; i < pairs; ++i) total += cost.at(i, cols[i]);
            best = std::min(best, total);
        } while (std::next_permutation(cols.begin(), cols.end()));
    } else {
        std::sort(rows.begin(), rows.end());
        do {
            double total = 0;
            for (std::size_t i = 0; i < pairs; ++i) total += cost.at(rows[i], i);
            best = std::min(best, total);
        } while (std::next_permutation(rows.begin(), rows.end()));
    }
    return best;
}

// Hand-assembled WAV bytes, independent of the library writer. Samples are
// raw channel-interleaved codes for the given encoding.
inline std::vector<std::uint8_t> build_wav_bytes(std::uint16_t format_tag, std::uint16_t channels,
                                                 std::uint32_t sample_rate, std::uint16_t bits,
                                                 const std::vector<std::int32_t>& codes) {
    std::vector<std::uint8_t> b;
    auto u16 = [&b](std::uint16_t v) {
        b.push_back(v & 0xff);
        b.push_back(v >> 8);
    };
    auto u32 = [&b](std::uint32_t v) {
        for (int i = 0; i < 4; ++i) b.push_back((v >> (8 * i)) & 0xff);
    };
    const std::uint32_t bytes_per = bits / 8;
    const std::uint32_t data_size = static_cast<std::uint32_t>(codes.size()) * bytes_per;
    const char* riff = "RIFF";
    b.insert(b.end(), riff, riff + 4);
    u32(36 + data_size);
    const char* wavefmt = "WAVEfmt ";
    b.insert(b.end(), wavefmt, wavefmt + 8);
    u32(16);
    u16(format_tag);
    u16(channels);
    u32(sample_rate);
    u32(sample_rate * bytes_per * channels);
    u16(static_cast<std::uint16_t>(bytes_per * channels));
    u16(bits);
    const char* data = "data";
    b.insert(b.end(), data, data + 4);
    u32(data_size);
    for (std::int32_t code : codes)
        for (std::uint32_t k = 0; k < bytes_per; ++k)
            b.push_back(static_cast<std::uint8_t>((static_cast<std::uint32_t>(code) >> (8 * k)) & 0xff));
    return b;
}

// Unique scratch directory, removed on destruction.
struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        path = std::filesystem::temp_directory_path() /
               ("stereoseld_" + tag + "_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
};

inline void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::trunc);
    out << text;
}

}  // namespace testhelp
