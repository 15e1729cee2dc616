#pragma once

// Stereo WAV ingestion, DCASE-style metadata CSV parsing, and a portable
// float32 tensor container (NPY v1.0).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "stereoseld/tensor.hpp"

namespace stereoseld {

struct StereoClip {
    std::vector<double> left;
    std::vector<double> right;
    int sample_rate_hz = 0;

    std::size_t samples_per_channel() const { return left.size(); }
    double duration_s() const {
        return sample_rate_hz > 0 ? static_cast<double>(left.size()) / sample_rate_hz : 0.0;
    }
};

struct Event {
    long frame = 0;          // 100 ms label-frame index
    int class_id = 0;
    int source_id = 0;
    double azimuth_deg = 0;  // [-180, 180)
    double elevation_deg = 0;
    double distance_m = 0;
};

struct EventList {
    std::vector<Event> entries;
    int columns = 6;  // 5 or 6, preserved so mirrored files keep their layout

    bool empty() const { return entries.empty(); }
    std::size_t size() const { return entries.size(); }
};

enum class DistanceUnit { meters, centimeters, automatic };

namespace detail {

inline std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

inline void write_file_bytes(const std::filesystem::path& path,
                             const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failure: " + path.string());
}

inline std::uint16_t rd_u16(const std::vector<std::uint8_t>& b, std::size_t off) {
    return static_cast<std::uint16_t>(b[off] | (b[off + 1] << 8));
}

inline std::uint32_t rd_u32(const std::vector<std::uint8_t>& b, std::size_t off) {
    return static_cast<std::uint32_t>(b[off]) | (static_cast<std::uint32_t>(b[off + 1]) << 8) |
           (static_cast<std::uint32_t>(b[off + 2]) << 16) |
           (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

inline void wr_u16(std::vector<std::uint8_t>& b, std::uint16_t v) {
    b.push_back(static_cast<std::uint8_t>(v & 0xff));
    b.push_back(static_cast<std::uint8_t>(v >> 8));
}

inline void wr_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

inline float bits_to_f32(std::uint32_t u) {
    float f;
    std::memcpy(&f, &u, 4);
    return f;
}

inline std::uint32_t f32_to_bits(float f) {
    std::uint32_t u;
    std::memcpy(&u, &f, 4);
    return u;
}

struct WavLayout {
    std::uint16_t format_tag = 0;
    std::uint16_t channels = 0;
    std::uint32_t sample_rate = 0;
    std::uint16_t bits_per_sample = 0;
    std::uint16_t block_align = 0;
    std::size_t data_offset = 0;
    std::size_t data_size = 0;
};

// Walks the RIFF chunks and validates the fmt/data pair. Unknown chunks
// (LIST, JUNK, bext, ...) are skipped.
inline WavLayout parse_wav_layout(const std::vector<std::uint8_t>& b) {
    if (b.size() < 12 || std::memcmp(b.data(), "RIFF", 4) != 0)
        throw std::runtime_error("malformed WAV header: missing RIFF tag");
    if (std::memcmp(b.data() + 8, "WAVE", 4) != 0)
        throw std::runtime_error("malformed WAV header: missing WAVE tag");

    WavLayout lay;
    bool have_fmt = false;
    bool have_data = false;
    std::size_t off = 12;
    while (off + 8 <= b.size()) {
        char id[5] = {0};
        std::memcpy(id, b.data() + off, 4);
        const std::uint32_t chunk_size = rd_u32(b, off + 4);
        const std::size_t body = off + 8;
        if (body + chunk_size > b.size())
            throw std::runtime_error(std::string("malformed WAV header: chunk '") + id +
                                     "' exceeds file size");
        if (std::memcmp(id, "fmt ", 4) == 0) {
            if (chunk_size < 16) throw std::runtime_error("malformed WAV header: fmt chunk too short");
            lay.format_tag = rd_u16(b, body);
            lay.channels = rd_u16(b, body + 2);
            lay.sample_rate = rd_u32(b, body + 4);
            lay.block_align = rd_u16(b, body + 12);
            lay.bits_per_sample = rd_u16(b, body + 14);
            if (lay.format_tag == 0xFFFE) {  // WAVE_FORMAT_EXTENSIBLE
                if (chunk_size < 40)
                    throw std::runtime_error("malformed WAV header: extensible fmt chunk too short");
                lay.format_tag = rd_u16(b, body + 24);  // first two bytes of the SubFormat GUID
            }
            have_fmt = true;
        } else if (std::memcmp(id, "data", 4) == 0) {
            lay.data_offset = body;
            lay.data_size = chunk_size;
            have_data = true;
        }
        off = body + chunk_size + (chunk_size & 1);  // chunks are word-aligned
    }
    if (!have_fmt) throw std::runtime_error("malformed WAV header: missing fmt chunk");
    if (!have_data) throw std::runtime_error("malformed WAV header: missing data chunk");
    return lay;
}

}  // namespace detail

// Decodes a 2-channel RIFF/WAVE file (PCM 16-bit, PCM 24-bit, or IEEE
// float32) into real amplitudes. Integer codes are divided by 2^(bits-1),
// so the output of integer inputs always lies in [-1, 1].
inline StereoClip read_wav(const std::filesystem::path& path) {
    const auto bytes = detail::read_file_bytes(path);
    const auto lay = detail::parse_wav_layout(bytes);

    if (lay.channels != 2)
        throw std::runtime_error("channel count != 2 (got " + std::to_string(lay.channels) +
                                 "): " + path.filename().string());
    if (lay.sample_rate == 0) throw std::runtime_error("malformed WAV header: zero sample rate");

    enum class Enc { pcm16, pcm24, f32 };
    Enc enc;
    if (lay.format_tag == 1 && lay.bits_per_sample == 16) {
        enc = Enc::pcm16;
    } else if (lay.format_tag == 1 && lay.bits_per_sample == 24) {
        enc = Enc::pcm24;
    } else if (lay.format_tag == 3 && lay.bits_per_sample == 32) {
        enc = Enc::f32;
    } else {
        throw std::runtime_error("unsupported WAV encoding (format tag " +
                                 std::to_string(lay.format_tag) + ", " +
                                 std::to_string(lay.bits_per_sample) + " bits per sample)");
    }

    const std::size_t bytes_per_sample = lay.bits_per_sample / 8;
    const std::size_t frame_bytes = bytes_per_sample * 2;
    if (lay.block_align != 0 && lay.block_align != frame_bytes)
        throw std::runtime_error("malformed WAV header: block align " +
                                 std::to_string(lay.block_align) + " does not match format");
    const std::size_t frames = lay.data_size / frame_bytes;

    StereoClip clip;
    clip.sample_rate_hz = static_cast<int>(lay.sample_rate);
    clip.left.resize(frames);
    clip.right.resize(frames);

    const std::uint8_t* p = bytes.data() + lay.data_offset;
    for (std::size_t i = 0; i < frames; ++i) {
        for (int ch = 0; ch < 2; ++ch) {
            const std::uint8_t* s = p + i * frame_bytes + ch * bytes_per_sample;
            double value = 0.0;
            switch (enc) {
                case Enc::pcm16: {
                    const auto u = static_cast<std::uint16_t>(s[0] | (s[1] << 8));
                    value = static_cast<std::int16_t>(u) / 32768.0;
                    break;
                }
                case Enc::pcm24: {
                    std::int32_t v = s[0] | (s[1] << 8) | (s[2] << 16);
                    if (v & 0x800000) v -= 0x1000000;  // sign extension
                    value = v / 8388608.0;
                    break;
                }
                case Enc::f32: {
                    value = detail::bits_to_f32(detail::rd_u32(
                        bytes, lay.data_offset + i * frame_bytes + ch * bytes_per_sample));
                    break;
                }
            }
            (ch == 0 ? clip.left : clip.right)[i] = value;
        }
    }
    return clip;
}

enum class WavEncoding { pcm16, float32 };

// Writes a stereo WAV file. pcm16 rounds and clamps to the 16-bit grid;
// float32 stores samples verbatim.
inline void write_wav(const std::filesystem::path& path, const StereoClip& clip,
                      WavEncoding enc = WavEncoding::pcm16) {
    if (clip.left.size() != clip.right.size())
        throw std::invalid_argument("stereo clip channels differ in length");
    const std::size_t frames = clip.left.size();
    const std::uint16_t bits = enc == WavEncoding::pcm16 ? 16 : 32;
    const std::uint16_t block = static_cast<std::uint16_t>(bits / 8 * 2);
    const std::uint32_t data_size = static_cast<std::uint32_t>(frames * block);

    std::vector<std::uint8_t> b;
    b.reserve(44 + data_size);
    const char* riff = "RIFF";
    b.insert(b.end(), riff, riff + 4);
    detail::wr_u32(b, 36 + data_size);
    const char* wavefmt = "WAVEfmt ";
    b.insert(b.end(), wavefmt, wavefmt + 8);
    detail::wr_u32(b, 16);
    detail::wr_u16(b, enc == WavEncoding::pcm16 ? 1 : 3);
    detail::wr_u16(b, 2);
    detail::wr_u32(b, static_cast<std::uint32_t>(clip.sample_rate_hz));
    detail::wr_u32(b, static_cast<std::uint32_t>(clip.sample_rate_hz) * block);
    detail::wr_u16(b, block);
    detail::wr_u16(b, bits);
    const char* data = "data";
    b.insert(b.end(), data, data + 4);
    detail::wr_u32(b, data_size);

    for (std::size_t i = 0; i < frames; ++i) {
        for (int ch = 0; ch < 2; ++ch) {
            const double v = (ch == 0 ? clip.left : clip.right)[i];
            if (enc == WavEncoding::pcm16) {
                double scaled = std::nearbyint(v * 32768.0);
                scaled = std::clamp(scaled, -32768.0, 32767.0);
                detail::wr_u16(b, static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
            } else {
                detail::wr_u32(b, detail::f32_to_bits(static_cast<float>(v)));
            }
        }
    }
    detail::write_file_bytes(path, b);
}

// Swaps the two channels of a WAV file at the byte level, so the mirrored
// file keeps the exact source encoding (any supported bit depth).
inline void acs_swap_wav_file(const std::filesystem::path& src,
                              const std::filesystem::path& dst) {
    auto bytes = detail::read_file_bytes(src);
    const auto lay = detail::parse_wav_layout(bytes);
    if (lay.channels != 2)
        throw std::runtime_error("channel count != 2 (got " + std::to_string(lay.channels) +
                                 "): " + src.filename().string());
    const std::size_t bps = lay.bits_per_sample / 8;
    if (bps == 0 || lay.block_align != 2 * bps)
        throw std::runtime_error("malformed WAV header: block align " +
                                 std::to_string(lay.block_align) + " does not match format");
    const std::size_t frames = lay.data_size / lay.block_align;
    for (std::size_t i = 0; i < frames; ++i) {
        std::uint8_t* f = bytes.data() + lay.data_offset + i * lay.block_align;
        for (std::size_t k = 0; k < bps; ++k) std::swap(f[k], f[bps + k]);
    }
    detail::write_file_bytes(dst, bytes);
}

// Band-limited rational resampling with a Kaiser-windowed sinc kernel,
// applied identically to both channels. Equal rates return the clip
// unchanged, bit for bit.
inline StereoClip resample_if_needed(const StereoClip& clip, int target_hz) {
    if (target_hz <= 0) throw std::invalid_argument("target sample rate must be positive");
    if (clip.sample_rate_hz == target_hz) return clip;
    if (clip.sample_rate_hz <= 0) throw std::invalid_argument("source sample rate must be positive");

    const long long g = std::gcd<long long>(clip.sample_rate_hz, target_hz);
    const long long up = target_hz / g;    // L
    const long long down = clip.sample_rate_hz / g;  // M

    constexpr int kHalfTaps = 32;
    constexpr double kBeta = 10.0;
    const double cutoff = 0.945 * std::min(1.0, static_cast<double>(up) / down);

    auto bessel_i0 = [](double x) {
        double sum = 1.0, term = 1.0;
        for (int k = 1; k < 64; ++k) {
            term *= (x / (2.0 * k)) * (x / (2.0 * k));
            sum += term;
            if (term < 1e-16 * sum) break;
        }
        return sum;
    };
    const double i0_beta = bessel_i0(kBeta);
    auto kernel = [&](double u) {
        const double frac = u / kHalfTaps;
        if (frac <= -1.0 || frac >= 1.0) return 0.0;
        const double window = bessel_i0(kBeta * std::sqrt(1.0 - frac * frac)) / i0_beta;
        const double a = 3.14159265358979323846 * cutoff * u;
        const double sinc = std::abs(a) < 1e-12 ? 1.0 : std::sin(a) / a;
        return cutoff * sinc * window;
    };

    const long long in_len = static_cast<long long>(clip.left.size());
    const long long out_len = in_len * up / down;

    StereoClip out;
    out.sample_rate_hz = target_hz;
    out.left.resize(static_cast<std::size_t>(out_len));
    out.right.resize(static_cast<std::size_t>(out_len));

    for (long long j = 0; j < out_len; ++j) {
        const long long num = j * down;
        const long long base = num / up;
        const double t = static_cast<double>(base) + static_cast<double>(num % up) / up;
        double acc_l = 0.0, acc_r = 0.0, wsum = 0.0;
        for (long long n = base - kHalfTaps + 1; n <= base + kHalfTaps; ++n) {
            if (n < 0 || n >= in_len) continue;
            const double w = kernel(t - static_cast<double>(n));
            acc_l += w * clip.left[static_cast<std::size_t>(n)];
            acc_r += w * clip.right[static_cast<std::size_t>(n)];
            wsum += w;
        }
        if (wsum > 1e-12) {
            out.left[static_cast<std::size_t>(j)] = acc_l / wsum;
            out.right[static_cast<std::size_t>(j)] = acc_r / wsum;
        }
    }
    return out;
}

namespace detail {

// Wraps any finite angle into [-180, 180).
inline double wrap_azimuth(double az) {
    double w = std::fmod(az + 180.0, 360.0);
    if (w < 0) w += 360.0;
    return w - 180.0;
}

inline double parse_number(const std::string& field, std::size_t row, std::size_t col) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(field, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    // Allow trailing whitespace only.
    while (pos < field.size() && (field[pos] == ' ' || field[pos] == '\t')) ++pos;
    if (field.empty() || pos != field.size())
        throw std::runtime_error("non-numeric field '" + field + "' (row " + std::to_string(row) +
                                 ", column " + std::to_string(col) + ")");
    return v;
}

}  // namespace detail

// Parses DCASE metadata rows: frame,class,source,azimuth[,elevation],distance.
// Five-column files default elevation to 0. With DistanceUnit::automatic a
// file whose distances all exceed 50 is treated as centimeters.
inline EventList read_metadata_csv(const std::filesystem::path& path,
                                   DistanceUnit unit = DistanceUnit::automatic) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());

    EventList list;
    int columns_seen = 0;
    std::set<std::tuple<long, int, int>> seen;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 5 && fields.size() != 6)
            throw std::runtime_error("expected 5 or 6 columns, got " +
                                     std::to_string(fields.size()) + " (row " +
                                     std::to_string(row) + ")");
        if (columns_seen == 0) columns_seen = static_cast<int>(fields.size());

        Event e;
        e.frame = static_cast<long>(detail::parse_number(fields[0], row, 1));
        if (e.frame < 0)
            throw std::runtime_error("negative frame index (row " + std::to_string(row) + ")");
        e.class_id = static_cast<int>(detail::parse_number(fields[1], row, 2));
        if (e.class_id < 0)
            throw std::runtime_error("negative class id (row " + std::to_string(row) + ")");
        e.source_id = static_cast<int>(detail::parse_number(fields[2], row, 3));

        const double az_raw = detail::parse_number(fields[3], row, 4);
        if (!std::isfinite(az_raw))
            throw std::runtime_error("azimuth not finite (row " + std::to_string(row) + ")");
        e.azimuth_deg = detail::wrap_azimuth(az_raw);

        if (fields.size() == 6) {
            e.elevation_deg = detail::parse_number(fields[4], row, 5);
            if (e.elevation_deg < -90.0 || e.elevation_deg > 90.0)
                throw std::runtime_error("elevation out of [-90, 90] (row " + std::to_string(row) +
                                         ")");
            e.distance_m = detail::parse_number(fields[5], row, 6);
        } else {
            e.elevation_deg = 0.0;
            e.distance_m = detail::parse_number(fields[4], row, 5);
        }
        if (!(e.distance_m > 0))
            throw std::runtime_error("non-positive distance " + std::to_string(e.distance_m) +
                                     " (row " + std::to_string(row) + ")");

        if (!seen.insert({e.frame, e.class_id, e.source_id}).second)
            throw std::runtime_error("duplicate event (frame=" + std::to_string(e.frame) +
                                     ", class=" + std::to_string(e.class_id) +
                                     ", source=" + std::to_string(e.source_id) + ")");
        list.entries.push_back(e);
    }
    list.columns = columns_seen == 0 ? 6 : columns_seen;

    bool to_meters = unit == DistanceUnit::centimeters;
    if (unit == DistanceUnit::automatic && !list.entries.empty()) {
        to_meters = std::all_of(list.entries.begin(), list.entries.end(),
                                [](const Event& e) { return e.distance_m > 50.0; });
    }
    if (to_meters)
        for (auto& e : list.entries) e.distance_m /= 100.0;
    return list;
}

namespace detail {

inline std::string format_number(double v) {
    if (v == std::nearbyint(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", v);
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace detail

inline void write_metadata_csv(const std::filesystem::path& path, const EventList& list) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path.string());
    for (const auto& e : list.entries) {
        out << e.frame << ',' << e.class_id << ',' << e.source_id << ','
            << detail::format_number(e.azimuth_deg);
        if (list.columns == 6) out << ',' << detail::format_number(e.elevation_deg);
        out << ',' << detail::format_number(e.distance_m) << '\n';
    }
    if (!out) throw std::runtime_error("write failure: " + path.string());
}

// ---------------------------------------------------------------------------
// NPY v1.0 container, little-endian float32, row-major ("C order").

namespace detail {

inline std::string npy_shape_tuple(const std::vector<std::size_t>& shape) {
    std::string s = "(";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        s += std::to_string(shape[i]);
        if (shape.size() == 1 || i + 1 < shape.size()) s += ",";
        if (i + 1 < shape.size()) s += " ";
    }
    s += ")";
    return s;
}

}  // namespace detail

inline std::vector<std::uint8_t> npy_encode(const Tensor& t) {
    for (std::size_t i = 0; i < t.data.size(); ++i)
        if (!std::isfinite(t.data[i]))
            throw std::invalid_argument("non-finite value at flat index " + std::to_string(i));

    std::string dict = "{'descr': '<f4', 'fortran_order': False, 'shape': " +
                       detail::npy_shape_tuple(t.shape) + ", }";
    // Pad with spaces so that the payload starts on a 64-byte boundary.
    std::size_t header_len = 10 + dict.size() + 1;  // magic+version+len field, dict, '\n'
    const std::size_t padded = (header_len + 63) / 64 * 64;
    dict.append(padded - header_len, ' ');
    dict += '\n';

    std::vector<std::uint8_t> b;
    b.reserve(padded + t.data.size() * 4);
    const char magic[] = "\x93NUMPY";
    b.insert(b.end(), magic, magic + 6);
    b.push_back(1);
    b.push_back(0);
    detail::wr_u16(b, static_cast<std::uint16_t>(dict.size()));
    b.insert(b.end(), dict.begin(), dict.end());
    for (float f : t.data) detail::wr_u32(b, detail::f32_to_bits(f));
    return b;
}

inline Tensor npy_decode(const std::vector<std::uint8_t>& b) {
    if (b.size() < 10 || std::memcmp(b.data(), "\x93NUMPY", 6) != 0)
        throw std::runtime_error("bad tensor file: missing NPY magic");
    if (b[6] != 1 || b[7] != 0)
        throw std::runtime_error("bad tensor file: unsupported NPY version " +
                                 std::to_string(b[6]) + "." + std::to_string(b[7]));
    const std::uint16_t hlen = detail::rd_u16(b, 8);
    if (10 + static_cast<std::size_t>(hlen) > b.size())
        throw std::runtime_error("bad tensor file: truncated header");
    const std::string header(b.begin() + 10, b.begin() + 10 + hlen);

    auto find_value = [&](const std::string& key) {
        const auto kp = header.find("'" + key + "'");
        if (kp == std::string::npos)
            throw std::runtime_error("bad tensor file: header missing key '" + key + "'");
        auto cp = header.find(':', kp);
        if (cp == std::string::npos) throw std::runtime_error("bad tensor file: malformed header");
        ++cp;
        while (cp < header.size() && header[cp] == ' ') ++cp;
        return cp;
    };

    const auto descr_pos = find_value("descr");
    if (header.compare(descr_pos, 5, "'<f4'") != 0)
        throw std::runtime_error("bad tensor file: dtype is not little-endian float32");
    const auto order_pos = find_value("fortran_order");
    if (header.compare(order_pos, 5, "False") != 0)
        throw std::runtime_error("bad tensor file: fortran_order must be False");

    auto shape_pos = find_value("shape");
    if (header[shape_pos] != '(') throw std::runtime_error("bad tensor file: malformed shape");
    const auto close = header.find(')', shape_pos);
    if (close == std::string::npos) throw std::runtime_error("bad tensor file: malformed shape");
    std::vector<std::size_t> shape;
    std::string num;
    for (std::size_t i = shape_pos + 1; i < close; ++i) {
        const char c = header[i];
        if (c >= '0' && c <= '9') {
            num += c;
        } else if (c == ',' || c == ' ') {
            if (!num.empty()) {
                shape.push_back(std::stoull(num));
                num.clear();
            }
        } else {
            throw std::runtime_error("bad tensor file: malformed shape");
        }
    }
    if (!num.empty()) shape.push_back(std::stoull(num));

    const std::size_t count = Tensor::element_count(shape);
    const std::size_t payload_off = 10 + hlen;
    if (b.size() - payload_off != count * 4)
        throw std::runtime_error("bad tensor file: payload holds " +
                                 std::to_string((b.size() - payload_off) / 4) +
                                 " elements, header declares " + std::to_string(count));

    Tensor t;
    t.shape = std::move(shape);
    t.data.resize(count);
    for (std::size_t i = 0; i < count; ++i)
        t.data[i] = detail::bits_to_f32(detail::rd_u32(b, payload_off + i * 4));
    return t;
}

inline void write_tensor(const std::filesystem::path& path, const Tensor& t) {
    detail::write_file_bytes(path, npy_encode(t));
}

inline Tensor read_tensor(const std::filesystem::path& path) {
    return npy_decode(detail::read_file_bytes(path));
}

}  // namespace stereoseld
