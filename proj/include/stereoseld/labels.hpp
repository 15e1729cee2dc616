#pragma once

// Distance normalization and multi-track activity-coupled Cartesian DOA
// target encoding with an appended normalized-distance component.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stereoseld/tensor.hpp"
#include "stereoseld/wave_io.hpp"

namespace stereoseld {

enum class DivideBy { max, absmax };

// Two-step distance scaling: z-score against the corpus, then division by
// the corpus maximum z-score. Corpus members map into [-max|z|/max z, 1];
// with a right-skewed distribution the lower end can undershoot -1.
class DistanceNormalizer {
public:
    DistanceNormalizer() = default;
    DistanceNormalizer(double mean_m, double std_m, double max_z)
        : mean_(mean_m), std_(std_m), max_z_(max_z) {
        validate();
    }

    static DistanceNormalizer fit(std::span<const double> distances_m,
                                  DivideBy divide_by = DivideBy::max) {
        if (distances_m.size() < 2)
            throw std::invalid_argument("distance normalizer: need at least 2 values, got " +
                                        std::to_string(distances_m.size()));
        double mean = 0.0;
        for (double d : distances_m) mean += d;
        mean /= static_cast<double>(distances_m.size());
        double var = 0.0;
        for (double d : distances_m) var += (d - mean) * (d - mean);
        var /= static_cast<double>(distances_m.size());  // population variance
        const double std_dev = std::sqrt(var);
        if (!(std_dev > 0.0))
            throw std::invalid_argument("distance normalizer: zero variance corpus");

        // max_z is evaluated with the exact expression normalize() uses, so
        // the corpus maximum maps to exactly 1.
        double max_z = -std::numeric_limits<double>::infinity();
        for (double d : distances_m) {
            const double z = (d - mean) / std_dev;
            max_z = std::max(max_z, divide_by == DivideBy::max ? z : std::abs(z));
        }
        return DistanceNormalizer(mean, std_dev, max_z);
    }

    double normalize(double d_m) const { return ((d_m - mean_) / std_) / max_z_; }
    double denormalize(double y) const { return y * max_z_ * std_ + mean_; }

    double mean_m() const { return mean_; }
    double std_m() const { return std_; }
    double max_z() const { return max_z_; }

    // Sidecar: three decimal values, one per line, keys mean= / std= / max_z=.
    void save(const std::filesystem::path& path) const {
        std::ofstream out(path, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open file for writing: " + path.string());
        char buf[128];
        std::snprintf(buf, sizeof buf, "mean=%.17g\nstd=%.17g\nmax_z=%.17g\n", mean_, std_, max_z_);
        out << buf;
        if (!out) throw std::runtime_error("write failure: " + path.string());
    }

    static DistanceNormalizer load(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open file: " + path.string());
        std::map<std::string, double> kv;
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("normalizer sidecar: malformed line '" + line + "'");
            kv[line.substr(0, eq)] = std::stod(line.substr(eq + 1));
        }
        for (const char* key : {"mean", "std", "max_z"})
            if (!kv.count(key))
                throw std::runtime_error(std::string("normalizer sidecar: missing key '") + key +
                                         "'");
        return DistanceNormalizer(kv["mean"], kv["std"], kv["max_z"]);
    }

private:
    void validate() const {
        if (!(std_ > 0.0)) throw std::invalid_argument("distance normalizer: std must be positive");
        if (!(max_z_ > 0.0))
            throw std::invalid_argument("distance normalizer: max_z must be positive");
    }

    double mean_ = 0.0;
    double std_ = 1.0;
    double max_z_ = 1.0;
};

struct TargetEncoding {
    Tensor tensor;            // frames x tracks x classes x 4 (x, y, z, distance)
    std::size_t dropped = 0;  // events beyond the track budget or frame range
};

// Encodes events into the multi-track regression target. Axis convention is
// x = front, y = left, z = up, so an active slot holds
// (cos az cos el, sin az cos el, sin el, normalized distance). Track slots
// are filled per (frame, class) in ascending source_id order; anything
// beyond n_tracks is dropped and counted.
inline TargetEncoding encode_targets(const EventList& events, const DistanceNormalizer& dn,
                                     std::size_t n_frames = 50, std::size_t n_tracks = 3,
                                     std::size_t n_classes = 13) {
    constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
    TargetEncoding enc;
    enc.tensor = Tensor({n_frames, n_tracks, n_classes, 4});

    std::map<std::pair<long, int>, std::vector<const Event*>> groups;
    for (const auto& e : events.entries) {
        if (e.class_id < 0 || static_cast<std::size_t>(e.class_id) >= n_classes)
            throw std::invalid_argument("encode_targets: class id " + std::to_string(e.class_id) +
                                        " out of range [0, " + std::to_string(n_classes) + ")");
        if (e.frame < 0 || static_cast<std::size_t>(e.frame) >= n_frames) {
            ++enc.dropped;
            continue;
        }
        groups[{e.frame, e.class_id}].push_back(&e);
    }

    for (auto& [key, group] : groups) {
        std::stable_sort(group.begin(), group.end(),
                         [](const Event* a, const Event* b) { return a->source_id < b->source_id; });
        const auto frame = static_cast<std::size_t>(key.first);
        const auto cls = static_cast<std::size_t>(key.second);
        for (std::size_t slot = 0; slot < group.size(); ++slot) {
            if (slot >= n_tracks) {
                enc.dropped += group.size() - slot;
                break;
            }
            const Event& e = *group[slot];
            const double az = e.azimuth_deg * kDegToRad;
            const double el = e.elevation_deg * kDegToRad;
            enc.tensor.at4(frame, slot, cls, 0) = static_cast<float>(std::cos(az) * std::cos(el));
            enc.tensor.at4(frame, slot, cls, 1) = static_cast<float>(std::sin(az) * std::cos(el));
            enc.tensor.at4(frame, slot, cls, 2) = static_cast<float>(std::sin(el));
            enc.tensor.at4(frame, slot, cls, 3) = static_cast<float>(dn.normalize(e.distance_m));
        }
    }
    return enc;
}

}  // namespace stereoseld
