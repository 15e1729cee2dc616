#pragma once

// Pipeline configuration: plain key=value files, environment overrides
// (STEREOSELD_<KEY>), and CLI flags layered in that order.

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "stereoseld/augment.hpp"
#include "stereoseld/labels.hpp"
#include "stereoseld/metrics.hpp"
#include "stereoseld/stereo_features.hpp"
#include "stereoseld/wave_io.hpp"

namespace stereoseld {

struct PipelineConfig {
    std::filesystem::path dataset_root;
    std::filesystem::path output_root;
    FeatureKind feature_set = FeatureKind::msic;
    AugmentMode augment_mode = AugmentMode::none;
    std::uint64_t seed = 0;
    unsigned workers = 0;       // 0 = hardware parallelism
    unsigned realizations = 1;  // augmented variants per clip

    int sample_rate_hz = 24000;
    StftParams stft;            // 1024 / 300
    std::size_t n_mels = 96;
    double f_min_hz = 0.0;
    double f_max_hz = -1.0;     // <= 0 means Nyquist
    MelScale mel_scale = MelScale::slaney;
    double log_floor = 1e-10;
    double eps = 1e-8;
    double msc_lambda = 0.8;

    DistanceUnit distance_unit = DistanceUnit::automatic;
    DivideBy divide_by = DivideBy::max;
    AverageMode average = AverageMode::macro;
    std::size_t n_tracks = 3;
    std::size_t n_classes = 13;
    std::filesystem::path normalizer;  // optional sidecar; fitted in-memory when empty

    FilterAugmentConfig filteraug;
    FreqShiftConfig freqshift;
    ItfmConfig itfm;

    FeatureParams feature_params() const {
        FeatureParams p;
        p.stft = stft;
        p.n_mels = n_mels;
        p.f_min = f_min_hz;
        p.f_max = f_max_hz;
        p.mel_scale = mel_scale;
        p.log_floor = log_floor;
        p.eps = eps;
        p.msc_lambda = msc_lambda;
        return p;
    }

    AugmentConfig augment_config() const {
        AugmentConfig a;
        a.seed = seed;
        a.filteraug = filteraug;
        a.freqshift = freqshift;
        a.itfm = itfm;
        return a;
    }
};

namespace detail {

struct ConfigKey {
    const char* name;
    std::function<void(PipelineConfig&, const std::string&)> set;
    std::function<std::string(const PipelineConfig&)> get;
};

inline long long parse_int(const std::string& v, const std::string& key) {
    std::size_t pos = 0;
    long long out = 0;
    try {
        out = std::stoll(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (v.empty() || pos != v.size())
        throw std::invalid_argument("config: key '" + key + "' expects an integer, got '" + v + "'");
    return out;
}

inline double parse_real(const std::string& v, const std::string& key) {
    std::size_t pos = 0;
    double out = 0;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (v.empty() || pos != v.size())
        throw std::invalid_argument("config: key '" + key + "' expects a number, got '" + v + "'");
    return out;
}

inline bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::invalid_argument("config: key '" + key + "' expects true/false, got '" + v + "'");
}

inline std::string real_str(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline FeatureKind parse_feature_kind(const std::string& v) {
    if (v == "MSI" || v == "msi") return FeatureKind::msi;
    if (v == "MSIC" || v == "msic") return FeatureKind::msic;
    throw std::invalid_argument("config: unknown feature_set '" + v + "' (expected MSI or MSIC)");
}

inline std::string feature_kind_str(FeatureKind k) {
    return k == FeatureKind::msi ? "MSI" : "MSIC";
}

inline AugmentMode parse_augment_mode(const std::string& v) {
    if (v == "none") return AugmentMode::none;
    if (v == "ITFM" || v == "itfm") return AugmentMode::itfm;
    if (v == "FAFS" || v == "fafs") return AugmentMode::fafs;
    if (v == "ACS-offline" || v == "acs-offline") return AugmentMode::acs_offline;
    throw std::invalid_argument("config: unknown augment_mode '" + v +
                                "' (expected none, ITFM, FAFS, or ACS-offline)");
}

inline std::string augment_mode_str(AugmentMode m) {
    switch (m) {
        case AugmentMode::none: return "none";
        case AugmentMode::itfm: return "ITFM";
        case AugmentMode::fafs: return "FAFS";
        case AugmentMode::acs_offline: return "ACS-offline";
    }
    return "none";
}

inline const std::vector<ConfigKey>& config_keys() {
    auto int_key = [](const char* name, auto member) {
        return ConfigKey{
            name,
            [name, member](PipelineConfig& c, const std::string& v) {
                c.*member = static_cast<std::remove_reference_t<decltype(c.*member)>>(
                    parse_int(v, name));
            },
            [member](const PipelineConfig& c) { return std::to_string(c.*member); }};
    };
    auto real_key = [](const char* name, double PipelineConfig::* member) {
        return ConfigKey{name,
                         [name, member](PipelineConfig& c, const std::string& v) {
                             c.*member = parse_real(v, name);
                         },
                         [member](const PipelineConfig& c) { return real_str(c.*member); }};
    };
    auto path_key = [](const char* name, std::filesystem::path PipelineConfig::* member) {
        return ConfigKey{name,
                         [member](PipelineConfig& c, const std::string& v) { c.*member = v; },
                         [member](const PipelineConfig& c) { return (c.*member).string(); }};
    };

    static const std::vector<ConfigKey> keys = {
        path_key("dataset_root", &PipelineConfig::dataset_root),
        path_key("output_root", &PipelineConfig::output_root),
        {"feature_set",
         [](PipelineConfig& c, const std::string& v) { c.feature_set = parse_feature_kind(v); },
         [](const PipelineConfig& c) { return feature_kind_str(c.feature_set); }},
        {"augment_mode",
         [](PipelineConfig& c, const std::string& v) { c.augment_mode = parse_augment_mode(v); },
         [](const PipelineConfig& c) { return augment_mode_str(c.augment_mode); }},
        {"seed",
         [](PipelineConfig& c, const std::string& v) {
             c.seed = static_cast<std::uint64_t>(parse_int(v, "seed"));
         },
         [](const PipelineConfig& c) { return std::to_string(c.seed); }},
        int_key("workers", &PipelineConfig::workers),
        int_key("realizations", &PipelineConfig::realizations),
        int_key("sample_rate", &PipelineConfig::sample_rate_hz),
        {"fft_size",
         [](PipelineConfig& c, const std::string& v) {
             c.stft.fft_size = static_cast<std::size_t>(parse_int(v, "fft_size"));
         },
         [](const PipelineConfig& c) { return std::to_string(c.stft.fft_size); }},
        {"hop",
         [](PipelineConfig& c, const std::string& v) {
             c.stft.hop = static_cast<std::size_t>(parse_int(v, "hop"));
         },
         [](const PipelineConfig& c) { return std::to_string(c.stft.hop); }},
        int_key("n_mels", &PipelineConfig::n_mels),
        real_key("f_min", &PipelineConfig::f_min_hz),
        real_key("f_max", &PipelineConfig::f_max_hz),
        {"mel_scale",
         [](PipelineConfig& c, const std::string& v) {
             if (v == "slaney") c.mel_scale = MelScale::slaney;
             else if (v == "htk") c.mel_scale = MelScale::htk;
             else throw std::invalid_argument("config: unknown mel_scale '" + v + "'");
         },
         [](const PipelineConfig& c) {
             return std::string(c.mel_scale == MelScale::slaney ? "slaney" : "htk");
         }},
        real_key("log_floor", &PipelineConfig::log_floor),
        real_key("eps", &PipelineConfig::eps),
        real_key("msc_lambda", &PipelineConfig::msc_lambda),
        {"distance_unit",
         [](PipelineConfig& c, const std::string& v) {
             if (v == "m") c.distance_unit = DistanceUnit::meters;
             else if (v == "cm") c.distance_unit = DistanceUnit::centimeters;
             else if (v == "auto") c.distance_unit = DistanceUnit::automatic;
             else throw std::invalid_argument("config: unknown distance_unit '" + v + "'");
         },
         [](const PipelineConfig& c) {
             switch (c.distance_unit) {
                 case DistanceUnit::meters: return std::string("m");
                 case DistanceUnit::centimeters: return std::string("cm");
                 default: return std::string("auto");
             }
         }},
        {"divide_by",
         [](PipelineConfig& c, const std::string& v) {
             if (v == "max") c.divide_by = DivideBy::max;
             else if (v == "absmax") c.divide_by = DivideBy::absmax;
             else throw std::invalid_argument("config: unknown divide_by '" + v + "'");
         },
         [](const PipelineConfig& c) {
             return std::string(c.divide_by == DivideBy::max ? "max" : "absmax");
         }},
        {"average",
         [](PipelineConfig& c, const std::string& v) {
             if (v == "macro") c.average = AverageMode::macro;
             else if (v == "micro") c.average = AverageMode::micro;
             else throw std::invalid_argument("config: unknown average '" + v + "'");
         },
         [](const PipelineConfig& c) {
             return std::string(c.average == AverageMode::macro ? "macro" : "micro");
         }},
        int_key("n_tracks", &PipelineConfig::n_tracks),
        int_key("n_classes", &PipelineConfig::n_classes),
        path_key("normalizer", &PipelineConfig::normalizer),
        {"filteraug_min_bands",
         [](PipelineConfig& c, const std::string& v) {
             c.filteraug.min_bands = static_cast<int>(parse_int(v, "filteraug_min_bands"));
         },
         [](const PipelineConfig& c) { return std::to_string(c.filteraug.min_bands); }},
        {"filteraug_max_bands",
         [](PipelineConfig& c, const std::string& v) {
             c.filteraug.max_bands = static_cast<int>(parse_int(v, "filteraug_max_bands"));
         },
         [](const PipelineConfig& c) { return std::to_string(c.filteraug.max_bands); }},
        {"filteraug_min_gain_db",
         [](PipelineConfig& c, const std::string& v) {
             c.filteraug.min_gain_db = parse_real(v, "filteraug_min_gain_db");
         },
         [](const PipelineConfig& c) { return real_str(c.filteraug.min_gain_db); }},
        {"filteraug_max_gain_db",
         [](PipelineConfig& c, const std::string& v) {
             c.filteraug.max_gain_db = parse_real(v, "filteraug_max_gain_db");
         },
         [](const PipelineConfig& c) { return real_str(c.filteraug.max_gain_db); }},
        {"freqshift_max_bins",
         [](PipelineConfig& c, const std::string& v) {
             c.freqshift.max_shift_bins = static_cast<int>(parse_int(v, "freqshift_max_bins"));
         },
         [](const PipelineConfig& c) { return std::to_string(c.freqshift.max_shift_bins); }},
        {"itfm_max_time_masks",
         [](PipelineConfig& c, const std::string& v) {
             c.itfm.max_time_masks = static_cast<int>(parse_int(v, "itfm_max_time_masks"));
         },
         [](const PipelineConfig& c) { return std::to_string(c.itfm.max_time_masks); }},
        {"itfm_max_time_width",
         [](PipelineConfig& c, const std::string& v) {
             c.itfm.max_time_width = static_cast<int>(parse_int(v, "itfm_max_time_width"));
         },
         [](const PipelineConfig& c) { return std::to_string(c.itfm.max_time_width); }},
        {"itfm_max_freq_masks",
         [](PipelineConfig& c, const std::string& v) {
             c.itfm.max_freq_masks = static_cast<int>(parse_int(v, "itfm_max_freq_masks"));
         },
         [](const PipelineConfig& c) { return std::to_string(c.itfm.max_freq_masks); }},
        {"itfm_max_freq_width",
         [](PipelineConfig& c, const std::string& v) {
             c.itfm.max_freq_width = static_cast<int>(parse_int(v, "itfm_max_freq_width"));
         },
         [](const PipelineConfig& c) { return std::to_string(c.itfm.max_freq_width); }},
        {"itfm_rectangles",
         [](PipelineConfig& c, const std::string& v) {
             c.itfm.rectangles = parse_bool(v, "itfm_rectangles");
         },
         [](const PipelineConfig& c) {
             return std::string(c.itfm.rectangles ? "true" : "false");
         }},
    };
    return keys;
}

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

}  // namespace detail

inline void apply_config_kv(PipelineConfig& cfg, const std::string& key,
                            const std::string& value) {
    for (const auto& k : detail::config_keys()) {
        if (key == k.name) {
            k.set(cfg, value);
            return;
        }
    }
    throw std::invalid_argument("config: unknown key '" + key + "'");
}

// key=value lines; blank lines and '#' comments ignored.
inline void apply_config_file(PipelineConfig& cfg, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path.string());
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(row) +
                                        " is not key=value: '" + t + "'");
        apply_config_kv(cfg, detail::trim(t.substr(0, eq)), detail::trim(t.substr(eq + 1)));
    }
}

// Every key can be overridden by STEREOSELD_<KEY> (uppercased).
inline void apply_env_overrides(PipelineConfig& cfg, const char* prefix = "STEREOSELD_") {
    for (const auto& k : detail::config_keys()) {
        std::string var = prefix;
        for (const char* p = k.name; *p; ++p)
            var += static_cast<char>(std::toupper(static_cast<unsigned char>(*p)));
        if (const char* value = std::getenv(var.c_str())) k.set(cfg, value);
    }
}

inline std::string dump_config(const PipelineConfig& cfg) {
    std::string out;
    for (const auto& k : detail::config_keys()) {
        out += k.name;
        out += '=';
        out += k.get(cfg);
        out += '\n';
    }
    return out;
}

}  // namespace stereoseld
