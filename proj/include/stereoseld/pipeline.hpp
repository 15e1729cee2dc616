#pragma once

// Batch drivers behind the CLI: dataset scan, parallel feature/target
// extraction with a deterministic manifest, offline ACS corpus doubling,
// normalizer fitting, and directory-level scoring.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "stereoseld/augment.hpp"
#include "stereoseld/config.hpp"
#include "stereoseld/labels.hpp"
#include "stereoseld/metrics.hpp"
#include "stereoseld/rng.hpp"
#include "stereoseld/stereo_features.hpp"
#include "stereoseld/wave_io.hpp"

namespace stereoseld {

namespace fs = std::filesystem;

struct ClipJob {
    std::string stem;
    fs::path wav;
    fs::path csv;
};

struct DatasetScan {
    std::vector<ClipJob> jobs;                // paired stems, sorted
    std::vector<std::string> unpaired;        // stems missing their partner
};

// Pairs dataset_root/audio/*.wav with dataset_root/metadata/*.csv by stem.
inline DatasetScan scan_dataset(const fs::path& root) {
    const fs::path audio_dir = root / "audio";
    const fs::path meta_dir = root / "metadata";
    std::map<std::string, fs::path> wavs, csvs;
    if (fs::is_directory(audio_dir))
        for (const auto& entry : fs::directory_iterator(audio_dir))
            if (entry.is_regular_file() && entry.path().extension() == ".wav")
                wavs[entry.path().stem().string()] = entry.path();
    if (fs::is_directory(meta_dir))
        for (const auto& entry : fs::directory_iterator(meta_dir))
            if (entry.is_regular_file() && entry.path().extension() == ".csv")
                csvs[entry.path().stem().string()] = entry.path();

    DatasetScan scan;
    for (const auto& [stem, wav] : wavs) {
        auto it = csvs.find(stem);
        if (it == csvs.end()) {
            scan.unpaired.push_back(stem + " (missing metadata csv)");
        } else {
            scan.jobs.push_back({stem, wav, it->second});
        }
    }
    for (const auto& [stem, csv] : csvs)
        if (!wavs.count(stem)) scan.unpaired.push_back(stem + " (missing audio wav)");
    std::sort(scan.jobs.begin(), scan.jobs.end(),
              [](const ClipJob& a, const ClipJob& b) { return a.stem < b.stem; });
    std::sort(scan.unpaired.begin(), scan.unpaired.end());
    return scan;
}

struct ExtractSummary {
    std::size_t clips_ok = 0;
    std::size_t clips_failed = 0;
    std::size_t files_written = 0;
    std::size_t targets_dropped = 0;  // events beyond the track/frame budget
    std::vector<std::string> failures;  // "stem: reason"
    std::string manifest;               // full manifest text, sorted by entry name
};

namespace detail {

struct ManifestRow {
    std::string name;
    std::string feature_shape;
    std::uint64_t feature_hash = 0;
    std::string target_shape;
    std::uint64_t target_hash = 0;
};

inline std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

inline std::string render_manifest(std::vector<ManifestRow> rows) {
    std::sort(rows.begin(), rows.end(),
              [](const ManifestRow& a, const ManifestRow& b) { return a.name < b.name; });
    std::string out;
    for (const auto& r : rows) {
        out += r.name;
        out += '\t';
        out += "features=" + r.feature_shape;
        out += '\t';
        out += "features_fnv=" + hex64(r.feature_hash);
        out += '\t';
        out += "targets=" + r.target_shape;
        out += '\t';
        out += "targets_fnv=" + hex64(r.target_hash);
        out += '\n';
    }
    return out;
}

// Fits the distance normalizer for a run: an explicit sidecar wins,
// otherwise the statistics come from every paired metadata file.
inline DistanceNormalizer run_normalizer(const PipelineConfig& cfg,
                                         const std::vector<ClipJob>& jobs) {
    if (!cfg.normalizer.empty()) return DistanceNormalizer::load(cfg.normalizer);
    std::vector<double> distances;
    for (const auto& job : jobs) {
        const EventList events = read_metadata_csv(job.csv, cfg.distance_unit);
        for (const auto& e : events.entries) distances.push_back(e.distance_m);
    }
    if (distances.empty()) return DistanceNormalizer(0.0, 1.0, 1.0);  // no targets reference it
    return DistanceNormalizer::fit(distances, cfg.divide_by);
}

inline std::size_t label_frames_for(std::size_t samples, int sample_rate_hz) {
    // 100 ms label resolution; partial frames round up.
    return (samples * 10 + static_cast<std::size_t>(sample_rate_hz) - 1) /
           static_cast<std::size_t>(sample_rate_hz);
}

}  // namespace detail

// Extracts one feature tensor and one target tensor per clip under
// output_root/features and output_root/targets, plus a manifest of shapes
// and content checksums. Augmented runs write one feature file per
// realization. Deterministic for a fixed config/seed regardless of the
// worker count: per-clip randomness derives from the stem hash.
inline ExtractSummary run_extract(const PipelineConfig& cfg) {
    if (cfg.dataset_root.empty()) throw std::invalid_argument("extract: dataset_root not set");
    if (cfg.output_root.empty()) throw std::invalid_argument("extract: output_root not set");
    const DatasetScan scan = scan_dataset(cfg.dataset_root);

    ExtractSummary summary;
    for (const auto& s : scan.unpaired) {
        summary.failures.push_back(s);
        ++summary.clips_failed;
    }

    fs::create_directories(cfg.output_root / "features");
    fs::create_directories(cfg.output_root / "targets");

    DistanceNormalizer dn;
    try {
        dn = detail::run_normalizer(cfg, scan.jobs);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("extract: normalizer fit failed: ") + e.what());
    }

    const auto augment = compose_pipeline(
        cfg.augment_mode == AugmentMode::acs_offline ? AugmentMode::none : cfg.augment_mode,
        cfg.augment_config());
    const bool augmented =
        cfg.augment_mode == AugmentMode::itfm || cfg.augment_mode == AugmentMode::fafs;
    const unsigned realizations = augmented ? std::max(1u, cfg.realizations) : 1;

    struct ClipResult {
        std::vector<detail::ManifestRow> rows;
        std::string error;
        std::size_t files = 0;
        std::size_t dropped = 0;
    };
    std::vector<ClipResult> results(scan.jobs.size());

    auto process = [&](const ClipJob& job, ClipResult& res) {
        try {
            StereoClip clip = resample_if_needed(read_wav(job.wav), cfg.sample_rate_hz);
            EventList events = read_metadata_csv(job.csv, cfg.distance_unit);

            struct Variant {
                std::string name;
                StereoClip clip;
                EventList events;
            };
            std::vector<Variant> variants;
            variants.push_back({job.stem, std::move(clip), std::move(events)});
            if (cfg.augment_mode == AugmentMode::acs_offline) {
                auto [swapped, mirrored] = acs(variants[0].clip, variants[0].events);
                variants.push_back({job.stem + "_acs", std::move(swapped), std::move(mirrored)});
            }

            for (const auto& variant : variants) {
                const std::size_t frames =
                    detail::label_frames_for(variant.clip.samples_per_channel(),
                                             cfg.sample_rate_hz);
                const TargetEncoding targets = encode_targets(variant.events, dn, frames,
                                                              cfg.n_tracks, cfg.n_classes);
                res.dropped += targets.dropped;
                const auto target_bytes = npy_encode(targets.tensor);
                detail::write_file_bytes(cfg.output_root / "targets" / (variant.name + ".npy"),
                                         target_bytes);
                ++res.files;
                const std::uint64_t target_hash = fnv1a64(target_bytes.data(), target_bytes.size());

                const Tensor stack =
                    assemble_stack(variant.clip, cfg.feature_set, cfg.feature_params());
                for (unsigned r = 0; r < realizations; ++r) {
                    std::string name = variant.name;
                    Tensor out = stack;
                    if (augmented) {
                        name += ".aug" + std::to_string(r);
                        out = augment(stack, mix_seed(fnv1a64(variant.name), r));
                    }
                    const auto bytes = npy_encode(out);
                    detail::write_file_bytes(cfg.output_root / "features" / (name + ".npy"), bytes);
                    ++res.files;
                    res.rows.push_back({name, out.shape_string(),
                                        fnv1a64(bytes.data(), bytes.size()),
                                        targets.tensor.shape_string(), target_hash});
                }
            }
        } catch (const std::exception& e) {
            res.error = e.what();
        }
    };

    const unsigned workers = cfg.workers > 0
                                 ? cfg.workers
                                 : std::max(1u, std::thread::hardware_concurrency());
    if (workers <= 1 || scan.jobs.size() <= 1) {
        for (std::size_t i = 0; i < scan.jobs.size(); ++i) process(scan.jobs[i], results[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= scan.jobs.size()) return;
                    process(scan.jobs[i], results[i]);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    std::vector<detail::ManifestRow> rows;
    for (std::size_t i = 0; i < scan.jobs.size(); ++i) {
        if (!results[i].error.empty()) {
            summary.failures.push_back(scan.jobs[i].stem + ": " + results[i].error);
            ++summary.clips_failed;
            continue;
        }
        ++summary.clips_ok;
        summary.files_written += results[i].files;
        summary.targets_dropped += results[i].dropped;
        rows.insert(rows.end(), results[i].rows.begin(), results[i].rows.end());
    }
    summary.manifest = detail::render_manifest(std::move(rows));

    std::ofstream mf(cfg.output_root / "manifest.tsv", std::ios::trunc);
    if (!mf) throw std::runtime_error("cannot write manifest under " + cfg.output_root.string());
    mf << summary.manifest;
    return summary;
}

struct AcsExpandSummary {
    std::size_t mirrored = 0;
    std::size_t skipped = 0;  // *_acs stems and already-existing mirrors
    std::vector<std::string> failures;
};

// Writes <stem>_acs.wav / <stem>_acs.csv siblings with swapped channels and
// azimuths reflected about the frontal axis. Running twice is a no-op:
// *_acs stems are never re-mirrored and existing outputs are kept.
inline AcsExpandSummary run_acs_expand(const PipelineConfig& cfg) {
    if (cfg.dataset_root.empty()) throw std::invalid_argument("acs-expand: dataset_root not set");
    const DatasetScan scan = scan_dataset(cfg.dataset_root);
    AcsExpandSummary summary;
    for (const auto& s : scan.unpaired) summary.failures.push_back(s);

    for (const auto& job : scan.jobs) {
        if (job.stem.size() >= 4 && job.stem.ends_with("_acs")) {
            ++summary.skipped;
            continue;
        }
        const fs::path wav_out = job.wav.parent_path() / (job.stem + "_acs.wav");
        const fs::path csv_out = job.csv.parent_path() / (job.stem + "_acs.csv");
        if (fs::exists(wav_out) && fs::exists(csv_out)) {
            ++summary.skipped;
            continue;
        }
        try {
            acs_swap_wav_file(job.wav, wav_out);
            // Distances pass through verbatim: mirroring must not re-unit them.
            EventList events = read_metadata_csv(job.csv, DistanceUnit::meters);
            for (auto& e : events.entries) e.azimuth_deg = invert_azimuth(e.azimuth_deg);
            write_metadata_csv(csv_out, events);
            ++summary.mirrored;
        } catch (const std::exception& e) {
            summary.failures.push_back(job.stem + ": " + e.what());
        }
    }
    return summary;
}

struct NormalizerSummary {
    DistanceNormalizer normalizer;
    double min_distance_m = 0;
    double max_distance_m = 0;
    std::size_t n_values = 0;
    fs::path sidecar;
};

// Fits the distance normalizer over every metadata file in the dataset and
// writes the sidecar.
inline NormalizerSummary run_fit_normalizer(const PipelineConfig& cfg, const fs::path& out) {
    if (cfg.dataset_root.empty())
        throw std::invalid_argument("fit-normalizer: dataset_root not set");

    std::vector<double> distances;
    const fs::path meta_dir = cfg.dataset_root / "metadata";
    if (fs::is_directory(meta_dir)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(meta_dir))
            if (entry.is_regular_file() && entry.path().extension() == ".csv")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            const EventList events = read_metadata_csv(f, cfg.distance_unit);
            for (const auto& e : events.entries) distances.push_back(e.distance_m);
        }
    }

    NormalizerSummary summary;
    summary.n_values = distances.size();
    summary.normalizer = DistanceNormalizer::fit(distances, cfg.divide_by);
    summary.min_distance_m = *std::min_element(distances.begin(), distances.end());
    summary.max_distance_m = *std::max_element(distances.begin(), distances.end());
    summary.sidecar = out;
    if (!out.parent_path().empty()) fs::create_directories(out.parent_path());
    summary.normalizer.save(out);
    return summary;
}

// Builds per-(frame, class) detection lists from a prediction/reference
// event-list pair for one clip.
inline std::vector<ScoredFrame> build_scored_frames(const EventList& preds,
                                                    const EventList& refs) {
    std::map<std::pair<long, int>, ScoredFrame> cells;
    auto cell = [&cells](long frame, int cls) -> ScoredFrame& {
        auto& c = cells[{frame, cls}];
        c.frame = frame;
        c.class_id = cls;
        return c;
    };
    for (const auto& e : preds.entries)
        cell(e.frame, e.class_id).preds.push_back({e.azimuth_deg, e.elevation_deg, e.distance_m});
    for (const auto& e : refs.entries)
        cell(e.frame, e.class_id).refs.push_back({e.azimuth_deg, e.elevation_deg, e.distance_m});
    std::vector<ScoredFrame> out;
    out.reserve(cells.size());
    for (auto& [key, value] : cells) out.push_back(std::move(value));
    return out;
}

// Scores prediction CSVs against reference CSVs with matching stems. Files
// are processed in sorted stem order, so the report does not depend on
// directory enumeration order.
inline MetricsReport run_score(const fs::path& pred_dir, const fs::path& ref_dir,
                               const PipelineConfig& cfg) {
    auto list_csvs = [](const fs::path& dir) {
        std::map<std::string, fs::path> out;
        if (!fs::is_directory(dir))
            throw std::runtime_error("score: not a directory: " + dir.string());
        for (const auto& entry : fs::directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ".csv")
                out[entry.path().stem().string()] = entry.path();
        return out;
    };
    const auto preds = list_csvs(pred_dir);
    const auto refs = list_csvs(ref_dir);

    std::string missing;
    for (const auto& [stem, path] : refs)
        if (!preds.count(stem)) missing += missing.empty() ? stem : ", " + stem;
    for (const auto& [stem, path] : preds)
        if (!refs.count(stem)) missing += missing.empty() ? stem : ", " + stem;
    if (!missing.empty())
        throw std::runtime_error("score: stems not present in both directories: " + missing);

    std::vector<ScoredFrame> frames;
    for (const auto& [stem, ref_path] : refs) {
        const EventList p = read_metadata_csv(preds.at(stem), cfg.distance_unit);
        const EventList r = read_metadata_csv(ref_path, cfg.distance_unit);
        auto clip_frames = build_scored_frames(p, r);
        frames.insert(frames.end(), clip_frames.begin(), clip_frames.end());
    }
    return score(frames, cfg.n_classes, cfg.average);
}

}  // namespace stereoseld
