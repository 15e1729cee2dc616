#pragma once

// Command-line front end. Kept in a header so tests can drive the exact
// production argument path in-process.
//
// Precedence per key: built-in default < config file < STEREOSELD_* env
// variable < command-line flag. Exit codes: 0 success, 1 partial/failed
// work, 2 usage error.

#include <deque>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stereoseld/config.hpp"
#include "stereoseld/pipeline.hpp"

namespace stereoseld {

inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    CLI::App app{"Stereo 3D sound-event feature extraction, augmentation, and scoring"};
    app.require_subcommand(1);

    std::string config_path;
    bool print_config = false;
    app.add_option("--config", config_path, "key=value configuration file");
    app.add_flag("--print-config", print_config, "dump the effective configuration");

    // Flag values are collected as strings and layered over the config file
    // and environment through the same key table. A deque keeps the value
    // addresses stable for CLI11's bound references.
    struct FlagBinding {
        CLI::Option* opt;
        const char* key;
        std::string value;
    };
    std::deque<FlagBinding> bindings;
    auto bind = [&bindings](CLI::App* cmd, const std::string& flag, const char* key,
                            const std::string& help) {
        bindings.push_back({nullptr, key, {}});
        auto& b = bindings.back();
        b.opt = cmd->add_option(flag, b.value, help);
    };

    auto* extract = app.add_subcommand("extract", "extract feature and target tensors");
    bind(extract, "--dataset-root", "dataset_root", "dataset with audio/ and metadata/");
    bind(extract, "--output-root", "output_root", "destination for features/, targets/, manifest");
    bind(extract, "--feature-set", "feature_set", "MSI or MSIC");
    bind(extract, "--augment-mode", "augment_mode", "none, ITFM, FAFS, or ACS-offline");
    bind(extract, "--realizations", "realizations", "augmented variants per clip");
    bind(extract, "--seed", "seed", "global random seed");
    bind(extract, "--workers", "workers", "worker threads (0 = hardware)");
    bind(extract, "--sample-rate", "sample_rate", "pipeline sample rate in Hz");
    bind(extract, "--normalizer", "normalizer", "distance normalizer sidecar to reuse");
    bind(extract, "--distance-unit", "distance_unit", "m, cm, or auto");

    auto* acs_cmd = app.add_subcommand("acs-expand",
                                       "double the corpus with channel-swapped mirrors");
    bind(acs_cmd, "--dataset-root", "dataset_root", "dataset with audio/ and metadata/");

    auto* fit = app.add_subcommand("fit-normalizer", "fit distance statistics over a dataset");
    bind(fit, "--dataset-root", "dataset_root", "dataset with metadata/");
    bind(fit, "--distance-unit", "distance_unit", "m, cm, or auto");
    std::string fit_out;
    fit->add_option("--out", fit_out, "sidecar path (default <dataset-root>/distance_norm.txt)");

    auto* score_cmd = app.add_subcommand("score", "score prediction CSVs against references");
    std::string pred_dir, ref_dir;
    score_cmd->add_option("pred_dir", pred_dir, "directory of prediction CSVs")->required();
    score_cmd->add_option("ref_dir", ref_dir, "directory of reference CSVs")->required();
    bind(score_cmd, "--average", "average", "macro or micro");
    bind(score_cmd, "--distance-unit", "distance_unit", "m, cm, or auto");
    bind(score_cmd, "--n-classes", "n_classes", "class universe size");

    std::vector<const char*> argv;
    argv.push_back("stereoseld");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    PipelineConfig cfg;
    try {
        if (!config_path.empty()) apply_config_file(cfg, config_path);
        apply_env_overrides(cfg);
        for (const auto& b : bindings)
            if (b.opt->count() > 0) apply_config_kv(cfg, b.key, b.value);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    if (print_config) out << dump_config(cfg);

    try {
        if (extract->parsed()) {
            const ExtractSummary summary = run_extract(cfg);
            for (const auto& f : summary.failures) err << "failed: " << f << "\n";
            out << "extracted " << summary.clips_ok << " clips (" << summary.files_written
                << " files";
            if (summary.targets_dropped > 0)
                out << ", " << summary.targets_dropped << " events dropped from targets";
            out << ")\n";
            if (summary.clips_failed > 0) {
                out << summary.clips_failed << " clips failed\n";
                return 1;
            }
            return 0;
        }
        if (acs_cmd->parsed()) {
            const AcsExpandSummary summary = run_acs_expand(cfg);
            for (const auto& f : summary.failures) err << "failed: " << f << "\n";
            out << "mirrored " << summary.mirrored << " clips, skipped " << summary.skipped
                << "\n";
            return summary.failures.empty() ? 0 : 1;
        }
        if (fit->parsed()) {
            const fs::path out_path = !fit_out.empty()
                                          ? fs::path(fit_out)
                                          : cfg.dataset_root / "distance_norm.txt";
            const NormalizerSummary summary = run_fit_normalizer(cfg, out_path);
            char buf[256];
            std::snprintf(buf, sizeof buf,
                          "mean=%.6f std=%.6f max_z=%.6f over %zu distances in [%.3f, %.3f] m\n",
                          summary.normalizer.mean_m(), summary.normalizer.std_m(),
                          summary.normalizer.max_z(), summary.n_values, summary.min_distance_m,
                          summary.max_distance_m);
            out << buf << "sidecar: " << summary.sidecar.string() << "\n";
            return 0;
        }
        if (score_cmd->parsed()) {
            const MetricsReport report = run_score(pred_dir, ref_dir, cfg);
            out << format_report(report) << "---\n" << machine_report(report);
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace stereoseld
