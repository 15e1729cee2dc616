#pragma once

// Scoring of prediction streams against references: location-dependent
// F-score (20 deg / relative distance 1), class-dependent localization and
// relative distance errors, and the aggregated SELD error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stereoseld/tensor.hpp"

namespace stereoseld {

struct Detection {
    double azimuth_deg = 0;
    double elevation_deg = 0;
    double distance_m = 0;
};

// Great-circle angle between two directions, in degrees, clamped to [0, 180].
inline double angular_error_deg(double az_a_deg, double el_a_deg, double az_b_deg,
                                double el_b_deg) {
    constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
    const double dot = std::sin(el_a_deg * kDegToRad) * std::sin(el_b_deg * kDegToRad) +
                       std::cos(el_a_deg * kDegToRad) * std::cos(el_b_deg * kDegToRad) *
                           std::cos((az_a_deg - az_b_deg) * kDegToRad);
    return std::acos(std::clamp(dot, -1.0, 1.0)) / kDegToRad;
}

struct Assignment {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (row, col)
    double total_cost = 0.0;
};

// Exhaustive minimum-cost one-to-one assignment; rows/cols up to ~6.
inline Assignment assign_min_cost_brute(const Mat& cost) {
    const bool rows_small = cost.rows <= cost.cols;
    const std::size_t small = rows_small ? cost.rows : cost.cols;
    const std::size_t large = rows_small ? cost.cols : cost.rows;

    Assignment best;
    if (small == 0) return best;
    best.total_cost = std::numeric_limits<double>::infinity();

    std::vector<std::size_t> idx(large);
    std::iota(idx.begin(), idx.end(), 0);
    do {
        double total = 0.0;
        for (std::size_t i = 0; i < small; ++i)
            total += rows_small ? cost.at(i, idx[i]) : cost.at(idx[i], i);
        if (total < best.total_cost) {
            best.total_cost = total;
            best.pairs.clear();
            for (std::size_t i = 0; i < small; ++i)
                best.pairs.emplace_back(rows_small ? i : idx[i], rows_small ? idx[i] : i);
        }
    } while (std::next_permutation(idx.begin(), idx.end()));
    return best;
}

// O(n^3) Hungarian algorithm with potentials on the square padding of the
// cost matrix (dummy entries cost 0, which offsets every complete
// assignment equally).
inline Assignment assign_min_cost_hungarian(const Mat& cost) {
    Assignment result;
    if (cost.rows == 0 || cost.cols == 0) return result;
    const std::size_t n = std::max(cost.rows, cost.cols);

    auto padded = [&](std::size_t r, std::size_t c) {
        return (r < cost.rows && c < cost.cols) ? cost.at(r, c) : 0.0;
    };

    const double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> match_col(n + 1, 0);  // col -> row (1-based)
    std::vector<std::size_t> way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        match_col[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = match_col[j0];
            double delta = kInf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = padded(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match_col[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match_col[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match_col[j0] = match_col[j1];
            j0 = j1;
        } while (j0);
    }

    for (std::size_t j = 1; j <= n; ++j) {
        const std::size_t i = match_col[j];
        if (i >= 1 && i - 1 < cost.rows && j - 1 < cost.cols) {
            result.pairs.emplace_back(i - 1, j - 1);
            result.total_cost += cost.at(i - 1, j - 1);
        }
    }
    std::sort(result.pairs.begin(), result.pairs.end());
    return result;
}

// Minimum-total-angular-error one-to-one matching of predictions to
// references within one (frame, class) cell. Exhaustive search for lists of
// up to 5, Hungarian above that.
inline Assignment match_frame(const std::vector<Detection>& preds,
                              const std::vector<Detection>& refs) {
    Mat cost(preds.size(), refs.size());
    for (std::size_t p = 0; p < preds.size(); ++p)
        for (std::size_t r = 0; r < refs.size(); ++r)
            cost.at(p, r) = angular_error_deg(preds[p].azimuth_deg, preds[p].elevation_deg,
                                              refs[r].azimuth_deg, refs[r].elevation_deg);
    if (std::max(preds.size(), refs.size()) <= 5) return assign_min_cost_brute(cost);
    return assign_min_cost_hungarian(cost);
}

struct ScoredFrame {
    long frame = 0;
    int class_id = 0;
    std::vector<Detection> preds;
    std::vector<Detection> refs;
};

struct ClassCounts {
    long long tp = 0;
    long long fp = 0;
    long long fn = 0;
    long long matched = 0;
    double angular_sum_deg = 0.0;
    double rel_dist_sum = 0.0;
    long long ref_events = 0;
};

struct MetricsReport {
    double f_score = 0.0;    // in [0, 1]
    double le_cd_deg = 0.0;
    double rde_cd = 0.0;
    double e_seld = 0.0;
    std::vector<ClassCounts> counts;
};

// Aggregated SELD error: ((1 - F) + LE/180 + RDE) / 3.
inline double e_seld(double f_score, double le_deg, double rde) {
    return ((1.0 - f_score) + le_deg / 180.0 + rde) / 3.0;
}

enum class AverageMode { macro, micro };

namespace detail {

inline std::vector<ClassCounts> accumulate_counts(std::span<const ScoredFrame> frames,
                                                  std::size_t n_classes, double ang_thresh_deg,
                                                  double rde_thresh) {
    std::vector<ClassCounts> counts(n_classes);
    for (const auto& item : frames) {
        if (item.class_id < 0 || static_cast<std::size_t>(item.class_id) >= n_classes)
            throw std::invalid_argument("score: class id " + std::to_string(item.class_id) +
                                        " out of range [0, " + std::to_string(n_classes) + ")");
        auto& c = counts[static_cast<std::size_t>(item.class_id)];
        c.ref_events += static_cast<long long>(item.refs.size());

        const Assignment matched = match_frame(item.preds, item.refs);
        for (const auto& [p, r] : matched.pairs) {
            const double ang =
                angular_error_deg(item.preds[p].azimuth_deg, item.preds[p].elevation_deg,
                                  item.refs[r].azimuth_deg, item.refs[r].elevation_deg);
            if (!(item.refs[r].distance_m > 0))
                throw std::invalid_argument("score: reference distance must be positive");
            const double rde = std::abs(item.preds[p].distance_m - item.refs[r].distance_m) /
                               item.refs[r].distance_m;
            c.matched += 1;
            c.angular_sum_deg += ang;
            c.rel_dist_sum += rde;
            if (ang <= ang_thresh_deg && rde <= rde_thresh) {
                c.tp += 1;
            } else {
                c.fp += 1;
                c.fn += 1;
            }
        }
        c.fp += static_cast<long long>(item.preds.size() - matched.pairs.size());
        c.fn += static_cast<long long>(item.refs.size() - matched.pairs.size());
    }
    return counts;
}

}  // namespace detail

// Scores a stream of per-(frame, class) detection lists. A matched pair is a
// true positive iff its angular error is within ang_thresh_deg AND its
// relative distance error is within rde_thresh; LE/RDE average over all
// matched pairs regardless of the thresholds. Averages run over classes with
// reference activity; a ref-active class with no matched pairs contributes
// 180 deg / 1.0.
inline MetricsReport score(std::span<const ScoredFrame> frames, std::size_t n_classes,
                           AverageMode average = AverageMode::macro,
                           double ang_thresh_deg = 20.0, double rde_thresh = 1.0) {
    MetricsReport report;
    report.counts = detail::accumulate_counts(frames, n_classes, ang_thresh_deg, rde_thresh);

    long long total_refs = 0;
    for (const auto& c : report.counts) total_refs += c.ref_events;
    if (total_refs == 0) throw std::invalid_argument("score: empty reference stream");

    if (average == AverageMode::macro) {
        double f_sum = 0, le_sum = 0, rde_sum = 0;
        std::size_t active = 0;
        for (const auto& c : report.counts) {
            if (c.ref_events == 0) continue;
            ++active;
            f_sum += static_cast<double>(2 * c.tp) / static_cast<double>(2 * c.tp + c.fp + c.fn);
            le_sum += c.matched > 0 ? c.angular_sum_deg / static_cast<double>(c.matched) : 180.0;
            rde_sum += c.matched > 0 ? c.rel_dist_sum / static_cast<double>(c.matched) : 1.0;
        }
        report.f_score = f_sum / static_cast<double>(active);
        report.le_cd_deg = le_sum / static_cast<double>(active);
        report.rde_cd = rde_sum / static_cast<double>(active);
    } else {
        long long tp = 0, fp = 0, fn = 0, matched = 0;
        double ang = 0, rde = 0;
        for (const auto& c : report.counts) {
            tp += c.tp;
            fp += c.fp;
            fn += c.fn;
            matched += c.matched;
            ang += c.angular_sum_deg;
            rde += c.rel_dist_sum;
        }
        report.f_score = static_cast<double>(2 * tp) / static_cast<double>(2 * tp + fp + fn);
        report.le_cd_deg = matched > 0 ? ang / static_cast<double>(matched) : 180.0;
        report.rde_cd = matched > 0 ? rde / static_cast<double>(matched) : 1.0;
    }
    report.e_seld = e_seld(report.f_score, report.le_cd_deg, report.rde_cd);
    return report;
}

inline std::string format_report(const MetricsReport& report) {
    long long tp = 0, fp = 0, fn = 0;
    for (const auto& c : report.counts) {
        tp += c.tp;
        fp += c.fp;
        fn += c.fn;
    }
    char buf[256];
    std::string out;
    std::snprintf(buf, sizeof buf, "F20/1   : %6.2f %%\n", report.f_score * 100.0);
    out += buf;
    std::snprintf(buf, sizeof buf, "LE_CD   : %6.1f deg\n", report.le_cd_deg);
    out += buf;
    std::snprintf(buf, sizeof buf, "RDE_CD  : %6.3f\n", report.rde_cd);
    out += buf;
    std::snprintf(buf, sizeof buf, "E_SELD  : %6.3f\n", report.e_seld);
    out += buf;
    std::snprintf(buf, sizeof buf, "counts  : TP=%lld FP=%lld FN=%lld\n", tp, fp, fn);
    out += buf;
    return out;
}

inline std::string machine_report(const MetricsReport& report) {
    long long tp = 0, fp = 0, fn = 0;
    for (const auto& c : report.counts) {
        tp += c.tp;
        fp += c.fp;
        fn += c.fn;
    }
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "f_20_1=%.6f\nle_cd_deg=%.6f\nrde_cd=%.6f\ne_seld=%.6f\ntp=%lld\nfp=%lld\nfn=%lld\n",
                  report.f_score, report.le_cd_deg, report.rde_cd, report.e_seld, tp, fp, fn);
    return buf;
}

}  // namespace stereoseld
