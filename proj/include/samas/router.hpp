#pragma once
// Deterministic SFS -> workflow routing, plus threshold calibration by grid
// search and per-feature ROC analysis.
//
// Classification rule: Faulkner-esque iff global entropy H > h AND low-band
// energy E_low > e_low, both strictly; everything else is Hemingway-esque.

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "samas/errors.hpp"
#include "samas/roles.hpp"
#include "samas/sfs.hpp"
#include "samas/style.hpp"

namespace samas {

struct RoutingThresholds {
    double h = 0.85;     // global wavelet entropy threshold
    double e_low = 0.6;  // cumulative low-frequency energy threshold
};

struct Workflow {
    std::string name;
    std::vector<AgentRole> stages;
};

inline void validate_workflow(const Workflow& wf) {
    if (wf.stages.empty())
        throw Error(ErrorCode::ConfigError, "workflow '" + wf.name + "' has no stages");
    for (std::size_t i = 0; i < wf.stages.size(); ++i)
        for (std::size_t j = i + 1; j < wf.stages.size(); ++j)
            if (wf.stages[i] == wf.stages[j])
                throw Error(ErrorCode::ConfigError,
                            "workflow '" + wf.name + "' repeats role " +
                                role_name(wf.stages[i]));
}

// Total mapping StyleClass -> Workflow. Data, not code: loadable from config.
class WorkflowLibrary {
public:
    WorkflowLibrary(Workflow faulkner, Workflow hemingway) {
        validate_workflow(faulkner);
        validate_workflow(hemingway);
        workflows_.emplace(StyleClass::FaulknerEsque, std::move(faulkner));
        workflows_.emplace(StyleClass::HemingwayEsque, std::move(hemingway));
    }

    static WorkflowLibrary defaults() {
        return WorkflowLibrary(
            Workflow{"faulkner",
                     {AgentRole::LinguisticStructure, AgentRole::MetaphorTranslation,
                      AgentRole::CoreTranslation, AgentRole::ConsistencyFidelity}},
            Workflow{"hemingway",
                     {AgentRole::CoreTranslation, AgentRole::RhythmProsody,
                      AgentRole::ConsistencyFidelity}});
    }

    const Workflow& workflow_for(StyleClass cls) const { return workflows_.at(cls); }

private:
    std::map<StyleClass, Workflow> workflows_;
};

inline StyleClass classify(const StylisticFeatureSpectrum& sfs,
                           const RoutingThresholds& thresholds = {}) {
    const bool faulkner = sfs.global_entropy > thresholds.h &&
                          low_frequency_energy(sfs) > thresholds.e_low;
    return faulkner ? StyleClass::FaulknerEsque : StyleClass::HemingwayEsque;
}

inline Workflow allocate_workflow(StyleClass cls, const WorkflowLibrary& library) {
    return library.workflow_for(cls);
}

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
    double threshold = 0.0;
};

struct CalibrationReport {
    RoutingThresholds best_thresholds;
    double accuracy = 0.0;
    std::vector<RocPoint> roc_h;     // sweep of h with e_low pinned to 0
    std::vector<RocPoint> roc_e_low; // sweep of e_low with h pinned to 0
    double grid_resolution = 0.0;
};

namespace detail {

struct CalPoint {
    double h;
    double e;
    bool positive; // Faulkner is the positive class
};

// Distance from a correctly classified sample to the decision boundary (the
// corner region {H > h, E > e}). Used as the tie-breaking margin: among
// equally accurate grid cells, prefer the one whose boundary sits farthest
// from the nearest sample.
inline double boundary_margin(const CalPoint& p, double h, double e) {
    if (p.positive) return std::min(p.h - h, p.e - e);
    const double dx = p.h >= h ? 0.0 : h - p.h;
    const double dy = p.e >= e ? 0.0 : e - p.e;
    return std::sqrt(dx * dx + dy * dy);
}

inline double min_margin(const std::vector<CalPoint>& pts, double h, double e) {
    double m = 2.0;
    for (const auto& p : pts) m = std::min(m, boundary_margin(p, h, e));
    return m;
}

inline std::vector<double> threshold_grid(double resolution) {
    std::vector<double> grid;
    for (std::size_t i = 0;; ++i) {
        const double v = static_cast<double>(i) * resolution;
        if (v > 1.0 + 1e-12) break;
        grid.push_back(v < 1.0 ? v : 1.0);
    }
    if (grid.back() < 1.0 - 1e-12) grid.push_back(1.0);
    return grid;
}

inline std::vector<RocPoint> roc_sweep(const std::vector<CalPoint>& pts,
                                       const std::vector<double>& grid, bool sweep_h) {
    std::size_t positives = 0;
    for (const auto& p : pts) positives += p.positive ? 1 : 0;
    const std::size_t negatives = pts.size() - positives;

    std::vector<RocPoint> roc;
    roc.reserve(grid.size());
    for (double t : grid) {
        std::size_t tp = 0;
        std::size_t fp = 0;
        for (const auto& p : pts) {
            const bool predicted = sweep_h ? (p.h > t && p.e > 0.0)
                                           : (p.h > 0.0 && p.e > t);
            if (!predicted) continue;
            if (p.positive) ++tp;
            else ++fp;
        }
        roc.push_back({negatives ? static_cast<double>(fp) / negatives : 0.0,
                       positives ? static_cast<double>(tp) / positives : 0.0, t});
    }
    return roc;
}

} // namespace detail

// Exhaustive grid search over (h, e_low) in {0, r, 2r, ..., 1}^2 scored by
// classification accuracy. Ties: maximal minimum margin to the nearest
// sample, then lexicographically smallest (h, e_low). Order-independent.
inline CalibrationReport calibrate_thresholds(
    const std::vector<std::pair<StylisticFeatureSpectrum, StyleClass>>& samples,
    double grid_resolution) {
    if (samples.empty()) throw Error(ErrorCode::EmptyInput, "no calibration samples");
    if (!(grid_resolution > 0.0) || grid_resolution > 0.5)
        throw Error(ErrorCode::ConfigError, "grid_resolution must be in (0, 0.5]");

    std::vector<detail::CalPoint> pts;
    pts.reserve(samples.size());
    bool has_positive = false;
    bool has_negative = false;
    for (const auto& [sfs, label] : samples) {
        const bool positive = label == StyleClass::FaulknerEsque;
        has_positive |= positive;
        has_negative |= !positive;
        pts.push_back({sfs.global_entropy, low_frequency_energy(sfs), positive});
    }
    if (!has_positive || !has_negative)
        throw Error(ErrorCode::DegenerateLabels,
                    "calibration needs samples from both style classes");

    const std::vector<double> grid = detail::threshold_grid(grid_resolution);

    std::size_t best_correct = 0;
    double best_margin = -1.0;
    double best_h = 0.0;
    double best_e = 0.0;
    bool first = true;
    for (double h : grid) {
        for (double e : grid) {
            std::size_t correct = 0;
            for (const auto& p : pts) {
                const bool predicted = p.h > h && p.e > e;
                if (predicted == p.positive) ++correct;
            }
            if (!first && correct < best_correct) continue;
            if (first || correct > best_correct) {
                best_correct = correct;
                best_margin = detail::min_margin(pts, h, e);
                best_h = h;
                best_e = e;
                first = false;
                continue;
            }
            // Same accuracy: larger margin wins; exact margin tie keeps the
            // lexicographically earlier cell (loop order is ascending).
            const double margin = detail::min_margin(pts, h, e);
            if (margin > best_margin) {
                best_margin = margin;
                best_h = h;
                best_e = e;
            }
        }
    }

    CalibrationReport report;
    report.best_thresholds = {best_h, best_e};
    report.accuracy = static_cast<double>(best_correct) / static_cast<double>(pts.size());
    report.roc_h = detail::roc_sweep(pts, grid, true);
    report.roc_e_low = detail::roc_sweep(pts, grid, false);
    report.grid_resolution = grid_resolution;
    return report;
}

// Trapezoid-rule area under the ROC curve; anchors at (0,0) and (1,1).
inline double roc_auc(const std::vector<RocPoint>& points) {
    std::vector<std::pair<double, double>> curve;
    curve.reserve(points.size() + 2);
    curve.emplace_back(0.0, 0.0);
    for (const auto& p : points) curve.emplace_back(p.fpr, p.tpr);
    curve.emplace_back(1.0, 1.0);
    std::sort(curve.begin(), curve.end());
    double area = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        area += (curve[i].first - curve[i - 1].first) *
                (curve[i].second + curve[i - 1].second) / 2.0;
    return area;
}

inline nlohmann::json roc_to_json(const std::vector<RocPoint>& points) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : points)
        arr.push_back({{"fpr", p.fpr}, {"tpr", p.tpr}, {"threshold", p.threshold}});
    return arr;
}

inline nlohmann::json report_to_json(const CalibrationReport& report) {
    return nlohmann::json{
        {"best_thresholds",
         {{"h", report.best_thresholds.h}, {"e_low", report.best_thresholds.e_low}}},
        {"accuracy", report.accuracy},
        {"grid_resolution", report.grid_resolution},
        {"roc_points", {{"h", roc_to_json(report.roc_h)},
                        {"e_low", roc_to_json(report.roc_e_low)}}},
        {"auc", {{"h", roc_auc(report.roc_h)}, {"e_low", roc_auc(report.roc_e_low)}}},
    };
}

inline RoutingThresholds thresholds_from_json(const nlohmann::json& j) {
    RoutingThresholds t;
    if (j.contains("h")) t.h = j.at("h").get<double>();
    if (j.contains("e_low")) t.e_low = j.at("e_low").get<double>();
    if (t.h < 0.0 || t.h > 1.0 || t.e_low < 0.0 || t.e_low > 1.0)
        throw Error(ErrorCode::ConfigError, "thresholds must lie in [0, 1]");
    return t;
}

// Parses {"faulkner": ["role", ...], "hemingway": [...]}.
inline WorkflowLibrary library_from_json(const nlohmann::json& j) {
    auto parse = [&](const char* key) {
        if (!j.contains(key))
            throw Error(ErrorCode::ConfigError,
                        std::string("workflow library is missing '") + key + "'");
        Workflow wf;
        wf.name = key;
        for (const auto& entry : j.at(key)) {
            const auto name = entry.get<std::string>();
            const auto role = role_from_name(name);
            if (!role)
                throw Error(ErrorCode::ConfigError, "unknown agent role '" + name + "'");
            wf.stages.push_back(*role);
        }
        return wf;
    };
    return WorkflowLibrary(parse("faulkner"), parse("hemingway"));
}

} // namespace samas
