#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "betasig/scored_sample.hpp"

namespace betasig {

/// Counts at a fixed threshold; the domain of every thresholded indicator.
struct ConfusionMatrix {
    std::int64_t tp, fp, fn, tn;
    std::int64_t total() const { return tp + fp + fn + tn; }
};

enum class MetricKind { accuracy, precision, recall, f1, mcc };

/// Classifier indicators at one threshold. A metric whose denominator is
/// zero is reported as nullopt -- never coerced to 0 or 1, which would
/// corrupt sweeps at extreme thresholds.
struct Metrics {
    std::optional<double> accuracy;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
    std::optional<double> mcc;
    std::optional<double> get(MetricKind kind) const;
};

struct MetricRow {
    double threshold;
    Metrics metrics;
};

/// Tally with the tie rule "score >= threshold predicts 1".
/// Throws DataError on empty input.
ConfusionMatrix confusion_at(std::span<const ScoredSample> samples, double threshold);

/// Metrics from integer counts; requires total() > 0.
Metrics metrics_at(const ConfusionMatrix& cm);

/// Same formulas on fractional counts; shared with the smooth-model path
/// where expected confusion fractions replace tallies.
Metrics metrics_from_fractions(double tp, double fp, double fn, double tn);

/// One MetricRow per grid threshold. The grid must be nonempty, inside
/// [0,1], and strictly increasing.
std::vector<MetricRow> sweep(std::span<const ScoredSample> samples,
                             std::span<const double> grid);

/// The reproducible default grid: 101 uniform thresholds {0, 0.01, ..., 1}.
std::vector<double> default_threshold_grid();

struct HistogramBin {
    double lo, hi; // [lo, hi), last bin closed
    double density;
};

/// Class-conditional empirical score densities (normalized histograms).
struct ClassCurves {
    std::vector<HistogramBin> tr; // label-1 scores
    std::vector<HistogramBin> fr; // label-0 scores
};

/// Histogram-density estimates over [0,1] with `bins` equal-width bins.
/// Each curve integrates to 1. Throws DataError if a class is missing.
ClassCurves empirical_curves(std::span<const ScoredSample> samples, int bins);

} // namespace betasig
