#include "betasig/signals.hpp"

#include <cmath>
#include <sstream>

#include "betasig/errors.hpp"

namespace betasig {

void validate_sample(const ScoredSample& s) {
    if (!std::isfinite(s.score) || s.score < 0.0 || s.score > 1.0) {
        std::ostringstream msg;
        msg << "sample score must be a finite real in [0,1], got " << s.score;
        throw DataError(msg.str());
    }
    if (s.label != 0 && s.label != 1) {
        std::ostringstream msg;
        msg << "sample label must be 0 or 1, got " << s.label;
        throw DataError(msg.str());
    }
}

std::optional<double> Metrics::get(MetricKind kind) const {
    switch (kind) {
        case MetricKind::accuracy: return accuracy;
        case MetricKind::precision: return precision;
        case MetricKind::recall: return recall;
        case MetricKind::f1: return f1;
        case MetricKind::mcc: return mcc;
    }
    return std::nullopt;
}

ConfusionMatrix confusion_at(std::span<const ScoredSample> samples, double threshold) {
    if (samples.empty()) {
        throw DataError("confusion_at: no samples");
    }
    ConfusionMatrix cm{0, 0, 0, 0};
    for (const ScoredSample& s : samples) {
        validate_sample(s);
        const bool predicted = s.score >= threshold;
        if (predicted) {
            (s.label == 1 ? cm.tp : cm.fp) += 1;
        } else {
            (s.label == 1 ? cm.fn : cm.tn) += 1;
        }
    }
    return cm;
}

Metrics metrics_from_fractions(double tp, double fp, double fn, double tn) {
    const double n = tp + fp + fn + tn;
    if (!(n > 0.0)) {
        throw DataError("metrics: total count must be positive");
    }
    Metrics m;
    m.accuracy = (tp + tn) / n;
    if (tp + fp > 0.0) m.precision = tp / (tp + fp);
    if (tp + fn > 0.0) m.recall = tp / (tp + fn);
    if (m.precision && m.recall && *m.precision + *m.recall > 0.0) {
        m.f1 = 2.0 * *m.precision * *m.recall / (*m.precision + *m.recall);
    }
    const double pp = tp + fp, ap = tp + fn, pn = tn + fn, an = tn + fp;
    if (pp > 0.0 && ap > 0.0 && pn > 0.0 && an > 0.0) {
        m.mcc = (tp * tn - fp * fn) / std::sqrt(pp * ap * pn * an);
    }
    return m;
}

Metrics metrics_at(const ConfusionMatrix& cm) {
    return metrics_from_fractions(static_cast<double>(cm.tp), static_cast<double>(cm.fp),
                                  static_cast<double>(cm.fn), static_cast<double>(cm.tn));
}

std::vector<MetricRow> sweep(std::span<const ScoredSample> samples,
                             std::span<const double> grid) {
    if (grid.empty()) {
        throw DataError("sweep: threshold grid is empty");
    }
    double prev = -1.0;
    for (double t : grid) {
        if (!std::isfinite(t) || t < 0.0 || t > 1.0) {
            std::ostringstream msg;
            msg << "sweep: threshold " << t << " outside [0,1]";
            throw DataError(msg.str());
        }
        if (t <= prev) {
            throw DataError("sweep: threshold grid must be strictly increasing");
        }
        prev = t;
    }
    std::vector<MetricRow> rows;
    rows.reserve(grid.size());
    for (double t : grid) {
        rows.push_back({t, metrics_at(confusion_at(samples, t))});
    }
    return rows;
}

std::vector<double> default_threshold_grid() {
    std::vector<double> grid(101);
    for (int i = 0; i <= 100; ++i) grid[i] = i / 100.0;
    return grid;
}

ClassCurves empirical_curves(std::span<const ScoredSample> samples, int bins) {
    if (bins < 1) {
        std::ostringstream msg;
        msg << "empirical_curves: bin count must be >= 1, got " << bins;
        throw DataError(msg.str());
    }
    std::vector<std::int64_t> tr_counts(bins, 0), fr_counts(bins, 0);
    std::int64_t n_tr = 0, n_fr = 0;
    for (const ScoredSample& s : samples) {
        validate_sample(s);
        // [lo, hi) bins, last bin closed: a boundary score lands in exactly one
        int idx = static_cast<int>(s.score * bins);
        if (idx >= bins) idx = bins - 1;
        if (s.label == 1) {
            ++tr_counts[idx];
            ++n_tr;
        } else {
            ++fr_counts[idx];
            ++n_fr;
        }
    }
    if (n_tr == 0 || n_fr == 0) {
        std::ostringstream msg;
        msg << "empirical_curves: class " << (n_tr == 0 ? 1 : 0) << " has no samples";
        throw DataError(msg.str());
    }
    const double width = 1.0 / bins;
    ClassCurves curves;
    curves.tr.reserve(bins);
    curves.fr.reserve(bins);
    for (int i = 0; i < bins; ++i) {
        const double lo = static_cast<double>(i) / bins;
        const double hi = (i + 1 == bins) ? 1.0 : static_cast<double>(i + 1) / bins;
        curves.tr.push_back({lo, hi, tr_counts[i] / (n_tr * width)});
        curves.fr.push_back({lo, hi, fr_counts[i] / (n_fr * width)});
    }
    return curves;
}

} // namespace betasig
