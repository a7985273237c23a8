#include "betasig/report.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <ctime>

#include "betasig/version.hpp"

namespace betasig::io {

using nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string format_optional(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string("NA");
}

std::int64_t report_timestamp() {
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        std::int64_t value = 0;
        const auto [ptr, ec] = std::from_chars(epoch, epoch + std::strlen(epoch), value);
        if (ec == std::errc() && *ptr == '\0') return value;
    }
    return static_cast<std::int64_t>(std::time(nullptr));
}

namespace {

ordered_json json_optional(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

} // namespace

ordered_json make_report_skeleton(const Dataset* dataset, const std::string& command) {
    ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kVersion;
    j["command"] = command;
    j["timestamp"] = report_timestamp();
    if (dataset != nullptr) {
        j["input"] = {{"source", dataset->source},
                      {"digest", dataset->digest},
                      {"samples", dataset->samples.size()}};
    } else {
        j["input"] = nullptr;
    }
    j["fit"] = nullptr;
    j["divergence"] = nullptr;
    j["sweep"] = nullptr;
    j["stability"] = nullptr;
    j["credible_intervals"] = nullptr;
    j["bounds"] = nullptr;
    j["curves"] = nullptr;
    j["history"] = nullptr;
    return j;
}

ordered_json fit_section(const SignalPair& pair, double prevalence) {
    return {{"tr", {{"alpha", pair.tr.alpha}, {"beta", pair.tr.beta}}},
            {"fr", {{"alpha", pair.fr.alpha}, {"beta", pair.fr.beta}}},
            {"prevalence", prevalence}};
}

ordered_json divergence_section(const DivergenceReport& rep) {
    return {{"kl_forward", rep.kl_forward}, {"kl_reverse", rep.kl_reverse},
            {"js", rep.js},                 {"lp", rep.lp},
            {"lp_order", rep.lp_order},     {"overlap", rep.overlap}};
}

ordered_json sweep_section(const std::vector<MetricRow>& rows) {
    ordered_json arr = ordered_json::array();
    for (const MetricRow& row : rows) {
        arr.push_back({{"threshold", row.threshold},
                       {"accuracy", json_optional(row.metrics.accuracy)},
                       {"precision", json_optional(row.metrics.precision)},
                       {"recall", json_optional(row.metrics.recall)},
                       {"f1", json_optional(row.metrics.f1)},
                       {"mcc", json_optional(row.metrics.mcc)}});
    }
    return arr;
}

ordered_json stability_section(MetricKind metric, double threshold, double step,
                               const std::optional<StabilityReport>& rep) {
    ordered_json j{{"metric", metric_kind_name(metric)},
                   {"threshold", threshold},
                   {"step", step}};
    if (rep) {
        j["value"] = rep->value;
        j["first_derivative"] = rep->first_derivative;
        j["second_derivative"] = rep->second_derivative;
        j["flagged_steep"] = rep->flagged_steep;
    } else {
        j["value"] = nullptr;
        j["first_derivative"] = nullptr;
        j["second_derivative"] = nullptr;
        j["flagged_steep"] = nullptr;
    }
    return j;
}

ordered_json intervals_section(double mass, const CredibleInterval& tr,
                               const CredibleInterval& fr) {
    return {{"mass", mass},
            {"tr", {{"lo", tr.lo}, {"hi", tr.hi}}},
            {"fr", {{"lo", fr.lo}, {"hi", fr.hi}}}};
}

ordered_json bounds_section(double epsilon, double concentration, SeparationMetric metric,
                            const BoundsReport& pair,
                            const std::optional<BoundsMcSummary>& mc) {
    ordered_json j{{"epsilon", epsilon},
                   {"concentration", concentration},
                   {"metric", separation_metric_name(metric)},
                   {"pair",
                    {{"d_RL", pair.d_RL},
                     {"d_PQ", pair.d_PQ},
                     {"d_LP", pair.d_LP},
                     {"d_QR", pair.d_QR},
                     {"upper_bound_rhs", pair.upper_bound_rhs},
                     {"lower_holds", pair.lower_holds},
                     {"upper_holds", pair.upper_holds},
                     {"slack", pair.slack}}},
                   {"note", "pointwise instances; the quantified forms of the "
                            "extremal-separation inequalities are heuristic"}};
    if (mc) {
        j["monte_carlo"] = {{"trials", mc->trials},
                            {"seed", mc->seed},
                            {"lower_violations", mc->lower_violations},
                            {"upper_violations", mc->upper_violations},
                            {"min_lower_margin", mc->min_lower_margin},
                            {"min_upper_margin", mc->min_upper_margin}};
    } else {
        j["monte_carlo"] = nullptr;
    }
    return j;
}

ordered_json curves_section(const ClassCurves& curves) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < curves.tr.size(); ++i) {
        rows.push_back({{"bin_lo", curves.tr[i].lo},
                        {"bin_hi", curves.tr[i].hi},
                        {"tr_density", curves.tr[i].density},
                        {"fr_density", curves.fr[i].density}});
    }
    return {{"bins", curves.tr.size()}, {"rows", rows}};
}

ordered_json history_section(const std::vector<EpochStats>& history) {
    ordered_json arr = ordered_json::array();
    for (const EpochStats& e : history) {
        arr.push_back({{"epoch", e.epoch},
                       {"loss", e.loss},
                       {"accuracy", e.accuracy},
                       {"mcc", json_optional(e.mcc)},
                       {"kl_separation", e.kl_separation}});
    }
    return arr;
}

const char* metric_kind_name(MetricKind kind) {
    switch (kind) {
        case MetricKind::accuracy: return "accuracy";
        case MetricKind::precision: return "precision";
        case MetricKind::recall: return "recall";
        case MetricKind::f1: return "f1";
        case MetricKind::mcc: return "mcc";
    }
    return "unknown";
}

const char* separation_metric_name(SeparationMetric metric) {
    switch (metric) {
        case SeparationMetric::js_distance: return "js_distance";
        case SeparationMetric::l1: return "l1";
    }
    return "unknown";
}

} // namespace betasig::io
