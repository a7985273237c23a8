#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "betasig/dataset.hpp"
#include "betasig/divergence.hpp"
#include "betasig/regularizer.hpp"
#include "betasig/signals.hpp"
#include "betasig/stability.hpp"

namespace betasig::io {

/// Shortest decimal representation that round-trips the double; used for
/// every number the CLI prints so output is byte-stable.
std::string format_double(double v);

/// format_double, or "NA" for an undefined metric (the CSV undefined token).
std::string format_optional(const std::optional<double>& v);

/// Unix seconds for the report stamp. Honors SOURCE_DATE_EPOCH so
/// reproducible pipelines get byte-identical JSON reports.
std::int64_t report_timestamp();

/// The envelope every --json invocation emits. All analysis sections start
/// as null; each command fills the ones it computed.
nlohmann::ordered_json make_report_skeleton(const Dataset* dataset,
                                            const std::string& command);

nlohmann::ordered_json fit_section(const SignalPair& pair, double prevalence);
nlohmann::ordered_json divergence_section(const DivergenceReport& rep);
nlohmann::ordered_json sweep_section(const std::vector<MetricRow>& rows);
nlohmann::ordered_json stability_section(MetricKind metric, double threshold, double step,
                                         const std::optional<StabilityReport>& rep);
nlohmann::ordered_json intervals_section(double mass, const CredibleInterval& tr,
                                         const CredibleInterval& fr);
nlohmann::ordered_json bounds_section(double epsilon, double concentration,
                                      SeparationMetric metric, const BoundsReport& pair,
                                      const std::optional<BoundsMcSummary>& mc);
nlohmann::ordered_json curves_section(const ClassCurves& curves);
nlohmann::ordered_json history_section(const std::vector<EpochStats>& history);

const char* metric_kind_name(MetricKind kind);
const char* separation_metric_name(SeparationMetric metric);

} // namespace betasig::io
