#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "betasig/scored_sample.hpp"

namespace betasig::io {

/// Parsed input scores plus provenance: where they came from and a content
/// hash that ties every report back to the exact bytes analyzed.
struct Dataset {
    std::vector<ScoredSample> samples;
    std::string source;
    std::string digest; // fnv1a-64 of the raw bytes, hex
};

/// FNV-1a 64-bit hash of a byte string, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// Parses the exact schema "score,label": case-sensitive header, one
/// record per line, score a decimal real in [0,1], label 0 or 1.
/// Errors name the offending line. Empty body -> DataError.
Dataset parse_csv(std::string_view content, const std::string& source_name);

/// parse_csv over a file's bytes. Missing/unreadable file -> DataError.
Dataset load_csv(const std::string& path);

/// A numeric CSV as this tool emits them (sweep, curves, history):
/// one header line, comma-separated numeric fields, "NA" for undefined.
struct NumericTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::optional<double>>> rows;
};

/// Reader for the emitted CSV dialect; every table this tool writes must
/// re-parse through here. Throws DataError with the offending line number.
NumericTable parse_numeric_csv(std::string_view content);

} // namespace betasig::io
