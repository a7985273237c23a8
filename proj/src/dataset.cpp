#include "betasig/dataset.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "betasig/errors.hpp"
#include "betasig/signals.hpp"

namespace betasig::io {

namespace {

// Strips one trailing '\r' so CRLF files parse; no other trimming.
std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

double parse_score(std::string_view field, std::size_t line_no) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        std::ostringstream msg;
        msg << "line " << line_no << ": cannot parse score '" << field << "'";
        throw DataError(msg.str());
    }
    return value;
}

int parse_label(std::string_view field, std::size_t line_no) {
    if (field == "0") return 0;
    if (field == "1") return 1;
    std::ostringstream msg;
    msg << "line " << line_no << ": label must be 0 or 1, got '" << field << "'";
    throw DataError(msg.str());
}

} // namespace

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

Dataset parse_csv(std::string_view content, const std::string& source_name) {
    Dataset ds;
    ds.source = source_name;
    ds.digest = fnv1a_hex(content);

    std::size_t pos = 0;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (pos <= content.size()) {
        const std::size_t nl = content.find('\n', pos);
        std::string_view line = content.substr(pos, nl == std::string_view::npos
                                                        ? std::string_view::npos
                                                        : nl - pos);
        pos = nl == std::string_view::npos ? content.size() + 1 : nl + 1;
        line = strip_cr(line);
        ++line_no;
        if (!saw_header) {
            if (line != "score,label") {
                std::ostringstream msg;
                msg << source_name << ": expected header 'score,label', got '" << line << "'";
                throw DataError(msg.str());
            }
            saw_header = true;
            continue;
        }
        if (line.empty()) continue; // tolerate a trailing newline
        const std::size_t comma = line.find(',');
        if (comma == std::string_view::npos) {
            std::ostringstream msg;
            msg << source_name << ": line " << line_no << ": expected 'score,label' record";
            throw DataError(msg.str());
        }
        try {
            const double score = parse_score(line.substr(0, comma), line_no);
            const int label = parse_label(line.substr(comma + 1), line_no);
            if (!(score >= 0.0 && score <= 1.0)) {
                std::ostringstream msg;
                msg << "line " << line_no << ": score " << score << " outside [0,1]";
                throw DataError(msg.str());
            }
            ds.samples.push_back({score, label});
        } catch (const DataError& e) {
            std::ostringstream msg;
            msg << source_name << ": " << e.what();
            throw DataError(msg.str());
        }
    }
    if (ds.samples.empty()) {
        throw DataError(source_name + ": no data rows");
    }
    return ds;
}

Dataset load_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open input file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_csv(buffer.str(), path);
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

} // namespace

NumericTable parse_numeric_csv(std::string_view content) {
    NumericTable table;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= content.size()) {
        const std::size_t nl = content.find('\n', pos);
        std::string_view line = content.substr(
            pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? content.size() + 1 : nl + 1;
        line = strip_cr(line);
        ++line_no;
        if (line_no == 1) {
            if (line.empty()) {
                throw DataError("numeric CSV: missing header");
            }
            for (std::string_view f : split_fields(line)) table.header.emplace_back(f);
            continue;
        }
        if (line.empty()) continue;
        const std::vector<std::string_view> fields = split_fields(line);
        if (fields.size() != table.header.size()) {
            std::ostringstream msg;
            msg << "numeric CSV: line " << line_no << ": expected " << table.header.size()
                << " fields, got " << fields.size();
            throw DataError(msg.str());
        }
        std::vector<std::optional<double>> row;
        row.reserve(fields.size());
        for (std::string_view f : fields) {
            if (f == "NA") {
                row.push_back(std::nullopt);
                continue;
            }
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
            if (ec != std::errc() || ptr != f.data() + f.size()) {
                std::ostringstream msg;
                msg << "numeric CSV: line " << line_no << ": cannot parse '" << f << "'";
                throw DataError(msg.str());
            }
            row.push_back(value);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace betasig::io
