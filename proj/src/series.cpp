#include "mptsc/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

namespace mptsc {

namespace {

std::string with_line(const std::string& what, std::size_t line) {
    if (line == 0) return what;
    return "line " + std::to_string(line) + ": " + what;
}

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

int parse_index(std::string_view field, const char* name, std::size_t line_no) {
    field = trim(field);
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
        throw LoadError("invalid " + std::string(name) + " '" + std::string(field) + "'", line_no);
    }
    if (value < 0) throw LoadError(std::string(name) + " must be nonnegative", line_no);
    return value;
}

double parse_sample(std::string_view field, std::size_t line_no) {
    field = trim(field);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
        throw LoadError("non-numeric sample '" + std::string(field) + "'", line_no);
    }
    if (!std::isfinite(value)) throw LoadError("non-finite sample '" + std::string(field) + "'", line_no);
    return value;
}

void validate_label(const std::string& label) {
    if (label.empty()) throw ValidationError("record label must be nonempty");
    if (label.find_first_of(";\n\r") != std::string::npos) {
        throw ValidationError("record label '" + label + "' contains a reserved character");
    }
    if (label.front() == '#') throw ValidationError("record label may not start with '#'");
    if (trim(label).size() != label.size()) {
        throw ValidationError("record label '" + label + "' has surrounding whitespace");
    }
}

}  // namespace

LoadError::LoadError(const std::string& what, std::size_t line) : Error(with_line(what, line)), line_(line) {}

LoadError::LoadError(const std::string& path, const LoadError& inner)
    : Error(path + ": " + inner.what()), line_(inner.line()) {}

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw ValidationError("time series must contain at least one sample");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw ValidationError("time series sample " + std::to_string(i) + " is not finite");
        }
    }
}

TimeSeries::TimeSeries(std::initializer_list<double> values) : TimeSeries(std::vector<double>(values)) {}

std::string to_string(const RecordId& id) {
    return "b" + std::to_string(id.block) + "/l" + std::to_string(id.layer);
}

LabeledDataset::LabeledDataset(std::vector<SeriesRecord> records) : records_(std::move(records)) {
    std::set<std::string> labels;
    for (const auto& r : records_) {
        validate_label(r.label);
        if (r.block_id < 0 || r.layer_index < 0) {
            throw ValidationError("block and layer indices must be nonnegative");
        }
        labels.insert(r.label);
    }
    classes_.assign(labels.begin(), labels.end());
}

SeriesRecord parse_record(std::string_view line, std::size_t line_no) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(';', start);
        fields.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    if (fields.size() != 4) {
        throw LoadError("expected 4 ';'-separated fields, found " + std::to_string(fields.size()), line_no);
    }
    const auto label = std::string(trim(fields[0]));
    if (label.empty()) throw LoadError("empty label", line_no);

    const int block = parse_index(fields[1], "block_id", line_no);
    const int layer = parse_index(fields[2], "layer_index", line_no);

    const auto samples_field = trim(fields[3]);
    if (samples_field.empty()) throw LoadError("empty series", line_no);
    std::vector<double> values;
    start = 0;
    while (true) {
        const auto pos = samples_field.find(',', start);
        values.push_back(parse_sample(
            samples_field.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start),
            line_no));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return SeriesRecord{TimeSeries(std::move(values)), label, block, layer};
}

std::string format_record(const SeriesRecord& record) {
    validate_label(record.label);
    std::string out = record.label;
    out += ';';
    out += std::to_string(record.block_id);
    out += ';';
    out += std::to_string(record.layer_index);
    out += ';';
    char buf[64];
    bool first = true;
    for (double v : record.series) {
        if (!std::isfinite(v)) throw ValidationError("refusing to save non-finite sample");
        if (!first) out += ',';
        first = false;
        // Shortest representation that round-trips bit-exactly.
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
        out.append(buf, ptr);
    }
    return out;
}

LabeledDataset parse_dataset(std::string_view text) {
    std::vector<SeriesRecord> records;
    std::set<RecordId> seen;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        const auto line = text.substr(start, end - start);
        start = end + 1;
        const auto content = trim(line);
        if (content.empty() || content.front() == '#') continue;
        auto record = parse_record(content, line_no);
        if (!seen.insert(record.id()).second) {
            throw LoadError("duplicate (block_id, layer_index) = (" + std::to_string(record.block_id) + ", " +
                                std::to_string(record.layer_index) + ")",
                            line_no);
        }
        records.push_back(std::move(record));
    }
    if (records.empty()) throw LoadError("no records");
    try {
        return LabeledDataset(std::move(records));
    } catch (const ValidationError& e) {
        throw LoadError(e.what());
    }
}

LabeledDataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot open dataset file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_dataset(buffer.str());
    } catch (const LoadError& e) {
        throw LoadError(path.string(), e);
    }
}

std::string format_dataset(const LabeledDataset& ds) {
    std::string out;
    for (const auto& r : ds.records()) {
        out += format_record(r);
        out += '\n';
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw WriteError("cannot open '" + path.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            out.close();
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw WriteError("write to '" + path.string() + "' failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw WriteError("cannot move temporary file onto '" + path.string() + "'");
    }
}

void save_dataset(const LabeledDataset& ds, const std::filesystem::path& path) {
    write_file_atomic(path, format_dataset(ds));
}

}  // namespace mptsc
