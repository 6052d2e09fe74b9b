#pragma once

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mptsc {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invariant violation on a domain value (bad parameter, non-finite sample, ...).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Dataset file could not be parsed. Carries the 1-based line number when known.
class LoadError : public Error {
  public:
    LoadError(const std::string& what, std::size_t line = 0);
    /// Re-raises `inner` with the offending file path prefixed.
    LoadError(const std::string& path, const LoadError& inner);
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

class WriteError : public Error {
  public:
    using Error::Error;
};

/// One perimeter scan: an immutable, nonempty sequence of finite samples.
class TimeSeries {
  public:
    explicit TimeSeries(std::vector<double> values);
    TimeSeries(std::initializer_list<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }
    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

    bool operator==(const TimeSeries&) const = default;

  private:
    std::vector<double> values_;
};

/// Identifies a record by its physical position in the build.
struct RecordId {
    int block = 0;
    int layer = 0;

    auto operator<=>(const RecordId&) const = default;
};

std::string to_string(const RecordId& id);

struct SeriesRecord {
    TimeSeries series;
    std::string label;
    int block_id = 0;
    int layer_index = 0;

    RecordId id() const noexcept { return {block_id, layer_index}; }
    bool operator==(const SeriesRecord&) const = default;
};

/// Ordered collection of labelled series. The class set is derived from the records.
class LabeledDataset {
  public:
    LabeledDataset() = default;
    explicit LabeledDataset(std::vector<SeriesRecord> records);

    const std::vector<SeriesRecord>& records() const noexcept { return records_; }
    const std::vector<std::string>& class_set() const noexcept { return classes_; }
    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }
    const SeriesRecord& operator[](std::size_t i) const { return records_[i]; }

    bool operator==(const LabeledDataset& other) const { return records_ == other.records_; }

  private:
    std::vector<SeriesRecord> records_;
    std::vector<std::string> classes_;  // sorted
};

/// Parses one dataset line (`label;block;layer;v1,v2,...`). Throws LoadError with `line_no`.
SeriesRecord parse_record(std::string_view line, std::size_t line_no);

/// Formats a record as one dataset line without the trailing newline.
std::string format_record(const SeriesRecord& record);

LabeledDataset load_dataset(const std::filesystem::path& path);
LabeledDataset parse_dataset(std::string_view text);

/// Writes atomically: the target only appears once the full content is on disk.
void save_dataset(const LabeledDataset& ds, const std::filesystem::path& path);
std::string format_dataset(const LabeledDataset& ds);

/// Writes `content` to a sibling temp file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace mptsc
