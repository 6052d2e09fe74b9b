#pragma once

#include <atomic>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mptsc/elastic.hpp"
#include "mptsc/series.hpp"
#include "mptsc/symbolic.hpp"

namespace mptsc {

/// Declaration order is the row order of the result tables.
enum class DistanceKind { mean, euclidean, dtw, sax, sfa };

inline constexpr DistanceKind all_distance_kinds[] = {DistanceKind::mean, DistanceKind::euclidean, DistanceKind::dtw,
                                                      DistanceKind::sax, DistanceKind::sfa};

std::string_view to_string(DistanceKind kind);
std::string_view display_name(DistanceKind kind);  ///< "Mean", "Euclidean", "DTW", ...
DistanceKind parse_distance_kind(std::string_view name);

/// How symbolic representations are compared.
enum class WordMetric {
    bag,          ///< Euclidean distance of sliding-window word histograms
    levenshtein,  ///< edit distance of one whole-series SAX word
};

std::string_view to_string(WordMetric metric);
WordMetric parse_word_metric(std::string_view name);

struct DistanceSpec {
    DistanceKind kind = DistanceKind::dtw;
    std::size_t resample_length = 0;  ///< Euclidean only; 0 = longest training series
    DtwSpec dtw;
    SaxSpec sax;
    SfaSpec sfa;
    WordMetric word_metric = WordMetric::bag;  ///< SAX only

    void validate() const;
    /// Compact human-readable parameter string, e.g. "band_fraction=0.1".
    std::string describe() const;
    bool operator==(const DistanceSpec&) const = default;
};

/// A DistanceSpec bound to a training set (MCB tables, resample length).
///
/// encode() maps a series to the representation the distance works on;
/// distance() compares two encodings. Both are const and safe to call
/// concurrently.
class FittedDistance {
  public:
    using Encoded = std::variant<double, std::vector<double>, SymbolicDoc, std::string>;

    static FittedDistance fit(const DistanceSpec& spec, std::span<const TimeSeries* const> training);

    const DistanceSpec& spec() const noexcept { return spec_; }
    std::size_t common_length() const noexcept { return common_length_; }
    const McbModel& mcb() const noexcept { return mcb_; }

    Encoded encode(const TimeSeries& s) const;
    double distance(const Encoded& a, const Encoded& b) const;

    /// DTW comparisons whose band had to be widened to admit any path.
    std::size_t widened_band_count() const noexcept { return widened_->load(); }

  private:
    explicit FittedDistance(DistanceSpec spec);

    DistanceSpec spec_;
    std::size_t common_length_ = 0;
    McbModel mcb_;
    std::shared_ptr<std::atomic<std::size_t>> widened_;
};

/// Upper bound on the number of sliding windows fed to MCB training; larger
/// training sets are subsampled with a uniform window stride.
inline constexpr std::size_t kMcbMaxTrainingWindows = 200000;

}  // namespace mptsc
