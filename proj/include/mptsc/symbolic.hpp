#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mptsc/series.hpp"

namespace mptsc {

/// Equiprobable N(0,1) breakpoints: Phi(beta_i) = i / alphabet_size for i = 1..a-1.
std::vector<double> gaussian_breakpoints(int alphabet_size);

/// Index of the interval holding `value`. Intervals are left-closed and
/// right-open, so a value equal to a threshold goes to the upper bin.
int bin_index(std::span<const double> thresholds, double value);

inline char symbol_for(int index) { return static_cast<char>('a' + index); }

struct SaxSpec {
    int alphabet_size = 4;
    int word_length = 8;  ///< PAA segments per window
    int window_size = 64;
    bool per_window_znorm = true;
    bool numerosity_reduction = true;

    void validate() const;
    std::string signature() const;
    bool operator==(const SaxSpec&) const = default;
};

struct SfaSpec {
    int alphabet_size = 4;
    int coeff_count = 8;  ///< retained real values (real/imaginary parts interleaved)
    int window_size = 64;
    bool per_window_znorm = true;
    bool numerosity_reduction = true;

    /// The DC term carries no information once each window is z-normalized.
    bool drop_dc() const noexcept { return per_window_znorm; }
    void validate() const;
    std::string signature() const;
    bool operator==(const SfaSpec&) const = default;
};

/// Bag-of-words representation of one series.
class SymbolicDoc {
  public:
    SymbolicDoc(std::string signature, std::size_t word_length, std::size_t source_length);

    void add(const std::string& word);

    const std::map<std::string, std::size_t>& counts() const noexcept { return counts_; }
    std::size_t total_words() const noexcept { return total_; }
    std::size_t word_length() const noexcept { return word_length_; }
    std::size_t source_length() const noexcept { return source_length_; }
    const std::string& signature() const noexcept { return signature_; }

    /// Sorted `word:count` lines.
    std::string debug_string() const;

    bool operator==(const SymbolicDoc&) const = default;

  private:
    std::string signature_;
    std::size_t word_length_;
    std::size_t source_length_;
    std::size_t total_ = 0;
    std::map<std::string, std::size_t> counts_;
};

/// Whole-series SAX word: optional z-normalization, PAA to `word_length`, then Gaussian binning.
std::string sax_symbolize(std::span<const double> values, const SaxSpec& spec);
std::string sax_symbolize(const TimeSeries& s, const SaxSpec& spec);

SymbolicDoc sax_bag_of_words(const TimeSeries& s, const SaxSpec& spec);

/// First `count` reals of the unnormalized DFT F(k) = sum_n s[n] exp(-2*pi*i*k*n/N),
/// laid out as [Re F0, Re F1, Im F1, Re F2, Im F2, ...]; with `drop_dc` the leading
/// Re F0 is omitted.
std::vector<double> dft_coefficients(std::span<const double> values, std::size_t count, bool drop_dc = false);

/// Number of reals available from an N-sample DFT under the layout above.
std::size_t dft_available(std::size_t n, bool drop_dc);

/// Per-position thresholds for Multiple Coefficient Binning.
class McbModel {
  public:
    McbModel() = default;
    McbModel(SfaSpec spec, std::vector<std::vector<double>> thresholds);

    bool trained() const noexcept { return !thresholds_.empty(); }
    const SfaSpec& spec() const noexcept { return spec_; }
    const std::vector<std::vector<double>>& thresholds() const noexcept { return thresholds_; }

    std::string word(std::span<const double> coefficients) const;

  private:
    SfaSpec spec_;
    std::vector<std::vector<double>> thresholds_;
};

/// Equi-depth thresholds at quantiles i/a for each coefficient position.
/// An exact quantile boundary between two samples takes their midpoint.
McbModel mcb_train(std::span<const std::vector<double>> coefficient_vectors, const SfaSpec& spec);

/// Coefficient vectors of every `stride`-th sliding window of each series.
std::vector<std::vector<double>> sfa_window_coefficients(std::span<const TimeSeries* const> series,
                                                          const SfaSpec& spec, std::size_t stride = 1);

SymbolicDoc sfa_bag_of_words(const TimeSeries& s, const SfaSpec& spec, const McbModel& model);

std::size_t levenshtein(std::string_view a, std::string_view b);

/// Euclidean distance between word-count histograms.
double bag_distance(const SymbolicDoc& a, const SymbolicDoc& b);

/// Symbol-level distance table entry: 0 for equal or adjacent symbols,
/// otherwise beta_{max-1} - beta_{min}.
double sax_cell_distance(int r, int c, std::span<const double> breakpoints);

/// Lower bound of the Euclidean distance between the z-normalized inputs (whole-series SAX).
double sax_mindist(const TimeSeries& a, const TimeSeries& b, const SaxSpec& spec);
double sax_mindist_words(std::string_view a, std::string_view b, std::size_t series_length, int alphabet_size);

}  // namespace mptsc
