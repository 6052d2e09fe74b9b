#include "mptsc/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/distributions/normal.hpp>

#include "mptsc/preprocess.hpp"

namespace mptsc {

namespace {

void check_alphabet(int a) {
    if (a < 2 || a > 26) throw ValidationError("alphabet size must lie in [2, 26], got " + std::to_string(a));
}

// Cosine/sine table for one DFT length, shared across sliding windows.
class TruncatedDft {
  public:
    explicit TruncatedDft(std::size_t n) : n_(n), cos_(n), sin_(n) {
        for (std::size_t t = 0; t < n; ++t) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(n);
            cos_[t] = std::cos(angle);
            sin_[t] = std::sin(angle);
        }
    }

    void compute(std::span<const double> x, std::size_t count, bool drop_dc, std::vector<double>& out) const {
        out.clear();
        std::size_t k = drop_dc ? 1 : 0;
        while (out.size() < count) {
            double re = 0.0;
            double im = 0.0;
            std::size_t idx = 0;
            for (std::size_t t = 0; t < n_; ++t) {
                re += x[t] * cos_[idx];
                im -= x[t] * sin_[idx];
                idx += k;
                if (idx >= n_) idx -= n_;
            }
            out.push_back(re);
            if (k > 0 && out.size() < count) out.push_back(im);
            ++k;
        }
    }

  private:
    std::size_t n_;
    std::vector<double> cos_;
    std::vector<double> sin_;
};

std::vector<double> window_values(std::span<const double> window, bool znorm) {
    if (znorm) return znormalize(window);
    return {window.begin(), window.end()};
}

void collect_windows(const TimeSeries& s, std::size_t window, bool numerosity_reduction, SymbolicDoc& doc,
                     auto&& word_of) {
    if (s.size() < window) {
        throw ValidationError("series of length " + std::to_string(s.size()) + " is shorter than the window (" +
                              std::to_string(window) + ")");
    }
    const auto values = s.values();
    std::string previous;
    for (std::size_t start = 0; start + window <= s.size(); ++start) {
        auto word = word_of(values.subspan(start, window));
        if (numerosity_reduction && start > 0 && word == previous) continue;
        doc.add(word);
        previous = std::move(word);
    }
}

}  // namespace

std::vector<double> gaussian_breakpoints(int alphabet_size) {
    check_alphabet(alphabet_size);
    const boost::math::normal_distribution<double> standard;
    std::vector<double> out(static_cast<std::size_t>(alphabet_size - 1));
    for (int i = 1; i < alphabet_size; ++i) {
        const int mirror = alphabet_size - i;
        if (i == mirror) {
            out[static_cast<std::size_t>(i - 1)] = 0.0;
        } else if (i < mirror) {
            const double p = static_cast<double>(i) / static_cast<double>(alphabet_size);
            const double beta = boost::math::quantile(standard, p);
            out[static_cast<std::size_t>(i - 1)] = beta;
            out[static_cast<std::size_t>(mirror - 1)] = -beta;
        }
    }
    return out;
}

int bin_index(std::span<const double> thresholds, double value) {
    return static_cast<int>(std::upper_bound(thresholds.begin(), thresholds.end(), value) - thresholds.begin());
}

void SaxSpec::validate() const {
    check_alphabet(alphabet_size);
    if (word_length < 1) throw ValidationError("SAX word_length must be >= 1");
    if (window_size < word_length) throw ValidationError("SAX window_size must be >= word_length");
}

std::string SaxSpec::signature() const {
    std::ostringstream os;
    os << "sax:a=" << alphabet_size << ",w=" << word_length << ",win=" << window_size
       << ",znorm=" << per_window_znorm << ",nr=" << numerosity_reduction;
    return os.str();
}

void SfaSpec::validate() const {
    check_alphabet(alphabet_size);
    if (coeff_count < 1) throw ValidationError("SFA coeff_count must be >= 1");
    if (window_size < 4) throw ValidationError("SFA window_size must be >= 4");
    if (static_cast<std::size_t>(coeff_count) > dft_available(static_cast<std::size_t>(window_size), drop_dc())) {
        throw ValidationError("SFA coeff_count " + std::to_string(coeff_count) + " exceeds the " +
                              std::to_string(dft_available(static_cast<std::size_t>(window_size), drop_dc())) +
                              " Fourier values of a " + std::to_string(window_size) + "-sample window");
    }
}

std::string SfaSpec::signature() const {
    std::ostringstream os;
    os << "sfa:a=" << alphabet_size << ",l=" << coeff_count << ",win=" << window_size
       << ",znorm=" << per_window_znorm << ",nr=" << numerosity_reduction;
    return os.str();
}

SymbolicDoc::SymbolicDoc(std::string signature, std::size_t word_length, std::size_t source_length)
    : signature_(std::move(signature)), word_length_(word_length), source_length_(source_length) {}

void SymbolicDoc::add(const std::string& word) {
    if (word.size() != word_length_) {
        throw ValidationError("word '" + word + "' does not have length " + std::to_string(word_length_));
    }
    ++counts_[word];
    ++total_;
}

std::string SymbolicDoc::debug_string() const {
    std::string out;
    for (const auto& [word, count] : counts_) {
        out += word;
        out += ':';
        out += std::to_string(count);
        out += '\n';
    }
    return out;
}

std::string sax_symbolize(std::span<const double> values, const SaxSpec& spec) {
    spec.validate();
    const auto w = static_cast<std::size_t>(spec.word_length);
    if (values.size() < w) {
        throw ValidationError("series of length " + std::to_string(values.size()) +
                              " is shorter than the SAX word length " + std::to_string(w));
    }
    const auto breakpoints = gaussian_breakpoints(spec.alphabet_size);
    const auto coeffs = paa(window_values(values, spec.per_window_znorm), w);
    std::string word(w, 'a');
    for (std::size_t i = 0; i < w; ++i) word[i] = symbol_for(bin_index(breakpoints, coeffs[i]));
    return word;
}

std::string sax_symbolize(const TimeSeries& s, const SaxSpec& spec) { return sax_symbolize(s.values(), spec); }

SymbolicDoc sax_bag_of_words(const TimeSeries& s, const SaxSpec& spec) {
    spec.validate();
    const auto w = static_cast<std::size_t>(spec.word_length);
    const auto breakpoints = gaussian_breakpoints(spec.alphabet_size);
    SymbolicDoc doc(spec.signature(), w, s.size());
    collect_windows(s, static_cast<std::size_t>(spec.window_size), spec.numerosity_reduction, doc,
                    [&](std::span<const double> window) {
                        const auto coeffs = paa(window_values(window, spec.per_window_znorm), w);
                        std::string word(w, 'a');
                        for (std::size_t i = 0; i < w; ++i) word[i] = symbol_for(bin_index(breakpoints, coeffs[i]));
                        return word;
                    });
    return doc;
}

std::size_t dft_available(std::size_t n, bool drop_dc) { return 2 * (n / 2) + (drop_dc ? 0 : 1); }

std::vector<double> dft_coefficients(std::span<const double> values, std::size_t count, bool drop_dc) {
    if (values.size() < 2) throw ValidationError("DFT needs at least 2 samples");
    if (count > dft_available(values.size(), drop_dc)) {
        throw ValidationError("requested " + std::to_string(count) + " Fourier values but only " +
                              std::to_string(dft_available(values.size(), drop_dc)) + " exist for length " +
                              std::to_string(values.size()));
    }
    std::vector<double> out;
    TruncatedDft(values.size()).compute(values, count, drop_dc, out);
    return out;
}

McbModel::McbModel(SfaSpec spec, std::vector<std::vector<double>> thresholds)
    : spec_(spec), thresholds_(std::move(thresholds)) {
    spec_.validate();
    if (thresholds_.size() != static_cast<std::size_t>(spec_.coeff_count)) {
        throw ValidationError("MCB model needs one threshold list per coefficient");
    }
    for (const auto& t : thresholds_) {
        if (t.size() != static_cast<std::size_t>(spec_.alphabet_size - 1)) {
            throw ValidationError("MCB threshold list has the wrong size");
        }
        if (!std::is_sorted(t.begin(), t.end())) throw ValidationError("MCB thresholds must be sorted");
    }
}

std::string McbModel::word(std::span<const double> coefficients) const {
    if (!trained()) throw ValidationError("MCB model is not trained");
    if (coefficients.size() != thresholds_.size()) {
        throw ValidationError("coefficient vector length does not match the MCB model");
    }
    std::string w(coefficients.size(), 'a');
    for (std::size_t i = 0; i < coefficients.size(); ++i) w[i] = symbol_for(bin_index(thresholds_[i], coefficients[i]));
    return w;
}

McbModel mcb_train(std::span<const std::vector<double>> coefficient_vectors, const SfaSpec& spec) {
    spec.validate();
    const auto l = static_cast<std::size_t>(spec.coeff_count);
    const auto a = static_cast<std::size_t>(spec.alphabet_size);
    const std::size_t count = coefficient_vectors.size();
    if (count < a) {
        throw ValidationError("MCB needs at least " + std::to_string(a) + " training vectors, got " +
                              std::to_string(count));
    }
    std::vector<std::vector<double>> thresholds(l);
    std::vector<double> column(count);
    for (std::size_t pos = 0; pos < l; ++pos) {
        for (std::size_t r = 0; r < count; ++r) {
            if (coefficient_vectors[r].size() != l) throw ValidationError("MCB training vector has the wrong length");
            column[r] = coefficient_vectors[r][pos];
        }
        std::sort(column.begin(), column.end());
        auto& t = thresholds[pos];
        for (std::size_t i = 1; i < a; ++i) {
            if ((i * count) % a == 0) {
                const std::size_t q = i * count / a;
                t.push_back(0.5 * (column[q - 1] + column[q]));
            } else {
                t.push_back(column[i * count / a]);
            }
        }
    }
    return McbModel(spec, std::move(thresholds));
}

std::vector<std::vector<double>> sfa_window_coefficients(std::span<const TimeSeries* const> series,
                                                          const SfaSpec& spec, std::size_t stride) {
    spec.validate();
    if (stride < 1) throw ValidationError("window stride must be >= 1");
    const auto window = static_cast<std::size_t>(spec.window_size);
    const TruncatedDft dft(window);
    std::vector<std::vector<double>> out;
    for (const TimeSeries* s : series) {
        if (s->size() < window) {
            throw ValidationError("series of length " + std::to_string(s->size()) + " is shorter than the window (" +
                                  std::to_string(window) + ")");
        }
        const auto values = s->values();
        for (std::size_t start = 0; start + window <= s->size(); start += stride) {
            std::vector<double> coeffs;
            dft.compute(window_values(values.subspan(start, window), spec.per_window_znorm),
                        static_cast<std::size_t>(spec.coeff_count), spec.drop_dc(), coeffs);
            out.push_back(std::move(coeffs));
        }
    }
    return out;
}

SymbolicDoc sfa_bag_of_words(const TimeSeries& s, const SfaSpec& spec, const McbModel& model) {
    spec.validate();
    if (!model.trained()) throw ValidationError("SFA needs a trained MCB model");
    if (!(model.spec() == spec)) throw ValidationError("MCB model was trained for a different SFA configuration");
    const auto window = static_cast<std::size_t>(spec.window_size);
    const TruncatedDft dft(window);
    std::vector<double> coeffs;
    SymbolicDoc doc(spec.signature(), static_cast<std::size_t>(spec.coeff_count), s.size());
    collect_windows(s, window, spec.numerosity_reduction, doc, [&](std::span<const double> w) {
        dft.compute(window_values(w, spec.per_window_znorm), static_cast<std::size_t>(spec.coeff_count),
                    spec.drop_dc(), coeffs);
        return model.word(coeffs);
    });
    return doc;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
    if (a.size() < b.size()) std::swap(a, b);
    std::vector<std::size_t> prev(b.size() + 1);
    std::vector<std::size_t> cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, subst});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

double bag_distance(const SymbolicDoc& a, const SymbolicDoc& b) {
    if (a.signature() != b.signature()) {
        throw ValidationError("bags built with different configurations: " + a.signature() + " vs " + b.signature());
    }
    auto ia = a.counts().begin();
    auto ib = b.counts().begin();
    double acc = 0.0;
    auto add = [&acc](double d) { acc += d * d; };
    while (ia != a.counts().end() || ib != b.counts().end()) {
        if (ib == b.counts().end() || (ia != a.counts().end() && ia->first < ib->first)) {
            add(static_cast<double>(ia->second));
            ++ia;
        } else if (ia == a.counts().end() || ib->first < ia->first) {
            add(static_cast<double>(ib->second));
            ++ib;
        } else {
            add(static_cast<double>(ia->second) - static_cast<double>(ib->second));
            ++ia;
            ++ib;
        }
    }
    return std::sqrt(acc);
}

double sax_cell_distance(int r, int c, std::span<const double> breakpoints) {
    if (std::abs(r - c) <= 1) return 0.0;
    const int hi = std::max(r, c);
    const int lo = std::min(r, c);
    return breakpoints[static_cast<std::size_t>(hi - 1)] - breakpoints[static_cast<std::size_t>(lo)];
}

double sax_mindist_words(std::string_view a, std::string_view b, std::size_t series_length, int alphabet_size) {
    if (a.size() != b.size() || a.empty()) throw ValidationError("MINDIST needs two nonempty words of equal length");
    const auto breakpoints = gaussian_breakpoints(alphabet_size);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = sax_cell_distance(a[i] - 'a', b[i] - 'a', breakpoints);
        acc += d * d;
    }
    return std::sqrt(static_cast<double>(series_length) / static_cast<double>(a.size())) * std::sqrt(acc);
}

double sax_mindist(const TimeSeries& a, const TimeSeries& b, const SaxSpec& spec) {
    if (a.size() != b.size()) throw ValidationError("MINDIST needs series of equal length");
    auto whole = spec;
    whole.per_window_znorm = true;
    whole.window_size = std::max(whole.word_length, whole.window_size);
    return sax_mindist_words(sax_symbolize(a, whole), sax_symbolize(b, whole), a.size(), spec.alphabet_size);
}

}  // namespace mptsc
