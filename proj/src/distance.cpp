#include "mptsc/distance.hpp"

#include <algorithm>
#include <sstream>

#include "mptsc/preprocess.hpp"

namespace mptsc {

std::string_view to_string(DistanceKind kind) {
    switch (kind) {
        case DistanceKind::mean: return "mean";
        case DistanceKind::euclidean: return "euclidean";
        case DistanceKind::dtw: return "dtw";
        case DistanceKind::sax: return "sax";
        case DistanceKind::sfa: return "sfa";
    }
    return "?";
}

std::string_view display_name(DistanceKind kind) {
    switch (kind) {
        case DistanceKind::mean: return "Mean";
        case DistanceKind::euclidean: return "Euclidean";
        case DistanceKind::dtw: return "DTW";
        case DistanceKind::sax: return "SAX";
        case DistanceKind::sfa: return "SFA";
    }
    return "?";
}

DistanceKind parse_distance_kind(std::string_view name) {
    for (auto kind : all_distance_kinds) {
        if (name == to_string(kind)) return kind;
    }
    throw ValidationError("unknown distance '" + std::string(name) + "' (expected mean, euclidean, dtw, sax or sfa)");
}

std::string_view to_string(WordMetric metric) { return metric == WordMetric::bag ? "bag" : "levenshtein"; }

WordMetric parse_word_metric(std::string_view name) {
    if (name == "bag") return WordMetric::bag;
    if (name == "levenshtein") return WordMetric::levenshtein;
    throw ValidationError("unknown word metric '" + std::string(name) + "' (expected bag or levenshtein)");
}

void DistanceSpec::validate() const {
    switch (kind) {
        case DistanceKind::mean: break;
        case DistanceKind::euclidean:
            if (resample_length == 1) throw ValidationError("Euclidean resample_length must be 0 (auto) or >= 2");
            break;
        case DistanceKind::dtw: dtw.validate(); break;
        case DistanceKind::sax: sax.validate(); break;
        case DistanceKind::sfa: sfa.validate(); break;
    }
}

std::string DistanceSpec::describe() const {
    std::ostringstream os;
    switch (kind) {
        case DistanceKind::mean: break;
        case DistanceKind::euclidean:
            os << "resample_length=" << (resample_length == 0 ? std::string("auto") : std::to_string(resample_length));
            break;
        case DistanceKind::dtw: os << "band_fraction=" << dtw.band_fraction; break;
        case DistanceKind::sax:
            os << "alphabet=" << sax.alphabet_size << " word_length=" << sax.word_length;
            if (word_metric == WordMetric::bag) os << " window=" << sax.window_size;
            os << " metric=" << to_string(word_metric);
            break;
        case DistanceKind::sfa:
            os << "alphabet=" << sfa.alphabet_size << " coeffs=" << sfa.coeff_count << " window=" << sfa.window_size;
            break;
    }
    return os.str();
}

FittedDistance::FittedDistance(DistanceSpec spec)
    : spec_(std::move(spec)), widened_(std::make_shared<std::atomic<std::size_t>>(0)) {}

FittedDistance FittedDistance::fit(const DistanceSpec& spec, std::span<const TimeSeries* const> training) {
    spec.validate();
    if (training.empty()) throw ValidationError("cannot fit a distance on an empty training set");
    FittedDistance fitted(spec);
    switch (spec.kind) {
        case DistanceKind::euclidean: {
            if (spec.resample_length > 0) {
                fitted.common_length_ = spec.resample_length;
            } else {
                for (const auto* s : training) fitted.common_length_ = std::max(fitted.common_length_, s->size());
            }
            break;
        }
        case DistanceKind::sax:
            if (spec.word_metric == WordMetric::levenshtein) break;
            for (const auto* s : training) {
                if (s->size() < static_cast<std::size_t>(spec.sax.window_size)) {
                    throw ValidationError("SAX window " + std::to_string(spec.sax.window_size) +
                                          " exceeds a training series of length " + std::to_string(s->size()));
                }
            }
            break;
        case DistanceKind::sfa: {
            if (spec.word_metric != WordMetric::bag) {
                throw ValidationError("SFA supports only the bag word metric");
            }
            const auto window = static_cast<std::size_t>(spec.sfa.window_size);
            std::size_t windows = 0;
            for (const auto* s : training) {
                if (s->size() < window) {
                    throw ValidationError("SFA window " + std::to_string(window) +
                                          " exceeds a training series of length " + std::to_string(s->size()));
                }
                windows += s->size() - window + 1;
            }
            const std::size_t stride = std::max<std::size_t>(1, (windows + kMcbMaxTrainingWindows - 1) /
                                                                    kMcbMaxTrainingWindows);
            const auto coeffs = sfa_window_coefficients(training, spec.sfa, stride);
            fitted.mcb_ = mcb_train(coeffs, spec.sfa);
            break;
        }
        case DistanceKind::mean:
        case DistanceKind::dtw: break;
    }
    return fitted;
}

FittedDistance::Encoded FittedDistance::encode(const TimeSeries& s) const {
    switch (spec_.kind) {
        case DistanceKind::mean: return mean(s.values());
        case DistanceKind::euclidean:
            if (s.size() == common_length_) return std::vector<double>(s.begin(), s.end());
            return resample_linear(s.values(), common_length_);
        case DistanceKind::dtw: return std::vector<double>(s.begin(), s.end());
        case DistanceKind::sax:
            if (spec_.word_metric == WordMetric::levenshtein) return sax_symbolize(s, spec_.sax);
            return sax_bag_of_words(s, spec_.sax);
        case DistanceKind::sfa: return sfa_bag_of_words(s, spec_.sfa, mcb_);
    }
    throw ValidationError("unsupported distance kind");
}

double FittedDistance::distance(const Encoded& a, const Encoded& b) const {
    switch (spec_.kind) {
        case DistanceKind::mean: return std::abs(std::get<double>(a) - std::get<double>(b));
        case DistanceKind::euclidean:
            return euclidean_equal_length(std::get<std::vector<double>>(a), std::get<std::vector<double>>(b));
        case DistanceKind::dtw: {
            const auto& qa = std::get<std::vector<double>>(a);
            const auto& qb = std::get<std::vector<double>>(b);
            if (dtw_band(qa.size(), qb.size(), spec_.dtw).widened()) widened_->fetch_add(1);
            return dtw_distance(qa, qb, spec_.dtw);
        }
        case DistanceKind::sax:
            if (spec_.word_metric == WordMetric::levenshtein) {
                return static_cast<double>(levenshtein(std::get<std::string>(a), std::get<std::string>(b)));
            }
            return bag_distance(std::get<SymbolicDoc>(a), std::get<SymbolicDoc>(b));
        case DistanceKind::sfa: return bag_distance(std::get<SymbolicDoc>(a), std::get<SymbolicDoc>(b));
    }
    throw ValidationError("unsupported distance kind");
}

}  // namespace mptsc
