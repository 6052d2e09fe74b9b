#include "mptsc/knn.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace mptsc {

namespace {

std::vector<const TimeSeries*> series_of(const LabeledDataset& ds, std::span<const std::size_t> indices) {
    std::vector<const TimeSeries*> out;
    out.reserve(indices.size());
    for (auto i : indices) out.push_back(&ds[i].series);
    return out;
}

// Whether fitting reads the training data (so each fold needs its own fit).
bool fit_uses_training(const DistanceSpec& spec) {
    return spec.kind == DistanceKind::sfa || (spec.kind == DistanceKind::euclidean && spec.resample_length == 0);
}

void validate_folds(const LabeledDataset& train, const FoldAssignment& folds) {
    if (folds.n_folds < 2) throw ValidationError("cross-validation needs at least 2 folds");
    if (folds.fold_of.size() != train.size()) {
        throw ValidationError("fold assignment covers " + std::to_string(folds.fold_of.size()) +
                              " records but the training set has " + std::to_string(train.size()));
    }
    std::vector<std::size_t> sizes(folds.n_folds, 0);
    for (auto f : folds.fold_of) {
        if (f >= folds.n_folds) throw ValidationError("fold index out of range");
        ++sizes[f];
    }
    for (std::size_t f = 0; f < folds.n_folds; ++f) {
        if (sizes[f] == 0) throw ValidationError("fold " + std::to_string(f) + " is empty");
        std::set<std::string> classes;
        for (std::size_t i = 0; i < train.size(); ++i) {
            if (folds.fold_of[i] != f) classes.insert(train[i].label);
        }
        if (classes.size() < 2) {
            throw ValidationError("training part of fold " + std::to_string(f) + " has fewer than 2 classes");
        }
    }
}

// Distances of each validation record to each fold-training record, for one fold.
struct FoldDistances {
    std::vector<std::size_t> train_idx;
    std::vector<std::size_t> val_idx;
    std::vector<std::vector<double>> rows;  // rows[v][t]
};

}  // namespace

Prediction vote(std::span<const double> distances, std::span<const std::string> labels, std::size_t k) {
    if (distances.size() != labels.size()) throw ValidationError("distance and label counts differ");
    if (k < 1 || k > distances.size()) {
        throw ValidationError("k = " + std::to_string(k) + " is outside [1, " + std::to_string(distances.size()) + "]");
    }
    std::vector<std::size_t> order(distances.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto closer = [&](std::size_t a, std::size_t b) {
        return distances[a] < distances[b] || (distances[a] == distances[b] && a < b);
    };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(), closer);

    struct Tally {
        std::size_t votes = 0;
        double summed = 0.0;
    };
    std::map<std::string, Tally> tally;
    Prediction out;
    for (std::size_t r = 0; r < k; ++r) {
        const auto idx = order[r];
        out.neighbors.push_back({idx, distances[idx]});
        auto& t = tally[labels[idx]];
        ++t.votes;
        t.summed += distances[idx];
    }
    // std::map iterates labels lexicographically, so strict comparisons keep the smallest label on full ties.
    const Tally* best = nullptr;
    for (const auto& [label, t] : tally) {
        if (best == nullptr || t.votes > best->votes || (t.votes == best->votes && t.summed < best->summed)) {
            best = &t;
            out.label = label;
        }
    }
    return out;
}

KnnModel::KnnModel(LabeledDataset training, std::size_t k, const DistanceSpec& spec, ExecOptions exec)
    : training_(std::move(training)),
      k_(k),
      distance_([&] {
          if (training_.empty()) throw ValidationError("k-NN needs a nonempty training set");
          std::vector<const TimeSeries*> series;
          for (const auto& r : training_.records()) series.push_back(&r.series);
          return FittedDistance::fit(spec, series);
      }()),
      exec_(exec) {
    if (k_ < 1 || k_ > training_.size()) {
        throw ValidationError("k = " + std::to_string(k_) + " must lie in [1, " + std::to_string(training_.size()) +
                              "]");
    }
    for (const auto& r : training_.records()) labels_.push_back(r.label);
    encoded_.resize(training_.size());
    parallel_for(training_.size(), exec_, [&](std::size_t i) {
        try {
            encoded_[i] = distance_.encode(training_[i].series);
        } catch (const Error& e) {
            throw Error("encoding training record " + to_string(training_[i].id()) + ": " + e.what());
        }
    });
}

Prediction KnnModel::predict(const TimeSeries& query) const {
    const auto q = distance_.encode(query);
    std::vector<double> distances(training_.size());
    parallel_for(training_.size(), exec_, [&](std::size_t i) {
        try {
            distances[i] = distance_.distance(q, encoded_[i]);
        } catch (const Error& e) {
            throw Error("distance to training record " + to_string(training_[i].id()) + ": " + e.what());
        }
    });
    return vote(distances, labels_, k_);
}

std::string Candidate::describe() const {
    auto params = distance.describe();
    return params.empty() ? "k=" + std::to_string(k) : params + " k=" + std::to_string(k);
}

GridSearchResult tune(const LabeledDataset& train, const FoldAssignment& folds, std::span<const Candidate> grid,
                      const ExecOptions& exec) {
    if (grid.empty()) throw ValidationError("parameter grid is empty");
    validate_folds(train, folds);

    GridSearchResult result;
    result.folds = folds;
    for (const auto& r : train.records()) result.touched.push_back(r.id());

    const std::size_t n = train.size();
    std::vector<std::string> labels;
    for (const auto& r : train.records()) labels.push_back(r.label);

    std::vector<FoldDistances> per_fold(folds.n_folds);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t f = 0; f < folds.n_folds; ++f) {
            (folds.fold_of[i] == f ? per_fold[f].val_idx : per_fold[f].train_idx).push_back(i);
        }
    }

    // Distinct distance specs in first-appearance order.
    std::vector<DistanceSpec> specs;
    std::vector<std::size_t> spec_of(grid.size());
    for (std::size_t c = 0; c < grid.size(); ++c) {
        auto it = std::find(specs.begin(), specs.end(), grid[c].distance);
        if (it == specs.end()) {
            specs.push_back(grid[c].distance);
            it = specs.end() - 1;
        }
        spec_of[c] = static_cast<std::size_t>(it - specs.begin());
    }

    result.scores.resize(grid.size());
    for (std::size_t c = 0; c < grid.size(); ++c) result.scores[c].candidate = grid[c];

    for (std::size_t s = 0; s < specs.size(); ++s) {
        const auto& spec = specs[s];
        try {
            if (fit_uses_training(spec)) {
                for (auto& fd : per_fold) {
                    const auto fitted = FittedDistance::fit(spec, series_of(train, fd.train_idx));
                    std::vector<FittedDistance::Encoded> enc(n);
                    parallel_for(n, exec, [&](std::size_t i) { enc[i] = fitted.encode(train[i].series); });
                    fd.rows.assign(fd.val_idx.size(), std::vector<double>(fd.train_idx.size()));
                    parallel_for(fd.val_idx.size(), exec, [&](std::size_t v) {
                        for (std::size_t t = 0; t < fd.train_idx.size(); ++t) {
                            fd.rows[v][t] = fitted.distance(enc[fd.val_idx[v]], enc[fd.train_idx[t]]);
                        }
                    });
                }
            } else {
                std::vector<std::size_t> all(n);
                std::iota(all.begin(), all.end(), std::size_t{0});
                const auto fitted = FittedDistance::fit(spec, series_of(train, all));
                std::vector<FittedDistance::Encoded> enc(n);
                parallel_for(n, exec, [&](std::size_t i) { enc[i] = fitted.encode(train[i].series); });
                std::vector<std::vector<double>> full(n, std::vector<double>(n, 0.0));
                // A narrowed DTW band is measured along the query axis, so it is
                // not symmetric once the two lengths differ.
                const bool banded = spec.kind == DistanceKind::dtw && spec.dtw.band_fraction < 1.0;
                parallel_for(n, exec, [&](std::size_t i) {
                    for (std::size_t j = i + 1; j < n; ++j) full[i][j] = fitted.distance(enc[i], enc[j]);
                    for (std::size_t j = 0; j < i; ++j) {
                        if (banded && train[i].series.size() != train[j].series.size()) {
                            full[i][j] = fitted.distance(enc[i], enc[j]);
                        }
                    }
                });
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t j = 0; j < i; ++j) {
                        if (!banded || train[i].series.size() == train[j].series.size()) full[i][j] = full[j][i];
                    }
                }
                for (auto& fd : per_fold) {
                    fd.rows.assign(fd.val_idx.size(), std::vector<double>(fd.train_idx.size()));
                    for (std::size_t v = 0; v < fd.val_idx.size(); ++v) {
                        for (std::size_t t = 0; t < fd.train_idx.size(); ++t) {
                            fd.rows[v][t] = full[fd.val_idx[v]][fd.train_idx[t]];
                        }
                    }
                }
            }
        } catch (const ValidationError& e) {
            for (std::size_t c = 0; c < grid.size(); ++c) {
                if (spec_of[c] != s) continue;
                result.scores[c].skipped = true;
                result.scores[c].skip_reason = e.what();
            }
            continue;
        }

        for (std::size_t c = 0; c < grid.size(); ++c) {
            if (spec_of[c] != s) continue;
            auto& score = result.scores[c];
            const std::size_t k = grid[c].k;
            for (const auto& fd : per_fold) {
                if (k < 1 || k > fd.train_idx.size()) {
                    score.skipped = true;
                    score.skip_reason = "k = " + std::to_string(k) + " exceeds a fold's training size";
                    break;
                }
                std::vector<std::string> fold_labels;
                for (auto t : fd.train_idx) fold_labels.push_back(labels[t]);
                std::size_t correct = 0;
                for (std::size_t v = 0; v < fd.val_idx.size(); ++v) {
                    if (vote(fd.rows[v], fold_labels, k).label == labels[fd.val_idx[v]]) ++correct;
                }
                score.fold_accuracy.push_back(static_cast<double>(correct) / static_cast<double>(fd.val_idx.size()));
            }
            if (score.skipped) {
                score.fold_accuracy.clear();
                continue;
            }
            score.mean_accuracy = std::accumulate(score.fold_accuracy.begin(), score.fold_accuracy.end(), 0.0) /
                                  static_cast<double>(score.fold_accuracy.size());
        }
    }

    bool any = false;
    for (std::size_t c = 0; c < result.scores.size(); ++c) {
        const auto& score = result.scores[c];
        if (score.skipped) continue;
        if (!any || score.mean_accuracy > result.scores[result.best].mean_accuracy) result.best = c;
        any = true;
    }
    if (!any) {
        throw ValidationError("every grid candidate was skipped; first reason: " + result.scores.front().skip_reason);
    }
    return result;
}

double fold_accuracy(const LabeledDataset& train, const FoldAssignment& folds, std::size_t fold,
                     const Candidate& candidate) {
    std::vector<SeriesRecord> fit_part;
    std::vector<const SeriesRecord*> val_part;
    for (std::size_t i = 0; i < train.size(); ++i) {
        if (folds.fold_of.at(i) == fold) {
            val_part.push_back(&train[i]);
        } else {
            fit_part.push_back(train[i]);
        }
    }
    if (val_part.empty()) throw ValidationError("fold " + std::to_string(fold) + " is empty");
    const KnnModel model(LabeledDataset(std::move(fit_part)), candidate.k, candidate.distance);
    std::size_t correct = 0;
    for (const auto* r : val_part) {
        if (model.predict(r->series).label == r->label) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(val_part.size());
}

}  // namespace mptsc
