#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mptsc/distance.hpp"
#include "mptsc/parallel.hpp"
#include "mptsc/series.hpp"

namespace mptsc {

struct Neighbor {
    std::size_t index = 0;  ///< position in the training set
    double distance = 0.0;
};

struct Prediction {
    std::string label;
    std::vector<Neighbor> neighbors;  ///< k nearest, ascending distance
};

/// Majority vote among the k smallest entries of `distances` (one per
/// training record). Equal distances rank by training index; tied votes go
/// to the label with the smallest summed neighbor distance, then the
/// lexicographically smallest label.
Prediction vote(std::span<const double> distances, std::span<const std::string> labels, std::size_t k);

class KnnModel {
  public:
    KnnModel(LabeledDataset training, std::size_t k, const DistanceSpec& spec, ExecOptions exec = {1});

    Prediction predict(const TimeSeries& query) const;

    const LabeledDataset& training() const noexcept { return training_; }
    std::size_t k() const noexcept { return k_; }
    const FittedDistance& distance() const noexcept { return distance_; }

  private:
    LabeledDataset training_;
    std::vector<std::string> labels_;
    std::size_t k_;
    FittedDistance distance_;
    std::vector<FittedDistance::Encoded> encoded_;
    ExecOptions exec_;
};

struct Candidate {
    DistanceSpec distance;
    std::size_t k = 1;

    std::string describe() const;
    bool operator==(const Candidate&) const = default;
};

/// Fold index of every training record; folds are numbered 0..n_folds-1.
struct FoldAssignment {
    std::size_t n_folds = 0;
    std::vector<std::size_t> fold_of;

    bool operator==(const FoldAssignment&) const = default;
};

struct CandidateScore {
    Candidate candidate;
    std::vector<double> fold_accuracy;  ///< fraction correct per validation fold
    double mean_accuracy = 0.0;
    bool skipped = false;
    std::string skip_reason;
};

struct GridSearchResult {
    std::size_t best = 0;  ///< index into `scores`
    std::vector<CandidateScore> scores;
    FoldAssignment folds;
    std::vector<RecordId> touched;  ///< every record encoded during tuning

    const CandidateScore& best_score() const { return scores.at(best); }
};

/// Cross-validated grid search. For every candidate: train on all folds but
/// one, predict the held-out fold, average the fold accuracies. Distances
/// are computed once per distinct DistanceSpec and shared across k values.
/// Candidates that cannot run on this data (window longer than a series,
/// k larger than a fold's training part) are reported as skipped. Ties go
/// to the earliest candidate in grid order.
GridSearchResult tune(const LabeledDataset& train, const FoldAssignment& folds, std::span<const Candidate> grid,
                      const ExecOptions& exec = {1});

/// Accuracy of `candidate` on one fold, recomputed directly with KnnModel.
double fold_accuracy(const LabeledDataset& train, const FoldAssignment& folds, std::size_t fold,
                     const Candidate& candidate);

}  // namespace mptsc
