#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mptsc/knn.hpp"
#include "mptsc/preprocess.hpp"
#include "mptsc/series.hpp"

namespace mptsc {

enum class TaskKind { up_down_wind, high_low };
enum class Variant { raw, filtered };

std::string_view to_string(TaskKind kind);
std::string_view to_string(Variant variant);
TaskKind parse_task_kind(std::string_view name);
Variant parse_variant(std::string_view name);

inline const std::vector<int> kDefaultHeldOutBlocks = {3, 7, 10, 14, 17, 21, 24, 26};

struct TaskSpec {
    std::string name;
    TaskKind kind = TaskKind::up_down_wind;

    /// up_down_wind: one block set per class, e.g. {{0}, {22}}.
    std::vector<std::vector<int>> class_blocks;
    /// Optional class labels; defaults to "block0", "block0+1", ...
    std::vector<std::string> class_names;
    int layers = 250;       ///< layers per block expected in the dataset
    int test_layers = 38;   ///< top layers held back for testing (up_down_wind)

    /// high_low: the bottom and top `edge_layers` layers form the two classes.
    int blocks = 27;
    int edge_layers = 10;
    std::vector<int> held_out = kDefaultHeldOutBlocks;
    std::size_t expected_held_out = 8;  ///< 0 disables the size check

    std::size_t cv_folds = 6;

    void validate() const;
    std::vector<std::string> labels() const;
};

struct Split {
    LabeledDataset train;
    LabeledDataset test;
};

/// Per selected block: layers [0, layers - test_layers) train, the rest test.
Split split_updown(const LabeledDataset& ds, const TaskSpec& task);

/// Labels layers [0, edge) "low" and [layers - edge, layers) "high"; held-out blocks form the test set.
Split split_highlow(const LabeledDataset& ds, const TaskSpec& task);

Split split_task(const LabeledDataset& ds, const TaskSpec& task);

/// Contiguous-layer folds. Records are grouped by (block, label), sorted by
/// layer and cut into `n_folds` consecutive runs, larger runs first.
FoldAssignment make_cv_folds(const LabeledDataset& train, std::size_t n_folds);

/// Run sizes of a balanced contiguous partition of `count` items.
std::vector<std::size_t> contiguous_fold_sizes(std::size_t count, std::size_t n_folds);

struct ModelGrid {
    DistanceKind kind = DistanceKind::dtw;
    std::vector<Candidate> candidates;
};

struct NeighborEntry {
    RecordId id;
    double distance = 0.0;
};

struct PredictionEntry {
    RecordId query;
    std::string truth;
    std::string predicted;
    std::vector<NeighborEntry> neighbors;
};

struct ModelResult {
    DistanceKind kind = DistanceKind::dtw;
    Candidate tuned;
    double cv_accuracy = 0.0;
    std::size_t candidates_evaluated = 0;
    std::size_t candidates_skipped = 0;
    std::size_t correct = 0;
    std::size_t total = 0;
    std::vector<std::string> classes;                ///< confusion matrix axis order
    std::vector<std::vector<std::size_t>> confusion; ///< [truth][predicted]
    std::vector<PredictionEntry> predictions;
    std::vector<std::string> notes;

    /// 100 * correct / total, rounded to two decimals.
    double accuracy_percent() const;
};

struct EvalReport {
    std::string task;
    TaskKind kind = TaskKind::up_down_wind;
    Variant variant = Variant::raw;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
    std::vector<std::size_t> fold_sizes;
    bool leakage_check_passed = false;
    std::vector<ModelResult> models;  ///< ordered Mean, Euclidean, DTW, SAX, SFA

    const ModelResult* find(DistanceKind kind) const;
};

double round2(double value);

/// Tunes every model grid by cross-validation on the training split only,
/// then evaluates the tuned models once on the test split.
EvalReport run_task(const LabeledDataset& ds, const TaskSpec& task, Variant variant, const ButterworthSpec& filter,
                    std::span<const ModelGrid> models, const ExecOptions& exec = {1});

struct SummaryRow {
    DistanceKind kind = DistanceKind::dtw;
    double mean_accuracy = 0.0;
    std::size_t reports = 0;
};

struct Summary {
    std::vector<SummaryRow> rows;
    std::vector<std::string> warnings;
};

/// Unweighted mean accuracy per model across reports. A model missing from
/// some reports is averaged over the reports that contain it, with a warning.
Summary summarize(std::span<const EvalReport> reports);

}  // namespace mptsc
