#include "mptsc/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace mptsc {

namespace {

using LayerIndex = std::map<int, std::map<int, const SeriesRecord*>>;  // block -> layer -> record

LayerIndex index_layers(const LabeledDataset& ds) {
    LayerIndex idx;
    for (const auto& r : ds.records()) idx[r.block_id][r.layer_index] = &r;
    return idx;
}

// Throws listing every missing layer of `block` among `wanted`.
void require_layers(const LayerIndex& idx, int block, const std::vector<int>& wanted) {
    const auto it = idx.find(block);
    std::vector<int> missing;
    for (int layer : wanted) {
        if (it == idx.end() || !it->second.contains(layer)) missing.push_back(layer);
    }
    if (missing.empty()) return;
    std::ostringstream os;
    os << "block " << block << " is missing " << missing.size() << " layer(s):";
    const std::size_t shown = std::min<std::size_t>(missing.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) os << ' ' << missing[i];
    if (shown < missing.size()) os << " ...";
    throw ValidationError(os.str());
}

std::vector<int> range(int lo, int hi) {
    std::vector<int> out;
    for (int i = lo; i < hi; ++i) out.push_back(i);
    return out;
}

SeriesRecord relabel(const SeriesRecord& r, const std::string& label) {
    return SeriesRecord{r.series, label, r.block_id, r.layer_index};
}

LabeledDataset filter_all(const LabeledDataset& ds, const ButterworthFilter& filter) {
    std::vector<SeriesRecord> out;
    out.reserve(ds.size());
    for (const auto& r : ds.records()) {
        try {
            out.push_back(SeriesRecord{filter.apply(r.series), r.label, r.block_id, r.layer_index});
        } catch (const Error& e) {
            throw ValidationError("filtering record " + to_string(r.id()) + ": " + e.what());
        }
    }
    return LabeledDataset(std::move(out));
}

}  // namespace

std::string_view to_string(TaskKind kind) { return kind == TaskKind::up_down_wind ? "up_down_wind" : "high_low"; }
std::string_view to_string(Variant variant) { return variant == Variant::raw ? "raw" : "filtered"; }

TaskKind parse_task_kind(std::string_view name) {
    if (name == "up_down_wind") return TaskKind::up_down_wind;
    if (name == "high_low") return TaskKind::high_low;
    throw ValidationError("unknown task kind '" + std::string(name) + "' (expected up_down_wind or high_low)");
}

Variant parse_variant(std::string_view name) {
    if (name == "raw") return Variant::raw;
    if (name == "filtered") return Variant::filtered;
    throw ValidationError("unknown variant '" + std::string(name) + "' (expected raw or filtered)");
}

void TaskSpec::validate() const {
    if (cv_folds < 2) throw ValidationError("task '" + name + "': cv_folds must be >= 2");
    if (kind == TaskKind::up_down_wind) {
        if (class_blocks.size() < 2) throw ValidationError("task '" + name + "': needs at least two classes");
        std::set<int> seen;
        for (const auto& blocks : class_blocks) {
            if (blocks.empty()) throw ValidationError("task '" + name + "': empty class block set");
            for (int b : blocks) {
                if (b < 0) throw ValidationError("task '" + name + "': negative block id");
                if (!seen.insert(b).second) {
                    throw ValidationError("task '" + name + "': block " + std::to_string(b) +
                                          " appears in more than one class");
                }
            }
        }
        if (!class_names.empty() && class_names.size() != class_blocks.size()) {
            throw ValidationError("task '" + name + "': class_names must match class_blocks");
        }
        if (test_layers < 1 || test_layers >= layers) {
            throw ValidationError("task '" + name + "': test_layers must lie in [1, layers)");
        }
    } else {
        if (edge_layers < 1 || 2 * edge_layers > layers) {
            throw ValidationError("task '" + name + "': edge_layers must lie in [1, layers / 2]");
        }
        std::set<int> unique(held_out.begin(), held_out.end());
        if (unique.size() != held_out.size()) throw ValidationError("task '" + name + "': duplicate held-out block");
        for (int b : held_out) {
            if (b < 0 || b >= blocks) {
                throw ValidationError("task '" + name + "': held-out block " + std::to_string(b) + " outside [0, " +
                                      std::to_string(blocks) + ")");
            }
        }
        if (static_cast<int>(held_out.size()) >= blocks) {
            throw ValidationError("task '" + name + "': holding out every block leaves an empty training set");
        }
        if (held_out.empty()) throw ValidationError("task '" + name + "': no held-out blocks");
        if (expected_held_out > 0 && held_out.size() != expected_held_out) {
            throw ValidationError("task '" + name + "': expected " + std::to_string(expected_held_out) +
                                  " held-out blocks, got " + std::to_string(held_out.size()));
        }
    }
}

std::vector<std::string> TaskSpec::labels() const {
    if (kind == TaskKind::high_low) return {"high", "low"};
    if (!class_names.empty()) return class_names;
    std::vector<std::string> out;
    for (const auto& blocks : class_blocks) {
        std::string label = "block";
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            if (i > 0) label += '+';
            label += std::to_string(blocks[i]);
        }
        out.push_back(label);
    }
    return out;
}

Split split_updown(const LabeledDataset& ds, const TaskSpec& task) {
    if (task.kind != TaskKind::up_down_wind) throw ValidationError("split_updown needs an up_down_wind task");
    task.validate();
    const auto idx = index_layers(ds);
    const auto labels = task.labels();
    const auto all_layers = range(0, task.layers);
    const int boundary = task.layers - task.test_layers;

    std::vector<SeriesRecord> train;
    std::vector<SeriesRecord> test;
    for (std::size_t c = 0; c < task.class_blocks.size(); ++c) {
        for (int block : task.class_blocks[c]) {
            require_layers(idx, block, all_layers);
            for (int layer : all_layers) {
                const auto* r = idx.at(block).at(layer);
                (layer < boundary ? train : test).push_back(relabel(*r, labels[c]));
            }
        }
    }
    return {LabeledDataset(std::move(train)), LabeledDataset(std::move(test))};
}

Split split_highlow(const LabeledDataset& ds, const TaskSpec& task) {
    if (task.kind != TaskKind::high_low) throw ValidationError("split_highlow needs a high_low task");
    task.validate();
    const auto idx = index_layers(ds);
    const auto low = range(0, task.edge_layers);
    const auto high = range(task.layers - task.edge_layers, task.layers);
    const std::set<int> held(task.held_out.begin(), task.held_out.end());

    std::vector<SeriesRecord> train;
    std::vector<SeriesRecord> test;
    for (int block = 0; block < task.blocks; ++block) {
        require_layers(idx, block, low);
        require_layers(idx, block, high);
        auto& dest = held.contains(block) ? test : train;
        for (int layer : low) dest.push_back(relabel(*idx.at(block).at(layer), "low"));
        for (int layer : high) dest.push_back(relabel(*idx.at(block).at(layer), "high"));
    }
    return {LabeledDataset(std::move(train)), LabeledDataset(std::move(test))};
}

Split split_task(const LabeledDataset& ds, const TaskSpec& task) {
    return task.kind == TaskKind::up_down_wind ? split_updown(ds, task) : split_highlow(ds, task);
}

std::vector<std::size_t> contiguous_fold_sizes(std::size_t count, std::size_t n_folds) {
    if (n_folds == 0) throw ValidationError("fold count must be positive");
    std::vector<std::size_t> sizes(n_folds, count / n_folds);
    for (std::size_t f = 0; f < count % n_folds; ++f) ++sizes[f];
    return sizes;
}

FoldAssignment make_cv_folds(const LabeledDataset& train, std::size_t n_folds) {
    if (n_folds < 2) throw ValidationError("cross-validation needs at least 2 folds");
    std::map<std::string, std::size_t> per_class;
    for (const auto& r : train.records()) ++per_class[r.label];
    for (const auto& [label, count] : per_class) {
        if (count < n_folds) {
            throw ValidationError("class '" + label + "' has " + std::to_string(count) + " records, fewer than " +
                                  std::to_string(n_folds) + " folds");
        }
    }

    std::map<std::pair<int, std::string>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < train.size(); ++i) groups[{train[i].block_id, train[i].label}].push_back(i);

    FoldAssignment folds;
    folds.n_folds = n_folds;
    folds.fold_of.assign(train.size(), 0);
    for (auto& [key, members] : groups) {
        std::stable_sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
            return train[a].layer_index < train[b].layer_index;
        });
        const auto sizes = contiguous_fold_sizes(members.size(), n_folds);
        std::size_t pos = 0;
        for (std::size_t f = 0; f < n_folds; ++f) {
            for (std::size_t i = 0; i < sizes[f]; ++i) folds.fold_of[members[pos++]] = f;
        }
    }
    return folds;
}

double round2(double value) { return std::round(value * 100.0) / 100.0; }

double ModelResult::accuracy_percent() const {
    if (total == 0) return 0.0;
    return round2(100.0 * static_cast<double>(correct) / static_cast<double>(total));
}

const ModelResult* EvalReport::find(DistanceKind kind) const {
    for (const auto& m : models) {
        if (m.kind == kind) return &m;
    }
    return nullptr;
}

EvalReport run_task(const LabeledDataset& ds, const TaskSpec& task, Variant variant, const ButterworthSpec& filter,
                    std::span<const ModelGrid> models, const ExecOptions& exec) {
    const std::string context = "task '" + task.name + "' (" + std::string(to_string(variant)) + "): ";
    try {
        auto split = split_task(ds, task);
        if (variant == Variant::filtered) {
            const ButterworthFilter bw(filter);
            split.train = filter_all(split.train, bw);
            split.test = filter_all(split.test, bw);
        }
        const auto folds = make_cv_folds(split.train, task.cv_folds);

        EvalReport report;
        report.task = task.name;
        report.kind = task.kind;
        report.variant = variant;
        report.train_size = split.train.size();
        report.test_size = split.test.size();
        report.fold_sizes.assign(folds.n_folds, 0);
        for (auto f : folds.fold_of) ++report.fold_sizes[f];

        std::set<RecordId> test_ids;
        for (const auto& r : split.test.records()) test_ids.insert(r.id());
        bool leak_free = true;
        auto check_disjoint = [&](const std::vector<RecordId>& ids) {
            for (const auto& id : ids) {
                if (test_ids.contains(id)) leak_free = false;
            }
        };

        std::vector<ModelGrid> ordered(models.begin(), models.end());
        std::stable_sort(ordered.begin(), ordered.end(),
                         [](const ModelGrid& a, const ModelGrid& b) { return a.kind < b.kind; });

        for (const auto& grid : ordered) {
            const auto tuned = tune(split.train, folds, grid.candidates, exec);
            check_disjoint(tuned.touched);

            ModelResult result;
            result.kind = grid.kind;
            result.tuned = tuned.best_score().candidate;
            result.cv_accuracy = tuned.best_score().mean_accuracy;
            for (const auto& s : tuned.scores) ++(s.skipped ? result.candidates_skipped : result.candidates_evaluated);

            const KnnModel model(split.train, result.tuned.k, result.tuned.distance, exec);
            std::vector<RecordId> fitted_ids;
            for (const auto& r : model.training().records()) fitted_ids.push_back(r.id());
            check_disjoint(fitted_ids);

            result.classes = split.train.class_set();
            for (const auto& c : split.test.class_set()) {
                if (std::find(result.classes.begin(), result.classes.end(), c) == result.classes.end()) {
                    result.classes.push_back(c);
                }
            }
            std::sort(result.classes.begin(), result.classes.end());
            auto class_index = [&](const std::string& label) {
                return static_cast<std::size_t>(
                    std::find(result.classes.begin(), result.classes.end(), label) - result.classes.begin());
            };
            result.confusion.assign(result.classes.size(), std::vector<std::size_t>(result.classes.size(), 0));

            for (const auto& r : split.test.records()) {
                const auto pred = model.predict(r.series);
                PredictionEntry entry{r.id(), r.label, pred.label, {}};
                for (const auto& nb : pred.neighbors) {
                    entry.neighbors.push_back({model.training()[nb.index].id(), nb.distance});
                }
                ++result.confusion[class_index(r.label)][class_index(pred.label)];
                if (pred.label == r.label) ++result.correct;
                ++result.total;
                result.predictions.push_back(std::move(entry));
            }
            if (const auto widened = model.distance().widened_band_count(); widened > 0) {
                result.notes.push_back("DTW band widened to the feasibility minimum on " + std::to_string(widened) +
                                       " test comparisons");
            }
            report.models.push_back(std::move(result));
        }
        if (!leak_free) throw Error("test records were used during tuning or fitting");
        report.leakage_check_passed = true;
        return report;
    } catch (const Error& e) {
        throw Error(context + e.what());
    }
}

Summary summarize(std::span<const EvalReport> reports) {
    Summary summary;
    for (auto kind : all_distance_kinds) {
        double total = 0.0;
        std::size_t count = 0;
        std::vector<std::string> missing;
        for (const auto& report : reports) {
            if (const auto* m = report.find(kind)) {
                total += m->accuracy_percent();
                ++count;
            } else {
                missing.push_back(report.task + " (" + std::string(to_string(report.variant)) + ")");
            }
        }
        if (count == 0) continue;
        if (!missing.empty()) {
            std::string w = std::string(display_name(kind)) + " is absent from";
            for (std::size_t i = 0; i < missing.size(); ++i) w += (i == 0 ? " " : ", ") + missing[i];
            w += "; averaged over the remaining " + std::to_string(count) + " report(s)";
            summary.warnings.push_back(std::move(w));
        }
        summary.rows.push_back({kind, total / static_cast<double>(count), count});
    }
    return summary;
}

}  // namespace mptsc
