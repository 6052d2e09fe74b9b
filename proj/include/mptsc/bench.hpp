#pragma once

#include <string>
#include <vector>

#include "mptsc/config.hpp"
#include "mptsc/protocol.hpp"
#include "mptsc/series.hpp"

namespace mptsc {

struct TaskFailure {
    std::string task;
    Variant variant = Variant::raw;
    std::string message;
};

struct BenchResult {
    std::vector<EvalReport> reports;  ///< task order, then variant order
    std::vector<TaskFailure> failures;
    Summary summary;

    bool ok() const noexcept { return failures.empty(); }
};

/// Loads `cfg.dataset` or generates from `cfg.generator`.
LabeledDataset resolve_dataset(const RunConfig& cfg);

/// Runs every task x variant. A failing task is recorded and the rest continue.
BenchResult run_bench(const RunConfig& cfg, const LabeledDataset& ds);

/// Writes tables.txt, report.json and one predictions_<task>_<variant>.tsv per report.
void write_bench_outputs(const RunConfig& cfg, const BenchResult& result);

/// The machine-readable report exactly as written to report.json.
std::string report_json_text(const BenchResult& result);

}  // namespace mptsc
