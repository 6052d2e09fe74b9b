#include "mptsc/bench.hpp"

#include <filesystem>

#include "mptsc/datagen.hpp"
#include "mptsc/report.hpp"

namespace mptsc {

LabeledDataset resolve_dataset(const RunConfig& cfg) {
    if (cfg.dataset) return load_dataset(*cfg.dataset);
    if (cfg.generator) {
        auto spec = *cfg.generator;
        spec.seed = cfg.seed;
        return generate(spec);
    }
    throw ValidationError("config has neither a dataset nor a generator");
}

BenchResult run_bench(const RunConfig& cfg, const LabeledDataset& ds) {
    BenchResult result;
    const ExecOptions exec{cfg.threads};
    for (const auto& task : cfg.tasks) {
        for (auto variant : cfg.variants) {
            try {
                result.reports.push_back(run_task(ds, task, variant, cfg.butterworth, cfg.models, exec));
            } catch (const Error& e) {
                result.failures.push_back({task.name, variant, e.what()});
            }
        }
    }
    result.summary = summarize(result.reports);
    return result;
}

std::string report_json_text(const BenchResult& result) {
    auto doc = report_to_json(result.reports, result.summary);
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : result.failures) {
        failures.push_back({{"task", f.task}, {"variant", std::string(to_string(f.variant))}, {"error", f.message}});
    }
    doc["failures"] = std::move(failures);
    return doc.dump(2) + "\n";
}

void write_bench_outputs(const RunConfig& cfg, const BenchResult& result) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec) throw WriteError("cannot create output directory '" + cfg.output_dir.string() + "': " + ec.message());
    write_file_atomic(cfg.output_dir / "tables.txt", format_tables(result.reports) + format_summary(result.summary));
    write_file_atomic(cfg.output_dir / "report.json", report_json_text(result));
    for (const auto& r : result.reports) {
        const auto name = "predictions_" + slug(r.task) + "_" + std::string(to_string(r.variant)) + ".tsv";
        write_file_atomic(cfg.output_dir / name, format_prediction_log(r));
    }
}

}  // namespace mptsc
