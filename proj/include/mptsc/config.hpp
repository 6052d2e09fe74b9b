#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "mptsc/datagen.hpp"
#include "mptsc/distance.hpp"
#include "mptsc/preprocess.hpp"
#include "mptsc/protocol.hpp"

namespace mptsc {

inline constexpr int kConfigSchemaVersion = 1;

/// Benchmark run description. Exactly one of `dataset` / `generator` is set.
struct RunConfig {
    int schema_version = kConfigSchemaVersion;
    std::optional<std::filesystem::path> dataset;
    std::optional<GenSpec> generator;
    std::uint64_t seed = 42;  ///< overrides generator.seed
    std::vector<TaskSpec> tasks;
    std::vector<Variant> variants = {Variant::raw, Variant::filtered};
    std::vector<ModelGrid> models;
    ButterworthSpec butterworth;
    std::filesystem::path output_dir = "bench_out";
    unsigned threads = 0;

    void validate() const;
};

RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& path);

/// Grid search defaults: k in {1,3,5}; DTW band in {0.05,0.1,0.2,1.0};
/// SAX/SFA alphabet in {4,6,8}, word length in {4,8,16}, window in {32,64,128}.
ModelGrid default_model_grid(DistanceKind kind);
std::vector<ModelGrid> default_model_grids();

/// Builds a grid from a JSON object of parameter lists; missing keys take the defaults.
ModelGrid parse_model_grid(DistanceKind kind, const nlohmann::json& params);

/// The four up-wind/down-wind tasks and the high/low task over a 27 x 250 build.
std::vector<TaskSpec> standard_tasks();

TaskSpec parse_task(const nlohmann::json& doc);
GenSpec parse_gen_spec(const nlohmann::json& doc);
ButterworthSpec parse_butterworth(const nlohmann::json& doc);

nlohmann::json to_json(const DistanceSpec& spec);
nlohmann::json to_json(const GenSpec& spec);

}  // namespace mptsc
