#include "mptsc/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace mptsc {

using nlohmann::json;

namespace {

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
    if (!obj.is_object()) throw ValidationError(where + " must be a JSON object");
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) throw ValidationError("unknown key '" + key + "' in " + where);
    }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("invalid value for '") + key + "': " + e.what());
    }
}

// A parameter list: accepts a scalar or an array.
template <typename T>
std::vector<T> list_or(const json& obj, const char* key, std::vector<T> fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    try {
        if (v.is_array()) {
            auto out = v.get<std::vector<T>>();
            if (out.empty()) throw ValidationError(std::string("parameter list '") + key + "' is empty");
            return out;
        }
        return {v.get<T>()};
    } catch (const json::exception& e) {
        throw ValidationError(std::string("invalid value for '") + key + "': " + e.what());
    }
}

const std::vector<std::size_t> kDefaultK = {1, 3, 5};
const std::vector<double> kDefaultBands = {0.05, 0.1, 0.2, 1.0};
const std::vector<int> kDefaultAlphabet = {4, 6, 8};
const std::vector<int> kDefaultWordLength = {4, 8, 16};
const std::vector<int> kDefaultWindow = {32, 64, 128};

}  // namespace

ModelGrid parse_model_grid(DistanceKind kind, const json& params) {
    const std::string where = "models." + std::string(to_string(kind));
    ModelGrid grid;
    grid.kind = kind;
    const auto ks = list_or<std::size_t>(params, "k", kDefaultK);
    auto push = [&](const DistanceSpec& spec) {
        try {
            spec.validate();
        } catch (const ValidationError&) {
            return;  // e.g. word length longer than the window
        }
        for (auto k : ks) grid.candidates.push_back({spec, k});
    };

    switch (kind) {
        case DistanceKind::mean: {
            check_keys(params, {"k"}, where);
            DistanceSpec spec;
            spec.kind = kind;
            push(spec);
            break;
        }
        case DistanceKind::euclidean:
            check_keys(params, {"k", "resample_length"}, where);
            for (auto len : list_or<std::size_t>(params, "resample_length", {0})) {
                DistanceSpec spec;
                spec.kind = kind;
                spec.resample_length = len;
                spec.validate();
                push(spec);
            }
            break;
        case DistanceKind::dtw:
            check_keys(params, {"k", "band_fraction"}, where);
            for (auto band : list_or<double>(params, "band_fraction", kDefaultBands)) {
                DistanceSpec spec;
                spec.kind = kind;
                spec.dtw = DtwSpec{band};
                spec.validate();
                push(spec);
            }
            break;
        case DistanceKind::sax: {
            check_keys(params,
                       {"k", "alphabet_size", "word_length", "window_size", "per_window_znorm",
                        "numerosity_reduction", "word_metric"},
                       where);
            const auto metric = parse_word_metric(get_or<std::string>(params, "word_metric", "bag"));
            const bool znorm = get_or<bool>(params, "per_window_znorm", true);
            const bool nr = get_or<bool>(params, "numerosity_reduction", true);
            for (int a : list_or<int>(params, "alphabet_size", kDefaultAlphabet)) {
                for (int w : list_or<int>(params, "word_length", kDefaultWordLength)) {
                    // The window is unused for whole-series words.
                    const auto windows = metric == WordMetric::levenshtein
                                             ? std::vector<int>{w}
                                             : list_or<int>(params, "window_size", kDefaultWindow);
                    for (int win : windows) {
                        DistanceSpec spec;
                        spec.kind = kind;
                        spec.sax = SaxSpec{a, w, win, znorm, nr};
                        spec.word_metric = metric;
                        push(spec);
                    }
                }
            }
            break;
        }
        case DistanceKind::sfa: {
            check_keys(params,
                       {"k", "alphabet_size", "coeff_count", "window_size", "per_window_znorm",
                        "numerosity_reduction"},
                       where);
            const bool znorm = get_or<bool>(params, "per_window_znorm", true);
            const bool nr = get_or<bool>(params, "numerosity_reduction", true);
            for (int a : list_or<int>(params, "alphabet_size", kDefaultAlphabet)) {
                for (int l : list_or<int>(params, "coeff_count", kDefaultWordLength)) {
                    for (int win : list_or<int>(params, "window_size", kDefaultWindow)) {
                        DistanceSpec spec;
                        spec.kind = kind;
                        spec.sfa = SfaSpec{a, l, win, znorm, nr};
                        push(spec);
                    }
                }
            }
            break;
        }
    }
    if (grid.candidates.empty()) throw ValidationError(where + " expands to no valid candidates");
    return grid;
}

ModelGrid default_model_grid(DistanceKind kind) { return parse_model_grid(kind, json::object()); }

std::vector<ModelGrid> default_model_grids() {
    std::vector<ModelGrid> out;
    for (auto kind : all_distance_kinds) out.push_back(default_model_grid(kind));
    return out;
}

std::vector<TaskSpec> standard_tasks() {
    std::vector<TaskSpec> tasks;
    auto updown = [&](std::string name, std::vector<std::vector<int>> classes) {
        TaskSpec t;
        t.name = std::move(name);
        t.kind = TaskKind::up_down_wind;
        t.class_blocks = std::move(classes);
        tasks.push_back(std::move(t));
    };
    updown("0 vs 22", {{0}, {22}});
    updown("0 vs 1", {{0}, {1}});
    updown("1 vs 22", {{1}, {22}});
    updown("0 vs 1 vs 22", {{0}, {1}, {22}});
    TaskSpec hl;
    hl.name = "High vs Low";
    hl.kind = TaskKind::high_low;
    tasks.push_back(std::move(hl));
    return tasks;
}

TaskSpec parse_task(const json& doc) {
    check_keys(doc,
               {"name", "kind", "classes", "class_names", "layers", "test_layers", "blocks", "edge_layers",
                "held_out", "expected_held_out", "cv_folds"},
               "task");
    TaskSpec t;
    t.kind = parse_task_kind(get_or<std::string>(doc, "kind", "up_down_wind"));
    t.class_blocks = get_or<std::vector<std::vector<int>>>(doc, "classes", {});
    t.class_names = get_or<std::vector<std::string>>(doc, "class_names", {});
    t.layers = get_or<int>(doc, "layers", t.layers);
    t.test_layers = get_or<int>(doc, "test_layers", t.test_layers);
    t.blocks = get_or<int>(doc, "blocks", t.blocks);
    t.edge_layers = get_or<int>(doc, "edge_layers", t.edge_layers);
    t.held_out = get_or<std::vector<int>>(doc, "held_out", t.held_out);
    t.expected_held_out = get_or<std::size_t>(doc, "expected_held_out", t.expected_held_out);
    t.cv_folds = get_or<std::size_t>(doc, "cv_folds", t.cv_folds);
    if (doc.contains("name")) {
        t.name = get_or<std::string>(doc, "name", "");
    } else if (t.kind == TaskKind::high_low) {
        t.name = "High vs Low";
    } else {
        const auto labels = t.labels();
        for (std::size_t i = 0; i < labels.size(); ++i) t.name += (i ? " vs " : "") + labels[i];
    }
    t.validate();
    return t;
}

GenSpec parse_gen_spec(const json& doc) {
    check_keys(doc,
               {"blocks", "layers", "base_length", "length_jitter", "base_level", "block_offsets", "wind_gradient",
                "grid_columns", "layer_trend", "dips", "dip_depths", "dip_width", "dip_phase_jitter",
                "equalize_means", "noise_sd", "seed"},
               "generator");
    GenSpec g;
    g.blocks = get_or(doc, "blocks", g.blocks);
    g.layers = get_or(doc, "layers", g.layers);
    g.base_length = get_or(doc, "base_length", g.base_length);
    g.length_jitter = get_or(doc, "length_jitter", g.length_jitter);
    g.base_level = get_or(doc, "base_level", g.base_level);
    g.block_offsets = get_or(doc, "block_offsets", g.block_offsets);
    g.wind_gradient = get_or(doc, "wind_gradient", g.wind_gradient);
    g.grid_columns = get_or(doc, "grid_columns", g.grid_columns);
    g.layer_trend = get_or(doc, "layer_trend", g.layer_trend);
    g.dips = get_or(doc, "dips", g.dips);
    g.dip_depths = get_or(doc, "dip_depths", g.dip_depths);
    g.dip_width = get_or(doc, "dip_width", g.dip_width);
    g.dip_phase_jitter = get_or(doc, "dip_phase_jitter", g.dip_phase_jitter);
    g.equalize_means = get_or(doc, "equalize_means", g.equalize_means);
    g.noise_sd = get_or(doc, "noise_sd", g.noise_sd);
    g.seed = get_or(doc, "seed", g.seed);
    g.validate();
    return g;
}

ButterworthSpec parse_butterworth(const json& doc) {
    check_keys(doc, {"order", "cutoff", "zero_phase"}, "butterworth");
    ButterworthSpec b;
    b.order = get_or(doc, "order", b.order);
    b.cutoff = get_or(doc, "cutoff", b.cutoff);
    b.zero_phase = get_or(doc, "zero_phase", b.zero_phase);
    b.validate();
    return b;
}

void RunConfig::validate() const {
    if (schema_version != kConfigSchemaVersion) {
        throw ValidationError("unsupported config schema_version " + std::to_string(schema_version) + " (expected " +
                              std::to_string(kConfigSchemaVersion) + ")");
    }
    if (dataset.has_value() == generator.has_value()) {
        throw ValidationError("config needs exactly one of 'dataset' and 'generator'");
    }
    if (tasks.empty()) throw ValidationError("config lists no tasks");
    if (variants.empty()) throw ValidationError("config lists no variants");
    if (models.empty()) throw ValidationError("config lists no models");
    std::set<std::string> names;
    for (const auto& t : tasks) {
        t.validate();
        if (!names.insert(t.name).second) throw ValidationError("duplicate task name '" + t.name + "'");
    }
    std::set<DistanceKind> kinds;
    for (const auto& m : models) {
        if (!kinds.insert(m.kind).second) {
            throw ValidationError("model '" + std::string(to_string(m.kind)) + "' listed twice");
        }
    }
    butterworth.validate();
}

RunConfig parse_run_config(const json& doc) {
    check_keys(doc,
               {"schema_version", "dataset", "generator", "seed", "tasks", "variants", "models", "butterworth",
                "output_dir", "threads"},
               "config");
    RunConfig cfg;
    if (!doc.contains("schema_version")) throw ValidationError("config is missing 'schema_version'");
    cfg.schema_version = get_or<int>(doc, "schema_version", 0);
    if (doc.contains("dataset")) cfg.dataset = get_or<std::string>(doc, "dataset", "");
    cfg.seed = get_or<std::uint64_t>(doc, "seed", cfg.seed);
    if (doc.contains("generator")) {
        cfg.generator = parse_gen_spec(doc.at("generator"));
        cfg.generator->seed = cfg.seed;
    }

    if (!doc.contains("tasks") || doc.at("tasks") == "standard") {
        cfg.tasks = standard_tasks();
    } else {
        if (!doc.at("tasks").is_array()) throw ValidationError("'tasks' must be an array or \"standard\"");
        for (const auto& t : doc.at("tasks")) cfg.tasks.push_back(parse_task(t));
    }

    if (doc.contains("variants")) {
        cfg.variants.clear();
        for (const auto& v : get_or<std::vector<std::string>>(doc, "variants", {})) {
            cfg.variants.push_back(parse_variant(v));
        }
    }

    if (!doc.contains("models")) {
        cfg.models = default_model_grids();
    } else if (const auto& models = doc.at("models"); models.is_array()) {
        for (const auto& name : models) cfg.models.push_back(default_model_grid(parse_distance_kind(name.get<std::string>())));
    } else if (models.is_object()) {
        // Keep table row order regardless of key order in the file.
        for (auto kind : all_distance_kinds) {
            const auto key = std::string(to_string(kind));
            if (models.contains(key)) cfg.models.push_back(parse_model_grid(kind, models.at(key)));
        }
        for (const auto& [key, value] : models.items()) parse_distance_kind(key);
    } else {
        throw ValidationError("'models' must be an array of names or an object of grids");
    }

    if (doc.contains("butterworth")) cfg.butterworth = parse_butterworth(doc.at("butterworth"));
    cfg.output_dir = get_or<std::string>(doc, "output_dir", cfg.output_dir.string());
    cfg.threads = get_or<unsigned>(doc, "threads", cfg.threads);
    cfg.validate();
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open config file '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw LoadError(path.string() + ": " + e.what());
    }
    auto cfg = parse_run_config(doc);
    // Relative paths in a config file are relative to the file itself.
    const auto base = path.parent_path();
    if (cfg.dataset && cfg.dataset->is_relative()) cfg.dataset = base / *cfg.dataset;
    if (cfg.output_dir.is_relative()) cfg.output_dir = base / cfg.output_dir;
    return cfg;
}

json to_json(const DistanceSpec& spec) {
    json j;
    j["kind"] = std::string(to_string(spec.kind));
    switch (spec.kind) {
        case DistanceKind::mean: break;
        case DistanceKind::euclidean: j["resample_length"] = spec.resample_length; break;
        case DistanceKind::dtw: j["band_fraction"] = spec.dtw.band_fraction; break;
        case DistanceKind::sax:
            j["alphabet_size"] = spec.sax.alphabet_size;
            j["word_length"] = spec.sax.word_length;
            j["window_size"] = spec.sax.window_size;
            j["per_window_znorm"] = spec.sax.per_window_znorm;
            j["numerosity_reduction"] = spec.sax.numerosity_reduction;
            j["word_metric"] = std::string(to_string(spec.word_metric));
            break;
        case DistanceKind::sfa:
            j["alphabet_size"] = spec.sfa.alphabet_size;
            j["coeff_count"] = spec.sfa.coeff_count;
            j["window_size"] = spec.sfa.window_size;
            j["per_window_znorm"] = spec.sfa.per_window_znorm;
            j["numerosity_reduction"] = spec.sfa.numerosity_reduction;
            break;
    }
    return j;
}

json to_json(const GenSpec& g) {
    return json{{"blocks", g.blocks},
                {"layers", g.layers},
                {"base_length", g.base_length},
                {"length_jitter", g.length_jitter},
                {"base_level", g.base_level},
                {"block_offsets", g.block_offsets},
                {"wind_gradient", g.wind_gradient},
                {"grid_columns", g.grid_columns},
                {"layer_trend", g.layer_trend},
                {"dips", g.dips},
                {"dip_depths", g.dip_depths},
                {"dip_width", g.dip_width},
                {"dip_phase_jitter", g.dip_phase_jitter},
                {"equalize_means", g.equalize_means},
                {"noise_sd", g.noise_sd},
                {"seed", g.seed}};
}

}  // namespace mptsc
