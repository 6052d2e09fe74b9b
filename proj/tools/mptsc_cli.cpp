// Command-line front end: generate | bench | distance | filter

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "mptsc/bench.hpp"
#include "mptsc/datagen.hpp"
#include "mptsc/distance.hpp"
#include "mptsc/preprocess.hpp"
#include "mptsc/report.hpp"
#include "mptsc/series.hpp"

namespace {

using namespace mptsc;

TimeSeries parse_inline_series(const std::string& text, const std::string& what) {
    std::vector<double> values;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        std::istringstream ts(token);
        double v = 0.0;
        std::string rest;
        if (!(ts >> v) || (ts >> rest)) throw ValidationError("malformed sample '" + token + "' in " + what);
        values.push_back(v);
    }
    if (values.empty()) throw ValidationError(what + " is empty");
    return TimeSeries(std::move(values));
}

TimeSeries read_series_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open series file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    for (char& c : text) {
        if (c == '\n' || c == '\r' || c == ' ' || c == '\t' || c == ';') c = ',';
    }
    std::string joined;
    for (char c : text) {
        if (c == ',' && (joined.empty() || joined.back() == ',')) continue;
        joined += c;
    }
    if (!joined.empty() && joined.back() == ',') joined.pop_back();
    return parse_inline_series(joined, path);
}

struct GenerateArgs {
    GenSpec spec;
    std::string output;
};

struct BenchArgs {
    std::string config;
    std::string dataset;
    std::string out;
    int threads = -1;
    long long seed = -1;
};

struct DistanceArgs {
    std::string kind;
    std::string a, b, a_file, b_file;
    double band = 1.0;
    std::size_t resample = 0;
    int alphabet = 4;
    int word_length = 8;
    int window = 0;
    int coeffs = 8;
    std::string metric = "bag";
    bool no_znorm = false;
    bool no_numerosity = false;
};

struct FilterArgs {
    std::string input;
    std::string output;
    ButterworthSpec spec;
    bool causal = false;
};

int cmd_generate(const GenerateArgs& args) {
    const auto ds = generate(args.spec);
    save_dataset(ds, args.output);
    std::cout << "wrote " << ds.size() << " records to " << args.output << '\n';
    return 0;
}

int cmd_bench(const BenchArgs& args) {
    auto cfg = load_run_config(args.config);
    if (!args.dataset.empty()) {
        cfg.dataset = args.dataset;
        cfg.generator.reset();
    }
    if (!args.out.empty()) cfg.output_dir = args.out;
    if (args.threads >= 0) cfg.threads = static_cast<unsigned>(args.threads);
    if (args.seed >= 0) cfg.seed = static_cast<std::uint64_t>(args.seed);
    cfg.validate();

    const auto ds = resolve_dataset(cfg);
    const auto result = run_bench(cfg, ds);
    write_bench_outputs(cfg, result);

    std::cout << format_tables(result.reports) << format_summary(result.summary);
    for (const auto& f : result.failures) {
        std::cerr << "task '" << f.task << "' (" << to_string(f.variant) << ") failed: " << f.message << '\n';
    }
    std::cout << "outputs written to " << cfg.output_dir.string() << '\n';
    return result.ok() ? 0 : 1;
}

int cmd_distance(const DistanceArgs& args) {
    const auto a = !args.a_file.empty() ? read_series_file(args.a_file) : parse_inline_series(args.a, "--a");
    const auto b = !args.b_file.empty() ? read_series_file(args.b_file) : parse_inline_series(args.b, "--b");

    DistanceSpec spec;
    spec.kind = parse_distance_kind(args.kind);
    spec.resample_length = args.resample;
    spec.dtw.band_fraction = args.band;
    spec.word_metric = parse_word_metric(args.metric);
    const int window = args.window > 0 ? args.window : static_cast<int>(std::min(a.size(), b.size()));
    spec.sax = SaxSpec{args.alphabet, args.word_length, window, !args.no_znorm, !args.no_numerosity};
    spec.sfa = SfaSpec{args.alphabet, args.coeffs, window, !args.no_znorm, !args.no_numerosity};

    // MCB (SFA) and the automatic Euclidean length are fitted on the two inputs.
    const TimeSeries* both[] = {&a, &b};
    const auto fitted = FittedDistance::fit(spec, both);
    const double d = fitted.distance(fitted.encode(a), fitted.encode(b));
    std::printf("%.9g\n", d);
    return 0;
}

int cmd_filter(const FilterArgs& args) {
    auto spec = args.spec;
    spec.zero_phase = !args.causal;
    const ButterworthFilter filter(spec);
    const auto ds = load_dataset(args.input);
    std::vector<SeriesRecord> out;
    out.reserve(ds.size());
    for (const auto& r : ds.records()) {
        out.push_back(SeriesRecord{filter.apply(r.series), r.label, r.block_id, r.layer_index});
    }
    save_dataset(LabeledDataset(std::move(out)), args.output);
    std::cout << "filtered " << ds.size() << " records into " << args.output << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Melt-pool time-series classification toolkit"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate_cmd = app.add_subcommand("generate", "Generate a synthetic perimeter-scan dataset");
    generate_cmd->add_option("-o,--output", gen.output, "Output dataset file")->required();
    generate_cmd->add_option("--seed", gen.spec.seed, "Random seed")->capture_default_str();
    generate_cmd->add_option("--blocks", gen.spec.blocks, "Number of blocks")->capture_default_str();
    generate_cmd->add_option("--layers", gen.spec.layers, "Layers per block")->capture_default_str();
    generate_cmd->add_option("--length", gen.spec.base_length, "Base series length")->capture_default_str();
    generate_cmd->add_option("--jitter", gen.spec.length_jitter, "Relative length jitter in [0, 0.5]")
        ->capture_default_str();
    generate_cmd->add_option("--base-level", gen.spec.base_level, "Baseline emissivity level")->capture_default_str();
    generate_cmd->add_option("--offsets", gen.spec.block_offsets, "Per-block level offsets (cycled)")->delimiter(',');
    generate_cmd->add_option("--wind-gradient", gen.spec.wind_gradient, "Level change per block column")
        ->capture_default_str();
    generate_cmd->add_option("--layer-trend", gen.spec.layer_trend, "Level change per layer")->capture_default_str();
    generate_cmd->add_option("--dips", gen.spec.dips, "Corner dips per scan")->capture_default_str();
    generate_cmd->add_option("--dip-depths", gen.spec.dip_depths, "Per-block dip depths (cycled)")->delimiter(',');
    generate_cmd->add_option("--dip-width", gen.spec.dip_width, "Dip sigma as a fraction of the length")
        ->capture_default_str();
    generate_cmd->add_option("--dip-jitter", gen.spec.dip_phase_jitter, "Max dip centre shift (fraction)")
        ->capture_default_str();
    generate_cmd->add_flag("--equalize-means", gen.spec.equalize_means, "Cancel the dip contribution to the mean");
    generate_cmd->add_option("--noise", gen.spec.noise_sd, "Noise standard deviation")->capture_default_str();

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Run the classification benchmark described by a config file");
    bench_cmd->add_option("-c,--config", bench.config, "Run config (JSON)")->required();
    bench_cmd->add_option("--dataset", bench.dataset, "Dataset file (overrides the config)");
    bench_cmd->add_option("-o,--out", bench.out, "Output directory (overrides the config)");
    bench_cmd->add_option("-j,--threads", bench.threads, "Worker threads, 0 = all cores (overrides the config)");
    bench_cmd->add_option("--seed", bench.seed, "Seed (overrides the config)");

    DistanceArgs dist;
    auto* distance_cmd = app.add_subcommand("distance", "Print the distance between two series");
    distance_cmd->add_option("-k,--kind", dist.kind, "mean | euclidean | dtw | sax | sfa")
        ->required()
        ->check(CLI::IsMember({"mean", "euclidean", "dtw", "sax", "sfa"}));
    auto* a_opt = distance_cmd->add_option("--a", dist.a, "First series, comma separated");
    auto* b_opt = distance_cmd->add_option("--b", dist.b, "Second series, comma separated");
    auto* af_opt = distance_cmd->add_option("--a-file", dist.a_file, "File holding the first series");
    auto* bf_opt = distance_cmd->add_option("--b-file", dist.b_file, "File holding the second series");
    a_opt->excludes(af_opt);
    b_opt->excludes(bf_opt);
    distance_cmd->add_option("--band", dist.band, "DTW band fraction in (0, 1]")->capture_default_str();
    distance_cmd->add_option("--resample", dist.resample, "Euclidean common length, 0 = longer input")
        ->capture_default_str();
    distance_cmd->add_option("--alphabet", dist.alphabet, "SAX/SFA alphabet size")->capture_default_str();
    distance_cmd->add_option("--word-length", dist.word_length, "SAX word length")->capture_default_str();
    distance_cmd->add_option("--coeffs", dist.coeffs, "SFA retained Fourier values")->capture_default_str();
    distance_cmd->add_option("--window", dist.window, "SAX/SFA window, 0 = shorter input length")
        ->capture_default_str();
    distance_cmd->add_option("--metric", dist.metric, "SAX word metric: bag | levenshtein")
        ->check(CLI::IsMember({"bag", "levenshtein"}))
        ->capture_default_str();
    distance_cmd->add_flag("--no-znorm", dist.no_znorm, "Disable per-window z-normalization");
    distance_cmd->add_flag("--no-numerosity", dist.no_numerosity, "Disable numerosity reduction");

    FilterArgs filt;
    auto* filter_cmd = app.add_subcommand("filter", "Apply a Butterworth low-pass filter to every series");
    filter_cmd->add_option("-i,--in", filt.input, "Input dataset")->required();
    filter_cmd->add_option("-o,--out", filt.output, "Output dataset")->required();
    filter_cmd->add_option("--order", filt.spec.order, "Filter order")->capture_default_str();
    filter_cmd->add_option("--cutoff", filt.spec.cutoff, "Cutoff as a fraction of Nyquist")->capture_default_str();
    filter_cmd->add_flag("--causal", filt.causal, "Single forward pass instead of zero-phase");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*generate_cmd) return cmd_generate(gen);
        if (*bench_cmd) return cmd_bench(bench);
        if (*distance_cmd) {
            if ((dist.a.empty() && dist.a_file.empty()) || (dist.b.empty() && dist.b_file.empty())) {
                std::cerr << "distance: both series are required (--a/--a-file and --b/--b-file)\n";
                return 2;
            }
            return cmd_distance(dist);
        }
        if (*filter_cmd) return cmd_filter(filt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
