// Acceptance suite: one PASS / FAIL / SKIP line per criterion.
//
// usage: mptsc_acceptance <configs-dir> [scratch-dir]
// The real-data check runs only when MPTSC_REAL_DATASET names an existing file;
// its outcome is reported but never affects the exit code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"

#include "mptsc/bench.hpp"
#include "mptsc/config.hpp"
#include "mptsc/distance.hpp"
#include "mptsc/elastic.hpp"
#include "mptsc/preprocess.hpp"
#include "mptsc/protocol.hpp"
#include "mptsc/report.hpp"
#include "mptsc/symbolic.hpp"

using namespace mptsc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    enum Status { pass, fail, skip } status;
    std::string detail;
};

Outcome pass(std::string d) { return {Outcome::pass, std::move(d)}; }
Outcome fail(std::string d) { return {Outcome::fail, std::move(d)}; }
Outcome skip(std::string d) { return {Outcome::skip, std::move(d)}; }
Outcome check(bool ok, std::string d) { return {ok ? Outcome::pass : Outcome::fail, std::move(d)}; }

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path g_configs;
fs::path g_scratch;

Outcome dtw_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1001);
    const double bands[] = {1.0, 0.5, 0.25, 0.1, 0.05};
    int mismatches = 0;
    for (int rep = 0; rep < 500; ++rep) {
        const auto q = oracle::random_vector(rng, 1 + rng() % 8);
        const auto x = oracle::random_vector(rng, 1 + rng() % 8);
        const double band = bands[rep % 5];
        if (dtw_distance(q, x, DtwSpec{band}) != oracle::dtw_exhaustive(q, x, band)) ++mismatches;
    }
    const double secs = seconds_since(t0);
    return check(mismatches == 0 && secs < 10.0,
                 fmt("500 pairs, %d mismatches, %.2f s (limit 10 s)", mismatches, secs));
}

Outcome dtw_below_euclidean() {
    std::mt19937_64 rng(1002);
    int violations = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t n = 1 + rng() % 128;
        const auto q = oracle::random_vector(rng, n);
        const auto x = oracle::random_vector(rng, n);
        if (dtw_distance(q, x, DtwSpec{1.0}) > euclidean_equal_length(q, x)) ++violations;
    }
    return check(violations == 0, fmt("1000 pairs, %d violations", violations));
}

Outcome mindist_lower_bound() {
    std::mt19937_64 rng(1003);
    int violations = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t n = 2 + rng() % 255;
        const int w = 1 + static_cast<int>(rng() % std::min<std::size_t>(n, 32));
        const int a = 2 + static_cast<int>(rng() % 25);
        const TimeSeries p(oracle::random_vector(rng, n));
        const TimeSeries q(oracle::random_vector(rng, n));
        const auto zp = znormalize(p);
        const auto zq = znormalize(q);
        const double ed = euclidean_equal_length(zp.values(), zq.values());
        if (sax_mindist(zp, zq, SaxSpec{a, w, static_cast<int>(n), true, true}) > ed) ++violations;
    }
    return check(violations == 0, fmt("1000 pairs, %d violations", violations));
}

Outcome dft_direct() {
    std::mt19937_64 rng(1004);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 1 + rng() % 512;
        const auto v = oracle::random_vector(rng, n, -1000.0, 1000.0);
        const auto ref = oracle::dft_direct(v);
        const auto got = dft_coefficients(v, dft_available(n, false), false);
        std::vector<long double> want{ref[0].first};
        for (std::size_t k = 1; want.size() < got.size(); ++k) {
            want.push_back(ref[k].first);
            if (want.size() < got.size()) want.push_back(ref[k].second);
        }
        long double scale = 0.0L, err = 0.0L;
        for (std::size_t i = 0; i < got.size(); ++i) {
            scale = std::max(scale, std::fabs(want[i]));
            err = std::max(err, std::fabs(static_cast<long double>(got[i]) - want[i]));
        }
        worst = std::max(worst, static_cast<double>(err / scale));
    }
    return check(worst <= 1e-6, fmt("100 series, max relative error %.3g (limit 1e-6)", worst));
}

Outcome metric_axioms() {
    std::mt19937_64 rng(1005);
    int lev_bad = 0;
    for (int rep = 0; rep < 2000; ++rep) {
        const auto a = oracle::random_word(rng, 10, 5);
        const auto b = oracle::random_word(rng, 10, 5);
        const auto c = oracle::random_word(rng, 10, 5);
        const auto ab = levenshtein(a, b), ba = levenshtein(b, a);
        const bool ok = ab == ba && (ab == 0) == (a == b) && levenshtein(a, c) <= ab + levenshtein(b, c) &&
                        ab == oracle::edit_distance(a, b);
        if (!ok) ++lev_bad;
    }

    // Symmetry, identity and nonnegativity for every distance on fitted encodings.
    std::vector<TimeSeries> pool;
    for (int i = 0; i < 24; ++i) pool.emplace_back(oracle::random_vector(rng, 48 + rng() % 32, -50, 50));
    std::vector<const TimeSeries*> ptrs;
    for (const auto& s : pool) ptrs.push_back(&s);
    std::vector<DistanceSpec> specs;
    for (auto kind : all_distance_kinds) {
        DistanceSpec s;
        s.kind = kind;
        s.sax = SaxSpec{4, 8, 32, true, true};
        s.sfa = SfaSpec{4, 6, 32, true, true};
        specs.push_back(s);
    }
    DistanceSpec lev;
    lev.kind = DistanceKind::sax;
    lev.word_metric = WordMetric::levenshtein;
    lev.sax = SaxSpec{6, 12, 12, true, true};
    specs.push_back(lev);
    DistanceSpec fixed_len;
    fixed_len.kind = DistanceKind::euclidean;
    fixed_len.resample_length = 64;
    specs.push_back(fixed_len);

    int bad = 0;
    for (const auto& spec : specs) {
        const auto fitted = FittedDistance::fit(spec, ptrs);
        std::vector<FittedDistance::Encoded> enc;
        for (const auto& s : pool) enc.push_back(fitted.encode(s));
        for (std::size_t i = 0; i < enc.size(); ++i) {
            if (fitted.distance(enc[i], enc[i]) != 0.0) ++bad;
            for (std::size_t j = 0; j < enc.size(); ++j) {
                const double d = fitted.distance(enc[i], enc[j]);
                if (!(d >= 0.0) || d != fitted.distance(enc[j], enc[i])) ++bad;
            }
        }
    }
    return check(lev_bad == 0 && bad == 0,
                 fmt("levenshtein: %d violations over 2000 triples; %zu distances: %d violations", lev_bad,
                     specs.size(), bad));
}

Outcome paa_edges() {
    std::mt19937_64 rng(1006);
    int bad = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const auto v = oracle::random_vector(rng, 1 + rng() % 200, -1e3, 1e3);
        if (paa(v, v.size()) != v) ++bad;
        if (paa(v, 1) != std::vector<double>{mean(v)}) ++bad;
    }
    return check(bad == 0, fmt("1000 series, %d inexact results", bad));
}

Outcome split_arithmetic() {
    std::vector<SeriesRecord> recs;
    for (int b = 0; b < 27; ++b) {
        for (int l = 0; l < 250; ++l) recs.push_back({TimeSeries{0.0}, "blk" + std::to_string(b), b, l});
    }
    const LabeledDataset ds(std::move(recs));
    const auto tasks = standard_tasks();
    const auto updown = split_task(ds, tasks[0]);
    const auto hl = split_task(ds, tasks[4]);
    std::map<std::string, std::size_t> per_class;
    for (const auto* part : {&hl.train, &hl.test}) {
        for (const auto& r : part->records()) ++per_class[r.label];
    }
    const bool ok = updown.train.size() == 424 && updown.test.size() == 76 && hl.train.size() == 380 &&
                    hl.test.size() == 160 && per_class.size() == 2 && per_class["high"] == 270 &&
                    per_class["low"] == 270;
    return check(ok, fmt("up-down %zu/%zu, high-low %zu/%zu, per class high=%zu low=%zu", updown.train.size(),
                         updown.test.size(), hl.train.size(), hl.test.size(), per_class["high"],
                         per_class["low"]));
}

Outcome qualitative() {
    const auto t0 = std::chrono::steady_clock::now();
    auto cfg = load_run_config(g_configs / "synthetic_small.json");
    cfg.output_dir = g_scratch / "qualitative";
    const auto ds = resolve_dataset(cfg);
    const auto result = run_bench(cfg, ds);
    if (!result.ok()) return fail("benchmark failed: " + result.failures.front().message);
    write_bench_outputs(cfg, result);

    double chance = 0.0;
    for (const auto& r : result.reports) chance += 100.0 / static_cast<double>(r.models.front().classes.size());
    chance /= static_cast<double>(result.reports.size());
    std::map<DistanceKind, double> avg;
    for (const auto& row : result.summary.rows) avg[row.kind] = row.mean_accuracy;
    const double dtw = avg[DistanceKind::dtw], euc = avg[DistanceKind::euclidean], mn = avg[DistanceKind::mean];
    const double secs = seconds_since(t0);
    const bool ok = ds.size() == 240 && dtw >= 85.0 && dtw > euc && dtw > mn && std::abs(mn - chance) <= 15.0 &&
                    secs < 300.0;
    return check(ok, fmt("DTW %.2f, Euclidean %.2f, Mean %.2f (chance %.2f), %zu reports, %.1f s", dtw, euc, mn,
                         chance, result.reports.size(), secs));
}

Outcome granularity() {
    auto cfg = parse_run_config(nlohmann::json::parse(R"({
        "schema_version": 1,
        "seed": 11,
        "generator": {"blocks": 27, "layers": 250, "base_length": 24, "length_jitter": 0.0,
                      "layer_trend": 0.012, "dips": 2, "dip_width": 0.04},
        "tasks": [{"kind": "high_low"}],
        "models": {"mean": {"k": [1, 3]}, "euclidean": {"k": [1]}, "dtw": {"k": [1], "band_fraction": [0.1]}},
        "butterworth": {"order": 2, "cutoff": 0.4}
    })"));
    const auto result = run_bench(cfg, resolve_dataset(cfg));
    if (!result.ok()) return fail("benchmark failed: " + result.failures.front().message);
    const auto doc = nlohmann::json::parse(report_json_text(result));
    int cells = 0, bad = 0;
    std::string listing;
    for (const auto& rec : doc.at("records")) {
        ++cells;
        const double acc = rec.at("accuracy").get<double>();
        const auto total = rec.at("total").get<std::size_t>();
        const auto correct = rec.at("correct").get<std::size_t>();
        const bool ok = total == 160 && rec.at("accuracy_granularity_ok").get<bool>() &&
                        matches_granularity(acc, 160) && acc == round2(100.0 * static_cast<double>(correct) / 160.0);
        if (!ok) ++bad;
        listing += fmt(" %s/%s=%zu/160", rec.at("model").get<std::string>().c_str(),
                       rec.at("variant").get<std::string>().c_str(), correct);
    }
    const bool anchor = matches_granularity(89.38, 160) && round2(100.0 * 143.0 / 160.0) == 89.38;
    return check(bad == 0 && cells == 6 && anchor, fmt("%d cells, %d off-grid;", cells, bad) + listing);
}

Outcome real_data() {
    const char* env = std::getenv("MPTSC_REAL_DATASET");
    if (env == nullptr || !fs::exists(env)) return skip("set MPTSC_REAL_DATASET to a converted dataset file to run");

    // Expected accuracies for the real build (percent).
    const std::map<std::pair<std::string, std::string>, std::vector<double>> reference = {
        {{"0 vs 22", "raw"}, {55.26, 77.63, 86.84, 80.26, 82.89}},
        {{"0 vs 1", "raw"}, {50.0, 64.47, 89.47, 61.84, 56.58}},
        {{"1 vs 22", "raw"}, {51.32, 64.47, 94.74, 65.79, 67.11}},
        {{"0 vs 1 vs 22", "raw"}, {33.33, 55.26, 80.70, 57.02, 52.63}},
        {{"0 vs 22", "filtered"}, {59.21, 73.68, 88.16, 82.89, 71.05}},
        {{"0 vs 1", "filtered"}, {52.63, 61.84, 65.79, 57.89, 57.89}},
        {{"1 vs 22", "filtered"}, {51.32, 67.11, 86.84, 84.21, 76.32}},
        {{"0 vs 1 vs 22", "filtered"}, {33.33, 56.14, 64.04, 59.65, 45.61}},
        {{"High vs Low", "raw"}, {71.25, 67.5, 89.38, 59.38, 43.75}},
        {{"High vs Low", "filtered"}, {74.38, 68.75, 90.63, 59.38, 54.38}},
    };
    auto cfg = load_run_config(g_configs / "real_data.json");
    cfg.dataset = fs::path(env);
    cfg.output_dir = g_scratch / "real_data";
    const auto result = run_bench(cfg, resolve_dataset(cfg));
    write_bench_outputs(cfg, result);
    int cells = 0, off = 0;
    double worst = 0.0;
    for (const auto& r : result.reports) {
        const auto it = reference.find({r.task, std::string(to_string(r.variant))});
        if (it == reference.end()) continue;
        for (const auto& m : r.models) {
            const double want = it->second[static_cast<std::size_t>(m.kind)];
            const double diff = std::abs(m.accuracy_percent() - want);
            worst = std::max(worst, diff);
            ++cells;
            if (diff > 5.0) ++off;
        }
    }
    return check(result.ok() && off == 0 && cells == 50,
                 fmt("%d cells, %d outside +/-5 points, worst %.2f", cells, off, worst));
}

Outcome determinism() {
    auto cfg = parse_run_config(nlohmann::json::parse(R"({
        "schema_version": 1,
        "seed": 5,
        "generator": {"blocks": 3, "layers": 30, "base_length": 96, "dip_depths": [150, 70, 110],
                      "equalize_means": true},
        "tasks": [
            {"classes": [[0], [1]], "layers": 30, "test_layers": 6, "cv_folds": 4},
            {"classes": [[0], [1], [2]], "layers": 30, "test_layers": 6, "cv_folds": 4},
            {"kind": "high_low", "layers": 30, "blocks": 3, "edge_layers": 5, "held_out": [1],
             "expected_held_out": 1, "cv_folds": 3}
        ],
        "models": {
            "mean": {"k": [1, 3]},
            "euclidean": {"k": [1, 3]},
            "dtw": {"k": [1, 3], "band_fraction": [0.05, 1.0]},
            "sax": {"k": [1], "alphabet_size": [4, 6], "word_length": [4, 8], "window_size": [16, 32]},
            "sfa": {"k": [1], "alphabet_size": [4], "coeff_count": [4, 6], "window_size": [16, 32]}
        },
        "butterworth": {"order": 4, "cutoff": 0.2}
    })"));
    std::vector<std::string> reports;
    for (unsigned threads : {1u, 1u, 0u, 0u, 4u}) {
        cfg.threads = threads;
        cfg.output_dir = g_scratch / ("determinism_" + std::to_string(reports.size()));
        const auto result = run_bench(cfg, resolve_dataset(cfg));
        if (!result.ok()) return fail("benchmark failed: " + result.failures.front().message);
        write_bench_outputs(cfg, result);
        reports.push_back(read_file(cfg.output_dir / "report.json"));
    }
    const bool same = std::all_of(reports.begin(), reports.end(), [&](const std::string& r) { return r == reports[0]; });
    return check(same && !reports[0].empty(),
                 fmt("5 runs (threads 1, 1, default = %u twice, 4), report.json %zu bytes, %s",
                     ExecOptions{0}.resolved_threads(), reports[0].size(), same ? "identical" : "DIFFERENT"));
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <configs-dir> [scratch-dir]\n", argv[0]);
        return 2;
    }
    g_configs = argv[1];
    g_scratch = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "mptsc_acceptance";
    fs::create_directories(g_scratch);

    struct Criterion {
        const char* id;
        const char* name;
        std::function<Outcome()> run;
        bool gating;
    };
    const Criterion criteria[] = {
        {"P1", "DTW equals exhaustive path enumeration", dtw_oracle, true},
        {"P2", "DTW <= Euclidean", dtw_below_euclidean, true},
        {"P3", "SAX MINDIST lower-bounds Euclidean", mindist_lower_bound, true},
        {"P4", "DFT matches direct summation", dft_direct, true},
        {"P5", "distance axioms", metric_axioms, true},
        {"P6", "PAA m=n identity and m=1 mean", paa_edges, true},
        {"P7", "split arithmetic", split_arithmetic, true},
        {"Q1", "synthetic method ordering", qualitative, true},
        {"G1", "high-low accuracy granularity of 1/160", granularity, true},
        {"R1", "real data within 5 points (optional)", real_data, false},
        {"D1", "byte-identical reports across runs and thread counts", determinism, true},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        const char* tag = o.status == Outcome::pass ? "PASS" : o.status == Outcome::fail ? "FAIL" : "SKIP";
        std::printf("[%s] %s %s: %s%s\n", tag, c.id, c.name, o.detail.c_str(),
                    (!c.gating && o.status == Outcome::fail) ? " (not gating)" : "");
        std::fflush(stdout);
        if (o.status == Outcome::fail && c.gating) ++failures;
    }
    std::printf("%d gating criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
