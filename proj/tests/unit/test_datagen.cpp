#include <cmath>
#include <cstdint>

#include "doctest.h"

#include "mptsc/datagen.hpp"
#include "mptsc/knn.hpp"
#include "mptsc/preprocess.hpp"
#include "mptsc/protocol.hpp"

using namespace mptsc;

namespace {

// Reference xorshift64* step, written from its published definition.
std::uint64_t reference_next(std::uint64_t& x) {
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    return x * 0x2545F4914F6CDD1DULL;
}

}  // namespace

TEST_CASE("splitmix64 reference values") {
    std::uint64_t s = 0;
    CHECK(splitmix64(s) == 0xE220A8397B1DCDAFULL);
    CHECK(splitmix64(s) == 0x6E789E6AA1B965F4ULL);
}

TEST_CASE("xorshift64* follows its definition") {
    std::uint64_t seed_state = 99;
    std::uint64_t x = splitmix64(seed_state);
    if (x == 0) x = 1;
    Xorshift64Star g(99);
    for (int i = 0; i < 1000; ++i) CHECK(g() == reference_next(x));
}

TEST_CASE("uniform and normal draws have the right moments") {
    Xorshift64Star g(1);
    double su = 0, sn = 0, sn2 = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = g.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        su += u;
        const double z = g.normal();
        sn += z;
        sn2 += z * z;
    }
    CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(std::abs(sn / n) < 0.01);
    CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("generation is deterministic and seed dependent") {
    GenSpec g;
    g.blocks = 3;
    g.layers = 5;
    g.base_length = 50;
    const auto a = generate(g);
    CHECK(a == generate(g));
    CHECK(a.size() == 15);
    g.seed = 43;
    CHECK_FALSE(a == generate(g));
    for (const auto& r : a.records()) {
        CHECK(r.series.size() >= 45);
        CHECK(r.series.size() <= 55);
        CHECK(r.label == "blk" + std::to_string(r.block_id));
    }
}

TEST_CASE("records do not depend on the build size") {
    GenSpec small;
    small.blocks = 2;
    small.layers = 3;
    small.base_length = 40;
    GenSpec big = small;
    big.blocks = 5;
    big.layers = 8;
    const auto a = generate(small);
    const auto b = generate(big);
    for (const auto& r : a.records()) {
        const auto it = std::find_if(b.records().begin(), b.records().end(),
                                     [&](const SeriesRecord& o) { return o.id() == r.id(); });
        REQUIRE(it != b.records().end());
        CHECK(it->series == r.series);
    }
}

TEST_CASE("level offsets separate blocks for the mean model") {
    GenSpec g;
    g.blocks = 2;
    g.layers = 40;
    g.base_length = 100;
    g.length_jitter = 0.0;
    g.dip_phase_jitter = 0.0;
    g.noise_sd = 0.0;
    g.block_offsets = {0.0, 10.0};
    const auto ds = generate(g);
    TaskSpec t;
    t.name = "offsets";
    t.class_blocks = {{0}, {1}};
    t.layers = 40;
    t.test_layers = 8;
    DistanceSpec mean_spec;
    mean_spec.kind = DistanceKind::mean;
    const std::vector<ModelGrid> models{{DistanceKind::mean, {{mean_spec, 1}}}};
    const auto r = run_task(ds, t, Variant::raw, ButterworthSpec{}, models);
    CHECK(r.find(DistanceKind::mean)->accuracy_percent() == 100.0);
}

TEST_CASE("equalized means do not depend on dip depth") {
    GenSpec g;
    g.blocks = 2;
    g.layers = 1;
    g.base_length = 4000;
    g.length_jitter = 0.0;
    g.dip_phase_jitter = 0.0;
    g.noise_sd = 0.0;
    g.dip_depths = {300.0, 20.0};
    g.equalize_means = true;
    const auto ds = generate(g);
    CHECK(mean(ds[0].series.values()) == doctest::Approx(mean(ds[1].series.values())).epsilon(1e-6));
    CHECK(mean(ds[0].series.values()) == doctest::Approx(g.base_level).epsilon(1e-6));
}

TEST_CASE("generator validation") {
    GenSpec g;
    g.blocks = 0;
    CHECK_THROWS_AS(g.validate(), ValidationError);
    g = GenSpec{};
    g.length_jitter = 0.9;
    CHECK_THROWS_AS(g.validate(), ValidationError);
    g = GenSpec{};
    g.noise_sd = -1.0;
    CHECK_THROWS_AS(g.validate(), ValidationError);
}
