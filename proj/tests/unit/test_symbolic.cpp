#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "mptsc/elastic.hpp"
#include "mptsc/preprocess.hpp"
#include "mptsc/symbolic.hpp"

using namespace mptsc;
using doctest::Approx;

namespace {

SaxSpec sax(int a, int w, int window, bool znorm = true, bool nr = true) { return {a, w, window, znorm, nr}; }
SfaSpec sfa(int a, int l, int window, bool znorm = true, bool nr = true) { return {a, l, window, znorm, nr}; }

SymbolicDoc doc_of(std::initializer_list<std::pair<std::string, int>> words) {
    SymbolicDoc d("sig", 2, 10);
    for (const auto& [w, c] : words) {
        for (int i = 0; i < c; ++i) d.add(w);
    }
    return d;
}

}  // namespace

TEST_CASE("gaussian breakpoint values") {
    CHECK(gaussian_breakpoints(2) == std::vector<double>{0.0});
    const auto b4 = gaussian_breakpoints(4);
    REQUIRE(b4.size() == 3);
    CHECK(b4[0] == Approx(-0.6745).epsilon(1e-4));
    CHECK(b4[1] == 0.0);
    CHECK(b4[2] == Approx(0.6745).epsilon(1e-4));
    const auto b3 = gaussian_breakpoints(3);
    REQUIRE(b3.size() == 2);
    CHECK(b3[0] == Approx(-0.4307).epsilon(1e-4));
    CHECK(b3[1] == Approx(0.4307).epsilon(1e-4));
}

TEST_CASE("breakpoints are equiprobable under the normal CDF") {
    for (int a = 2; a <= 26; ++a) {
        const auto b = gaussian_breakpoints(a);
        REQUIRE(b.size() == static_cast<std::size_t>(a - 1));
        for (int i = 0; i < a - 1; ++i) {
            CHECK(oracle::normal_cdf(b[i]) == Approx(static_cast<double>(i + 1) / a).epsilon(1e-12));
            CHECK(b[i] == -b[a - 2 - i]);
            if (i > 0) CHECK(b[i] > b[i - 1]);
        }
    }
    CHECK_THROWS_AS(gaussian_breakpoints(1), ValidationError);
    CHECK_THROWS_AS(gaussian_breakpoints(27), ValidationError);
}

TEST_CASE("threshold ties go to the upper bin") {
    const std::vector<double> t{-1.0, 0.0, 1.0};
    CHECK(bin_index(t, -2.0) == 0);
    CHECK(bin_index(t, -1.0) == 1);
    CHECK(bin_index(t, 0.0) == 2);
    CHECK(bin_index(t, 0.999) == 2);
    CHECK(bin_index(t, 1.0) == 3);
}

TEST_CASE("sax symbolization") {
    CHECK(sax_symbolize(std::vector<double>{-1.0, -0.1, 0.5, 1.2}, sax(4, 4, 4, false)) == "abcd");
    for (int a : {2, 3, 4, 5, 8}) {
        const auto bp = gaussian_breakpoints(a);
        const char zero_symbol = symbol_for(bin_index(bp, 0.0));
        CHECK(sax_symbolize(TimeSeries{3, 3, 3, 3, 3, 3}, sax(a, 3, 6)) == std::string(3, zero_symbol));
    }
    const std::vector<double> v{0.2, 1.0, 2.0, -0.7};
    const auto w1 = sax_symbolize(v, sax(4, 1, 4, false));
    CHECK(w1 == std::string(1, symbol_for(bin_index(gaussian_breakpoints(4), mean(v)))));
}

TEST_CASE("sliding window bag of words") {
    std::mt19937_64 rng(1);
    const auto v = oracle::random_vector(rng, 12);
    const TimeSeries s(v);
    CHECK(sax_bag_of_words(s, sax(4, 4, 12)).total_words() == 1);
    CHECK(sax_bag_of_words(s, sax(4, 4, 10, true, false)).total_words() == 3);
    CHECK(sax_bag_of_words(s, sax(4, 4, 10, true, true)).total_words() <= 3);
    const TimeSeries c(std::vector<double>(40, 2.0));
    const auto bag = sax_bag_of_words(c, sax(4, 4, 8, true, true));
    CHECK(bag.total_words() == 1);
    CHECK(bag.counts().size() == 1);
    CHECK_THROWS_AS(sax_bag_of_words(s, sax(4, 4, 13)), ValidationError);
}

TEST_CASE("numerosity reduction collapses only consecutive repeats") {
    const TimeSeries s{-5, -5, -5, -5, 5, 5, 5, 5, -5, -5, -5, -5};
    const auto all = sax_bag_of_words(s, sax(2, 2, 2, false, false));
    const auto nr = sax_bag_of_words(s, sax(2, 2, 2, false, true));
    CHECK(all.total_words() == 11);
    CHECK(nr.total_words() < all.total_words());
    CHECK(nr.counts().size() == all.counts().size());
}

TEST_CASE("dft matches direct summation") {
    std::mt19937_64 rng(9);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = 1 + rng() % 300;
        const auto v = oracle::random_vector(rng, n, -100, 100);
        const auto ref = oracle::dft_direct(v);
        for (bool drop : {false, true}) {
            const std::size_t avail = dft_available(n, drop);
            CHECK(avail == 2 * (n / 2) + (drop ? 0 : 1));
            const auto got = dft_coefficients(v, avail, drop);
            REQUIRE(got.size() == avail);
            std::vector<long double> want;
            if (!drop) want.push_back(ref[0].first);
            for (std::size_t k = 1; want.size() < avail; ++k) {
                want.push_back(ref[k].first);
                if (want.size() < avail) want.push_back(ref[k].second);
            }
            long double scale = 0.0L;
            for (auto w : want) scale = std::max(scale, std::fabs(w));
            for (std::size_t i = 0; i < avail; ++i) {
                CHECK(static_cast<double>(std::fabs(got[i] - want[i]) / scale) <= 1e-10);
            }
        }
    }
    CHECK_THROWS_AS(dft_coefficients(std::vector<double>{1, 2, 3}, 4), ValidationError);
}

TEST_CASE("mcb thresholds") {
    std::vector<std::vector<double>> coeffs{{1.0}, {2.0}, {3.0}, {4.0}};
    const auto m = mcb_train(coeffs, sfa(2, 1, 4));
    REQUIRE(m.thresholds().size() == 1);
    CHECK(m.thresholds()[0] == std::vector<double>{2.5});
    CHECK(m.word(std::vector<double>{2.5}) == "b");
    CHECK(m.word(std::vector<double>{2.4}) == "a");

    std::vector<std::vector<double>> flat{{7.0, 1.0}, {7.0, 1.0}, {7.0, 1.0}, {7.0, 1.0}};
    const auto d = mcb_train(flat, sfa(4, 2, 4));
    const auto w = d.word(std::vector<double>{7.0, 1.0});
    CHECK(w.size() == 2);
    CHECK(d.word(std::vector<double>{7.0, 1.0}) == w);
    CHECK_THROWS_AS(mcb_train(std::vector<std::vector<double>>{{1.0}}, sfa(2, 1, 4)), ValidationError);
}

TEST_CASE("sfa words") {
    std::mt19937_64 rng(4);
    std::vector<TimeSeries> train;
    for (int i = 0; i < 10; ++i) train.emplace_back(oracle::random_vector(rng, 32));
    std::vector<const TimeSeries*> ptrs;
    for (const auto& t : train) ptrs.push_back(&t);
    const auto spec = sfa(4, 6, 32);
    const auto model = mcb_train(sfa_window_coefficients(ptrs, spec), spec);
    const auto doc = sfa_bag_of_words(train[0], spec, model);
    CHECK(doc.total_words() == 1);
    CHECK(doc.counts().begin()->first.size() == 6);
    CHECK(sfa_bag_of_words(train[3], spec, model) == sfa_bag_of_words(TimeSeries(train[3]), spec, model));
    CHECK_THROWS_AS(sfa_bag_of_words(train[0], spec, McbModel{}), ValidationError);
    CHECK_THROWS_AS(sfa_bag_of_words(train[0], sfa(4, 4, 32), model), ValidationError);
}

TEST_CASE("levenshtein examples") {
    CHECK(levenshtein("abc", "abc") == 0);
    CHECK(levenshtein("abc", "abd") == 1);
    CHECK(levenshtein("kitten", "sitting") == 3);
    CHECK(levenshtein("", "abc") == 3);
}

TEST_CASE("levenshtein agrees with the full table and is a metric") {
    std::mt19937_64 rng(8);
    for (int rep = 0; rep < 500; ++rep) {
        const auto a = oracle::random_word(rng, 12, 4);
        const auto b = oracle::random_word(rng, 12, 4);
        const auto c = oracle::random_word(rng, 12, 4);
        CHECK(levenshtein(a, b) == oracle::edit_distance(a, b));
        CHECK(levenshtein(a, b) == levenshtein(b, a));
        CHECK((levenshtein(a, b) == 0) == (a == b));
        CHECK(levenshtein(a, c) <= levenshtein(a, b) + levenshtein(b, c));
    }
}

TEST_CASE("bag distance examples") {
    CHECK(bag_distance(doc_of({{"ab", 2}, {"cd", 1}}), doc_of({{"ab", 2}, {"cd", 1}})) == 0.0);
    CHECK(bag_distance(doc_of({{"ab", 1}}), doc_of({{"cd", 1}})) == Approx(std::sqrt(2.0)));
    CHECK(bag_distance(doc_of({{"ab", 2}}), doc_of({{"ab", 1}})) == 1.0);
    CHECK_THROWS_AS(bag_distance(doc_of({}), SymbolicDoc("other", 2, 10)), ValidationError);
}

TEST_CASE("mindist") {
    const auto spec = sax(4, 4, 8);
    const TimeSeries s{1, 5, 2, 8, 3, 3, 9, 0};
    CHECK(sax_mindist(s, s, spec) == 0.0);
    CHECK(sax_mindist_words("abcd", "bcdc", 8, 4) == 0.0);
    CHECK(sax_cell_distance(0, 2, gaussian_breakpoints(4)) == Approx(0.6745).epsilon(1e-4));
    CHECK(sax_mindist_words("aaaa", "dddd", 16, 4) == Approx(2.0 * 1.349 * 2.0).epsilon(1e-3));
    CHECK_THROWS_AS(sax_mindist(s, TimeSeries{1, 2, 3}, spec), ValidationError);
}

TEST_CASE("mindist lower-bounds euclidean on normalized series") {
    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t n = 2 + rng() % 64;
        const int w = 1 + static_cast<int>(rng() % n);
        const int a = 2 + static_cast<int>(rng() % 10);
        const TimeSeries p(oracle::random_vector(rng, n));
        const TimeSeries q(oracle::random_vector(rng, n));
        const double ed = euclidean_equal_length(znormalize(p).values(), znormalize(q).values());
        CHECK(sax_mindist(p, q, sax(a, w, static_cast<int>(n))) <= ed + 1e-12);
    }
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(sax(1, 4, 8).validate(), ValidationError);
    CHECK_THROWS_AS(sax(4, 9, 8).validate(), ValidationError);
    CHECK_THROWS_AS(sfa(4, 0, 8).validate(), ValidationError);
    CHECK_THROWS_AS(sfa(4, 9, 8).validate(), ValidationError);
    CHECK(sax(4, 4, 8).signature() != sax(4, 4, 16).signature());
}
