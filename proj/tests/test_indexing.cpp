#include <doctest.h>

#include "oracles.hpp"
#include "tornpaper/indexing.hpp"

using namespace tornpaper;

static CodeParams cfg_a() { return derive_params(2, 124, 1, 15, 20, 3); }

TEST_CASE("binary reflected Gray table") {
    const char* want[] = {"000", "001", "011", "010", "110", "111", "101", "100"};
    for (std::uint64_t i = 0; i < 8; ++i) {
        CHECK(to_text(gray_unrank(i, 3, 2)) == want[i]);
        CHECK(gray_rank(from_text(want[i], 2)) == i);
    }
    CHECK(gray_rank(from_text("110", 2)) == 4);
    CHECK(gray_rank(from_text("000", 2)) == 0);
    CHECK_THROWS_AS(gray_unrank(8, 3, 2), ParamError);
}

TEST_CASE("gray code: single coordinate change, exhaustive") {
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        for (std::size_t I = 1; I <= (q == 2 ? 8u : 4u); ++I) {
            std::uint64_t total = 1;
            for (std::size_t j = 0; j < I; ++j) total *= q;
            QString prev = gray_unrank(0, I, q);
            CHECK(gray_rank(prev) == 0);
            for (std::uint64_t i = 1; i < total; ++i) {
                QString cur = gray_unrank(i, I, q);
                CHECK(hamming_distance(prev, cur) == 1);
                CHECK(gray_rank(cur) == i);
                prev = cur;
            }
        }
    }
}

TEST_CASE("gray rank/unrank random round trip at I = 16") {
    Rng rng(31);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::uint64_t i = rng.below(1ull << 16);
        CHECK(gray_rank(gray_unrank(i, 16, 2)) == i);
    }
}

TEST_CASE("encoded index: CFG-A examples") {
    CodeParams p = cfg_a();
    CHECK(to_text(build_encoded_index(0, p).padded) == "100100");
    CHECK(to_text(build_encoded_index(1, p).padded) == "100111");
    // oracle: positional insertion of 1s into c' at locations divisible by f
    for (std::uint64_t i = 0; i < 8; ++i) {
        QString c = gray_unrank(i, p.I, p.q);
        unsigned sum = 0;
        for (std::size_t j = 0; j < c.size(); ++j) sum = (sum + c[j]) % p.q;
        QString cp = c;
        cp.push_back(static_cast<Symbol>((p.q - sum) % p.q));
        CHECK(to_text(build_encoded_index(i, p).padded) ==
              oracles::insert_ones(to_text(cp), p.f));
    }
}

TEST_CASE("padded index never contains a marker or long zero run") {
    CodeParams p = cfg_a();
    for (std::uint64_t i = 0; i < 8; ++i) {
        QString w = build_encoded_index(i, p).padded;
        CHECK(w.size() == p.alpha);
        CHECK(w[0] == 1);
        CHECK(w.longest_zero_run() < p.f);
        CHECK(oracles::count_occurrences(to_text(w), to_text(p.marker())) == 0);
    }
}

TEST_CASE("pad/strip inverse") {
    CodeParams p = cfg_a();
    Rng rng(37);
    for (int trial = 0; trial < 500; ++trial) {
        QString cp = random_qstring(p.q, p.I + 1, rng);
        QString padded = pad_index_word(cp, p);
        auto back = strip_index_word(padded, p);
        REQUIRE(back.has_value());
        CHECK(*back == cp);
    }
    // corrupted padding is signalled, not mis-decoded
    QString w = build_encoded_index(3, p).padded;
    std::vector<Symbol> sym = w.symbols();
    sym[3] = 0;  // position 3 is a pad slot for f = 3
    CHECK(!strip_index_word(QString(p.q, sym), p).has_value());
    CHECK(!decode_index_word(QString(p.q, sym), p).has_value());
}

TEST_CASE("consecutive encoded indices differ in exactly two positions") {
    // Lemma-4 premise: one Gray coordinate and the parity symbol; also the
    // parity symbols themselves always differ.
    for (unsigned q : {2u, 3u, 4u}) {
        for (std::size_t I = 1; I <= (q == 2 ? 8u : 4u); ++I) {
            // n = q^I * Lmin makes derive_params land on exactly this I
            const std::size_t f = 3;
            const std::size_t alpha = (f * (I + 1) + f - 2) / (f - 1);
            const std::size_t Lmin = alpha + f + 2 + f;
            std::uint64_t total = 1;
            for (std::size_t j = 0; j < I; ++j) total *= q;
            CodeParams p = derive_params(q, total * Lmin, 1, Lmin, Lmin, f);
            REQUIRE(p.I == I);
            for (std::uint64_t i = 0; i + 1 < std::min<std::uint64_t>(total, p.K + 1); ++i) {
                QString a = build_encoded_index(i, p).padded;
                QString b = build_encoded_index(i + 1, p).padded;
                CHECK(hamming_distance(a, b) == 2);
                CHECK(a[p.alpha - 1] != b[p.alpha - 1]);  // parity symbol differs
            }
        }
    }
}

TEST_CASE("decode_index_word: whole words and cyclic mixes") {
    CodeParams p = cfg_a();
    for (std::uint64_t i = 0; i < 8; ++i) {
        QString w = build_encoded_index(i, p).padded;
        auto ind = decode_index_word(w, p);
        REQUIRE(ind.has_value());
        CHECK(*ind == static_cast<std::int64_t>(i));
    }
    // prefix of c''_{i+1} followed by suffix of c''_i decodes to i for every
    // split point (the cyclic-extraction mix)
    for (std::uint64_t i = 0; i + 1 < 8; ++i) {
        QString low = build_encoded_index(i, p).padded;
        QString high = build_encoded_index(i + 1, p).padded;
        for (std::size_t split = 1; split < p.alpha; ++split) {
            QString mix = high.prefix(split) + low.suffix(p.alpha - split);
            auto ind = decode_index_word(mix, p);
            REQUIRE(ind.has_value());
            CHECK(*ind == static_cast<std::int64_t>(i));
        }
    }
    // mix below index 0 cannot decode to a valid rank
    QString w0 = build_encoded_index(0, p).padded;
    std::vector<Symbol> broken = w0.symbols();
    broken[p.alpha - 1] = static_cast<Symbol>(1 - broken[p.alpha - 1]);  // flip parity
    CHECK(!decode_index_word(QString(p.q, broken), p).has_value());
}
