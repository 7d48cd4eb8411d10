#include <doctest.h>

#include "oracles.hpp"
#include "tornpaper/segmentation.hpp"

using namespace tornpaper;

TEST_CASE("concat basics") {
    CHECK(to_text(from_text("001", 2) + from_text("01", 2)) == "00101");
    CHECK(to_text(QString(2) + from_text("110", 2)) == "110");  // empty left identity
    // marker assembly: 1 . 0^3 . 1
    QString m = from_text("1", 2) + QString::zeros(2, 3) + from_text("1", 2);
    CHECK(to_text(m) == "10001");
    CHECK(m == marker_string(2, 3));
    CHECK_THROWS_AS(concat(QString(2), QString(3)), ParamError);
}

TEST_CASE("text round trip and ACGT alias") {
    QString x = from_text("0123", 4);
    CHECK(to_text(x) == "0123");
    CHECK(to_text(x, true) == "ACGT");
    CHECK(from_text("ACGT", 4) == x);
    CHECK(from_text("acgt", 4) == x);
    CHECK_THROWS_AS(from_text("012", 2), ParamError);
    CHECK_THROWS_AS(from_text("X", 3), ParamError);
}

TEST_CASE("hamming_perturb") {
    QString x = from_text("000", 2);
    CHECK(to_text(hamming_perturb(x, from_text("010", 2))) == "010");
    CHECK(hamming_perturb(x, QString::zeros(2, 3)) == x);

    // componentwise mod-3 oracle
    QString a = from_text("012", 3), e = from_text("021", 3);
    QString expect(3);
    for (std::size_t i = 0; i < 3; ++i)
        expect.push_back(static_cast<Symbol>((a[i] + e[i]) % 3));
    CHECK(hamming_perturb(a, e) == expect);
    CHECK(to_text(hamming_perturb(a, e)) == "000");  // 0+0, 1+2, 2+1 mod 3

    CHECK_THROWS_AS(hamming_perturb(x, QString::zeros(2, 2)), ParamError);

    // involution under the negated error vector
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const unsigned q = 2 + static_cast<unsigned>(rng.below(7));
        QString v = random_qstring(q, 1 + rng.below(40), rng);
        QString err = random_qstring(q, v.size(), rng);
        CHECK(hamming_perturb(hamming_perturb(v, err), negate(err)) == v);
        CHECK(hamming_distance(v, hamming_perturb(v, err)) == err.weight());
    }
}

TEST_CASE("exact segmentation") {
    // per-string segmentation united over a multiset of strands
    std::vector<QString> S = {from_text("01010", 2), from_text("00101", 2),
                              from_text("11101", 2)};
    SegmentCollection got = exact_segmentation_multi(S, 2);
    SegmentCollection want;
    for (const char* s : {"01", "01", "0", "00", "10", "1", "11", "10", "1"})
        want.add(from_text(s, 2));
    CHECK(got == want);

    CHECK(exact_segmentation(from_text("10001", 2), 5) ==
          SegmentCollection({from_text("10001", 2)}));
    SegmentCollection zeros = exact_segmentation(QString::zeros(2, 7), 3);
    SegmentCollection zwant;
    zwant.add(QString::zeros(2, 3));
    zwant.add(QString::zeros(2, 3));
    zwant.add(QString::zeros(2, 1));
    CHECK(zeros == zwant);
}

TEST_CASE("segmentation spectrum: quoted example") {
    auto spec = enumerate_segmentations(from_text("00101", 2), 2, 3);
    std::set<SegmentCollection> want;
    want.insert(SegmentCollection({from_text("001", 2), from_text("01", 2)}));
    want.insert(SegmentCollection({from_text("00", 2), from_text("101", 2)}));
    want.insert(SegmentCollection({from_text("00", 2), from_text("10", 2), from_text("1", 2)}));
    CHECK(spec == want);
}

TEST_CASE("segmentation spectrum vs brute-force cut enumeration") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 4 + rng.below(8);
        const std::size_t Lmin = 1 + rng.below(3);
        const std::size_t Lmax = Lmin + rng.below(n - Lmin + 1);
        QString x = random_qstring(2, n, rng);
        auto got = enumerate_segmentations(x, Lmin, std::min(Lmax, n));
        auto want = oracles::spectrum_bruteforce(to_text(x), Lmin, std::min(Lmax, n));
        REQUIRE(got.size() == want.size());
        for (const auto& coll : got) {
            std::vector<std::string> key;
            for (const auto& s : coll.canonical().segments()) key.push_back(to_text(s));
            CHECK(want.count(key) == 1);
        }
        // every member concatenates back to x in some cut order: guaranteed
        // by construction for the oracle; check multiset symbol counts here
        for (const auto& coll : got) {
            std::size_t total = 0;
            for (const auto& s : coll.segments()) total += s.size();
            CHECK(total == n);
        }
    }
}

TEST_CASE("exact segmentation is the single member of the tight spectrum") {
    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 3 + rng.below(9);
        const std::size_t L = 1 + rng.below(n);
        QString x = random_qstring(2, n, rng);
        auto spec = enumerate_segmentations(x, L, L);
        if (n >= L) {
            // all pieces forced to length L (remainder tail allowed)
            CHECK(spec.count(exact_segmentation(x, L)) == 1);
            if (n % L == 0) CHECK(spec.size() == 1);
        }
    }
}

TEST_CASE("enumeration cap fails loudly") {
    QString x = QString::zeros(2, 60);
    CHECK_THROWS_AS(enumerate_segmentations(x, 1, 3, 1000), ResourceError);
}

TEST_CASE("marker occurrences: examples") {
    auto occ = find_marker_occurrences(from_text("100011", 2), 3);
    REQUIRE(occ.size() == 1);
    CHECK(occ[0].offset == 0);
    CHECK(occ[0].kind == MarkerOccurrenceKind::complete);

    // no zero-run >= f anywhere: no occurrences at all
    CHECK(find_marker_occurrences(from_text("110111011", 2), 3).empty());

    // cyclic: suffix "10" + prefix "001" spell 1 0^1... build a concrete one:
    // u = 01100 with f=1: marker 101; suffix "0"+prefix "01"? validate against
    // the brute-force rotation scan instead of hand-derivation.
    for (const char* text : {"01100", "00110", "11010", "10001"}) {
        QString u = from_text(text, 2);
        for (std::size_t f = 1; f + 2 <= u.size(); ++f) {
            auto got = find_marker_occurrences(u, f);
            auto want = oracles::marker_scan_naive(u, f);
            REQUIRE(got.size() == want.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(got[i].offset == want[i].first);
                CHECK((got[i].kind == MarkerOccurrenceKind::complete) == want[i].second);
            }
        }
    }
}

TEST_CASE("marker occurrences agree with naive scan on random inputs") {
    Rng rng(17);
    for (int trial = 0; trial < 100000; ++trial) {
        const std::size_t f = 1 + rng.below(4);
        const std::size_t n = f + 2 + rng.below(12);
        // bias toward 0/1-heavy strings so markers actually appear
        QString u(2);
        for (std::size_t i = 0; i < n; ++i)
            u.push_back(static_cast<Symbol>(rng.below(3) == 0 ? 1 : 0));
        auto got = find_marker_occurrences(u, f);
        auto want = oracles::marker_scan_naive(u, f);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].offset == want[i].first);
            CHECK((got[i].kind == MarkerOccurrenceKind::complete) == want[i].second);
        }
    }
}

TEST_CASE("multiset semantics") {
    SegmentCollection a({from_text("01", 2), from_text("01", 2), from_text("1", 2)});
    SegmentCollection b({from_text("1", 2), from_text("01", 2), from_text("01", 2)});
    SegmentCollection c({from_text("01", 2), from_text("1", 2)});
    CHECK(a == b);
    CHECK(a != c);  // multiplicity respected
}

TEST_CASE("error budget") {
    ErrorBudget ok1{2, 0}, ok2{0, 3}, bad{1, 1};
    CHECK_NOTHROW(ok1.validate());
    CHECK_NOTHROW(ok2.validate());
    CHECK_THROWS_AS(bad.validate(), ParamError);
}
