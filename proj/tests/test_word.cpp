#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "mobius/errors.hpp"
#include "mobius/word.hpp"

using namespace mobius;

namespace {

MobiusIFS repeated_diag2() {
    // two identical diag(2, 1/2) maps: every length-n product has norm^2 = 4^n
    MobiusIFS ifs;
    Mat2 d(Rational(2), Rational(0), Rational(0), Rational(1, 2));
    ifs.maps = {d, d};
    ifs.weights = {0.5, 0.5};
    ifs.weights_exact = {Rational(1, 2), Rational(1, 2)};
    ifs.label = "repeated-diag2";
    return ifs;
}

} // namespace

TEST_CASE("product: empty word is the identity with weight one") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    WordProduct p = product(ifs, {});
    CHECK(p.matrix == Mat2(Rational(1), Rational(0), Rational(0), Rational(1)));
    CHECK(p.weight_exact == 1);
    CHECK(p.norm_sq == doctest::Approx(1.0));
}

TEST_CASE("product: Solomyak words in both orders") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    WordProduct ab = product(ifs, {0, 1});
    CHECK(ab.matrix == Mat2(Rational(1, 4), Rational(0), Rational(1), Rational(4)));
    WordProduct ba = product(ifs, {1, 0});
    CHECK(ba.matrix == Mat2(Rational(1, 4), Rational(0), Rational(4), Rational(4)));
    CHECK(!(ab.matrix == ba.matrix));
    CHECK(ab.weight_exact == Rational(49, 100) * Rational(49, 100));
}

TEST_CASE("product: diagonal norms multiply exactly") {
    MobiusIFS ifs = diag_preset({Rational(2), Rational(4)});
    WordProduct p = product(ifs, {0, 1, 1, 0});
    CHECK(p.norm_sq == doctest::Approx(4.0 * 16 * 16 * 4).epsilon(1e-12));
}

TEST_CASE("stopping set: repeated diag family stops at length ceil(m/2)") {
    MobiusIFS ifs = repeated_diag2();
    for (int m : {1, 2, 3, 4, 7, 8, 9, 16}) {
        StoppingSet set = stopping_set(ifs, m);
        int expect = (m + 1) / 2;
        CHECK(set.entries.size() == (1u << expect));
        for (const auto& e : set.entries) CHECK(static_cast<int>(e.word.size()) == expect);
        Rational sum = 0;
        for (const auto& e : set.entries) sum += e.weight_exact;
        CHECK(sum == 1);
    }
}

TEST_CASE("stopping set: scale zero stops at single letters") {
    for (const auto& ifs : {solomyak_preset(9, Rational(49, 100)), ssc4_preset()}) {
        StoppingSet set = stopping_set(ifs, 0);
        CHECK(set.entries.size() == ifs.alphabet_size());
        for (const auto& e : set.entries) CHECK(e.word.size() == 1);
    }
}

TEST_CASE("stopping set: Solomyak m=4 mixes lengths, conserves weight exactly") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    StoppingSet set = stopping_set(ifs, 4);
    std::set<size_t> lengths;
    Rational sum = 0;
    for (const auto& e : set.entries) {
        lengths.insert(e.word.size());
        sum += e.weight_exact;
    }
    CHECK(lengths.size() >= 2);
    CHECK(sum == 1);
}

TEST_CASE("stopping set: norms land in [2^m, C 2^m] with C from the single letters") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    double max_single = 0;
    for (const auto& m : ifs.maps) max_single = std::max(max_single, m.norm_sq());
    for (int m : {4, 8, 12}) {
        StoppingSet set = stopping_set(ifs, m);
        double lo = std::ldexp(1.0, m);
        for (const auto& e : set.entries) {
            CHECK(e.norm_sq >= lo * (1 - 1e-9));
            CHECK(e.norm_sq <= lo * max_single * (1 + 1e-9));
        }
        CHECK(set.norm_bound_C <= max_single * (1 + 1e-9));
    }
}

TEST_CASE("stopping set: first passage re-derives exactly") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    for (int m : {3, 6, 10}) {
        StoppingSet set = stopping_set(ifs, m);
        std::vector<Word> exact = stopping_words_exact(ifs, m);
        REQUIRE(set.entries.size() == exact.size());
        for (size_t i = 0; i < exact.size(); ++i) CHECK(set.entries[i].word == exact[i]);
    }
}

TEST_CASE("stopping set: every deeper word extends a unique coarser one") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    for (int m : {4, 7, 11}) {
        StoppingSet coarse = stopping_set(ifs, m);
        StoppingSet fine = stopping_set(ifs, m + 1);
        std::set<Word> coarse_words;
        for (const auto& e : coarse.entries) coarse_words.insert(e.word);
        for (const auto& e : fine.entries) {
            int matches = 0;
            for (size_t len = 1; len <= e.word.size(); ++len) {
                Word prefix(e.word.begin(), e.word.begin() + len);
                if (coarse_words.count(prefix)) ++matches;
            }
            CHECK(matches == 1);
        }
    }
}

TEST_CASE("stopping set: budget guard") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    CHECK_THROWS_AS(stopping_set(ifs, 20, 50), Error);
}

TEST_CASE("pushforward: common fixed point collapses atoms") {
    MobiusIFS ifs = diag_preset({Rational(2), Rational(4)});
    Atoms atoms = stopping_pushforward(ifs, 6, ProjPoint::from_angle(0.0));
    for (const auto& p : atoms.points) CHECK(p.angle == 0.0);

    // identical maps: every atom coincides wherever the base point sits
    MobiusIFS rep = repeated_diag2();
    Atoms twins = stopping_pushforward(rep, 5, ProjPoint::from_angle(0.7));
    for (const auto& p : twins.points) CHECK(p.angle == doctest::Approx(twins.points[0].angle));
}

TEST_CASE("pushforward: Solomyak atoms stay in the chart interval [0, 6]") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    Atoms atoms = stopping_pushforward(ifs, 6, ProjPoint::from_affine(0.0));
    double lo = ProjPoint::from_affine(6.0).angle - 1e-12;
    double hi = kPi / 2 + 1e-12;
    for (const auto& p : atoms.points) {
        CHECK(p.angle >= lo);
        CHECK(p.angle <= hi);
    }
    double total = 0;
    for (double w : atoms.weights) total += w;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("default base point: attracting fixed direction of the first map") {
    CHECK(default_base_point(solomyak_preset(9, Rational(49, 100))).angle ==
          doctest::Approx(kPi / 2));
    CHECK(default_base_point(diag_preset({Rational(2), Rational(4)})).angle == 0.0);
}

TEST_CASE("norm product constant: diagonal families are exactly multiplicative") {
    CHECK(norm_product_constant(diag_preset({Rational(2), Rational(4)}), 3) ==
          doctest::Approx(1.0));
    double rho = norm_product_constant(solomyak_preset(9, Rational(49, 100)), 4);
    CHECK(rho > 0.0);
    CHECK(rho < 1.0);
}

TEST_CASE("max first passage length over the shared pair") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    // pure powers of the diagonal letter reach 2^m last: 4^n >= 2^m at n = ceil(m/2)
    CHECK(max_first_passage_length(ifs, {0, 1}, 16) == 8);
    CHECK(max_first_passage_length(ifs, {0, 1}, 12) == 6);
    CHECK(max_first_passage_length(ifs, {0, 1}, 20) == 10);
    CHECK(max_first_passage_length(ifs, {0, 1}, 13) == 7);
}
