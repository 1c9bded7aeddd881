#include <doctest.h>

#include <cmath>

#include "mobius/errors.hpp"
#include "mobius/freeness.hpp"

using namespace mobius;

namespace {

Mat2 exact_product_of(const std::vector<Mat2>& mats, const Word& w) {
    Mat2 m(Rational(1), Rational(0), Rational(0), Rational(1));
    for (uint8_t l : w) m = m * mats[l];
    return m;
}

std::vector<Mat2> b_and_b_squared() {
    Mat2 b(Rational(1, 2), Rational(0), Rational(0), Rational(2));
    return {b, b * b};
}

} // namespace

TEST_CASE("freeness: Solomyak generators are free to depth 5") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    FreenessReport rep = check_freeness_exhaustive(ifs.maps, 5);
    CHECK(rep.free_up_to_depth);
    CHECK(!rep.collision.has_value());
    CHECK(rep.words_checked == 3 + 9 + 27 + 81 + 243);
}

TEST_CASE("freeness: commuting powers collide, with an exact witness") {
    std::vector<Mat2> mats = b_and_b_squared();
    FreenessReport rep = check_freeness_exhaustive(mats, 3);
    CHECK(!rep.free_up_to_depth);
    REQUIRE(rep.collision.has_value());
    auto [w1, w2] = *rep.collision;
    CHECK(w1 != w2);
    CHECK(exact_product_of(mats, w1) == exact_product_of(mats, w2));
}

TEST_CASE("freeness: duplicate generators collide at length 1") {
    Mat2 b(Rational(1, 2), Rational(0), Rational(0), Rational(2));
    FreenessReport rep = check_freeness_exhaustive({b, b}, 2);
    CHECK(!rep.free_up_to_depth);
    REQUIRE(rep.collision.has_value());
    CHECK(rep.collision->first.size() == 1);
    CHECK(rep.collision->second.size() == 1);
}

TEST_CASE("freeness: budget guard") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    CHECK_THROWS_AS(check_freeness_exhaustive(ifs.maps, 10, 100), Error);
}

TEST_CASE("mod4 certificate: passes for n = 1, 2, 3 with the expected matrices") {
    for (long n : {1L, 2L, 3L}) {
        Mod4Certificate cert = mod4_certificate(n);
        CHECK(cert.pass);
        CHECK(cert.report.free_up_to_depth);
        CHECK(cert.report.method == FreenessMethod::Mod4Certificate);
        REQUIRE(cert.conjugated.size() == 3);
        // conjugated inverses: [[4,0],[0,1]], [[4,0],[1,1]], [[24n+4,-72n],[8n+1,-24n+1]]
        CHECK(cert.conjugated[0] == std::array<Integer, 4>{4, 0, 0, 1});
        CHECK(cert.conjugated[1] == std::array<Integer, 4>{4, 0, 1, 1});
        CHECK(cert.conjugated[2] ==
              std::array<Integer, 4>{24 * n + 4, -72 * n, 8 * n + 1, -24 * n + 1});
        REQUIRE(cert.images_mod4.size() == 3);
        CHECK(cert.images_mod4[0] == std::array<long, 4>{0, 0, 0, 1});
        CHECK(cert.images_mod4[1] == std::array<long, 4>{0, 0, 1, 1});
        CHECK(cert.images_mod4[2] == std::array<long, 4>{0, 0, 1, 1});
        CHECK(cert.closure_size >= 2);
    }
}

TEST_CASE("mod4 certificate: t = 1 fails the integrality step") {
    Mod4Certificate cert = mod4_certificate_for_t(Rational(1));
    CHECK(!cert.pass);
    REQUIRE(!cert.steps.empty());
    CHECK(cert.steps[0].step == 1);
    CHECK(!cert.steps[0].pass);
    CHECK_THROWS_AS(mod4_certificate(0), Error);
}

TEST_CASE("mod4 certificate agrees with exhaustive search on the presets") {
    Mod4Certificate cert = mod4_certificate(1);
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    FreenessReport rep = check_freeness_exhaustive(ifs.maps, 6);
    CHECK(cert.pass);
    CHECK(rep.free_up_to_depth);
}

TEST_CASE("separation profile: Solomyak minima all positive and shrinking") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    SeparationProfile prof = separation_profile(ifs, 5);
    REQUIRE(prof.n_values.size() == 5);
    for (double d : prof.min_distance) CHECK(d > 0);
    CHECK(prof.fitted_rate > 0);
    CHECK(prof.fitted_rate < 1.0);
}

TEST_CASE("separation profile: commuting powers hit zero at length 2") {
    MobiusIFS ifs;
    auto mats = b_and_b_squared();
    ifs.maps = mats;
    ifs.weights = {0.5, 0.5};
    ifs.weights_exact = {Rational(1, 2), Rational(1, 2)};
    SeparationProfile prof = separation_profile(ifs, 3);
    CHECK(prof.min_distance[0] > 0);
    CHECK(prof.min_distance[1] == 0.0);
}

TEST_CASE("separation profile: commuting diagonals collide on permuted words") {
    MobiusIFS ifs = diag_preset({Rational(2), Rational(4)});
    SeparationProfile prof = separation_profile(ifs, 3);
    CHECK(prof.min_distance[0] > 0);
    CHECK(prof.min_distance[1] == 0.0);
    CHECK(prof.min_distance[2] == 0.0);
}

TEST_CASE("sorted candidate search matches the all-pairs oracle up to n = 5") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    SeparationProfile prof = separation_profile(ifs, 5);
    for (int n = 1; n <= 5; ++n) {
        double oracle = separation_min_all_pairs(ifs, n);
        CHECK(prof.min_distance[n - 1] == doctest::Approx(oracle).epsilon(1e-12));
    }
}

TEST_CASE("positive minima match exhaustive freeness verdicts") {
    MobiusIFS free_ifs = solomyak_preset(9, Rational(49, 100));
    SeparationProfile free_prof = separation_profile(free_ifs, 4);
    FreenessReport free_rep = check_freeness_exhaustive(free_ifs.maps, 4);
    bool all_positive = true;
    for (double d : free_prof.min_distance) all_positive &= d > 0;
    CHECK(all_positive == free_rep.free_up_to_depth);

    MobiusIFS collide;
    collide.maps = b_and_b_squared();
    collide.weights = {0.5, 0.5};
    collide.weights_exact = {Rational(1, 2), Rational(1, 2)};
    SeparationProfile bad_prof = separation_profile(collide, 4);
    FreenessReport bad_rep = check_freeness_exhaustive(collide.maps, 4);
    bool bad_all_positive = true;
    for (double d : bad_prof.min_distance) bad_all_positive &= d > 0;
    CHECK(bad_all_positive == bad_rep.free_up_to_depth);
    CHECK(!bad_all_positive);
}

TEST_CASE("stopping separation: Solomyak m=8 reports a positive minimum") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    StoppingSeparation sep = stopping_separation(ifs, 8);
    CHECK(sep.min_distance > 0);
    CHECK(sep.implied_rate > 0);
    CHECK(sep.implied_rate < 1.0);
}

TEST_CASE("stopping separation: permuted diagonal words collide inside the stopping set") {
    MobiusIFS ifs = diag_preset({Rational(2), Rational(4)});
    // stopping words at 2^4 include (0,1) and (1,0), both diag(8, 1/8)
    StoppingSeparation sep = stopping_separation(ifs, 4);
    CHECK(sep.min_distance == 0.0);
}

TEST_CASE("proxy distance: left-invariant proxy vanishes only on equal matrices") {
    Mat2 a(Rational(1, 2), Rational(0), Rational(2), Rational(2));
    Mat2 b(Rational(1, 2), Rational(0), Rational(0), Rational(2));
    CHECK(proxy_distance(a, a) == doctest::Approx(0.0));
    CHECK(proxy_distance(a, b) > 0.1);
}
