#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <random>

#include "mobius/errors.hpp"
#include "mobius/measure.hpp"

using namespace mobius;

TEST_CASE("lq norm: uniform, point mass, two bins") {
    for (int m : {4, 8, 16}) {
        DyadicHistogram u = uniform_histogram(m);
        for (double q : {1.5, 2.0, 4.0}) {
            double expected = std::exp2(-(q - 1.0) * m);
            CHECK(std::fabs(lq_norm(u, q) - expected) <= 1e-14 * expected);
        }
    }
    DyadicHistogram p = point_mass_histogram(10, 1.0);
    CHECK(lq_norm(p, 2.0) == 1.0);
    DyadicHistogram two;
    two.m = 1;
    two.masses[0] = 0.5;
    two.masses[1] = 0.5;
    CHECK(lq_norm(two, 2.0) == doctest::Approx(0.5));
}

TEST_CASE("spectrum samples: uniform gives q-1 exactly, point mass gives 0") {
    std::vector<DyadicHistogram> uniforms = {uniform_histogram(8), uniform_histogram(16)};
    for (double q : {1.5, 2.0, 4.0}) {
        SpectrumReport rep = spectrum_from_histograms(uniforms, q);
        for (double s : rep.samples) CHECK(std::fabs(s - (q - 1.0)) <= 1e-12);
        CHECK(std::fabs(rep.estimate - (q - 1.0)) <= 1e-12);
    }
    std::vector<DyadicHistogram> points = {point_mass_histogram(8), point_mass_histogram(16)};
    SpectrumReport rep = spectrum_from_histograms(points, 2.0);
    for (double s : rep.samples) CHECK(s == 0.0);
}

TEST_CASE("spectrum samples always live in [0, q-1]") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    for (double q : {1.5, 3.0, 8.0}) {
        SpectrumReport rep = spectrum_estimate(ifs, q, {6, 8, 10}, 2);
        for (double s : rep.samples) {
            CHECK(s >= -1e-12);
            CHECK(s <= q - 1.0 + 1e-12);
        }
    }
}

TEST_CASE("discretize: diagonal family concentrates all mass in bin 0") {
    MobiusIFS ifs = diag_preset({Rational(2), Rational(4)});
    DyadicHistogram h = discretize(ifs, 10, 4);
    CHECK(h.mass_at(0) == doctest::Approx(1.0));
    CHECK(h.masses.size() == 1);
}

TEST_CASE("discretize: Solomyak spike at the shared fixed point") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    int m = 12, oversample = 4;
    DyadicHistogram h = discretize(ifs, m, oversample);
    CHECK(h.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    // every word over the shared pair fixes chart 0 exactly, so the bin at
    // angle pi/2 collects at least (2 p0)^n with n the construction's largest
    // first-passage length at the source scale
    int n = max_first_passage_length(ifs, {0, 1}, m + oversample);
    double bound = std::pow(0.98, n);
    CHECK(h.mass_at(h.bin_of(kPi / 2)) >= bound);
}

TEST_CASE("spectrum: strongly separated pair has tau(2) near 1/2") {
    MobiusIFS ifs = ssc4_preset();
    SpectrumReport rep = spectrum_estimate(ifs, 2.0, {12, 14, 16, 18, 20});
    CHECK(rep.estimate >= 0.45);
    CHECK(rep.estimate <= 0.55);
}

TEST_CASE("spectrum: Solomyak spike caps tau(12)") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    SpectrumReport rep = spectrum_estimate(ifs, 12.0, {12, 14, 16, 18, 20});
    CHECK(rep.estimate <= 0.5);
    CHECK(rep.estimate >= 0.0);
}

TEST_CASE("legendre transform: uniform, point mass, strongly separated oracle") {
    auto linear_reports = [](double slope, double intercept) {
        std::vector<SpectrumReport> reps;
        for (double q : {1.5, 2.0, 2.5, 3.0, 3.5, 4.0}) {
            SpectrumReport r;
            r.q = q;
            r.estimate = slope * q + intercept;
            reps.push_back(r);
        }
        return reps;
    };
    // uniform: tau = q - 1, alpha = 1, tau*(1) = 1
    LegendreCurve u = legendre_transform(linear_reports(1.0, -1.0));
    for (size_t i = 0; i < u.alpha.size(); ++i) {
        CHECK(u.alpha[i] == doctest::Approx(1.0));
        CHECK(u.tau_star[i] == doctest::Approx(1.0));
    }
    // point mass: tau = 0
    LegendreCurve p = legendre_transform(linear_reports(0.0, 0.0));
    for (size_t i = 0; i < p.alpha.size(); ++i) {
        CHECK(p.alpha[i] == doctest::Approx(0.0));
        CHECK(p.tau_star[i] == doctest::Approx(0.0));
    }
    // tau = (q-1)/2: alpha = 1/2 and tau*(1/2) = 1/2
    LegendreCurve s = legendre_transform(linear_reports(0.5, -0.5));
    for (size_t i = 0; i < s.alpha.size(); ++i) {
        CHECK(s.alpha[i] == doctest::Approx(0.5));
        CHECK(s.tau_star[i] == doctest::Approx(0.5));
    }
    CHECK_THROWS_AS(legendre_transform({SpectrumReport{}, SpectrumReport{}}), Error);
}

TEST_CASE("legendre transform stays concave and nearly nonnegative on presets") {
    for (const auto& ifs : {ssc4_preset(), solomyak_preset(9, Rational(49, 100))}) {
        std::vector<DyadicHistogram> hists;
        for (int m : {10, 12, 14, 16}) hists.push_back(discretize(ifs, m));
        std::vector<SpectrumReport> reps;
        for (double q : {1.5, 2.0, 3.0, 4.0, 6.0, 8.0})
            reps.push_back(spectrum_from_histograms(hists, q));
        LegendreCurve curve = legendre_transform(reps);
        for (double v : curve.tau_star) CHECK(v >= -0.05);
        // concavity in alpha: sort ascending, slopes must not increase
        std::vector<std::pair<double, double>> pts;
        for (size_t i = 0; i < curve.alpha.size(); ++i)
            pts.emplace_back(curve.alpha[i], curve.tau_star[i]);
        std::sort(pts.begin(), pts.end());
        for (size_t i = 2; i < pts.size(); ++i) {
            double da1 = pts[i - 1].first - pts[i - 2].first;
            double da2 = pts[i].first - pts[i - 1].first;
            if (da1 < 1e-12 || da2 < 1e-12) continue;
            double s1 = (pts[i - 1].second - pts[i - 2].second) / da1;
            double s2 = (pts[i].second - pts[i - 1].second) / da2;
            CHECK(s2 <= s1 + 1e-9);
        }
    }
}

TEST_CASE("pointwise dimension: point mass and uniform") {
    std::vector<DyadicHistogram> points = {point_mass_histogram(8, 1.0),
                                           point_mass_histogram(12, 1.0),
                                           point_mass_histogram(16, 1.0)};
    PointwiseDimension pm = pointwise_dimension_from_histograms(points, ProjPoint::from_angle(1.0));
    CHECK(pm.estimate == doctest::Approx(0.0));

    std::vector<DyadicHistogram> uniforms = {uniform_histogram(8), uniform_histogram(12),
                                             uniform_histogram(16)};
    PointwiseDimension u = pointwise_dimension_from_histograms(uniforms, ProjPoint::from_angle(1.0));
    // window of three bins: 1 - log2(3)/m per scale
    CHECK(u.estimate == doctest::Approx(1.0 - std::log2(3.0) / 12).epsilon(1e-9));

    DyadicHistogram far = point_mass_histogram(8, 0.1);
    CHECK_THROWS_AS(pointwise_dimension_from_histograms({far}, ProjPoint::from_angle(2.0)), Error);
}

TEST_CASE("pointwise dimension: Solomyak shared point is nearly singular") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    PointwiseDimension pd =
        pointwise_dimension(ifs, ProjPoint::from_affine(0.0), {12, 14, 16, 18, 20});
    // local contraction 1/4 with pair weight 0.98 forces about 0.0146
    CHECK(pd.estimate <= -std::log2(0.98) / 2 + 0.02);
    CHECK(pd.estimate > 0.0);
}

TEST_CASE("partition-shift robustness within factor 3^q") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    const int m = 12;
    Atoms atoms = stopping_pushforward(ifs, m + 4, default_base_point(ifs));
    DyadicHistogram base = bin_atoms(atoms, m);
    std::mt19937_64 rng(5);
    for (double q : {1.5, 2.0, 4.0}) {
        double s0 = lq_norm(base, q);
        double factor = std::pow(3.0, q);
        for (int trial = 0; trial < 10; ++trial) {
            double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * base.bin_width();
            DyadicHistogram shifted = bin_atoms(atoms, m, u);
            double s1 = lq_norm(shifted, q);
            CHECK(s1 <= factor * s0 * (1 + 1e-12));
            CHECK(s0 <= factor * s1 * (1 + 1e-12));
        }
    }
}

TEST_CASE("monotone coarsening of q-sums") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    DyadicHistogram h = discretize(ifs, 14, 4);
    for (double q : {1.5, 2.0, 4.0, 8.0}) {
        DyadicHistogram cur = h;
        double prev = lq_norm(cur, q);
        for (int i = 0; i < 6; ++i) {
            cur = cur.coarsened();
            double next = lq_norm(cur, q);
            CHECK(next >= prev * (1 - 1e-12));
            prev = next;
        }
    }
}

TEST_CASE("oversampling stability within factor 3^q") {
    MobiusIFS ifs = ssc4_preset();
    for (double q : {2.0, 4.0}) {
        double a = lq_norm(discretize(ifs, 12, 4), q);
        double b = lq_norm(discretize(ifs, 12, 6), q);
        double factor = std::pow(3.0, q);
        CHECK(a <= factor * b);
        CHECK(b <= factor * a);
    }
}

TEST_CASE("multifractal diagnostics: uniform passes the first three checks with alpha 1") {
    DyadicHistogram u = uniform_histogram(14);
    MultifractalDiagnostics d = multifractal_diagnostics(u, 2.0, 1.0, 1.0, 0.1);
    CHECK(d.by_name("level-set-cardinality").pass);
    CHECK(d.by_name("heavy-bin-tail").pass);
    CHECK(d.by_name("local-norm").pass);
}

TEST_CASE("multifractal diagnostics: strongly separated pair at m=16, q=2") {
    MobiusIFS ifs = ssc4_preset();
    DyadicHistogram h = discretize(ifs, 16, 4);
    SpectrumReport rep = spectrum_estimate(ifs, 2.0, {12, 14, 16});
    MultifractalDiagnostics d =
        multifractal_diagnostics(h, 2.0, 0.5, rep.estimate, 0.1, 0.1);
    CHECK(d.by_name("level-set-cardinality").pass);
    CHECK(d.by_name("heavy-bin-tail").pass);
    CHECK(d.by_name("local-norm").pass);
}

TEST_CASE("multifractal diagnostics: Solomyak census at q=12, m=18") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    DyadicHistogram h = discretize(ifs, 18, 4);
    SpectrumReport rep = spectrum_estimate(ifs, 12.0, {12, 14, 16, 18});
    double alpha_hat = rep.estimate / 12.0;
    MultifractalDiagnostics d = multifractal_diagnostics(h, 12.0, alpha_hat, rep.estimate, 0.1);
    CHECK(d.by_name("near-max-census").pass);
}
