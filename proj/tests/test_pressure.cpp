#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "mobius/errors.hpp"
#include "mobius/pressure.hpp"
#include "mobius/word.hpp"

using namespace mobius;

namespace {

// independent oracle: plain double 2x2 products and the closed-form largest
// eigenvalue of g^T g, summed naively over all words of length n
double brute_force_partial(const std::vector<std::array<double, 4>>& mats,
                           const std::vector<double>& weights, double q, double s, int n) {
    size_t k = mats.size();
    size_t total = 1;
    for (int i = 0; i < n; ++i) total *= k;
    double sum = 0;
    for (size_t code = 0; code < total; ++code) {
        std::array<double, 4> m{1, 0, 0, 1};
        double w = 1;
        size_t c = code;
        for (int pos = 0; pos < n; ++pos) {
            const auto& g = mats[c % k];
            w *= weights[c % k];
            c /= k;
            m = {m[0] * g[0] + m[1] * g[2], m[0] * g[1] + m[1] * g[3],
                 m[2] * g[0] + m[3] * g[2], m[2] * g[1] + m[3] * g[3]};
        }
        double t = m[0] * m[0] + m[1] * m[1] + m[2] * m[2] + m[3] * m[3];
        double norm_sq = 0.5 * (t + std::sqrt(std::max(t * t - 4.0, 0.0)));
        sum += std::pow(w, q) * std::pow(norm_sq, s);
    }
    return std::log2(sum) / n;
}

} // namespace

TEST_CASE("pressure partial at depth one is the plain single-letter sum") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    PressureEngine engine(ifs);
    for (double q : {1.5, 2.0, 4.0}) {
        for (double s : {0.0, 0.5, 1.0, 2.0}) {
            double direct = 0;
            for (size_t i = 0; i < ifs.maps.size(); ++i)
                direct += std::pow(ifs.weights[i], q) * std::pow(ifs.maps[i].norm_sq(), s);
            CHECK(engine.partial(q, s, 1) == doctest::Approx(std::log2(direct)).epsilon(1e-12));
        }
    }
}

TEST_CASE("pressure partial: diagonal family is depth independent") {
    MobiusIFS ifs = diag_preset({Rational(2), Rational(4)});
    PressureEngine engine(ifs);
    double q = 2.0;
    for (double s : {0.3, 1.0, 2.5}) {
        double expected = std::log2(0.25 * std::pow(4.0, s) + 0.25 * std::pow(16.0, s));
        for (int n : {1, 4, 8})
            CHECK(engine.partial(q, s, n) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("pressure partial: Solomyak depth three against the brute-force oracle") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    PressureEngine engine(ifs);
    std::vector<std::array<double, 4>> mats = {
        {0.5, 0, 2, 2}, {0.5, 0, 0, 2}, {0.5, 9, 0, 2}};
    std::vector<double> w = {0.49, 0.49, 0.02};
    double oracle = brute_force_partial(mats, w, 2.0, 1.0, 3);
    CHECK(engine.partial(2.0, 1.0, 3) == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("subadditivity and the rho-supermultiplicative lower bound") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    PressureEngine engine(ifs);
    double rho = norm_product_constant(ifs, 3);
    for (double q : {1.5, 3.0}) {
        for (double s : {0.0, 0.7, 1.8}) {
            auto a = [&](int n) { return n * engine.partial(q, s, n); };
            for (int n : {1, 2, 3}) {
                for (int m : {1, 2, 3, 4}) {
                    CHECK(a(n + m) <= a(n) + a(m) + 1e-9);
                }
            }
            for (int n : {2, 3}) {
                CHECK(a(2 * n) >= 2 * a(n) + 2 * s * std::log2(rho) - 1e-9);
            }
        }
    }
}

TEST_CASE("tau tilde: diagonal family solves the closed-form quadratic") {
    // zero of (1/4)(4^s + 16^s): with y = 4^s, y + y^2 = 4, y = (-1+sqrt(17))/2
    MobiusIFS ifs = diag_preset({Rational(2), Rational(4)});
    PressureEngine engine(ifs);
    double expected = std::log2((std::sqrt(17.0) - 1.0) / 2.0) / 2.0;
    for (int n : {1, 4, 8}) {
        TauTildeEstimate est = tau_tilde(engine, 2.0, n, 1e-8);
        CHECK(std::fabs(est.root - expected) <= 1e-6);
        CHECK(est.bracket_hi - est.bracket_lo <= 1e-8);
        CHECK(est.root >= est.bracket_lo);
        CHECK(est.root <= est.bracket_hi);
        CHECK(engine.partial(2.0, est.bracket_lo, n) < 0);
        CHECK(engine.partial(2.0, est.bracket_hi, n) > 0);
        // exact multiplicativity collapses the certified bracket
        CHECK(est.certified_lo == doctest::Approx(est.root));
        CHECK(est.certified_hi == doctest::Approx(est.root).epsilon(1e-6));
    }
}

TEST_CASE("tau tilde: strongly separated pair approaches (q-1)/2") {
    MobiusIFS ifs = ssc4_preset();
    PressureEngine engine(ifs);
    for (double q : {2.0, 4.0}) {
        TauTildeEstimate est = tau_tilde(engine, q, 10);
        CHECK(std::fabs(est.root - (q - 1.0) / 2.0) <= 0.02);
    }
}

TEST_CASE("tau tilde is monotone nondecreasing in q at fixed depth") {
    for (const auto& ifs : {solomyak_preset(9, Rational(49, 100)), ssc4_preset()}) {
        PressureEngine engine(ifs);
        double rho = norm_product_constant(ifs, 3);
        double prev = -1;
        for (double q : {1.2, 2.0, 4.0, 8.0, 12.0, 16.0}) {
            double root = tau_tilde(engine, q, 6, 1e-6, rho).root;
            CHECK(root >= prev - 1e-9);
            prev = root;
        }
    }
}

TEST_CASE("tau tilde certified bracket straddles the root") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    PressureEngine engine(ifs);
    TauTildeEstimate est = tau_tilde(engine, 2.0, 8);
    CHECK(est.certified_lo <= est.root + 1e-12);
    CHECK(est.certified_hi >= est.root - 1e-12);
}

TEST_CASE("tau tilde via stopping: closed form for the repeated diagonal family") {
    MobiusIFS ifs;
    Mat2 d(Rational(2), Rational(0), Rational(0), Rational(1, 2));
    ifs.maps = {d, d};
    ifs.weights = {0.5, 0.5};
    ifs.weights_exact = {Rational(1, 2), Rational(1, 2)};
    for (int m : {5, 10, 20}) {
        int n = (m + 1) / 2;
        double expected = static_cast<double>(n) / m; // sum p^2 over 2^n words = 2^-n
        CHECK(tau_tilde_via_stopping(ifs, 2.0, m) == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK_THROWS_AS(tau_tilde_via_stopping(ifs, 2.0, 0), Error);
}

TEST_CASE("tau tilde via stopping agrees with the depth root on the separated pair") {
    MobiusIFS ifs = ssc4_preset();
    PressureEngine engine(ifs);
    double root = tau_tilde(engine, 2.0, 10).root;
    double via = tau_tilde_via_stopping(ifs, 2.0, 20);
    CHECK(std::fabs(via - root) <= 0.1);
}

TEST_CASE("pressure curve carries two-sided bounds") {
    MobiusIFS ifs = solomyak_preset(9, Rational(49, 100));
    PressureEngine engine(ifs);
    double rho = norm_product_constant(ifs, 3);
    PressureCurve curve = pressure_curve(engine, 2.0, {0.5, 1.0, 2.0}, {2, 4, 6}, rho);
    for (const auto& e : curve.evaluations) {
        CHECK(e.upper_bound >= e.lower_bound - 1e-9);
        CHECK(e.value >= e.lower_bound - 1e-9);
        CHECK(e.upper_bound <= e.value + 1e-9);
    }
}

TEST_CASE("default pressure depth respects the word cap") {
    CHECK(default_pressure_depth(solomyak_preset(9, Rational(49, 100))) == 12);
    CHECK(default_pressure_depth(ssc4_preset()) == 19);
}
