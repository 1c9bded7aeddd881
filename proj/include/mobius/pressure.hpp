#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mobius/ifs.hpp"

namespace mobius {

/// Per-word data for one tree depth: log2 of the product weight and of the
/// squared norm. Cached so root finding re-evaluates cheaply across (q, s).
class PressureEngine {
public:
    explicit PressureEngine(const MobiusIFS& ifs, uint64_t budget = 10000000)
        : ifs_(ifs), budget_(budget) {}

    /// (1/n) log2 sum over length-n words of p^q |A|^(2s); terms are summed
    /// in descending magnitude with compensation.
    double partial(double q, double s, int n);

    const MobiusIFS& ifs() const { return ifs_; }

private:
    struct Level {
        std::vector<double> log2_weight;
        std::vector<double> log2_norm_sq;
    };
    const Level& level(int n);

    const MobiusIFS& ifs_;
    uint64_t budget_;
    std::vector<std::optional<Level>> levels_;
};

struct PressureEvaluation {
    double q, s;
    int n;
    double value;       // a_n(s)/n
    double upper_bound; // min over evaluated depths of a_n/n
    double lower_bound; // max over evaluated depths of (a_n + 2 s log2 rho)/n
};

struct PressureCurve {
    double q = 0;
    double rho = 1.0;
    std::vector<PressureEvaluation> evaluations;
};

PressureCurve pressure_curve(PressureEngine& engine, double q, const std::vector<double>& s_values,
                             const std::vector<int>& n_values, double rho);

struct TauTildeEstimate {
    double q = 0;
    double root = 0;                       // zero of the depth-n partial
    double bracket_lo = 0, bracket_hi = 0; // final bisection bracket, width <= tol
    int n_used = 0;
    double certified_lo = 0; // zero of a_n/n bounds the limit zero from below
    double certified_hi = 0; // zero of (a_n + 2 s log2 rho)/n bounds it from above
    std::optional<double> via_stopping;
};

/// Bisection for the unique positive zero of the depth-n pressure partial,
/// which is strictly increasing in s. Throws NO_SIGN_CHANGE when the partial
/// is already nonnegative at s -> 0+.
TauTildeEstimate tau_tilde(PressureEngine& engine, double q, int n, double tol = 1e-6,
                           std::optional<double> rho = std::nullopt);

/// -(1/m) log2 sum over the 2^m stopping set of p^q.
double tau_tilde_via_stopping(const MobiusIFS& ifs, double q, int m, uint64_t budget = 10000000);

/// Default working depth: largest n with |alphabet|^n within the word budget.
int default_pressure_depth(const MobiusIFS& ifs, uint64_t word_cap = 600000);

} // namespace mobius
