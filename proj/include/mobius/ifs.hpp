#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mobius/interval_set.hpp"
#include "mobius/projective.hpp"
#include "mobius/rational.hpp"

namespace mobius {

/// Finite family of unimodular matrices with a probability weight per map.
/// Exact mode holds rational entries and weights summing to one exactly.
struct MobiusIFS {
    std::vector<Mat2> maps;
    std::vector<double> weights;
    std::vector<Rational> weights_exact; // empty in floating mode
    std::string label;

    size_t alphabet_size() const { return maps.size(); }
    bool exact() const { return !weights_exact.empty(); }

    /// Validates: >= 2 maps, det 1 each, positive weights summing to 1.
    void validate() const;
};

/// Nested invariant open sets U c U1 c U0 with one uniform angular margin and
/// the empirical contraction/distortion constant of the action on U.
struct HyperbolicityCertificate {
    IntervalSet U, U1, U0;
    double margin = 0.0;
    double contraction_constant_C1 = 1.0;
};

struct SharedFixedPoint {
    size_t map_i = 0;
    size_t map_j = 0;
    ProjPoint point;
    bool attracting_for_both = false; // proxy for membership in the attractor
};

struct FixedPointReport {
    std::vector<std::vector<ProjPoint>> fixed_points; // per map
    std::vector<SharedFixedPoint> shared;
};

// presets
MobiusIFS solomyak_preset(const Rational& t, const Rational& p0);
MobiusIFS ssc4_preset();
MobiusIFS diag_preset(const std::vector<Rational>& lambdas,
                      const std::vector<Rational>& weights = {});

/// Parses the text format: one `a b c d` line per map (rationals), then a
/// line `weights: w1 w2 ...`.
MobiusIFS parse_ifs_text(const std::string& text, const std::string& label);
/// `preset:name(:key=value)*` or a file path.
MobiusIFS resolve_ifs_spec(const std::string& spec);

/// Checks that every map sends the closure of the candidate strictly inside
/// it, then builds the nested triple by shrinking in thirds of the slack.
/// Throws NOT_INVARIANT with the offending map and a witness angle.
HyperbolicityCertificate verify_invariant_domain(const MobiusIFS& ifs,
                                                 const IntervalSet& candidate,
                                                 int c1_grid = 256);

/// Searches for an invariant open set by growing fattened forward images of
/// seed arcs around attracting directions of short products.
/// Throws NO_DOMAIN_FOUND when the union closes up or max_iters is hit.
HyperbolicityCertificate find_invariant_domain(const MobiusIFS& ifs, int max_iters = 200);

/// Union of the images of U-bar under all words of the given length.
IntervalSet attractor_cover(const MobiusIFS& ifs, const HyperbolicityCertificate& cert,
                            int depth, uint64_t budget = 10000000);

/// Fixed projective points of every map (chart quadratic plus [1:0] when
/// lower-left entry vanishes) and the pairs sharing one within tolerance.
FixedPointReport shared_fixed_points(const MobiusIFS& ifs, double tol = kAngleTol);

} // namespace mobius
