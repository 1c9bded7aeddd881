#pragma once

#include <cstdint>
#include <vector>

#include "mobius/ifs.hpp"
#include "mobius/projective.hpp"

namespace mobius {

using Word = std::vector<uint8_t>;

std::string word_to_string(const Word& w);

/// A word together with its left-to-right matrix product, product weight and
/// squared operator norm.
struct WordProduct {
    Word word;
    Mat2 matrix;
    Rational weight_exact; // 0/1 in floating mode
    double weight = 1.0;
    double log2_weight = 0.0;
    double norm_sq = 1.0;
};

/// First-passage set at threshold 2^m: every proper prefix has squared norm
/// below 2^m and the full product reaches it.
struct StoppingSet {
    int m = 0;
    std::vector<WordProduct> entries;
    double norm_bound_C = 1.0; // max over entries of norm_sq / 2^m
};

WordProduct product(const MobiusIFS& ifs, const Word& w);

/// Boundary-stable norm comparison: |A|^2 >= 2^m iff tr(A^T A) >= 2^m + 2^-m.
/// Near-threshold cases are re-decided in exact arithmetic when available.
bool norm_sq_reaches(const Mat2& m, int scale_m);

StoppingSet stopping_set(const MobiusIFS& ifs, int m, uint64_t budget = 10000000);

/// Exact-arithmetic re-derivation of the stopping set (words only), used as an
/// independent first-passage check. Requires exact mode.
std::vector<Word> stopping_words_exact(const MobiusIFS& ifs, int m, uint64_t budget = 10000000);

struct Atoms {
    std::vector<ProjPoint> points;
    std::vector<double> weights;
    std::vector<Rational> weights_exact; // empty in floating mode
    int source_scale = 0;
};

/// Weighted atoms A_i x0 over the stopping set at threshold 2^m.
Atoms stopping_pushforward(const MobiusIFS& ifs, int m, ProjPoint x0,
                           uint64_t budget = 10000000);

/// Default base point: attracting fixed direction of the first map.
ProjPoint default_base_point(const MobiusIFS& ifs);

/// Empirical minimum of |A_w' A_w| / (|A_w'| |A_w|) over pairs of words of
/// length <= sample_depth; in (0, 1].
double norm_product_constant(const MobiusIFS& ifs, int sample_depth);

/// Largest first-passage length at threshold 2^m over the subtree generated by
/// the given letters (e.g. a shared-fixed-point pair).
int max_first_passage_length(const MobiusIFS& ifs, const std::vector<uint8_t>& letters, int m,
                             uint64_t budget = 10000000);

} // namespace mobius
