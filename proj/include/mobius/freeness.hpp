#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mobius/ifs.hpp"
#include "mobius/word.hpp"

namespace mobius {

enum class FreenessMethod { Exhaustive, Mod4Certificate };

struct FreenessReport {
    int depth = 0; // -1 stands for "all lengths" under the certificate
    uint64_t words_checked = 0;
    bool free_up_to_depth = false;
    std::optional<std::pair<Word, Word>> collision; // equal exact products
    FreenessMethod method = FreenessMethod::Exhaustive;
};

/// Enumerates all words of length <= depth over exact matrices and detects
/// equal products via canonical scale-free integer forms, re-verified by
/// direct multiplication.
FreenessReport check_freeness_exhaustive(const std::vector<Mat2>& matrices, int depth,
                                         uint64_t budget = 10000000);

struct Mod4Step {
    int step = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Mod4Certificate {
    Rational t;
    bool pass = false;
    std::vector<Mod4Step> steps;
    std::vector<std::array<long, 4>> images_mod4;      // reduced generators
    std::vector<std::array<Integer, 4>> conjugated;    // 2 R g^-1 R^-1, exact
    size_t closure_size = 0;
    FreenessReport report; // FREE_UP_TO_DEPTH(-1) on success
};

/// Integrality + reduction + closure certificate for the three-map family at
/// parameter t; passes exactly when t is a positive multiple of 9.
Mod4Certificate mod4_certificate_for_t(const Rational& t);
Mod4Certificate mod4_certificate(long n);

struct SeparationProfile {
    std::vector<int> n_values;
    std::vector<double> min_distance; // 0 marks an exact same-length collision
    double fitted_rate = 0.0;         // 2^slope of log2(min) against n
};

/// Near-identity proxy distance |A_j^-1 A_i - Id| (operator norm).
double proxy_distance(const Mat2& a, const Mat2& b);

/// Per-length minima of the proxy distance over distinct same-length pairs,
/// via sorted-shadow candidate search with exact collision confirmation.
SeparationProfile separation_profile(const MobiusIFS& ifs, int n_max,
                                     uint64_t budget = 10000000);

/// All-pairs oracle for small alphabets; used to validate the sorted search.
double separation_min_all_pairs(const MobiusIFS& ifs, int n);

struct StoppingSeparation {
    int m = 0;
    double min_distance = 0.0;
    double implied_rate = 0.0; // 2^(log2(min)/m)
};

StoppingSeparation stopping_separation(const MobiusIFS& ifs, int m, uint64_t budget = 10000000);

} // namespace mobius
