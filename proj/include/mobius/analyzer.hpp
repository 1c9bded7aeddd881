#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mobius/measure.hpp"
#include "mobius/pressure.hpp"

namespace mobius {

enum class DichotomyCase { CaseIConsistent, CaseIIEvidence, Inconclusive };

const char* dichotomy_case_name(DichotomyCase c);

struct DichotomyRow {
    double q = 0;
    double tau_hat = 0;
    double tau_tilde_hat = 0;
    double envelope = 0; // min(tau_tilde_hat, q-1)
    double gap = 0;      // envelope - tau_hat
};

struct DichotomyVerdict {
    std::vector<DichotomyRow> rows;
    DichotomyCase verdict = DichotomyCase::Inconclusive;
    std::optional<double> alpha_hat;
    std::optional<double> q0_hat;
    double q0_uncertainty = 0.0;
    double fit_residual = 0.0; // relative, over the upper half of the grid
    double gap_threshold = 0.25;
};

struct DichotomyOptions {
    int oversample = 4;
    int pressure_depth = 0; // 0 = default for the alphabet size
    double gap_threshold = 0.25;
    uint64_t budget = 10000000;
};

DichotomyVerdict dichotomy_probe(const MobiusIFS& ifs, const std::vector<double>& q_grid,
                                 const std::vector<int>& m_list,
                                 const DichotomyOptions& opts = {});

/// Synthetic variant: spectrum reports only, envelope = q - 1.
DichotomyVerdict dichotomy_probe_from_reports(const std::vector<SpectrumReport>& reports,
                                              double gap_threshold = 0.25);

struct MassCheck {
    int m = 0;
    int n = 0; // largest first-passage length of the shared pair at 2^m
    double window_mass = 0.0;
    double bound = 0.0; // (2 p0)^n
    bool pass = false;
};

struct CounterexampleReport {
    size_t map_i = 0, map_j = 0;
    ProjPoint shared_point;
    double p0 = 0;
    double local_rate = 0;  // derivative-based rate at the shared point
    double global_rate = 0; // min |A_w|^(1/|w|) over short words
    double slope_bound = 0; // -log2(2 p0) / (2 log2 local_rate)
    std::vector<MassCheck> mass_checks;
    std::vector<double> q_values;
    std::vector<double> tau_hat;     // per q
    std::vector<bool> slope_checks;  // tau_hat <= slope * q + 0.1
};

struct CounterexampleOptions {
    int oversample = 4; // used for the spectrum side; mass checks bin raw stopping atoms
    uint64_t budget = 10000000;
};

CounterexampleReport counterexample_bounds(const MobiusIFS& ifs, double p0,
                                           const std::vector<int>& m_list,
                                           const std::vector<double>& q_list,
                                           const CounterexampleOptions& opts = {});

struct HausdorffPrediction {
    double entropy = 0;    // -sum p log2 p
    double chi_enum = 0;   // exponent from full enumeration
    int enum_depth = 0;
    double chi_mc = 0;     // exponent from seeded sampling at depth mc_depth
    int mc_depth = 0;
    double value = 0;      // min(H / (2 chi_mc), 1)
};

HausdorffPrediction hausdorff_prediction(const MobiusIFS& ifs, int enum_depth = 10,
                                         uint64_t mc_samples = 100000, int mc_depth = 40,
                                         uint64_t seed = 20240901);

} // namespace mobius
