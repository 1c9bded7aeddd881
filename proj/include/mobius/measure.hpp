#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mobius/word.hpp"

namespace mobius {

/// Masses of a discretized measure over the 2^-m partition of the circle,
/// bins [pi k 2^-m + u, pi (k+1) 2^-m + u). Sparse: absent bins carry zero.
struct DyadicHistogram {
    int m = 0;
    double base_offset = 0.0;
    int source_scale = 0;
    double displacement_bound = 0.0; // C1 * pi * 2^-source_scale when known
    std::map<uint32_t, double> masses;

    double total_mass() const;
    double mass_at(uint32_t bin) const;
    uint32_t bin_of(double angle) const;
    double bin_width() const;
    /// Mass of the window of `radius` bins on each side of `center`.
    double window_mass(uint32_t center, int radius) const;
    DyadicHistogram coarsened() const; // scale m-1, pairs of bins merged
};

DyadicHistogram bin_atoms(const Atoms& atoms, int m, double base_offset = 0.0);

DyadicHistogram uniform_histogram(int m);
DyadicHistogram point_mass_histogram(int m, double angle = 0.0);

/// Atoms of the stationary measure at source scale m + oversample, binned at
/// scale m; exact weights accumulate per bin before one rounding.
DyadicHistogram discretize(const MobiusIFS& ifs, int m, int oversample = 4,
                           std::optional<double> c1 = std::nullopt,
                           uint64_t budget = 10000000);

/// Sum of bin masses to the q-th power, in (0, 1].
double lq_norm(const DyadicHistogram& h, double q);

struct SpectrumReport {
    double q = 0.0;
    std::vector<int> m_values;
    std::vector<double> samples;    // -(1/m) log2 of the q-sum
    std::vector<double> fit_values; // fitted sample per m
    double estimate = 0.0;          // minus the fitted slope of log2 q-sum vs m
    double uncertainty = 0.0;
    std::string method;
};

SpectrumReport spectrum_from_histograms(const std::vector<DyadicHistogram>& hists, double q);
SpectrumReport spectrum_estimate(const MobiusIFS& ifs, double q, const std::vector<int>& m_list,
                                 int oversample = 4, uint64_t budget = 10000000);

struct LegendreCurve {
    std::vector<double> alpha;
    std::vector<double> tau_star;
};

/// alpha grid from central differences of the estimates; values as the lower
/// envelope inf_q (alpha q - tau(q)), concave by construction.
LegendreCurve legendre_transform(const std::vector<SpectrumReport>& reports);

struct PointwiseDimension {
    std::vector<int> m_values;
    std::vector<double> samples; // -(1/m) log2 of the 3-bin window mass
    double estimate = 0.0;       // min over the largest half
};

PointwiseDimension pointwise_dimension(const MobiusIFS& ifs, ProjPoint x,
                                       const std::vector<int>& m_list, int oversample = 4,
                                       uint64_t budget = 10000000);
PointwiseDimension pointwise_dimension_from_histograms(const std::vector<DyadicHistogram>& hists,
                                                       ProjPoint x);

struct DiagnosticCheck {
    std::string check;       // slug for reports
    std::string description;
    bool pass = false;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct MultifractalDiagnostics {
    double q, alpha_hat, tau_hat, epsilon, delta;
    std::vector<DiagnosticCheck> checks; // level-set cardinality, heavy tail, local norm, census
    bool all_pass() const;
    const DiagnosticCheck& by_name(const std::string& name) const;
};

/// Finite-scale multifractal checks; reports pass/fail, never throws.
MultifractalDiagnostics multifractal_diagnostics(const DyadicHistogram& h, double q,
                                                 double alpha_hat, double tau_hat, double epsilon,
                                                 double delta = 0.1);

} // namespace mobius
