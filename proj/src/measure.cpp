#include "mobius/measure.hpp"

#include <algorithm>
#include <cmath>

#include "mobius/errors.hpp"

namespace mobius {

double DyadicHistogram::total_mass() const {
    double s = 0;
    for (const auto& [k, v] : masses) s += v;
    return s;
}

double DyadicHistogram::mass_at(uint32_t bin) const {
    auto it = masses.find(bin);
    return it == masses.end() ? 0.0 : it->second;
}

double DyadicHistogram::bin_width() const {
    return kPi * std::ldexp(1.0, -m);
}

uint32_t DyadicHistogram::bin_of(double angle) const {
    uint32_t bins = 1u << m;
    double scaled = (wrap_pi(angle) - base_offset) / kPi * std::ldexp(1.0, m);
    long k = static_cast<long>(std::floor(scaled));
    long mod = ((k % bins) + bins) % bins;
    return static_cast<uint32_t>(mod);
}

double DyadicHistogram::window_mass(uint32_t center, int radius) const {
    uint32_t bins = 1u << m;
    double s = 0;
    for (int d = -radius; d <= radius; ++d) {
        long k = (static_cast<long>(center) + d) % static_cast<long>(bins);
        if (k < 0) k += bins;
        s += mass_at(static_cast<uint32_t>(k));
    }
    return s;
}

DyadicHistogram DyadicHistogram::coarsened() const {
    if (m == 0) raise(ErrorCode::InvalidArgument, "cannot coarsen scale 0");
    DyadicHistogram out;
    out.m = m - 1;
    out.base_offset = base_offset;
    out.source_scale = source_scale;
    out.displacement_bound = displacement_bound;
    for (const auto& [k, v] : masses) out.masses[k >> 1] += v;
    return out;
}

namespace {

uint32_t bin_index(double angle, int m, double base_offset) {
    uint32_t bins = 1u << m;
    double scaled = (wrap_pi(angle) - base_offset) / kPi * std::ldexp(1.0, m);
    long k = static_cast<long>(std::floor(scaled));
    long mod = ((k % bins) + bins) % bins;
    return static_cast<uint32_t>(mod);
}

} // namespace

DyadicHistogram bin_atoms(const Atoms& atoms, int m, double base_offset) {
    if (m < 0 || m > 28) raise(ErrorCode::InvalidArgument, "scale m out of range [0, 28]");
    DyadicHistogram h;
    h.m = m;
    h.base_offset = base_offset;
    h.source_scale = atoms.source_scale;
    if (!atoms.weights_exact.empty()) {
        std::map<uint32_t, Rational> exact;
        for (size_t i = 0; i < atoms.points.size(); ++i)
            exact[bin_index(atoms.points[i].angle, m, base_offset)] += atoms.weights_exact[i];
        for (const auto& [k, v] : exact) h.masses[k] = v.get_d();
    } else {
        for (size_t i = 0; i < atoms.points.size(); ++i)
            h.masses[bin_index(atoms.points[i].angle, m, base_offset)] += atoms.weights[i];
    }
    return h;
}

DyadicHistogram uniform_histogram(int m) {
    DyadicHistogram h;
    h.m = m;
    double w = std::ldexp(1.0, -m);
    for (uint32_t k = 0; k < (1u << m); ++k) h.masses[k] = w;
    return h;
}

DyadicHistogram point_mass_histogram(int m, double angle) {
    DyadicHistogram h;
    h.m = m;
    h.masses[bin_index(angle, m, 0.0)] = 1.0;
    return h;
}

DyadicHistogram discretize(const MobiusIFS& ifs, int m, int oversample, std::optional<double> c1,
                           uint64_t budget) {
    if (oversample < 0) raise(ErrorCode::InvalidArgument, "oversample must be >= 0");
    int source = m + oversample;
    Atoms atoms = stopping_pushforward(ifs, source, default_base_point(ifs), budget);
    DyadicHistogram h = bin_atoms(atoms, m);
    h.displacement_bound = c1.value_or(1.0) * kPi * std::ldexp(1.0, -source);
    return h;
}

double lq_norm(const DyadicHistogram& h, double q) {
    if (q <= 1.0) raise(ErrorCode::InvalidArgument, "q must exceed 1");
    double s = 0;
    for (const auto& [k, v] : h.masses)
        if (v > 0) s += std::pow(v, q);
    return s;
}

namespace {

// least squares y ~ a + b x
void affine_fit(const std::vector<double>& x, const std::vector<double>& y, double& a, double& b) {
    size_t n = x.size();
    if (n == 1) {
        a = 0;
        b = y[0] / (x[0] != 0 ? x[0] : 1);
        return;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    b = (n * sxy - sx * sy) / denom;
    a = (sy - b * sx) / n;
}

} // namespace

SpectrumReport spectrum_from_histograms(const std::vector<DyadicHistogram>& hists, double q) {
    if (hists.empty()) raise(ErrorCode::InvalidArgument, "no histograms");
    SpectrumReport rep;
    rep.q = q;
    std::vector<double> log_sums;
    for (const auto& h : hists) {
        rep.m_values.push_back(h.m);
        double l = std::log2(lq_norm(h, q));
        log_sums.push_back(l);
        rep.samples.push_back(-l / h.m);
    }
    size_t n = hists.size();
    size_t half_start = n / 2; // fit on the largest half of the scales
    if (n - half_start < 2 && n >= 2) half_start = n - 2;
    std::vector<double> xs(rep.m_values.begin() + half_start, rep.m_values.end());
    std::vector<double> ys(log_sums.begin() + half_start, log_sums.end());
    double a = 0, b = 0;
    affine_fit(xs, ys, a, b);
    rep.estimate = -b;
    for (size_t i = 0; i < n; ++i) rep.fit_values.push_back(-(a + b * rep.m_values[i]) / rep.m_values[i]);
    double unc = 0;
    for (size_t i = half_start; i < n; ++i)
        unc = std::max(unc, std::fabs(rep.samples[i] - rep.estimate));
    rep.uncertainty = unc;
    return rep;
}

SpectrumReport spectrum_estimate(const MobiusIFS& ifs, double q, const std::vector<int>& m_list,
                                 int oversample, uint64_t budget) {
    if (q <= 1.0) raise(ErrorCode::InvalidArgument, "q must exceed 1");
    for (size_t i = 1; i < m_list.size(); ++i)
        if (m_list[i] <= m_list[i - 1]) raise(ErrorCode::InvalidArgument, "m_list must increase");
    std::vector<DyadicHistogram> hists;
    for (int m : m_list) hists.push_back(discretize(ifs, m, oversample, std::nullopt, budget));
    SpectrumReport rep = spectrum_from_histograms(hists, q);
    rep.method = "stopping-pushforward";
    return rep;
}

LegendreCurve legendre_transform(const std::vector<SpectrumReport>& reports) {
    if (reports.size() < 3)
        raise(ErrorCode::InsufficientGrid, "need >= 3 q-values for the transform");
    for (size_t i = 1; i < reports.size(); ++i)
        if (reports[i].q <= reports[i - 1].q)
            raise(ErrorCode::InsufficientGrid, "q-grid must increase");
    size_t n = reports.size();
    LegendreCurve curve;
    for (size_t j = 0; j < n; ++j) {
        size_t lo = j == 0 ? 0 : j - 1;
        size_t hi = j + 1 == n ? j : j + 1;
        double alpha =
            (reports[hi].estimate - reports[lo].estimate) / (reports[hi].q - reports[lo].q);
        double best = alpha * reports[0].q - reports[0].estimate;
        for (size_t i = 1; i < n; ++i)
            best = std::min(best, alpha * reports[i].q - reports[i].estimate);
        curve.alpha.push_back(alpha);
        curve.tau_star.push_back(best);
    }
    return curve;
}

PointwiseDimension pointwise_dimension_from_histograms(const std::vector<DyadicHistogram>& hists,
                                                       ProjPoint x) {
    if (hists.empty()) raise(ErrorCode::InvalidArgument, "no histograms");
    PointwiseDimension out;
    for (const auto& h : hists) {
        double mass = h.window_mass(h.bin_of(x.angle), 1);
        if (mass <= 0)
            raise(ErrorCode::ZeroMass, "no mass near the point at scale " + std::to_string(h.m));
        out.m_values.push_back(h.m);
        out.samples.push_back(-std::log2(mass) / h.m);
    }
    size_t n = out.samples.size();
    size_t half_start = n / 2;
    double est = out.samples[half_start];
    for (size_t i = half_start; i < n; ++i) est = std::min(est, out.samples[i]);
    out.estimate = est;
    return out;
}

PointwiseDimension pointwise_dimension(const MobiusIFS& ifs, ProjPoint x,
                                       const std::vector<int>& m_list, int oversample,
                                       uint64_t budget) {
    std::vector<DyadicHistogram> hists;
    for (int m : m_list) hists.push_back(discretize(ifs, m, oversample, std::nullopt, budget));
    return pointwise_dimension_from_histograms(hists, x);
}

bool MultifractalDiagnostics::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

const DiagnosticCheck& MultifractalDiagnostics::by_name(const std::string& name) const {
    for (const auto& c : checks)
        if (c.check == name) return c;
    raise(ErrorCode::InvalidArgument, "no such check: " + name);
}

MultifractalDiagnostics multifractal_diagnostics(const DyadicHistogram& h, double q,
                                                 double alpha_hat, double tau_hat, double epsilon,
                                                 double delta) {
    MultifractalDiagnostics out{q, alpha_hat, tau_hat, epsilon, delta, {}};
    const int m = h.m;
    const double tau_star = alpha_hat * q - tau_hat;

    // (a) level set at mass ~ 2^-alpha m: if its restricted q-sum is
    // substantial, its cardinality stays within the transform's budget
    {
        double lo = std::pow(2.0, -alpha_hat * m);
        double hi = 2.0 * lo;
        double restricted = 0;
        uint64_t count = 0;
        for (const auto& [k, v] : h.masses) {
            if (v >= lo && v <= hi) {
                restricted += std::pow(v, q);
                ++count;
            }
        }
        DiagnosticCheck c;
        c.check = "level-set-cardinality";
        c.description = "bins with mass near 2^(-alpha m): substantial q-sum forces count <= "
                        "2^((tau*+eps) m)";
        double sum_threshold = std::pow(2.0, -(tau_hat + delta) * m);
        double cap = std::pow(2.0, (tau_star + epsilon) * m);
        c.lhs = static_cast<double>(count);
        c.rhs = cap;
        c.pass = restricted < sum_threshold || static_cast<double>(count) <= cap;
        out.checks.push_back(c);
    }

    // (b) heavy-bin tail: mass above 2^(-(alpha-sigma) m) contributes a
    // strictly smaller q-sum; sigma = epsilon, slack fixed small
    {
        const double eps_prime = 0.01;
        double cut = std::pow(2.0, -(alpha_hat - epsilon) * m);
        double heavy = 0;
        for (const auto& [k, v] : h.masses)
            if (v >= cut) heavy += std::pow(v, q);
        DiagnosticCheck c;
        c.check = "heavy-bin-tail";
        c.description = "q-sum over bins heavier than 2^(-(alpha-eps) m) is exponentially small";
        c.lhs = heavy;
        c.rhs = std::pow(2.0, -(tau_hat + eps_prime) * m);
        c.pass = heavy <= c.rhs;
        out.checks.push_back(c);
    }

    // (c) local norm: inside sampled coarse bins the fine q-sum is controlled
    // by the doubled-bin mass
    {
        int m0 = m / 2;
        DyadicHistogram coarse = h;
        for (int i = 0; i < m0; ++i) coarse = coarse.coarsened();
        std::vector<std::pair<double, uint32_t>> tops;
        for (const auto& [k, v] : coarse.masses) tops.push_back({v, k});
        std::sort(tops.rbegin(), tops.rend());
        if (tops.size() > 16) tops.resize(16);
        bool pass = true;
        double worst_lhs = 0, worst_rhs = 0;
        for (auto [mass_I, k] : tops) {
            uint32_t fine_per = 1u << m0;
            double fine_sum = 0;
            for (uint32_t j = 0; j < fine_per; ++j)
                fine_sum += std::pow(h.mass_at(k * fine_per + j), q);
            // 2I: half a coarse bin on each side
            uint32_t bins = 1u << m;
            double two_I = 0;
            long lo = static_cast<long>(k) * fine_per - fine_per / 2;
            for (uint32_t j = 0; j < 2 * fine_per; ++j) {
                long idx = (lo + j) % static_cast<long>(bins);
                if (idx < 0) idx += bins;
                two_I += h.mass_at(static_cast<uint32_t>(idx));
            }
            double rhs = std::pow(2.0, -(tau_hat - delta) * m0) * std::pow(two_I, q);
            if (!(fine_sum <= rhs)) {
                pass = false;
                worst_lhs = fine_sum;
                worst_rhs = rhs;
                break;
            }
            worst_lhs = std::max(worst_lhs, fine_sum);
            worst_rhs = rhs;
        }
        DiagnosticCheck c;
        c.check = "local-norm";
        c.description = "fine q-sum inside a coarse bin <= 2^(-(tau-delta) m0) * mass(2I)^q";
        c.lhs = worst_lhs;
        c.rhs = worst_rhs;
        c.pass = pass;
        out.checks.push_back(c);
    }

    // (d) census of near-maximal bins
    {
        double cut = std::pow(2.0, -(alpha_hat + epsilon) * m);
        uint64_t count = 0;
        for (const auto& [k, v] : h.masses)
            if (v >= cut) ++count;
        DiagnosticCheck c;
        c.check = "near-max-census";
        c.description = "count of bins with mass >= 2^(-(alpha+eps) m) stays below 2^((q+1) eps m)";
        c.lhs = static_cast<double>(count);
        c.rhs = std::pow(2.0, (q + 1) * epsilon * m);
        c.pass = c.lhs <= c.rhs;
        out.checks.push_back(c);
    }
    return out;
}

} // namespace mobius
