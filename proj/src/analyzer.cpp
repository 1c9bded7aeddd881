#include "mobius/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mobius/errors.hpp"

namespace mobius {

const char* dichotomy_case_name(DichotomyCase c) {
    switch (c) {
        case DichotomyCase::CaseIConsistent: return "CASE_I_CONSISTENT";
        case DichotomyCase::CaseIIEvidence: return "CASE_II_EVIDENCE";
        case DichotomyCase::Inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

namespace {

DichotomyVerdict classify(std::vector<DichotomyRow> rows, double gap_threshold) {
    DichotomyVerdict v;
    v.rows = std::move(rows);
    v.gap_threshold = gap_threshold;
    size_t n = v.rows.size();
    size_t upper_start = n / 2;

    // line through the origin fitted on the upper half of the grid
    double sqq = 0, sqt = 0;
    for (size_t i = upper_start; i < n; ++i) {
        sqq += v.rows[i].q * v.rows[i].q;
        sqt += v.rows[i].q * v.rows[i].tau_hat;
    }
    double alpha = sqq > 0 ? sqt / sqq : 0.0;
    double residual = 0;
    for (size_t i = upper_start; i < n; ++i) {
        double fit = alpha * v.rows[i].q;
        if (fit > 0) residual = std::max(residual, std::fabs(v.rows[i].tau_hat - fit) / fit);
    }
    v.alpha_hat = alpha;
    v.fit_residual = residual;

    double max_abs_gap = 0;
    double min_upper_gap = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < n; ++i) {
        max_abs_gap = std::max(max_abs_gap, std::fabs(v.rows[i].gap));
        if (i >= upper_start) min_upper_gap = std::min(min_upper_gap, v.rows[i].gap);
    }
    if (max_abs_gap <= gap_threshold) {
        v.verdict = DichotomyCase::CaseIConsistent;
    } else if (alpha > 1e-6 && residual <= 0.10 && min_upper_gap >= gap_threshold) {
        // a vanishing slope would mean a point mass, not a linear tail
        v.verdict = DichotomyCase::CaseIIEvidence;
    } else {
        v.verdict = DichotomyCase::Inconclusive;
    }

    if (v.verdict == DichotomyCase::CaseIIEvidence) {
        // first grid point where the envelope sits at or above the fitted line
        for (size_t i = 0; i < n; ++i) {
            if (v.rows[i].envelope >= alpha * v.rows[i].q) {
                v.q0_hat = v.rows[i].q;
                v.q0_uncertainty =
                    i + 1 < n ? v.rows[i + 1].q - v.rows[i].q : (i > 0 ? v.rows[i].q - v.rows[i - 1].q : 0.0);
                break;
            }
        }
    }
    return v;
}

} // namespace

DichotomyVerdict dichotomy_probe(const MobiusIFS& ifs, const std::vector<double>& q_grid,
                                 const std::vector<int>& m_list, const DichotomyOptions& opts) {
    if (q_grid.size() < 6) raise(ErrorCode::InvalidArgument, "q grid needs >= 6 points");
    for (size_t i = 1; i < q_grid.size(); ++i)
        if (q_grid[i] <= q_grid[i - 1]) raise(ErrorCode::InvalidArgument, "q grid must increase");

    std::vector<DyadicHistogram> hists;
    for (int m : m_list) hists.push_back(discretize(ifs, m, opts.oversample, std::nullopt, opts.budget));

    PressureEngine engine(ifs, opts.budget);
    int depth = opts.pressure_depth > 0 ? opts.pressure_depth : default_pressure_depth(ifs);
    double rho = norm_product_constant(ifs, 4);

    std::vector<DichotomyRow> rows;
    for (double q : q_grid) {
        DichotomyRow row;
        row.q = q;
        row.tau_hat = spectrum_from_histograms(hists, q).estimate;
        row.tau_tilde_hat = tau_tilde(engine, q, depth, 1e-6, rho).root;
        row.envelope = std::min(row.tau_tilde_hat, q - 1.0);
        row.gap = row.envelope - row.tau_hat;
        rows.push_back(row);
    }
    return classify(std::move(rows), opts.gap_threshold);
}

DichotomyVerdict dichotomy_probe_from_reports(const std::vector<SpectrumReport>& reports,
                                              double gap_threshold) {
    std::vector<DichotomyRow> rows;
    for (const auto& r : reports) {
        DichotomyRow row;
        row.q = r.q;
        row.tau_hat = r.estimate;
        row.tau_tilde_hat = r.q - 1.0;
        row.envelope = r.q - 1.0;
        row.gap = row.envelope - row.tau_hat;
        rows.push_back(row);
    }
    return classify(std::move(rows), gap_threshold);
}

CounterexampleReport counterexample_bounds(const MobiusIFS& ifs, double p0,
                                           const std::vector<int>& m_list,
                                           const std::vector<double>& q_list,
                                           const CounterexampleOptions& opts) {
    if (p0 <= 0 || p0 >= 0.5)
        raise(ErrorCode::InvalidArgument, "p0 must lie in (0, 1/2)");
    FixedPointReport fixed = shared_fixed_points(ifs);
    const SharedFixedPoint* found = nullptr;
    for (const auto& s : fixed.shared) {
        if (!s.attracting_for_both) continue;
        if (std::fabs(ifs.weights[s.map_i] - p0) < 1e-12 &&
            std::fabs(ifs.weights[s.map_j] - p0) < 1e-12) {
            found = &s;
            break;
        }
    }
    if (!found)
        raise(ErrorCode::NoSharedFixedPoint,
              "no attracting shared fixed point with weight p0 on both maps");

    CounterexampleReport rep;
    rep.map_i = found->map_i;
    rep.map_j = found->map_j;
    rep.shared_point = found->point;
    rep.p0 = p0;

    // local expansion rate at the shared point: |c x + d| in the chart where
    // the derivative modulus is (c x + d)^-2
    auto local_rate = [&](size_t idx) {
        const Mat2& m = ifs.maps[idx];
        double x = rep.shared_point.affine();
        // derivative modulus of the chart map is (c x + d)^-2; at infinity the
        // reciprocal-chart derivative is a^-2
        if (std::isfinite(x) && !rep.shared_point.is_infinity()) return std::fabs(m.c() * x + m.d());
        return std::fabs(m.a());
    };
    rep.local_rate = std::sqrt(local_rate(found->map_i) * local_rate(found->map_j));
    rep.slope_bound = -std::log2(2 * p0) / (2 * std::log2(rep.local_rate));

    double global = std::numeric_limits<double>::infinity();
    {
        std::vector<Mat2> shadows;
        for (const auto& m : ifs.maps) shadows.emplace_back(m.a(), m.b(), m.c(), m.d());
        std::vector<Mat2> layer{Mat2::identity()};
        for (int d = 1; d <= 6; ++d) {
            std::vector<Mat2> next;
            for (const auto& m : layer)
                for (const auto& g : shadows) next.push_back(m * g);
            layer = std::move(next);
            for (const auto& m : layer) global = std::min(global, std::pow(m.norm(), 1.0 / d));
        }
    }
    rep.global_rate = global;

    std::vector<uint8_t> pair_letters{static_cast<uint8_t>(rep.map_i),
                                      static_cast<uint8_t>(rep.map_j)};
    for (int m : m_list) {
        MassCheck check;
        check.m = m;
        check.n = max_first_passage_length(ifs, pair_letters, m, opts.budget);
        Atoms atoms = stopping_pushforward(ifs, m, rep.shared_point, opts.budget);
        DyadicHistogram h = bin_atoms(atoms, m);
        check.window_mass = h.window_mass(h.bin_of(rep.shared_point.angle), 1);
        check.bound = std::pow(2 * p0, check.n);
        check.pass = check.window_mass >= check.bound;
        rep.mass_checks.push_back(check);
    }

    for (double q : q_list) {
        SpectrumReport sr = spectrum_estimate(ifs, q, m_list, opts.oversample, opts.budget);
        rep.q_values.push_back(q);
        rep.tau_hat.push_back(sr.estimate);
        rep.slope_checks.push_back(sr.estimate <= rep.slope_bound * q + 0.1);
    }
    return rep;
}

HausdorffPrediction hausdorff_prediction(const MobiusIFS& ifs, int enum_depth, uint64_t mc_samples,
                                         int mc_depth, uint64_t seed) {
    HausdorffPrediction out;
    for (double w : ifs.weights) out.entropy -= w * std::log2(w);

    // cap so the enumeration stays within ~10^6 leaves
    int depth = enum_depth;
    while (depth > 1 && std::pow(static_cast<double>(ifs.alphabet_size()), depth) > 1e6) --depth;
    out.enum_depth = depth;
    {
        struct Node {
            Mat2 m;
            double w;
            int d;
        };
        std::vector<Mat2> shadows;
        for (const auto& m : ifs.maps) shadows.emplace_back(m.a(), m.b(), m.c(), m.d());
        double acc = 0;
        std::vector<Node> stack{{Mat2::identity(), 1.0, 0}};
        while (!stack.empty()) {
            Node node = stack.back();
            stack.pop_back();
            if (node.d == depth) {
                acc += node.w * std::log2(node.m.norm());
                continue;
            }
            for (size_t l = ifs.alphabet_size(); l-- > 0;)
                stack.push_back({node.m * shadows[l], node.w * ifs.weights[l], node.d + 1});
        }
        out.chi_enum = acc / depth;
    }

    out.mc_depth = mc_depth;
    {
        std::mt19937_64 rng(seed);
        std::vector<double> cdf;
        double c = 0;
        for (double w : ifs.weights) cdf.push_back(c += w);
        cdf.back() = 1.0;
        double acc = 0;
        std::vector<Mat2> shadows;
        for (const auto& m : ifs.maps) shadows.emplace_back(m.a(), m.b(), m.c(), m.d());
        for (uint64_t s = 0; s < mc_samples; ++s) {
            Mat2 m = Mat2::identity();
            double log_norm = 0;
            for (int d = 0; d < mc_depth; ++d) {
                double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                size_t l = std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
                if (l >= shadows.size()) l = shadows.size() - 1;
                m = m * shadows[l];
                double f = std::sqrt(m.gram_trace());
                if (f > 1e100) { // rescale to keep the product in range
                    m = Mat2(m.a() / f, m.b() / f, m.c() / f, m.d() / f);
                    log_norm += std::log2(f);
                }
            }
            acc += log_norm + std::log2(m.norm());
        }
        out.chi_mc = acc / (static_cast<double>(mc_samples) * mc_depth);
    }

    double chi = out.chi_mc;
    out.value = chi > 0 ? std::min(out.entropy / (2 * chi), 1.0) : 1.0;
    return out;
}

} // namespace mobius
