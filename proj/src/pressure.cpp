#include "mobius/pressure.hpp"

#include <algorithm>
#include <cmath>

#include "mobius/errors.hpp"
#include "mobius/runtime.hpp"
#include "mobius/word.hpp"

namespace mobius {

namespace {

/// Compensated sum of exp2 terms in descending magnitude, in units of the max.
double log2_sum_exp(std::vector<double> log_terms) {
    if (log_terms.empty()) raise(ErrorCode::InvalidArgument, "empty sum");
    std::sort(log_terms.begin(), log_terms.end(), std::greater<double>());
    double top = log_terms[0];
    double sum = 0, comp = 0;
    for (double t : log_terms) {
        double term = std::exp2(t - top);
        double y = term - comp;
        double tentative = sum + y;
        comp = (tentative - sum) - y;
        sum = tentative;
    }
    return top + std::log2(sum);
}

} // namespace

const PressureEngine::Level& PressureEngine::level(int n) {
    if (n < 1) raise(ErrorCode::InvalidArgument, "depth must be >= 1");
    if (levels_.size() <= static_cast<size_t>(n)) levels_.resize(n + 1);
    if (levels_[n]) return *levels_[n];

    double count = std::pow(static_cast<double>(ifs_.alphabet_size()), n);
    if (count > static_cast<double>(budget_))
        raise(ErrorCode::BudgetExceeded, "word tree at depth " + std::to_string(n));

    struct Node {
        Mat2 m; // float shadow only; exactness is not needed for the partials
        double log2_w;
        int depth;
    };
    std::vector<double> log2_letter;
    for (double w : ifs_.weights) log2_letter.push_back(std::log2(w));
    std::vector<Mat2> shadows;
    for (const auto& m : ifs_.maps) shadows.emplace_back(m.a(), m.b(), m.c(), m.d());

    auto run_root = [&](size_t root) {
        Level part;
        std::vector<Node> stack{{shadows[root], log2_letter[root], 1}};
        while (!stack.empty()) {
            Node node = stack.back();
            stack.pop_back();
            if (node.depth == n) {
                part.log2_weight.push_back(node.log2_w);
                part.log2_norm_sq.push_back(std::log2(node.m.norm_sq()));
                continue;
            }
            for (size_t l = ifs_.alphabet_size(); l-- > 0;)
                stack.push_back({node.m * shadows[l], node.log2_w + log2_letter[l], node.depth + 1});
        }
        return part;
    };
    auto parts = run_indexed(ifs_.alphabet_size(), run_root);
    Level lv;
    lv.log2_weight.reserve(static_cast<size_t>(count));
    lv.log2_norm_sq.reserve(static_cast<size_t>(count));
    for (auto& part : parts) {
        lv.log2_weight.insert(lv.log2_weight.end(), part.log2_weight.begin(),
                              part.log2_weight.end());
        lv.log2_norm_sq.insert(lv.log2_norm_sq.end(), part.log2_norm_sq.begin(),
                               part.log2_norm_sq.end());
    }
    levels_[n] = std::move(lv);
    return *levels_[n];
}

double PressureEngine::partial(double q, double s, int n) {
    const Level& lv = level(n);
    std::vector<double> terms(lv.log2_weight.size());
    for (size_t i = 0; i < terms.size(); ++i)
        terms[i] = q * lv.log2_weight[i] + s * lv.log2_norm_sq[i];
    return log2_sum_exp(std::move(terms)) / n;
}

PressureCurve pressure_curve(PressureEngine& engine, double q, const std::vector<double>& s_values,
                             const std::vector<int>& n_values, double rho) {
    PressureCurve curve;
    curve.q = q;
    curve.rho = rho;
    for (double s : s_values) {
        double upper = std::numeric_limits<double>::infinity();
        double lower = -std::numeric_limits<double>::infinity();
        std::vector<PressureEvaluation> here;
        for (int n : n_values) {
            double v = engine.partial(q, s, n);
            upper = std::min(upper, v);
            lower = std::max(lower, v + 2.0 * s * std::log2(rho) / n);
            here.push_back({q, s, n, v, 0, 0});
        }
        for (auto& e : here) {
            e.upper_bound = upper;
            e.lower_bound = lower;
            curve.evaluations.push_back(e);
        }
    }
    return curve;
}

namespace {

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol,
                   double* out_lo, double* out_hi) {
    double flo = f(lo);
    double fhi = f(hi);
    if (!(flo < 0 && fhi > 0)) raise(ErrorCode::NoSignChange, "bracket does not straddle zero");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) {
            lo = std::nexttoward(mid, lo);
            hi = std::nexttoward(mid, hi);
            break;
        }
        (fm < 0 ? lo : hi) = mid;
    }
    if (out_lo) *out_lo = lo;
    if (out_hi) *out_hi = hi;
    return 0.5 * (lo + hi);
}

double find_root_increasing(const std::function<double(double)>& f, double start, double tol,
                            double* out_lo, double* out_hi) {
    const double s_min = 1e-9, s_cap = 64.0;
    double lo = start > 0 ? start : 1.0;
    int guard = 0;
    while (f(lo) >= 0 && lo > s_min && guard++ < 80) lo *= 0.5;
    if (f(lo) >= 0) {
        if (f(s_min) >= 0)
            raise(ErrorCode::NoSignChange, "partial sum nonnegative as s -> 0+ at this depth");
        lo = s_min;
    }
    double hi = std::max(2.0 * lo, 1.0);
    guard = 0;
    while (f(hi) <= 0 && hi < s_cap && guard++ < 80) hi *= 2.0;
    if (f(hi) <= 0) raise(ErrorCode::NoSignChange, "no sign change below the s cap");
    return bisect_root(f, lo, hi, tol, out_lo, out_hi);
}

} // namespace

TauTildeEstimate tau_tilde(PressureEngine& engine, double q, int n, double tol,
                           std::optional<double> rho) {
    if (q <= 1.0) raise(ErrorCode::InvalidArgument, "q must exceed 1");
    TauTildeEstimate est;
    est.q = q;
    est.n_used = n;
    auto partial = [&](double s) { return engine.partial(q, s, n); };
    est.root = find_root_increasing(partial, q, tol, &est.bracket_lo, &est.bracket_hi);
    est.certified_lo = est.root;
    double r = rho.value_or(norm_product_constant(engine.ifs(), std::min(n, 4)));
    if (r >= 1.0) {
        est.certified_hi = est.root;
    } else {
        auto penalized = [&](double s) {
            return engine.partial(q, s, n) + 2.0 * s * std::log2(r) / n;
        };
        est.certified_hi = find_root_increasing(penalized, est.root, tol, nullptr, nullptr);
    }
    return est;
}

double tau_tilde_via_stopping(const MobiusIFS& ifs, double q, int m, uint64_t budget) {
    if (m < 1) raise(ErrorCode::InvalidArgument, "stopping scale m must be >= 1");
    StoppingSet set = stopping_set(ifs, m, budget);
    std::vector<double> terms;
    terms.reserve(set.entries.size());
    for (const auto& e : set.entries) terms.push_back(q * e.log2_weight);
    return -log2_sum_exp(std::move(terms)) / m;
}

int default_pressure_depth(const MobiusIFS& ifs, uint64_t word_cap) {
    int n = 1;
    double words = static_cast<double>(ifs.alphabet_size());
    while (words * ifs.alphabet_size() <= static_cast<double>(word_cap)) {
        words *= ifs.alphabet_size();
        ++n;
    }
    return n;
}

} // namespace mobius
