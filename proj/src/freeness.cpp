#include "mobius/freeness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "mobius/errors.hpp"

namespace mobius {

namespace {

// Scale-free canonical form: M = r * N with r > 0 rational and N an integer
// matrix whose entries have gcd 1. Equal matrices get equal strings.
std::string canonical_key(const Mat2& m) {
    const auto& e = m.exact_entries();
    Integer lcm = 1;
    for (int i = 0; i < 4; ++i) {
        Integer den = e[i].get_den();
        Integer g;
        mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        lcm = lcm / g * den;
    }
    std::array<Integer, 4> k;
    Integer content = 0;
    for (int i = 0; i < 4; ++i) {
        k[i] = e[i].get_num() * (lcm / e[i].get_den());
        Integer a = abs(k[i]);
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), a.get_mpz_t());
    }
    if (content == 0) raise(ErrorCode::InvalidArgument, "zero matrix has no canonical form");
    std::ostringstream out;
    Rational scale(content, lcm);
    scale.canonicalize();
    out << scale.get_str() << '|';
    for (int i = 0; i < 4; ++i) {
        Integer reduced = k[i] / content;
        out << reduced.get_str() << (i == 3 ? "" : ",");
    }
    return out.str();
}

Mat2 exact_product(const std::vector<Mat2>& matrices, const Word& w) {
    Mat2 m(Rational(1), Rational(0), Rational(0), Rational(1));
    for (uint8_t l : w) m = m * matrices[l];
    return m;
}

bool exact_equal(const std::vector<Mat2>& matrices, const Word& a, const Word& b) {
    return exact_product(matrices, a) == exact_product(matrices, b);
}

} // namespace

FreenessReport check_freeness_exhaustive(const std::vector<Mat2>& matrices, int depth,
                                         uint64_t budget) {
    if (matrices.empty()) raise(ErrorCode::InvalidArgument, "empty alphabet");
    for (const auto& m : matrices)
        if (!m.exact()) raise(ErrorCode::InvalidArgument, "exact entries required");
    double total = 0;
    for (int l = 1, p = 1; l <= depth; ++l) {
        p *= static_cast<int>(matrices.size());
        total += p;
        if (total > static_cast<double>(budget))
            raise(ErrorCode::BudgetExceeded, "freeness tree exceeds budget");
    }

    FreenessReport rep;
    rep.depth = depth;
    rep.method = FreenessMethod::Exhaustive;
    std::unordered_map<std::string, Word> seen;
    struct Node {
        Word word;
        Mat2 m;
    };
    // length-ordered so the earliest collision is the one reported
    std::vector<Node> level;
    Mat2 id(Rational(1), Rational(0), Rational(0), Rational(1));
    for (size_t i = 0; i < matrices.size(); ++i)
        level.push_back({Word{static_cast<uint8_t>(i)}, id * matrices[i]});
    for (int len = 1; len <= depth; ++len) {
        for (const Node& node : level) {
            ++rep.words_checked;
            std::string key = canonical_key(node.m);
            auto [it, inserted] = seen.try_emplace(key, node.word);
            if (!inserted) {
                if (!exact_equal(matrices, it->second, node.word))
                    raise(ErrorCode::InvalidArgument, "canonical-form hash mismatch");
                rep.collision = std::make_pair(it->second, node.word);
                rep.free_up_to_depth = false;
                return rep;
            }
        }
        if (len == depth) break;
        std::vector<Node> next;
        next.reserve(level.size() * matrices.size());
        for (const Node& node : level) {
            for (size_t i = 0; i < matrices.size(); ++i) {
                Node child;
                child.word = node.word;
                child.word.push_back(static_cast<uint8_t>(i));
                child.m = node.m * matrices[i];
                next.push_back(std::move(child));
            }
        }
        level = std::move(next);
    }
    rep.free_up_to_depth = true;
    return rep;
}

namespace {

std::array<long, 4> mod4_of(const std::array<Integer, 4>& m) {
    std::array<long, 4> out;
    for (int i = 0; i < 4; ++i) {
        Integer r;
        Integer four = 4;
        mpz_fdiv_r(r.get_mpz_t(), m[i].get_mpz_t(), four.get_mpz_t());
        out[i] = r.get_si();
    }
    return out;
}

std::array<long, 4> mul_mod4(const std::array<long, 4>& x, const std::array<long, 4>& y) {
    return {(x[0] * y[0] + x[1] * y[2]) & 3, (x[0] * y[1] + x[1] * y[3]) & 3,
            (x[2] * y[0] + x[3] * y[2]) & 3, (x[2] * y[1] + x[3] * y[3]) & 3};
}

std::string mat4_str(const std::array<long, 4>& m) {
    std::ostringstream out;
    out << "[[" << m[0] << "," << m[1] << "],[" << m[2] << "," << m[3] << "]]";
    return out.str();
}

} // namespace

Mod4Certificate mod4_certificate_for_t(const Rational& t) {
    Mod4Certificate cert;
    cert.t = t;

    Rational h(1, 2), two(2);
    Mat2 A(h, Rational(0), two, two);
    Mat2 B(h, Rational(0), Rational(0), two);
    Mat2 C(h, t, Rational(0), two);
    Mat2 R(Rational(4), Rational(0), Rational(4, 3), Rational(1));
    Mat2 Rinv(Rational(1, 4), Rational(0), Rational(-1, 3), Rational(1));
    Mat2 two_id(two, Rational(0), Rational(0), two);

    std::vector<Mat2> conj;
    for (const Mat2* g : {&A, &B, &C}) conj.push_back(two_id * (R * g->inverse() * Rinv));

    // step 1: integrality of the conjugated inverses
    {
        Mod4Step step{1, "integrality", true, ""};
        for (size_t gi = 0; gi < conj.size(); ++gi) {
            std::array<Integer, 4> entries;
            bool ok = true;
            const auto& e = conj[gi].exact_entries();
            for (int i = 0; i < 4; ++i) {
                if (e[i].get_den() != 1) ok = false;
                entries[i] = e[i].get_num();
            }
            cert.conjugated.push_back(entries);
            if (!ok) {
                step.pass = false;
                step.detail = "generator " + std::to_string(gi) + " has non-integer entries";
                break;
            }
        }
        cert.steps.push_back(step);
        if (!step.pass) {
            cert.pass = false;
            return cert;
        }
    }

    // step 2: reductions match the two required patterns
    {
        Mod4Step step{2, "mod4-images", true, ""};
        const std::array<long, 4> expect_a{0, 0, 0, 1};
        const std::array<long, 4> expect_bc{0, 0, 1, 1};
        for (size_t gi = 0; gi < conj.size(); ++gi) {
            auto img = mod4_of(cert.conjugated[gi]);
            cert.images_mod4.push_back(img);
            const auto& expect = gi == 0 ? expect_a : expect_bc;
            if (img != expect) {
                step.pass = false;
                step.detail = "generator " + std::to_string(gi) + " reduces to " + mat4_str(img);
                break;
            }
        }
        cert.steps.push_back(step);
        if (!step.pass) {
            cert.pass = false;
            return cert;
        }
    }

    // step 3: the generated subsemigroup (with the empty product) stays lower
    // triangular with unit corner, so right factors A vs B stay distinguishable
    {
        Mod4Step step{3, "closure-distinguishes", true, ""};
        std::vector<std::array<long, 4>> closure{{1, 0, 0, 1}};
        std::vector<std::array<long, 4>> frontier = closure;
        auto contains = [&](const std::array<long, 4>& m) {
            return std::find(closure.begin(), closure.end(), m) != closure.end();
        };
        while (!frontier.empty()) {
            std::vector<std::array<long, 4>> next;
            for (const auto& m : frontier) {
                for (const auto& g : cert.images_mod4) {
                    auto p = mul_mod4(m, g);
                    if (!contains(p)) {
                        closure.push_back(p);
                        next.push_back(p);
                    }
                }
            }
            frontier = std::move(next);
        }
        cert.closure_size = closure.size();
        for (const auto& m : closure) {
            if (m[1] != 0 || m[3] != 1) {
                step.pass = false;
                step.detail = "closure element " + mat4_str(m) + " leaves the required shape";
                break;
            }
            auto pa = mul_mod4(m, cert.images_mod4[0]);
            auto pb = mul_mod4(m, cert.images_mod4[1]);
            if (pa == pb) {
                step.pass = false;
                step.detail = "right factors collide after " + mat4_str(m);
                break;
            }
        }
        cert.steps.push_back(step);
        if (!step.pass) {
            cert.pass = false;
            return cert;
        }
    }

    cert.pass = true;
    cert.report.depth = -1;
    cert.report.free_up_to_depth = true;
    cert.report.method = FreenessMethod::Mod4Certificate;
    return cert;
}

Mod4Certificate mod4_certificate(long n) {
    if (n < 1) raise(ErrorCode::InvalidArgument, "n must be a positive integer");
    return mod4_certificate_for_t(Rational(9 * n));
}

double proxy_distance(const Mat2& a, const Mat2& b) {
    Mat2 d = b.inverse() * a;
    double m0 = d.a() - 1.0, m1 = d.b(), m2 = d.c(), m3 = d.d() - 1.0;
    double t = m0 * m0 + m1 * m1 + m2 * m2 + m3 * m3;
    double det = m0 * m3 - m1 * m2;
    double disc = t * t - 4.0 * det * det;
    if (disc < 0) disc = 0;
    return std::sqrt(0.5 * (t + std::sqrt(disc)));
}

namespace {

struct ShadowKey {
    std::array<int64_t, 4> key;
    size_t index;
    bool operator<(const ShadowKey& o) const { return key < o.key; }
};

// Minimum proxy distance over distinct pairs: exact collision scan first,
// then a window scan over norm-quantized sorted shadows.
double min_proxy(const std::vector<Mat2>& mats, bool* exact_zero) {
    *exact_zero = false;
    std::unordered_map<std::string, size_t> seen;
    for (size_t i = 0; i < mats.size(); ++i) {
        auto [it, inserted] = seen.try_emplace(canonical_key(mats[i]), i);
        if (!inserted) {
            *exact_zero = true;
            return 0.0;
        }
    }
    std::vector<ShadowKey> keys(mats.size());
    const double quantum = 1048576.0; // 2^20 levels per unit of Frobenius norm
    for (size_t i = 0; i < mats.size(); ++i) {
        const Mat2& m = mats[i];
        double f = std::sqrt(m.gram_trace());
        keys[i].index = i;
        keys[i].key = {static_cast<int64_t>(std::llround(m.a() / f * quantum)),
                       static_cast<int64_t>(std::llround(m.b() / f * quantum)),
                       static_cast<int64_t>(std::llround(m.c() / f * quantum)),
                       static_cast<int64_t>(std::llround(m.d() / f * quantum))};
    }
    std::sort(keys.begin(), keys.end());
    const size_t window = 48;
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < keys.size(); ++i) {
        for (size_t j = i + 1; j < std::min(keys.size(), i + 1 + window); ++j) {
            best = std::min(best, proxy_distance(mats[keys[i].index], mats[keys[j].index]));
            best = std::min(best, proxy_distance(mats[keys[j].index], mats[keys[i].index]));
        }
    }
    return best;
}

void all_words_products(const MobiusIFS& ifs, int n, std::vector<Mat2>& out) {
    out.clear();
    std::vector<Mat2> layer{Mat2(Rational(1), Rational(0), Rational(0), Rational(1))};
    for (int d = 0; d < n; ++d) {
        std::vector<Mat2> next;
        next.reserve(layer.size() * ifs.alphabet_size());
        for (const auto& m : layer)
            for (const auto& g : ifs.maps) next.push_back(m * g);
        layer = std::move(next);
    }
    out = std::move(layer);
}

} // namespace

SeparationProfile separation_profile(const MobiusIFS& ifs, int n_max, uint64_t budget) {
    if (!ifs.exact()) raise(ErrorCode::InvalidArgument, "exact entries required");
    SeparationProfile prof;
    double total = 0;
    for (int n = 1; n <= n_max; ++n) {
        total += std::pow(static_cast<double>(ifs.alphabet_size()), n);
        if (total > static_cast<double>(budget))
            raise(ErrorCode::BudgetExceeded, "separation profile exceeds budget");
        std::vector<Mat2> mats;
        all_words_products(ifs, n, mats);
        bool zero = false;
        double mn = min_proxy(mats, &zero);
        prof.n_values.push_back(n);
        prof.min_distance.push_back(zero ? 0.0 : mn);
    }
    std::vector<double> xs, ys;
    for (size_t i = 0; i < prof.min_distance.size(); ++i) {
        if (prof.min_distance[i] > 0) {
            xs.push_back(prof.n_values[i]);
            ys.push_back(std::log2(prof.min_distance[i]));
        }
    }
    if (xs.size() >= 2 && xs.size() == prof.min_distance.size()) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        size_t n = xs.size();
        for (size_t i = 0; i < n; ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        prof.fitted_rate = std::exp2(slope);
    }
    return prof;
}

double separation_min_all_pairs(const MobiusIFS& ifs, int n) {
    std::vector<Mat2> mats;
    all_words_products(ifs, n, mats);
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < mats.size(); ++i) {
        for (size_t j = i + 1; j < mats.size(); ++j) {
            if (mats[i] == mats[j]) return 0.0;
            best = std::min(best, proxy_distance(mats[i], mats[j]));
            best = std::min(best, proxy_distance(mats[j], mats[i]));
        }
    }
    return best;
}

StoppingSeparation stopping_separation(const MobiusIFS& ifs, int m, uint64_t budget) {
    if (!ifs.exact()) raise(ErrorCode::InvalidArgument, "exact entries required");
    StoppingSet set = stopping_set(ifs, m, budget);
    std::vector<Mat2> mats;
    mats.reserve(set.entries.size());
    for (const auto& e : set.entries) mats.push_back(e.matrix);
    bool zero = false;
    StoppingSeparation out;
    out.m = m;
    out.min_distance = min_proxy(mats, &zero);
    if (zero) out.min_distance = 0.0;
    out.implied_rate = out.min_distance > 0 ? std::exp2(std::log2(out.min_distance) / m) : 0.0;
    return out;
}

} // namespace mobius
