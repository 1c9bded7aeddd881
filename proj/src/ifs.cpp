#include "mobius/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mobius/errors.hpp"

namespace mobius {

void MobiusIFS::validate() const {
    if (maps.size() < 2) raise(ErrorCode::InvalidArgument, "need at least 2 maps");
    if (weights.size() != maps.size())
        raise(ErrorCode::InvalidArgument, "weights and maps disagree in size");
    for (const auto& m : maps) m.check_unimodular();
    if (exact()) {
        Rational sum = 0;
        for (const auto& w : weights_exact) {
            if (w <= 0) raise(ErrorCode::InvalidArgument, "weights must be positive");
            sum += w;
        }
        if (sum != 1) raise(ErrorCode::InvalidArgument, "weights must sum to one exactly");
    } else {
        double sum = 0;
        for (double w : weights) {
            if (w <= 0) raise(ErrorCode::InvalidArgument, "weights must be positive");
            sum += w;
        }
        if (std::fabs(sum - 1.0) > 1e-12)
            raise(ErrorCode::InvalidArgument, "weights must sum to one");
    }
}

namespace {

MobiusIFS from_exact(std::vector<std::array<Rational, 4>> mats, std::vector<Rational> w,
                     std::string label) {
    MobiusIFS ifs;
    for (auto& m : mats) ifs.maps.emplace_back(m[0], m[1], m[2], m[3]);
    ifs.weights_exact = std::move(w);
    for (const auto& q : ifs.weights_exact) ifs.weights.push_back(q.get_d());
    ifs.label = std::move(label);
    ifs.validate();
    return ifs;
}

} // namespace

MobiusIFS solomyak_preset(const Rational& t, const Rational& p0) {
    if (p0 <= 0 || 2 * p0 >= 1)
        raise(ErrorCode::InvalidArgument, "p0 must lie in (0, 1/2)");
    Rational h(1, 2), two(2);
    std::vector<std::array<Rational, 4>> mats = {
        {h, Rational(0), two, two},   // shares fixed point 0 with the next map
        {h, Rational(0), Rational(0), two},
        {h, t, Rational(0), two},
    };
    std::ostringstream label;
    label << "solomyak(t=" << rational_to_string(t) << ",p0=" << rational_to_string(p0) << ")";
    return from_exact(std::move(mats), {p0, p0, 1 - 2 * p0}, label.str());
}

MobiusIFS ssc4_preset() {
    Rational h(1, 2), two(2);
    std::vector<std::array<Rational, 4>> mats = {
        {h, Rational(0), Rational(0), two},
        {h, Rational(1), Rational(0), two},
    };
    return from_exact(std::move(mats), {Rational(1, 2), Rational(1, 2)}, "ssc4");
}

MobiusIFS diag_preset(const std::vector<Rational>& lambdas, const std::vector<Rational>& weights) {
    if (lambdas.size() < 2) raise(ErrorCode::InvalidArgument, "diag preset needs >= 2 factors");
    std::vector<std::array<Rational, 4>> mats;
    for (const auto& l : lambdas) {
        if (l <= 1) raise(ErrorCode::InvalidArgument, "diag factors must exceed 1");
        mats.push_back({l, Rational(0), Rational(0), Rational(1) / l});
    }
    std::vector<Rational> w = weights;
    if (w.empty()) {
        for (size_t i = 0; i < lambdas.size(); ++i)
            w.emplace_back(1, static_cast<unsigned long>(lambdas.size()));
    }
    return from_exact(std::move(mats), std::move(w), "diag");
}

MobiusIFS parse_ifs_text(const std::string& text, const std::string& label) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::array<Rational, 4>> mats;
    std::vector<Rational> weights;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok == "weights:") {
            while (ls >> tok) weights.push_back(parse_rational(tok));
        } else {
            std::array<Rational, 4> m;
            m[0] = parse_rational(tok);
            for (int i = 1; i < 4; ++i) {
                if (!(ls >> tok)) raise(ErrorCode::InvalidArgument, "matrix line needs 4 entries");
                m[i] = parse_rational(tok);
            }
            mats.push_back(std::move(m));
        }
    }
    if (weights.empty()) raise(ErrorCode::InvalidArgument, "missing weights: line");
    return from_exact(std::move(mats), std::move(weights), label);
}

MobiusIFS resolve_ifs_spec(const std::string& spec) {
    if (spec.rfind("preset:", 0) != 0) {
        std::ifstream f(spec);
        if (!f) raise(ErrorCode::InvalidArgument, "cannot open IFS file: " + spec);
        std::ostringstream buf;
        buf << f.rdbuf();
        return parse_ifs_text(buf.str(), spec);
    }
    std::vector<std::string> parts;
    std::string rest = spec.substr(7);
    size_t pos = 0;
    while (pos != std::string::npos) {
        size_t next = rest.find(':', pos);
        parts.push_back(rest.substr(pos, next == std::string::npos ? next : next - pos));
        pos = next == std::string::npos ? next : next + 1;
    }
    if (parts.empty()) raise(ErrorCode::InvalidArgument, "empty preset name");
    std::string name = parts[0];
    auto get = [&](const std::string& key) -> std::optional<std::string> {
        for (size_t i = 1; i < parts.size(); ++i) {
            if (parts[i].rfind(key + "=", 0) == 0) return parts[i].substr(key.size() + 1);
        }
        return std::nullopt;
    };
    if (name == "solomyak") {
        Rational t = parse_rational(get("t").value_or("9"));
        Rational p0 = parse_rational(get("p0").value_or("49/100"));
        return solomyak_preset(t, p0);
    }
    if (name == "ssc4") return ssc4_preset();
    if (name == "diag") {
        auto list = get("lambdas").value_or("2,4");
        std::vector<Rational> lambdas;
        std::istringstream ls(list);
        std::string tok;
        while (std::getline(ls, tok, ',')) lambdas.push_back(parse_rational(tok));
        std::vector<Rational> w;
        if (auto wl = get("weights")) {
            std::istringstream ws(*wl);
            while (std::getline(ws, tok, ',')) w.push_back(parse_rational(tok));
        }
        return diag_preset(lambdas, w);
    }
    raise(ErrorCode::InvalidArgument, "unknown preset: " + name);
}

namespace {

// Words of length <= depth as flat index sequences, lexicographic.
void enumerate_words(size_t k, int depth, std::vector<std::vector<uint8_t>>& out) {
    std::vector<uint8_t> word;
    // iterative DFS in lexicographic order
    struct Frame {
        uint8_t next = 0;
    };
    std::vector<Frame> stack(1);
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (!word.empty() && f.next == 0) out.push_back(word);
        if (static_cast<int>(word.size()) == depth || f.next == k) {
            stack.pop_back();
            if (!word.empty()) word.pop_back();
            continue;
        }
        word.push_back(f.next);
        ++f.next;
        stack.emplace_back();
    }
}

Mat2 word_matrix(const MobiusIFS& ifs, const std::vector<uint8_t>& word) {
    Mat2 m;
    for (uint8_t l : word) m = m * ifs.maps[l];
    return m;
}

double measure_c1(const MobiusIFS& ifs, const IntervalSet& U, int grid, int word_depth) {
    std::vector<std::vector<uint8_t>> words;
    enumerate_words(ifs.alphabet_size(), word_depth, words);
    double hi = 1.0, lo = 1.0;
    for (const auto& w : words) {
        Mat2 m = word_matrix(ifs, w);
        double nsq = m.norm_sq();
        for (const auto& arc : U.arcs()) {
            double step = arc.len / (grid + 1);
            ProjPoint prev = ProjPoint::from_angle(arc.start);
            ProjPoint prev_im = act(m, prev);
            for (int i = 1; i <= grid + 1; ++i) {
                ProjPoint cur = ProjPoint::from_angle(arc.start + i * step);
                ProjPoint cur_im = act(m, cur);
                double d0 = proj_metric(prev, cur);
                double d1 = proj_metric(prev_im, cur_im);
                if (d0 > 1e-12 && d1 > 0) {
                    double ratio = d1 * nsq / d0;
                    hi = std::max(hi, ratio);
                    lo = std::min(lo, ratio);
                }
                prev = cur;
                prev_im = cur_im;
            }
        }
    }
    return std::max(hi, 1.0 / lo);
}

} // namespace

HyperbolicityCertificate verify_invariant_domain(const MobiusIFS& ifs, const IntervalSet& candidate,
                                                 int c1_grid) {
    ifs.validate();
    if (candidate.empty()) raise(ErrorCode::InvalidArgument, "empty candidate");

    double slack = kPi;
    for (size_t i = 0; i < ifs.maps.size(); ++i) {
        for (const auto& arc : candidate.arcs()) {
            Arc image = map_arc(ifs.maps[i], arc);
            double c = 0;
            if (!candidate.contains_arc(image, &c) || c <= 0) {
                raise(ErrorCode::NotInvariant,
                      "map " + std::to_string(i) + " sends the candidate closure outside",
                      static_cast<long>(i), image.start);
            }
            slack = std::min(slack, c);
        }
    }

    HyperbolicityCertificate cert;
    cert.U0 = candidate;
    cert.U1 = candidate.shrunk(slack / 3.0);
    cert.U = candidate.shrunk(2.0 * slack / 3.0);
    if (cert.U.empty() || cert.U1.empty())
        raise(ErrorCode::NotInvariant, "candidate too thin to nest", -1, slack);

    // re-measure the uniform margin: images of U0-bar inside U, and the nesting gaps
    double margin = kPi;
    for (size_t i = 0; i < ifs.maps.size(); ++i) {
        for (const auto& arc : candidate.arcs()) {
            Arc image = map_arc(ifs.maps[i], arc);
            double c = 0;
            if (!cert.U.contains_arc(image, &c) || c <= 0)
                raise(ErrorCode::NotInvariant,
                      "map " + std::to_string(i) + " image misses the shrunk core",
                      static_cast<long>(i), image.start);
            margin = std::min(margin, c);
        }
    }
    for (const auto& arc : cert.U.arcs()) {
        double c = 0;
        if (!cert.U1.contains_arc(arc, &c)) raise(ErrorCode::NotInvariant, "nesting U in U1 failed");
        margin = std::min(margin, c);
    }
    for (const auto& arc : cert.U1.arcs()) {
        double c = 0;
        if (!cert.U0.contains_arc(arc, &c)) raise(ErrorCode::NotInvariant, "nesting U1 in U0 failed");
        margin = std::min(margin, c);
    }
    cert.margin = margin;

    int per_arc = std::max(8, c1_grid / std::max<int>(1, static_cast<int>(cert.U.size())));
    cert.contraction_constant_C1 = measure_c1(ifs, cert.U, per_arc, 4);
    return cert;
}

HyperbolicityCertificate find_invariant_domain(const MobiusIFS& ifs, int max_iters) {
    ifs.validate();
    std::vector<std::vector<uint8_t>> words;
    enumerate_words(ifs.alphabet_size(), 3, words);

    std::vector<Arc> seeds;
    const double seed_radius = 0.02;
    for (const auto& w : words) {
        Mat2 m = word_matrix(ifs, w);
        if (auto fix = m.attracting_direction())
            seeds.push_back(Arc{fix->angle - seed_radius, 2 * seed_radius});
        SingularData s = singular_decompose(m);
        if (!s.degenerate)
            seeds.push_back(Arc{s.v_plus.angle - seed_radius, 2 * seed_radius});
    }
    if (seeds.empty())
        raise(ErrorCode::NoDomainFound, "no attracting directions to seed from");

    IntervalSet V;
    try {
        V = IntervalSet::from_arcs(seeds);
    } catch (const Error&) {
        raise(ErrorCode::NoDomainFound, "seed arcs already cover the circle");
    }

    const double fatten = 0.004;
    for (int iter = 0; iter < max_iters; ++iter) {
        std::vector<Arc> images;
        for (const auto& m : ifs.maps)
            for (const auto& arc : V.arcs()) images.push_back(map_arc(m, arc));

        bool inside = true;
        for (const auto& im : images) {
            double c = 0;
            if (!V.contains_arc(im, &c) || c <= 1e-9) {
                inside = false;
                break;
            }
        }
        if (inside) {
            try {
                return verify_invariant_domain(ifs, V);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::NotInvariant) throw;
                // margins too tight; keep growing
            }
        }
        try {
            V = V.united(IntervalSet::from_arcs(images).fattened(fatten));
        } catch (const Error&) {
            raise(ErrorCode::NoDomainFound, "iterated images close up the circle");
        }
        if (V.complement_length() < 0.02)
            raise(ErrorCode::NoDomainFound, "iterated images close up the circle");
    }
    raise(ErrorCode::NoDomainFound, "no invariant open set after max iterations");
}

IntervalSet attractor_cover(const MobiusIFS& ifs, const HyperbolicityCertificate& cert, int depth,
                            uint64_t budget) {
    if (depth < 0) raise(ErrorCode::InvalidArgument, "depth must be >= 0");
    double words = std::pow(static_cast<double>(ifs.alphabet_size()), depth);
    if (words > static_cast<double>(budget))
        raise(ErrorCode::BudgetExceeded, "word tree exceeds budget at depth " + std::to_string(depth));

    std::vector<Arc> arcs(cert.U.arcs());
    // depth-first over words, deterministic letter order
    std::vector<Arc> result;
    struct Frame {
        Mat2 m;
        int depth;
    };
    std::vector<Frame> stack{{Mat2::identity(), 0}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.depth == depth) {
            for (const auto& a : arcs) result.push_back(map_arc(f.m, a));
            continue;
        }
        // push in reverse so letter 0 is processed first
        for (size_t l = ifs.alphabet_size(); l-- > 0;)
            stack.push_back({f.m * ifs.maps[l], f.depth + 1});
    }
    return IntervalSet::from_arcs(result);
}

FixedPointReport shared_fixed_points(const MobiusIFS& ifs, double tol) {
    FixedPointReport report;
    report.fixed_points.resize(ifs.maps.size());
    for (size_t i = 0; i < ifs.maps.size(); ++i) {
        const Mat2& m = ifs.maps[i];
        std::vector<ProjPoint>& pts = report.fixed_points[i];
        // chart fixed points: c x^2 + (d - a) x - b = 0
        double qa = m.c(), qb = m.d() - m.a(), qc = -m.b();
        if (std::fabs(qa) < 1e-15) {
            if (std::fabs(qb) > 1e-15) pts.push_back(ProjPoint::from_affine(-qc / qb));
            pts.push_back(ProjPoint::infinity());
        } else {
            double disc = qb * qb - 4 * qa * qc;
            if (disc >= 0) {
                double sq = std::sqrt(disc);
                // numerically stable pair of roots
                double q = -0.5 * (qb + (qb >= 0 ? sq : -sq));
                double x1 = q / qa;
                pts.push_back(ProjPoint::from_affine(x1));
                if (disc > 0) {
                    double x2 = std::fabs(q) > 0 ? qc / q : (-qb / qa - x1);
                    pts.push_back(ProjPoint::from_affine(x2));
                }
            }
        }
        // keep only genuine fixed points (guards parabolic/rounding artifacts)
        std::erase_if(pts, [&](ProjPoint p) { return proj_metric(act(m, p), p) >= tol; });
    }

    auto attracting_at = [&](size_t idx, ProjPoint p) {
        SingularData s = singular_decompose(ifs.maps[idx]);
        double theta = p.angle - s.u_plus.angle;
        return action_derivative(ifs.maps[idx], theta) < 1.0;
    };
    for (size_t i = 0; i < ifs.maps.size(); ++i) {
        for (size_t j = i + 1; j < ifs.maps.size(); ++j) {
            for (const auto& p : report.fixed_points[i]) {
                for (const auto& q : report.fixed_points[j]) {
                    if (proj_metric(p, q) < tol) {
                        SharedFixedPoint s;
                        s.map_i = i;
                        s.map_j = j;
                        s.point = p;
                        s.attracting_for_both = attracting_at(i, p) && attracting_at(j, p);
                        report.shared.push_back(s);
                    }
                }
            }
        }
    }
    return report;
}

} // namespace mobius
