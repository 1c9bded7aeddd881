#include "mobius/word.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>

#include "mobius/errors.hpp"
#include "mobius/runtime.hpp"

namespace mobius {

std::string word_to_string(const Word& w) {
    std::ostringstream out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out << '.';
        out << static_cast<int>(w[i]);
    }
    return out.str();
}

WordProduct product(const MobiusIFS& ifs, const Word& w) {
    WordProduct p;
    p.word = w;
    p.matrix = Mat2::identity();
    if (ifs.exact()) {
        p.matrix = Mat2(Rational(1), Rational(0), Rational(0), Rational(1));
        p.weight_exact = 1;
    }
    for (uint8_t l : w) {
        if (l >= ifs.alphabet_size()) raise(ErrorCode::InvalidArgument, "letter out of range");
        p.matrix = p.matrix * ifs.maps[l];
        p.weight *= ifs.weights[l];
        p.log2_weight += std::log2(ifs.weights[l]);
        if (ifs.exact()) p.weight_exact *= ifs.weights_exact[l];
    }
    if (!ifs.exact()) p.weight_exact = 0;
    if (!std::isfinite(p.matrix.gram_trace()))
        raise(ErrorCode::Overflow, "word product exceeds floating range");
    p.norm_sq = p.matrix.norm_sq();
    return p;
}

bool norm_sq_reaches(const Mat2& m, int scale_m) {
    double threshold = std::ldexp(1.0, scale_m) + std::ldexp(1.0, -scale_m);
    double t = m.gram_trace();
    if (std::fabs(t - threshold) > 1e-9 * threshold || !m.exact())
        return t >= threshold;
    Rational exact_threshold = pow2_rational(scale_m) + pow2_rational(-scale_m);
    return m.gram_trace_exact() >= exact_threshold;
}

namespace {

struct DfsNode {
    Word word;
    Mat2 matrix;
    Rational weight_exact;
    double weight;
    double log2_weight;
};

// Lexicographic first-passage enumeration, split in parallel at the root
// letters and re-merged in letter order.
template <typename Emit>
void first_passage_dfs(const MobiusIFS& ifs, const std::vector<uint8_t>& letters, int m,
                       uint64_t budget, Emit&& emit) {
    if (m < 0) raise(ErrorCode::InvalidArgument, "scale m must be >= 0");
    std::atomic<uint64_t> visited{0};
    Mat2 id = ifs.exact() ? Mat2(Rational(1), Rational(0), Rational(0), Rational(1))
                          : Mat2::identity();
    auto run_root = [&](size_t root) {
        std::vector<DfsNode> out;
        std::vector<DfsNode> stack;
        uint8_t rl = letters[root];
        stack.push_back({Word{rl}, id * ifs.maps[rl],
                         ifs.exact() ? ifs.weights_exact[rl] : Rational(0), ifs.weights[rl],
                         std::log2(ifs.weights[rl])});
        while (!stack.empty()) {
            DfsNode node = std::move(stack.back());
            stack.pop_back();
            if (visited.fetch_add(1) + 1 > budget)
                raise(ErrorCode::BudgetExceeded,
                      "stopping-word tree exceeds budget " + std::to_string(budget));
            if (!std::isfinite(node.matrix.gram_trace()))
                raise(ErrorCode::Overflow, "word product exceeds floating range");
            if (norm_sq_reaches(node.matrix, m)) {
                out.push_back(std::move(node));
                continue;
            }
            for (size_t i = letters.size(); i-- > 0;) {
                uint8_t l = letters[i];
                DfsNode child;
                child.word = node.word;
                child.word.push_back(l);
                child.matrix = node.matrix * ifs.maps[l];
                child.weight = node.weight * ifs.weights[l];
                child.log2_weight = node.log2_weight + std::log2(ifs.weights[l]);
                if (ifs.exact()) child.weight_exact = node.weight_exact * ifs.weights_exact[l];
                stack.push_back(std::move(child));
            }
        }
        return out;
    };
    auto parts = run_indexed(letters.size(), run_root);
    for (auto& part : parts)
        for (auto& node : part) emit(std::move(node));
}

std::vector<uint8_t> full_alphabet(const MobiusIFS& ifs) {
    std::vector<uint8_t> letters(ifs.alphabet_size());
    for (size_t i = 0; i < letters.size(); ++i) letters[i] = static_cast<uint8_t>(i);
    return letters;
}

} // namespace

StoppingSet stopping_set(const MobiusIFS& ifs, int m, uint64_t budget) {
    ifs.validate();
    StoppingSet out;
    out.m = m;
    double scale = std::ldexp(1.0, -m);
    first_passage_dfs(ifs, full_alphabet(ifs), m, budget, [&](DfsNode node) {
        WordProduct wp;
        wp.word = std::move(node.word);
        wp.matrix = std::move(node.matrix);
        wp.weight = node.weight;
        wp.weight_exact = std::move(node.weight_exact);
        wp.log2_weight = node.log2_weight;
        wp.norm_sq = wp.matrix.norm_sq();
        out.norm_bound_C = std::max(out.norm_bound_C, wp.norm_sq * scale);
        out.entries.push_back(std::move(wp));
    });
    // DFS with reversed pushes emits in lexicographic order already; keep it
    // canonical regardless of traversal details.
    std::sort(out.entries.begin(), out.entries.end(),
              [](const WordProduct& a, const WordProduct& b) { return a.word < b.word; });
    return out;
}

std::vector<Word> stopping_words_exact(const MobiusIFS& ifs, int m, uint64_t budget) {
    if (!ifs.exact()) raise(ErrorCode::InvalidArgument, "exact mode required");
    std::vector<Word> words;
    Rational threshold = pow2_rational(m) + pow2_rational(-m);
    uint64_t visited = 0;
    struct Node {
        Word word;
        std::array<Rational, 4> mat;
    };
    std::vector<Node> stack;
    for (size_t i = ifs.alphabet_size(); i-- > 0;) {
        const auto& e = ifs.maps[i].exact_entries();
        stack.push_back({Word{static_cast<uint8_t>(i)}, e});
    }
    while (!stack.empty()) {
        Node node = std::move(stack.back());
        stack.pop_back();
        if (++visited > budget) raise(ErrorCode::BudgetExceeded, "exact stopping tree too large");
        const auto& e = node.mat;
        Rational gram = e[0] * e[0] + e[1] * e[1] + e[2] * e[2] + e[3] * e[3];
        if (gram >= threshold) {
            words.push_back(std::move(node.word));
            continue;
        }
        for (size_t i = ifs.alphabet_size(); i-- > 0;) {
            const auto& r = ifs.maps[i].exact_entries();
            Node child;
            child.word = node.word;
            child.word.push_back(static_cast<uint8_t>(i));
            child.mat = {e[0] * r[0] + e[1] * r[2], e[0] * r[1] + e[1] * r[3],
                         e[2] * r[0] + e[3] * r[2], e[2] * r[1] + e[3] * r[3]};
            stack.push_back(std::move(child));
        }
    }
    std::sort(words.begin(), words.end());
    return words;
}

Atoms stopping_pushforward(const MobiusIFS& ifs, int m, ProjPoint x0, uint64_t budget) {
    StoppingSet set = stopping_set(ifs, m, budget);
    Atoms atoms;
    atoms.source_scale = m;
    atoms.points.reserve(set.entries.size());
    atoms.weights.reserve(set.entries.size());
    for (const auto& e : set.entries) {
        atoms.points.push_back(act(e.matrix, x0));
        atoms.weights.push_back(e.weight);
        if (ifs.exact()) atoms.weights_exact.push_back(e.weight_exact);
    }
    return atoms;
}

ProjPoint default_base_point(const MobiusIFS& ifs) {
    for (const auto& m : ifs.maps) {
        if (auto p = m.attracting_direction()) return *p;
    }
    raise(ErrorCode::InvalidArgument, "no map has an attracting fixed direction");
}

double norm_product_constant(const MobiusIFS& ifs, int sample_depth) {
    std::vector<Mat2> products;
    std::vector<Mat2> layer{Mat2::identity()};
    for (int d = 1; d <= sample_depth; ++d) {
        std::vector<Mat2> next;
        for (const auto& m : layer)
            for (const auto& g : ifs.maps) next.push_back(m * g);
        products.insert(products.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    double rho = 1.0;
    for (const auto& a : products) {
        double na = a.norm();
        for (const auto& b : products) {
            double r = (a * b).norm() / (na * b.norm());
            rho = std::min(rho, r);
        }
    }
    return std::min(rho, 1.0);
}

int max_first_passage_length(const MobiusIFS& ifs, const std::vector<uint8_t>& letters, int m,
                             uint64_t budget) {
    int longest = 0;
    first_passage_dfs(ifs, letters, m, budget,
                      [&](DfsNode node) { longest = std::max<int>(longest, node.word.size()); });
    return longest;
}

} // namespace mobius
