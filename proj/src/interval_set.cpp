#include "mobius/interval_set.hpp"

#include <algorithm>
#include <cmath>

#include "mobius/errors.hpp"

namespace mobius {

namespace {

// Offset of angle x from arc start, measured forward around the circle.
double forward_offset(double from, double x) {
    double d = std::fmod(x - from, kPi);
    if (d < 0) d += kPi;
    return d;
}

} // namespace

IntervalSet IntervalSet::from_arcs(std::vector<Arc> arcs) {
    IntervalSet out;
    std::vector<Arc> in;
    in.reserve(arcs.size());
    for (auto a : arcs) {
        if (a.len <= 0) continue;
        if (a.len >= kPi) raise(ErrorCode::InvalidArgument, "arc covers the whole circle");
        a.start = wrap_pi(a.start);
        in.push_back(a);
    }
    if (in.empty()) return out;
    std::sort(in.begin(), in.end(), [](const Arc& x, const Arc& y) { return x.start < y.start; });

    // circular merge: walk arcs, gluing any that overlap the running one
    std::vector<Arc> merged;
    Arc cur = in[0];
    for (size_t i = 1; i < in.size(); ++i) {
        double off = in[i].start - cur.start; // >= 0, both starts in [0, pi)
        if (off <= cur.len) {
            cur.len = std::max(cur.len, off + in[i].len);
        } else {
            merged.push_back(cur);
            cur = in[i];
        }
    }
    merged.push_back(cur);
    // wrap-around: last arc may spill past pi into the first one
    while (merged.size() > 1) {
        Arc& last = merged.back();
        if (last.end() < kPi) break;
        double spill = last.end() - kPi;
        if (spill >= merged.front().start) {
            double first_end = merged.front().end();
            last.len = std::max(last.len, kPi - last.start + first_end);
            merged.erase(merged.begin());
        } else {
            break;
        }
    }
    if (merged.size() == 1 && merged[0].len >= kPi)
        raise(ErrorCode::InvalidArgument, "arc union covers the whole circle");
    out.arcs_ = std::move(merged);
    return out;
}

double IntervalSet::total_length() const {
    double t = 0;
    for (const auto& a : arcs_) t += a.len;
    return t;
}

bool IntervalSet::contains(double angle) const {
    return clearance(angle) > 0;
}

double IntervalSet::clearance(double angle) const {
    double w = wrap_pi(angle);
    double best = -kPi;
    for (const auto& a : arcs_) {
        double off = forward_offset(a.start, w);
        double c = std::min(off, a.len - off);
        best = std::max(best, c);
    }
    return best;
}

bool IntervalSet::contains_arc(const Arc& arc, double* clearance_out) const {
    for (const auto& a : arcs_) {
        double off = forward_offset(a.start, arc.start);
        if (off <= a.len && off + arc.len <= a.len) {
            if (clearance_out) *clearance_out = std::min(off, a.len - off - arc.len);
            return true;
        }
    }
    if (clearance_out) *clearance_out = 0.0;
    return false;
}

IntervalSet IntervalSet::shrunk(double delta) const {
    std::vector<Arc> out;
    for (const auto& a : arcs_) {
        if (a.len > 2 * delta) out.push_back(Arc{wrap_pi(a.start + delta), a.len - 2 * delta});
    }
    return from_arcs(out);
}

IntervalSet IntervalSet::fattened(double delta) const {
    std::vector<Arc> out;
    for (const auto& a : arcs_) {
        double len = std::min(a.len + 2 * delta, kPi - 1e-12);
        out.push_back(Arc{wrap_pi(a.start - delta), len});
    }
    return from_arcs(out);
}

IntervalSet IntervalSet::united(const IntervalSet& other) const {
    std::vector<Arc> all = arcs_;
    all.insert(all.end(), other.arcs_.begin(), other.arcs_.end());
    return from_arcs(all);
}

Arc map_arc(const Mat2& g, const Arc& a) {
    double s = act(g, ProjPoint::from_angle(a.start)).angle;
    double e = act(g, ProjPoint::from_angle(a.start + a.len)).angle;
    double len = std::fmod(e - s, kPi);
    if (len < 0) len += kPi;
    if (len == 0.0 && a.len > 0.0) len = 1e-15; // image of a proper arc cannot vanish
    return Arc{s, len};
}

} // namespace mobius
