#pragma once

#include <vector>

#include "mobius/projective.hpp"

namespace mobius {

/// Arc of the circle R/piZ: [start, start+len) with start in [0, pi), 0 < len < pi.
struct Arc {
    double start = 0.0;
    double len = 0.0;

    double end() const { return start + len; } // may exceed pi; callers wrap
    double mid() const { return wrap_pi(start + 0.5 * len); }
};

/// Finite union of arcs with pairwise disjoint closures; always a proper
/// subset of the circle.
class IntervalSet {
public:
    IntervalSet() = default;

    /// Merges overlapping/touching arcs into normal form.
    static IntervalSet from_arcs(std::vector<Arc> arcs);

    const std::vector<Arc>& arcs() const { return arcs_; }
    bool empty() const { return arcs_.empty(); }
    size_t size() const { return arcs_.size(); }
    double total_length() const;
    double complement_length() const { return kPi - total_length(); }

    bool contains(double angle) const;
    /// Distance from an inside point to the complement; <= 0 when outside.
    double clearance(double angle) const;
    /// Whether the closed arc lies inside one component; clearance_out gets the
    /// minimal distance from the arc to the component's boundary.
    bool contains_arc(const Arc& a, double* clearance_out = nullptr) const;

    IntervalSet shrunk(double delta) const;
    IntervalSet fattened(double delta) const;

    IntervalSet united(const IntervalSet& other) const;

private:
    std::vector<Arc> arcs_;
};

/// Image of a closed arc under the projective action of g (an orientation
/// preserving circle homeomorphism).
Arc map_arc(const Mat2& g, const Arc& a);

} // namespace mobius
