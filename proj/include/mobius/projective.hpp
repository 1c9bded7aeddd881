#pragma once

#include <array>
#include <cmath>
#include <optional>

#include "mobius/rational.hpp"

namespace mobius {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kAngleTol = 1e-9;

/// Wraps an angle into [0, pi).
double wrap_pi(double angle);

/// A point of the projective line, identified with R/piZ by the angle
/// measured counterclockwise from [1:0].
struct ProjPoint {
    double angle = 0.0;

    static ProjPoint from_angle(double a) { return ProjPoint{wrap_pi(a)}; }
    static ProjPoint from_direction(double x, double y);
    /// Chart point x on the affine line, [x:1]; infinity() is [1:0].
    static ProjPoint from_affine(double x);
    static ProjPoint infinity() { return ProjPoint{0.0}; }

    bool is_infinity(double tol = kAngleTol) const;
    /// Chart coordinate cot(angle); +-inf near angle 0.
    double affine() const;
};

/// Angle distance on the projective line, in [0, pi/2].
double proj_metric(ProjPoint a, ProjPoint b);

/// 2x2 real matrix of determinant one. Carries a double shadow always and
/// exact rational entries when constructed from rationals; `exact()` tells
/// which representation is authoritative.
class Mat2 {
public:
    Mat2() : a_(1), b_(0), c_(0), d_(1) {}
    Mat2(double a, double b, double c, double d);
    Mat2(const Rational& a, const Rational& b, const Rational& c, const Rational& d);

    static Mat2 identity() { return Mat2(); }

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }

    bool exact() const { return exact_.has_value(); }
    const std::array<Rational, 4>& exact_entries() const { return *exact_; }

    Mat2 operator*(const Mat2& rhs) const;
    /// Adjugate; inverse in SL2.
    Mat2 inverse() const;
    bool operator==(const Mat2& rhs) const;

    double det() const { return a_ * d_ - b_ * c_; }
    Rational det_exact() const;

    /// Sum of squared entries, i.e. trace of g^T g.
    double gram_trace() const { return a_ * a_ + b_ * b_ + c_ * c_ + d_ * d_; }
    Rational gram_trace_exact() const;

    /// Squared operator norm, the larger eigenvalue of g^T g.
    double norm_sq() const;
    double norm() const { return std::sqrt(norm_sq()); }

    /// Largest-|eigenvalue| eigendirection when the matrix has real eigenvectors
    /// with |lambda1| > |lambda2|; nullopt for rotations and parabolics.
    std::optional<ProjPoint> attracting_direction() const;

    /// Validates det == 1 (exactly in rational mode, 1e-12 relative in floating).
    void check_unimodular() const;

private:
    double a_, b_, c_, d_;
    std::optional<std::array<Rational, 4>> exact_;
};

/// Singular structure of g: norm lambda_plus >= 1, most-expanded input/output
/// directions u/v. Degenerate when g is numerically a rotation.
struct SingularData {
    double lambda_plus = 1.0;
    ProjPoint u_plus, u_minus, v_plus, v_minus;
    bool degenerate = false;
};

/// Projective action [v] -> [gv].
ProjPoint act(const Mat2& g, ProjPoint x);

SingularData singular_decompose(const Mat2& g);

/// Derivative of the action of g in the charts centered at u_g^+ / v_g^+,
/// evaluated at coordinate theta; ranges over [norm^-2, norm^2].
double action_derivative(const Mat2& g, double theta);

} // namespace mobius
