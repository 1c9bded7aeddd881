#include "mobius/projective.hpp"

#include <cmath>

#include "mobius/errors.hpp"

namespace mobius {

double wrap_pi(double angle) {
    double r = std::fmod(angle, kPi);
    if (r < 0) r += kPi;
    if (r >= kPi) r = 0.0; // fmod can land exactly on pi after the += above
    return r;
}

namespace {

// Direction vector of a projective point; the two axis angles are mapped to
// exact axis vectors so that points sitting on dyadic bin boundaries stay there.
void direction_of(double angle, double& x, double& y) {
    if (angle == 0.0) {
        x = 1.0;
        y = 0.0;
        return;
    }
    if (angle == kPi / 2) {
        x = 0.0;
        y = 1.0;
        return;
    }
    x = std::cos(angle);
    y = std::sin(angle);
}

} // namespace

ProjPoint ProjPoint::from_direction(double x, double y) {
    if (x == 0.0 && y == 0.0) raise(ErrorCode::InvalidArgument, "zero direction vector");
    if (y == 0.0) return ProjPoint{0.0};
    if (x == 0.0) return ProjPoint{kPi / 2};
    return ProjPoint{wrap_pi(std::atan2(y, x))};
}

ProjPoint ProjPoint::from_affine(double x) {
    if (std::isinf(x)) return infinity();
    return from_direction(x, 1.0);
}

bool ProjPoint::is_infinity(double tol) const {
    return proj_metric(*this, infinity()) < tol;
}

double ProjPoint::affine() const {
    double x, y;
    direction_of(angle, x, y);
    return x / y;
}

double proj_metric(ProjPoint a, ProjPoint b) {
    double d = std::fabs(a.angle - b.angle);
    return std::min(d, kPi - d);
}

Mat2::Mat2(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {}

Mat2::Mat2(const Rational& a, const Rational& b, const Rational& c, const Rational& d)
    : a_(a.get_d()), b_(b.get_d()), c_(c.get_d()), d_(d.get_d()),
      exact_(std::array<Rational, 4>{a, b, c, d}) {}

Mat2 Mat2::operator*(const Mat2& rhs) const {
    if (exact_ && rhs.exact_) {
        const auto& l = *exact_;
        const auto& r = *rhs.exact_;
        return Mat2(l[0] * r[0] + l[1] * r[2], l[0] * r[1] + l[1] * r[3],
                    l[2] * r[0] + l[3] * r[2], l[2] * r[1] + l[3] * r[3]);
    }
    return Mat2(a_ * rhs.a_ + b_ * rhs.c_, a_ * rhs.b_ + b_ * rhs.d_,
                c_ * rhs.a_ + d_ * rhs.c_, c_ * rhs.b_ + d_ * rhs.d_);
}

Mat2 Mat2::inverse() const {
    if (exact_) {
        const auto& e = *exact_;
        return Mat2(e[3], -e[1], -e[2], e[0]);
    }
    return Mat2(d_, -b_, -c_, a_);
}

bool Mat2::operator==(const Mat2& rhs) const {
    if (exact_ && rhs.exact_) {
        for (int i = 0; i < 4; ++i)
            if ((*exact_)[i] != (*rhs.exact_)[i]) return false;
        return true;
    }
    return a_ == rhs.a_ && b_ == rhs.b_ && c_ == rhs.c_ && d_ == rhs.d_;
}

Rational Mat2::det_exact() const {
    const auto& e = *exact_;
    return e[0] * e[3] - e[1] * e[2];
}

Rational Mat2::gram_trace_exact() const {
    const auto& e = *exact_;
    return e[0] * e[0] + e[1] * e[1] + e[2] * e[2] + e[3] * e[3];
}

double Mat2::norm_sq() const {
    double t = gram_trace();
    double disc = (t - 2.0) * (t + 2.0);
    if (disc <= 0) return 1.0;
    return 0.5 * (t + std::sqrt(disc));
}

std::optional<ProjPoint> Mat2::attracting_direction() const {
    double tr = a_ + d_;
    double disc = tr * tr - 4.0 * det();
    if (disc <= 1e-12 * std::max(1.0, tr * tr)) return std::nullopt;
    double sq = std::sqrt(disc);
    double l1 = 0.5 * (tr + sq);
    double l2 = 0.5 * (tr - sq);
    double lam = std::fabs(l1) >= std::fabs(l2) ? l1 : l2;
    // eigenvector rows of (g - lam I); pick the numerically larger one
    double vx1 = b_, vy1 = lam - a_;
    double vx2 = lam - d_, vy2 = c_;
    if (vx1 * vx1 + vy1 * vy1 >= vx2 * vx2 + vy2 * vy2) {
        if (vx1 == 0.0 && vy1 == 0.0) return std::nullopt;
        return ProjPoint::from_direction(vx1, vy1);
    }
    if (vx2 == 0.0 && vy2 == 0.0) return std::nullopt;
    return ProjPoint::from_direction(vx2, vy2);
}

void Mat2::check_unimodular() const {
    if (exact_) {
        if (det_exact() != 1) raise(ErrorCode::InvalidArgument, "matrix determinant is not 1");
        return;
    }
    if (std::fabs(det() - 1.0) > 1e-12 * std::max(1.0, gram_trace()))
        raise(ErrorCode::InvalidArgument, "matrix determinant is not 1 within tolerance");
}

ProjPoint act(const Mat2& g, ProjPoint x) {
    double vx, vy;
    direction_of(x.angle, vx, vy);
    double wx = g.a() * vx + g.b() * vy;
    double wy = g.c() * vx + g.d() * vy;
    return ProjPoint::from_direction(wx, wy);
}

SingularData singular_decompose(const Mat2& g) {
    SingularData out;
    double t = g.gram_trace();
    if (t - 2.0 < 1e-14) {
        out.degenerate = true;
        out.lambda_plus = 1.0;
        out.u_plus = ProjPoint{0.0};
        out.u_minus = ProjPoint{kPi / 2};
        out.v_plus = act(g, out.u_plus);
        out.v_minus = act(g, out.u_minus);
        return out;
    }
    double lam_sq = 0.5 * (t + std::sqrt((t - 2.0) * (t + 2.0)));
    out.lambda_plus = std::sqrt(lam_sq);
    // g^T g = [[a^2+c^2, ab+cd], [ab+cd, b^2+d^2]]; major axis at half-angle.
    double p = g.a() * g.a() + g.c() * g.c();
    double q = g.b() * g.b() + g.d() * g.d();
    double r = g.a() * g.b() + g.c() * g.d();
    double phi = 0.5 * std::atan2(2.0 * r, p - q);
    out.u_plus = ProjPoint::from_angle(phi);
    out.u_minus = ProjPoint::from_angle(phi + kPi / 2);
    out.v_plus = act(g, out.u_plus);
    out.v_minus = act(g, out.u_minus);
    return out;
}

double action_derivative(const Mat2& g, double theta) {
    double t = g.gram_trace();
    double disc = (t - 2.0) * (t + 2.0);
    double lam_sq = disc <= 0 ? 1.0 : 0.5 * (t + std::sqrt(disc));
    double c = std::cos(theta), s = std::sin(theta);
    return 1.0 / (lam_sq * c * c + (s * s) / lam_sq);
}

} // namespace mobius
