#pragma once

#include <Eigen/Core>

#include <array>
#include <iosfwd>
#include <string_view>

namespace margulis {

/// A vector of R^{2,1}, identified with sl(2,R) through the basis
///
///     x1 = [[0, 1], [1, 0]],  x2 = [[1, 0], [0, -1]],  x3 = [[0, -1], [1, 0]]
///
/// Coordinates are always stored in (x1, x2, x3); the matrix form is only a view.
/// The same type carries points of E^{2,1}, translations, and Killing fields.
struct MinkVec {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;

    constexpr MinkVec() = default;
    constexpr MinkVec(double a, double b, double c) : c1(a), c2(b), c3(c) {}

    static MinkVec from_eigen(const Eigen::Vector3d& v) { return {v(0), v(1), v(2)}; }
    Eigen::Vector3d to_eigen() const { return {c1, c2, c3}; }

    constexpr MinkVec operator-() const { return {-c1, -c2, -c3}; }
    constexpr MinkVec& operator+=(const MinkVec& o) {
        c1 += o.c1; c2 += o.c2; c3 += o.c3;
        return *this;
    }
    constexpr MinkVec& operator-=(const MinkVec& o) {
        c1 -= o.c1; c2 -= o.c2; c3 -= o.c3;
        return *this;
    }
    constexpr MinkVec& operator*=(double s) {
        c1 *= s; c2 *= s; c3 *= s;
        return *this;
    }

    friend constexpr MinkVec operator+(MinkVec a, const MinkVec& b) { return a += b; }
    friend constexpr MinkVec operator-(MinkVec a, const MinkVec& b) { return a -= b; }
    friend constexpr MinkVec operator*(double s, MinkVec a) { return a *= s; }
    friend constexpr MinkVec operator*(MinkVec a, double s) { return a *= s; }
    friend constexpr MinkVec operator/(MinkVec a, double s) { return a *= (1.0 / s); }
    friend constexpr bool operator==(const MinkVec&, const MinkVec&) = default;

    constexpr bool is_zero() const { return c1 == 0.0 && c2 == 0.0 && c3 == 0.0; }

    /// Euclidean norm of the coordinate triple (used for scales and tolerances only).
    double euclidean_norm() const;
};

std::ostream& operator<<(std::ostream& os, const MinkVec& v);

inline constexpr MinkVec x1{1.0, 0.0, 0.0};
inline constexpr MinkVec x2{0.0, 1.0, 0.0};
inline constexpr MinkVec x3{0.0, 0.0, 1.0};

/// Default relative tolerance of causal classification.
inline constexpr double kCausalTolerance = 1e-10;

enum class CausalClass { Zero, Spacelike, NullFuture, NullPast, TimelikeFuture, TimelikePast };

std::string_view to_string(CausalClass c);

/// v.w = c1 c1' + c2 c2' - c3 c3'  (one half of tr(vw), 1/8 of the Killing form).
constexpr double minkowski_dot(const MinkVec& v, const MinkVec& w) {
    return v.c1 * w.c1 + v.c2 * w.c2 - v.c3 * w.c3;
}

/// Lie bracket [v, w] of sl(2,R), expressed back in (x1, x2, x3).
/// Satisfies [u, v].w = -2 det(u, v, w).
MinkVec bracket_cross(const MinkVec& v, const MinkVec& w);

/// Spacelike if v.v > tol |v|^2, timelike if v.v < -tol |v|^2, null otherwise.
/// Throws DegenerateError for a nonzero null vector whose c3 is within tol of 0.
CausalClass causal_classify(const MinkVec& v, double tol = kCausalTolerance);

bool is_spacelike(CausalClass c);
bool is_timelike(CausalClass c);
bool is_null(CausalClass c);
bool is_future(CausalClass c);

/// Upper half-plane point x + iy to the future unit hyperboloid. Requires y > 0.
MinkVec uhp_embed(double x, double y);

/// Sign of det(a, b, c) of the coordinate triples; 0 when the determinant is
/// below tol times the product of the Euclidean norms.
int orientation_sign(const MinkVec& a, const MinkVec& b, const MinkVec& c, double tol = 1e-12);

double determinant(const MinkVec& a, const MinkVec& b, const MinkVec& c);

/// 2x2 matrix view of a vector (traceless).
Eigen::Matrix2d to_sl2(const MinkVec& v);
/// Inverse of to_sl2; the trace part of m is discarded.
MinkVec from_sl2(const Eigen::Matrix2d& m);

/// Scales a spacelike or timelike vector to v.v = +-1. Throws DomainError for null input.
MinkVec lorentz_normalize(const MinkVec& v);

}  // namespace margulis
