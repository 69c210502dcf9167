#include "margulis/lorentz.hpp"

#include "margulis/errors.hpp"

#include <cmath>
#include <ostream>

namespace margulis {

double MinkVec::euclidean_norm() const { return std::sqrt(c1 * c1 + c2 * c2 + c3 * c3); }

std::ostream& operator<<(std::ostream& os, const MinkVec& v) {
    return os << '(' << v.c1 << ", " << v.c2 << ", " << v.c3 << ')';
}

std::string_view to_string(CausalClass c) {
    switch (c) {
        case CausalClass::Zero: return "Zero";
        case CausalClass::Spacelike: return "Spacelike";
        case CausalClass::NullFuture: return "NullFuture";
        case CausalClass::NullPast: return "NullPast";
        case CausalClass::TimelikeFuture: return "TimelikeFuture";
        case CausalClass::TimelikePast: return "TimelikePast";
    }
    return "Unknown";
}

Eigen::Matrix2d to_sl2(const MinkVec& v) {
    Eigen::Matrix2d m;
    m << v.c2, v.c1 - v.c3,
         v.c1 + v.c3, -v.c2;
    return m;
}

MinkVec from_sl2(const Eigen::Matrix2d& m) {
    const double a = 0.5 * (m(0, 0) - m(1, 1));
    return {0.5 * (m(0, 1) + m(1, 0)), a, 0.5 * (m(1, 0) - m(0, 1))};
}

MinkVec bracket_cross(const MinkVec& v, const MinkVec& w) {
    const Eigen::Matrix2d a = to_sl2(v);
    const Eigen::Matrix2d b = to_sl2(w);
    return from_sl2(a * b - b * a);
}

CausalClass causal_classify(const MinkVec& v, double tol) {
    if (tol < 0.0) throw DomainError("causal_classify: negative tolerance");
    if (v.is_zero()) return CausalClass::Zero;
    const double n2 = v.c1 * v.c1 + v.c2 * v.c2 + v.c3 * v.c3;
    const double q = minkowski_dot(v, v);
    if (q > tol * n2) return CausalClass::Spacelike;
    if (q < -tol * n2) return v.c3 > 0.0 ? CausalClass::TimelikeFuture : CausalClass::TimelikePast;
    if (std::abs(v.c3) <= tol * std::sqrt(n2)) {
        throw DegenerateError("causal_classify: null vector with vanishing time coordinate");
    }
    return v.c3 > 0.0 ? CausalClass::NullFuture : CausalClass::NullPast;
}

bool is_spacelike(CausalClass c) { return c == CausalClass::Spacelike; }
bool is_timelike(CausalClass c) {
    return c == CausalClass::TimelikeFuture || c == CausalClass::TimelikePast;
}
bool is_null(CausalClass c) { return c == CausalClass::NullFuture || c == CausalClass::NullPast; }
bool is_future(CausalClass c) {
    return c == CausalClass::NullFuture || c == CausalClass::TimelikeFuture;
}

MinkVec uhp_embed(double x, double y) {
    if (!(y > 0.0)) throw DomainError("uhp_embed: imaginary part must be positive");
    const double r2 = x * x + y * y;
    return {(1.0 - r2) / (2.0 * y), x / y, (1.0 + r2) / (2.0 * y)};
}

double determinant(const MinkVec& a, const MinkVec& b, const MinkVec& c) {
    return a.c1 * (b.c2 * c.c3 - b.c3 * c.c2)
         - a.c2 * (b.c1 * c.c3 - b.c3 * c.c1)
         + a.c3 * (b.c1 * c.c2 - b.c2 * c.c1);
}

int orientation_sign(const MinkVec& a, const MinkVec& b, const MinkVec& c, double tol) {
    const double d = determinant(a, b, c);
    const double scale = a.euclidean_norm() * b.euclidean_norm() * c.euclidean_norm();
    if (std::abs(d) <= tol * scale) return 0;
    return d > 0.0 ? 1 : -1;
}

MinkVec lorentz_normalize(const MinkVec& v) {
    const double q = minkowski_dot(v, v);
    const double n2 = v.c1 * v.c1 + v.c2 * v.c2 + v.c3 * v.c3;
    if (std::abs(q) <= 1e-14 * n2 || n2 == 0.0) {
        throw DomainError("lorentz_normalize: null vector has no unit normalization");
    }
    return v / std::sqrt(std::abs(q));
}

}  // namespace margulis
