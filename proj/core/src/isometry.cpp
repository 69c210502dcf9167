#include "margulis/isometry.hpp"

#include "margulis/errors.hpp"

#include <Eigen/Geometry>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <fmt/format.h>

namespace margulis {

namespace {

double max_abs(const Eigen::Matrix3d& m) { return m.cwiseAbs().maxCoeff(); }

// Kernel direction of a rank-2 matrix from the largest cross product of its rows.
Eigen::Vector3d kernel_direction(const Eigen::Matrix3d& b) {
    const Eigen::Vector3d r0 = b.row(0), r1 = b.row(1), r2 = b.row(2);
    Eigen::Vector3d best = r0.cross(r1);
    for (const Eigen::Vector3d& c : {Eigen::Vector3d(r0.cross(r2)), Eigen::Vector3d(r1.cross(r2))}) {
        if (c.squaredNorm() > best.squaredNorm()) best = c;
    }
    return best;
}

MinkVec null_eigenvector(const Eigen::Matrix3d& a, double mu) {
    const Eigen::Vector3d k = kernel_direction(a - mu * Eigen::Matrix3d::Identity());
    if (!(std::abs(k(2)) > 0.0)) throw DegenerateError("null eigenvector is not time-orientable");
    return MinkVec::from_eigen(k / k(2));
}

struct Gap {
    double s;      // sign decides hyperbolic (>= 0) or elliptic
    double delta;  // lambda - 1 (hyperbolic) or |e^{i theta} - 1| (elliptic)
};

// The gap lambda - 1 (or |e^{i theta} - 1|) from the trace, or, near the
// identity where the trace cancels, from the Killing field k with
// ad(k) = (A - A^{-1}) / 2, which has k.k = sinh^2(l) / 4 or -sin^2(theta) / 4.
Gap eigen_gap(const LinearIso& a) {
    const Eigen::Matrix3d& m = a.matrix();
    const double s = a.trace() - 3.0;
    const Eigen::Matrix3d n = 0.5 * (m - a.inverse().matrix());
    const MinkVec k{0.25 * (n(2, 1) + n(1, 2)), -0.25 * (n(2, 0) + n(0, 2)), 0.25 * (n(0, 1) - n(1, 0))};
    const double eps = std::numeric_limits<double>::epsilon();
    const double errS = 8.0 * eps * m.diagonal().cwiseAbs().sum();
    const double kk = k.euclidean_norm();
    const double errQ = 8.0 * eps * kk * kk;
    if (std::abs(s) < 1e-3 && 4.0 * errQ < errS) {
        const double q = minkowski_dot(k, k);
        if (q >= 0.0) return {q, std::expm1(std::asinh(2.0 * std::sqrt(q)))};
        return {q, 2.0 * std::sin(0.5 * std::asin(std::min(1.0, 2.0 * std::sqrt(-q))))};
    }
    if (s >= 0.0) return {s, 0.5 * (s + std::sqrt(s * s + 4.0 * s))};
    return {s, std::sqrt(-s)};
}

HyperbolicData eigendata(const LinearIso& a, double delta) {
    const double lambda = 1.0 + delta;
    HyperbolicData h;
    h.length = std::log1p(delta);
    h.wPlus = null_eigenvector(a.matrix(), lambda);
    h.wMinus = null_eigenvector(a.inverse().matrix(), lambda);
    // [w+, w-] is spacelike, orthogonal to both, and det(w+, w-, [w+, w-]) < 0.
    const MinkVec b = bracket_cross(h.wPlus, h.wMinus);
    h.wNeutral = -b / std::sqrt(minkowski_dot(b, b));
    return h;
}

}  // namespace

LinearIso::LinearIso(const Eigen::Matrix3d& m, double tol) : m_(m) {
    if (!m.allFinite()) throw ConstructionError("isometry matrix has non-finite entries");
    const double scale = std::max(1.0, max_abs(m));
    const Eigen::Matrix3d& j = lorentz_gram();
    const double gramErr = max_abs(m.transpose() * j * m - j);
    if (gramErr > tol * scale * scale)
        throw ConstructionError(fmt::format("matrix does not preserve the Lorentz form (error {:.3g})", gramErr));
    const double det = m.determinant();
    if (std::abs(det - 1.0) > tol * scale * scale * scale)
        throw ConstructionError(fmt::format("determinant {:.6g} is not +1", det));
    if (!(m(2, 2) > 0.0)) throw ConstructionError("matrix reverses time orientation");
}

LinearIso LinearIso::inverse() const {
    const Eigen::Matrix3d& j = lorentz_gram();
    return unchecked(j * m_.transpose() * j);
}

const Eigen::Matrix3d& lorentz_gram() {
    static const Eigen::Matrix3d j = Eigen::Vector3d(1.0, 1.0, -1.0).asDiagonal();
    return j;
}

LinearIso adjoint_rep(const Eigen::Matrix2d& M) {
    const double det = M.determinant();
    if (!std::isfinite(det) || std::abs(det - 1.0) > 1e-10)
        throw ConstructionError(fmt::format("2x2 matrix has determinant {:.12g}, expected 1", det));
    Eigen::Matrix2d inv;
    inv << M(1, 1), -M(0, 1), -M(1, 0), M(0, 0);
    inv /= det;
    Eigen::Matrix3d a;
    a.col(0) = from_sl2(M * to_sl2(x1) * inv).to_eigen();
    a.col(1) = from_sl2(M * to_sl2(x2) * inv).to_eigen();
    a.col(2) = from_sl2(M * to_sl2(x3) * inv).to_eigen();
    return LinearIso::unchecked(a);
}

LinearIso killing_exp(const MinkVec& u, double t) {
    const Eigen::Matrix2d U = to_sl2(u) * (0.5 * t);
    const double q = minkowski_dot(u, u) * 0.25 * t * t;  // U^2 = q I
    double c = 1.0, s = 1.0;
    if (std::abs(q) < 1e-8) {
        c = 1.0 + q / 2.0 + q * q / 24.0;
        s = 1.0 + q / 6.0 + q * q / 120.0;
    } else if (q > 0.0) {
        const double r = std::sqrt(q);
        c = std::cosh(r);
        s = std::sinh(r) / r;
    } else {
        const double r = std::sqrt(-q);
        c = std::cos(r);
        s = std::sin(r) / r;
    }
    const Eigen::Matrix2d e = c * Eigen::Matrix2d::Identity() + s * U;
    // det e = c^2 - s^2 q = 1 analytically; renormalise the rounding.
    return adjoint_rep(e / std::sqrt(e.determinant()));
}

std::string_view to_string(IsoClass c) {
    switch (c) {
        case IsoClass::Identity: return "identity";
        case IsoClass::Elliptic: return "elliptic";
        case IsoClass::Parabolic: return "parabolic";
        case IsoClass::Hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

Classification classify_iso(const LinearIso& A, double tol) {
    Classification out;
    const Gap g = eigen_gap(A);
    out.eigenvalueGap = g.delta;
    if (max_abs(A.matrix() - Eigen::Matrix3d::Identity()) <= tol) {
        out.kind = IsoClass::Identity;
        return out;
    }
    if (g.delta <= tol) {
        out.kind = IsoClass::Parabolic;
        return out;
    }
    if (g.delta < 2.0 * tol)
        throw DegenerateError(fmt::format("eigenvalue gap {:.3g} is within the tolerance band [{:.3g}, {:.3g})",
                                          g.delta, tol, 2.0 * tol));
    if (g.s < 0.0) {
        out.kind = IsoClass::Elliptic;
        return out;
    }
    out.kind = IsoClass::Hyperbolic;
    out.hyperbolic = eigendata(A, g.delta);
    return out;
}

HyperbolicData hyperbolic_data(const LinearIso& A, double tol) {
    Classification c = classify_iso(A, tol);
    if (c.kind != IsoClass::Hyperbolic)
        throw UnsupportedClassError(fmt::format("linear part is {}, not hyperbolic", to_string(c.kind)));
    return *c.hyperbolic;
}

double translation_length(const LinearIso& A) {
    const Gap g = eigen_gap(A);
    if (g.s < 0.0 || g.delta <= kClassifyTolerance) return 0.0;
    return std::log1p(g.delta);
}

double margulis_alpha(const AffineIso& g, double tol) {
    return minkowski_dot(g.trans, hyperbolic_data(g.linear, tol).wNeutral);
}

AffineAxis affine_axis(const AffineIso& g, double tol) {
    const HyperbolicData h = hyperbolic_data(g.linear, tol);
    const double lambda = std::exp(h.length);
    if (lambda - 1.0 < tol) throw DegenerateError("restricted axis solve is singular");
    const double alpha = minkowski_dot(g.trans, h.wNeutral);
    const MinkVec r = g.trans - alpha * h.wNeutral;
    const double pm = minkowski_dot(h.wPlus, h.wMinus);
    const double a = minkowski_dot(r, h.wMinus) / pm;
    const double b = minkowski_dot(r, h.wPlus) / pm;
    const double ea = -std::expm1(h.length);   // 1 - lambda
    const double eb = -std::expm1(-h.length);  // 1 - 1/lambda
    return {a / ea * h.wPlus + b / eb * h.wMinus, h.wNeutral};
}

double eigenline_sphere_distance(const MinkVec& a, const MinkVec& b) {
    const Eigen::Vector3d p = a.to_eigen().normalized();
    const Eigen::Vector3d q = b.to_eigen().normalized();
    return std::min((p - q).norm(), (p + q).norm());
}

double hyperbolicity(const LinearIso& A, double tol) {
    const HyperbolicData h = hyperbolic_data(A, tol);
    return eigenline_sphere_distance(h.wPlus, h.wMinus);
}

EpsilonMeasures epsilon_measures(const LinearIso& A, const LinearIso& B, double tol) {
    const HyperbolicData ha = hyperbolic_data(A, tol);
    const HyperbolicData hb = hyperbolic_data(B, tol);
    EpsilonMeasures e;
    e.hyperbolicityA = eigenline_sphere_distance(ha.wPlus, ha.wMinus);
    e.hyperbolicityB = eigenline_sphere_distance(hb.wPlus, hb.wMinus);
    e.transversality = std::min({eigenline_sphere_distance(ha.wPlus, hb.wPlus),
                                 eigenline_sphere_distance(ha.wPlus, hb.wMinus),
                                 eigenline_sphere_distance(ha.wMinus, hb.wPlus),
                                 eigenline_sphere_distance(ha.wMinus, hb.wMinus)});
    return e;
}

}  // namespace margulis
