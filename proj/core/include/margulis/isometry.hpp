#pragma once

#include "margulis/lorentz.hpp"

#include <Eigen/Core>

#include <optional>
#include <string_view>

namespace margulis {

/// An orientation- and time-orientation-preserving linear isometry of R^{2,1},
/// i.e. an element of SO^0(2,1) acting on (x1, x2, x3) coordinates.
class LinearIso {
public:
    /// Identity.
    LinearIso() : m_(Eigen::Matrix3d::Identity()) {}

    /// Validating constructor: m^T J m = J and det m = 1 within tol (relative to
    /// the size of m), and m maps x3 to a future-pointing vector.
    explicit LinearIso(const Eigen::Matrix3d& m, double tol = 1e-9);

    /// Wraps a matrix already known to be a valid isometry (products, inverses).
    static LinearIso unchecked(const Eigen::Matrix3d& m) {
        LinearIso a;
        a.m_ = m;
        return a;
    }

    const Eigen::Matrix3d& matrix() const { return m_; }
    double trace() const { return m_.trace(); }

    MinkVec operator*(const MinkVec& v) const { return MinkVec::from_eigen(m_ * v.to_eigen()); }
    LinearIso operator*(const LinearIso& o) const { return unchecked(m_ * o.m_); }

    /// J m^T J, exact for Lorentz matrices.
    LinearIso inverse() const;

private:
    Eigen::Matrix3d m_;
};

/// The Lorentz Gram matrix diag(1, 1, -1).
const Eigen::Matrix3d& lorentz_gram();

/// Matrix of v -> M v M^{-1} on (x1, x2, x3). Requires |det M - 1| <= 1e-10.
LinearIso adjoint_rep(const Eigen::Matrix2d& M);

/// One-parameter group generated by the Killing field u at unit speed:
/// Ad(exp(t u / 2)) in sl(2,R). A unit spacelike u translates H^2 by distance t
/// along the geodesic u^perp, and d/dt|0 of exp(t u) A is the tangent vector u.
LinearIso killing_exp(const MinkVec& u, double t);

/// Default tolerance on eigenvalue gaps.
inline constexpr double kClassifyTolerance = 1e-8;

/// Oriented eigendata of a hyperbolic isometry A.
struct HyperbolicData {
    MinkVec wPlus;     ///< expanding (attracting) null eigenvector, c3 = 1
    MinkVec wMinus;    ///< contracting (repelling) null eigenvector, c3 = 1
    MinkVec wNeutral;  ///< unit spacelike fixed vector with det(wPlus, wMinus, wNeutral) > 0
    double length = 0.0;
};

enum class IsoClass { Identity, Elliptic, Parabolic, Hyperbolic };

std::string_view to_string(IsoClass c);

struct Classification {
    IsoClass kind = IsoClass::Identity;
    /// Distance of the top eigenvalue from 1 (lambda - 1, or |e^{i theta} - 1|).
    double eigenvalueGap = 0.0;
    std::optional<HyperbolicData> hyperbolic;
};

/// Identity if |A - I| <= tol; parabolic if the eigenvalue gap is <= tol;
/// hyperbolic / elliptic if the gap is >= 2 tol. Gaps strictly between tol and
/// 2 tol throw DegenerateError.
Classification classify_iso(const LinearIso& A, double tol = kClassifyTolerance);

/// Eigendata of a hyperbolic A; throws UnsupportedClassError otherwise.
HyperbolicData hyperbolic_data(const LinearIso& A, double tol = kClassifyTolerance);

/// log of the largest eigenvalue modulus; 0 for elliptic and parabolic A.
double translation_length(const LinearIso& A);

/// An affine isometry p -> L p + u of E^{2,1}.
struct AffineIso {
    LinearIso linear;
    MinkVec trans;

    MinkVec operator()(const MinkVec& p) const { return linear * p + trans; }

    /// Composition: (g * h)(p) = g(h(p)); translational part u(g) + L(g) u(h).
    friend AffineIso operator*(const AffineIso& g, const AffineIso& h) {
        return {g.linear * h.linear, g.trans + g.linear * h.trans};
    }

    AffineIso inverse() const {
        const LinearIso inv = linear.inverse();
        return {inv, -(inv * trans)};
    }

    static AffineIso translation(const MinkVec& t) { return {LinearIso(), t}; }
};

/// alpha(g) = u(g) . wNeutral(L(g)). Requires a hyperbolic linear part.
double margulis_alpha(const AffineIso& g, double tol = kClassifyTolerance);

struct AffineAxis {
    MinkVec point;
    MinkVec direction;  ///< wNeutral of the linear part
};

/// The unique invariant line: g(point) = point + alpha(g) direction, with point
/// in the Lorentz-orthogonal complement of the direction.
AffineAxis affine_axis(const AffineIso& g, double tol = kClassifyTolerance);

/// Euclidean distance on S^2 between the eigenline representatives, minimised
/// over the antipodal choices.
double eigenline_sphere_distance(const MinkVec& a, const MinkVec& b);

struct EpsilonMeasures {
    double hyperbolicityA = 0.0;
    double hyperbolicityB = 0.0;
    double transversality = 0.0;
};

double hyperbolicity(const LinearIso& A, double tol = kClassifyTolerance);
EpsilonMeasures epsilon_measures(const LinearIso& A, const LinearIso& B, double tol = kClassifyTolerance);

}  // namespace margulis
