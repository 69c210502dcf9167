#include "margulis/crooked.hpp"

#include "margulis/errors.hpp"

#include <array>
#include <cmath>
#include <fmt/format.h>

namespace margulis {

namespace {

MinkVec euclid_unit(const MinkVec& v) { return v / v.euclidean_norm(); }

}  // namespace

NullEndpoints null_endpoints(const MinkVec& w) {
    const double ww = minkowski_dot(w, w);
    if (!(ww > 0.0)) throw DomainError("null endpoints need a spacelike vector");
    const MinkVec u = w / std::sqrt(ww);
    // Future unit timelike vector in u^perp, then its partner s with [u, t] = 2 s.
    MinkVec t = x3 + u.c3 * u;
    t = t / std::sqrt(-minkowski_dot(t, t));
    const MinkVec s = 0.5 * bracket_cross(u, t);
    return {t + s, t - s};
}

OrientedGeodesic::OrientedGeodesic(const MinkVec& w) {
    const double ww = minkowski_dot(w, w);
    const double n2 = w.c1 * w.c1 + w.c2 * w.c2 + w.c3 * w.c3;
    if (!(ww > 1e-12 * n2)) throw DomainError(fmt::format("geodesic vector ({}, {}, {}) is not spacelike", w.c1, w.c2, w.c3));
    w_ = w / std::sqrt(ww);
    const NullEndpoints e = null_endpoints(w_);
    nPlus_ = e.attracting;
    nMinus_ = e.repelling;
}

std::string_view to_string(Membership m) {
    switch (m) {
        case Membership::Interior: return "Interior";
        case Membership::Boundary: return "Boundary";
        case Membership::Outside: return "Outside";
    }
    return "Unknown";
}

double ch_score(const CrookedHalfspace& H, const MinkVec& v) {
    const MinkVec xi = v - H.vertex;
    const double scale = std::max({1.0, v.euclidean_norm(), H.vertex.euclidean_norm()});
    if (xi.euclidean_norm() <= 1e-14 * scale) return 0.0;
    MinkVec q;
    if (minkowski_dot(xi, xi) > 0.0) {
        q = null_endpoints(xi).repelling;
    } else {
        q = xi.c3 > 0.0 ? xi : -xi;
    }
    return minkowski_dot(euclid_unit(q), H.geod.w());
}

Membership ch_contains(const CrookedHalfspace& H, const MinkVec& v) {
    const double s = ch_score(H, v);
    if (s > kMembershipMargin) return Membership::Interior;
    if (s < -kMembershipMargin) return Membership::Outside;
    return Membership::Boundary;
}

MinkVec StemQuadrantCone::center() const { return lorentz_normalize(g1 + g2); }

bool StemQuadrantCone::contains(const MinkVec& v, double margin) const {
    // v = a g1 + b g2 inside the plane, with both coefficients positive.
    const MinkVec n = bracket_cross(g1, g2);
    const double scale = v.euclidean_norm();
    if (scale == 0.0) return false;
    if (std::abs(minkowski_dot(n, v)) > margin * scale * n.euclidean_norm()) return false;
    const double g12 = minkowski_dot(g1, g2);
    const double a = minkowski_dot(v, g2) / g12;
    const double b = minkowski_dot(v, g1) / g12;
    return a * g1.euclidean_norm() > margin * scale && b * g2.euclidean_norm() > margin * scale;
}

StemQuadrantCone stem_quadrant(const OrientedGeodesic& l) {
    const StemQuadrantCone first{l.nPlus(), -l.nMinus()};
    const StemQuadrantCone second{-l.nPlus(), l.nMinus()};
    const CrookedHalfspace h{MinkVec{}, l};
    if (ch_contains(h, first.g1 + first.g2) == Membership::Interior) return first;
    if (ch_contains(h, second.g1 + second.g2) == Membership::Interior) return second;
    throw DegenerateError("no spacelike stem quadrant is interior to the crooked halfspace");
}

bool halfplanes_disjoint(const OrientedGeodesic& l1, const OrientedGeodesic& l2) {
    // Ultraparallel, and w1 + w2 future timelike. With w1 + w2 past timelike
    // the two halfplanes cover H^2 instead.
    return minkowski_dot(l1.w(), l2.w()) < -1.0 && (l1.w() + l2.w()).c3 > 0.0;
}

bool is_opposed_pair(const OrientedGeodesic& l1, const OrientedGeodesic& l2, double tol) {
    return (l1.w() + l2.w()).euclidean_norm() <= tol * std::max(1.0, l1.w().euclidean_norm());
}

bool crooked_disjoint(const CrookedHalfspace& H1, const CrookedHalfspace& H2) {
    const MinkVec d = H1.vertex - H2.vertex;
    const double dn = d.euclidean_norm();
    const StemQuadrantCone q1 = stem_quadrant(H1.geod);
    const StemQuadrantCone q2 = stem_quadrant(H2.geod);

    if (is_opposed_pair(H1.geod, H2.geod)) {
        // Q(l1) - Q(l2) = Q(l1): a planar open quadrant.
        return q1.contains(d, kMembershipMargin);
    }
    if (!halfplanes_disjoint(H1.geod, H2.geod))
        throw ConfigurationError("crooked disjointness needs disjoint closed halfplanes or an opposed pair");
    if (dn == 0.0) return false;

    const std::array<MinkVec, 4> g{euclid_unit(q1.g1), euclid_unit(q1.g2), euclid_unit(-q2.g1), euclid_unit(-q2.g2)};
    int facets = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            MinkVec n = bracket_cross(g[i], g[j]);
            const double nn = n.euclidean_norm();
            if (nn < 1e-12) continue;
            n = n / nn;
            int pos = 0, neg = 0;
            for (std::size_t k = 0; k < g.size(); ++k) {
                if (k == i || k == j) continue;
                const double f = minkowski_dot(n, g[k]);
                if (f > 1e-12) ++pos;
                else if (f < -1e-12) ++neg;
            }
            if (pos > 0 && neg > 0) continue;  // not a supporting plane
            if (pos == 0 && neg == 0) continue;
            if (neg > 0) n = -n;
            ++facets;
            if (!(minkowski_dot(n, d) > kMembershipMargin * dn)) return false;
        }
    }
    if (facets == 0) throw DegenerateError("stem-quadrant difference cone is not pointed");
    return true;
}

CrookedHalfspace map_halfspace(const AffineIso& g, const CrookedHalfspace& H) {
    return {g(H.vertex), OrientedGeodesic(g.linear * H.geod.w())};
}

}  // namespace margulis
