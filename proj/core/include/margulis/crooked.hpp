#pragma once

#include "margulis/isometry.hpp"
#include "margulis/lorentz.hpp"

#include <string_view>

namespace margulis {

/// An oriented geodesic of H^2, stored as the unit spacelike vector w with
/// positive halfplane h_w = {v : v.w > 0}.
class OrientedGeodesic {
public:
    /// Normalises w; throws DomainError unless w is spacelike.
    explicit OrientedGeodesic(const MinkVec& w);

    const MinkVec& w() const { return w_; }
    /// Attracting endpoint of the flow of w: [w, nPlus] = 2 nPlus. Future null.
    const MinkVec& nPlus() const { return nPlus_; }
    /// Repelling endpoint: [w, nMinus] = -2 nMinus.
    const MinkVec& nMinus() const { return nMinus_; }

    OrientedGeodesic reversed() const { return OrientedGeodesic(-w_); }

private:
    MinkVec w_, nPlus_, nMinus_;
};

/// Future null endpoints (attracting, repelling) of the flow of a spacelike field.
struct NullEndpoints {
    MinkVec attracting;
    MinkVec repelling;
};
NullEndpoints null_endpoints(const MinkVec& w);

/// The closed crooked halfspace CH(vertex, geod); its boundary is the crooked plane.
struct CrookedHalfspace {
    MinkVec vertex;
    OrientedGeodesic geod;

    /// Closure of the complement: CH(vertex, -geod).
    CrookedHalfspace complement() const { return {vertex, geod.reversed()}; }
};

enum class Membership { Interior, Boundary, Outside };

std::string_view to_string(Membership m);

/// Margin on the normalised score below which a point counts as Boundary.
inline constexpr double kMembershipMargin = 1e-12;

/// Signed score of v relative to H: q.w where q is the Euclidean-unit future
/// representative of the non-attracting fixed point of the Killing field
/// v - vertex. Zero for the vertex itself.
double ch_score(const CrookedHalfspace& H, const MinkVec& v);

Membership ch_contains(const CrookedHalfspace& H, const MinkVec& v);

/// The open quadrant {s g1 + t g2 : s, t > 0} of the stem plane.
struct StemQuadrantCone {
    MinkVec g1;
    MinkVec g2;

    /// Lorentz-unit direction of g1 + g2.
    MinkVec center() const;
    /// Strict membership with relative margin.
    bool contains(const MinkVec& v, double margin = kMembershipMargin) const;
};

/// The spacelike quadrant of w^perp whose elements are Interior to CH(0, l).
/// Generators are the null rays bounding it (nPlus and -nMinus).
StemQuadrantCone stem_quadrant(const OrientedGeodesic& l);

/// Closed halfplanes of w1 and w2 are disjoint in H^2 and its ideal boundary.
bool halfplanes_disjoint(const OrientedGeodesic& l1, const OrientedGeodesic& l2);

/// The geodesics are the same line with opposite orientations.
bool is_opposed_pair(const OrientedGeodesic& l1, const OrientedGeodesic& l2, double tol = 1e-9);

/// Disjointness of the closed halfspaces: vertex1 - vertex2 in the open cone
/// Q(l1) - Q(l2). Requires halfplanes_disjoint(l1, l2) or an opposed pair;
/// otherwise throws ConfigurationError. Cases within the margin return false.
bool crooked_disjoint(const CrookedHalfspace& H1, const CrookedHalfspace& H2);

/// CH(g(vertex), L(g) geod).
CrookedHalfspace map_halfspace(const AffineIso& g, const CrookedHalfspace& H);

}  // namespace margulis
