#pragma once

#include "margulis/crooked.hpp"
#include "margulis/freegroup.hpp"
#include "margulis/schottky.hpp"

#include <vector>

namespace margulis {

/// A base tile bounded by the sides s_{-i}, s_{+i} (outward oriented, the tile
/// on their negative side) with pairings gens[i] mapping s_{-i} to -s_{+i}.
using SidePairedDomain = SchottkyData;

/// Residual and disjointness checks of a side-paired domain; throws DomainError.
void validate_domain(const SidePairedDomain& domain);

/// One strip per side pair, placed across s_{+i}.
struct StripData {
    std::vector<MinkVec> waists;  ///< points of H^2 on the geodesic of s_{+i}
    std::vector<double> widths;   ///< non-negative rates
    std::vector<int> signs;       ///< +1 pushes the neighbouring tiles apart (default), -1 reverses

    /// Waists at the feet of x3 on each s_{+i}, all widths w, all signs +1.
    static StripData uniform(const SidePairedDomain& domain, double width = 1.0);
};

/// Point of the geodesic of sigma closest to the hyperboloid point p.
MinkVec foot_point(const OrientedGeodesic& sigma, const MinkVec& p);

/// Midpoint of two points of H^2 along their geodesic.
MinkVec geodesic_midpoint(const MinkVec& p, const MinkVec& q);

/// The translational parts u(gamma_i): the Killing field of the tile gamma_i D0
/// relative to D0, an infinitesimal translation of speed w_i along the geodesic
/// through the waist orthogonal to s_{+i}, lying in the stem quadrant of s_{+i}.
/// Throws DomainError for an off-geodesic waist or a negative width.
Cocycle strip_cocycle(const SidePairedDomain& domain, const StripData& strips);

/// Crooked halfspaces of the arcs dual to the sides of D0, in side order. The
/// vertex of each plane is the average of the Killing fields of the two tiles
/// it separates; the halfspace is the one away from D0.
std::vector<CrookedHalfspace> arc_crooked_planes(const SidePairedDomain& domain, const StripData& strips);

/// Affine generators (gens[i], u(gamma_i)) of the strip deformation.
std::vector<AffineIso> strip_generators(const SidePairedDomain& domain, const Cocycle& u);

/// The side `side` (+-i) of the tile tile*D0, transversely oriented away from
/// that tile unless `flip` is set.
struct ArcRef {
    FreeWord tile;
    int side = 1;
    bool flip = false;
};

/// Oriented geodesic and crooked-plane vertex of an arc.
struct ArcPlane {
    OrientedGeodesic geod;
    MinkVec vertex;
};

ArcPlane arc_plane(const SidePairedDomain& domain, const Cocycle& u, const ArcRef& arc);

/// CH(vA, A) inside the interior of CH(vB, B), decided as disjointness of
/// CH(vA, A) and CH(vB, -B). Requires distinct arcs with h(A) inside h(B)
/// (closed halfplanes of A and -B disjoint); throws ConfigurationError otherwise.
bool nesting_check(const SidePairedDomain& domain, const StripData& strips, const ArcRef& a, const ArcRef& b);
bool nesting_check(const SidePairedDomain& domain, const Cocycle& u, const ArcRef& a, const ArcRef& b);

}  // namespace margulis
