#include "margulis/strips.hpp"

#include "margulis/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <fmt/format.h>

namespace margulis {

void validate_domain(const SidePairedDomain& domain) {
    const std::size_t n = domain.gens.size();
    if (n == 0 || domain.minus.size() != n || domain.plus.size() != n) throw DomainError("malformed side-paired domain");
    const double r = pairing_residual(domain);
    if (r > 1e-9) throw DomainError(fmt::format("side pairing residual {:.3g} exceeds 1e-9", r));
    if (!schottky_check(domain)) throw DomainError("side halfplanes are not pairwise disjoint");
}

MinkVec foot_point(const OrientedGeodesic& sigma, const MinkVec& p) {
    const MinkVec r = p - minkowski_dot(p, sigma.w()) * sigma.w();
    const double rr = minkowski_dot(r, r);
    if (!(rr < 0.0)) throw DomainError("point does not project to the geodesic");
    MinkVec f = r / std::sqrt(-rr);
    return f.c3 > 0.0 ? f : -f;
}

MinkVec geodesic_midpoint(const MinkVec& p, const MinkVec& q) {
    const MinkVec s = p + q;
    return s / std::sqrt(-minkowski_dot(s, s));
}

StripData StripData::uniform(const SidePairedDomain& domain, double width) {
    StripData s;
    for (const OrientedGeodesic& g : domain.plus) {
        s.waists.push_back(foot_point(g, x3));
        s.widths.push_back(width);
        s.signs.push_back(1);
    }
    return s;
}

Cocycle strip_cocycle(const SidePairedDomain& domain, const StripData& strips) {
    const std::size_t n = domain.gens.size();
    if (strips.waists.size() != n || strips.widths.size() != n)
        throw DomainError(fmt::format("expected {} waists and widths", n));
    if (!strips.signs.empty() && strips.signs.size() != n) throw DomainError("sign flags must match the side pairs");
    Cocycle u;
    for (std::size_t i = 0; i < n; ++i) {
        const MinkVec& q = strips.waists[i];
        const OrientedGeodesic& sigma = domain.plus[i];
        const double scale = std::max(1.0, q.euclidean_norm());
        if (!(q.c3 > 0.0) || std::abs(minkowski_dot(q, q) + 1.0) > 1e-9 * scale * scale)
            throw DomainError(fmt::format("waist {} is not a point of the hyperbolic plane", i + 1));
        if (std::abs(minkowski_dot(q, sigma.w())) > 1e-9 * scale)
            throw DomainError(fmt::format("waist {} is off the geodesic of side +{}", i + 1, i + 1));
        const double w = strips.widths[i];
        if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError(fmt::format("width {} is negative", i + 1));
        MinkVec nu = lorentz_normalize(bracket_cross(sigma.w(), q));
        if (minkowski_dot(nu, stem_quadrant(sigma).center()) < 0.0) nu = -nu;
        const int sign = strips.signs.empty() ? 1 : (strips.signs[i] < 0 ? -1 : 1);
        u.uGen.push_back(sign * w * nu);
    }
    return u;
}

std::vector<AffineIso> strip_generators(const SidePairedDomain& domain, const Cocycle& u) {
    std::vector<AffineIso> g;
    for (std::size_t i = 0; i < domain.gens.size(); ++i) g.push_back({domain.gens[i], u.uGen.at(i)});
    return g;
}

ArcPlane arc_plane(const SidePairedDomain& domain, const Cocycle& u, const ArcRef& arc) {
    const int rank = domain.rank();
    if (arc.side == 0 || std::abs(arc.side) > rank) throw DomainError(fmt::format("invalid side index {}", arc.side));
    const auto i = static_cast<std::size_t>(std::abs(arc.side) - 1);
    const AffineIso g = eval_affine(domain.gens, u, arc.tile);
    const FreeWord across = arc.tile * reduce({arc.side}, rank);
    const AffineIso h = eval_affine(domain.gens, u, across);
    const MinkVec sigma = arc.side > 0 ? domain.plus[i].w() : domain.minus[i].w();
    const MinkVec w = g.linear * sigma;
    return {OrientedGeodesic(arc.flip ? -w : w), 0.5 * (g.trans + h.trans)};
}

std::vector<CrookedHalfspace> arc_crooked_planes(const SidePairedDomain& domain, const StripData& strips) {
    const Cocycle u = strip_cocycle(domain, strips);
    std::vector<CrookedHalfspace> hs;
    for (int i = 1; i <= domain.rank(); ++i) {
        for (int side : {-i, i}) {
            const ArcPlane p = arc_plane(domain, u, {FreeWord{}, side, false});
            hs.push_back({p.vertex, p.geod});
        }
    }
    return hs;
}

bool nesting_check(const SidePairedDomain& domain, const Cocycle& u, const ArcRef& a, const ArcRef& b) {
    if (a.tile == b.tile && a.side == b.side) throw ConfigurationError("nesting needs two distinct arcs");
    const ArcPlane pa = arc_plane(domain, u, a);
    const ArcPlane pb = arc_plane(domain, u, b);
    if (!halfplanes_disjoint(pa.geod, pb.geod.reversed()))
        throw ConfigurationError("transverse orientations do not nest the halfplane of the first arc inside the second");
    return crooked_disjoint({pa.vertex, pa.geod}, {pb.vertex, pb.geod.reversed()});
}

bool nesting_check(const SidePairedDomain& domain, const StripData& strips, const ArcRef& a, const ArcRef& b) {
    return nesting_check(domain, strip_cocycle(domain, strips), a, b);
}

}  // namespace margulis
