#include "margulis/schottky.hpp"

#include "margulis/errors.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace margulis {

std::vector<OrientedGeodesic> SchottkyData::sides() const {
    std::vector<OrientedGeodesic> s;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        s.push_back(minus[i]);
        s.push_back(plus[i]);
    }
    return s;
}

SchottkyData make_schottky_data(const std::vector<LinearIso>& gens, const std::vector<MinkVec>& ws) {
    if (gens.size() != ws.size()) throw DomainError("one slab vector per generator is required");
    SchottkyData d;
    d.gens = gens;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        d.minus.emplace_back(-ws[i]);
        d.plus.emplace_back(gens[i] * ws[i]);
    }
    return d;
}

MinkVec axis_normal(const LinearIso& A, double shift) {
    const HyperbolicData h = hyperbolic_data(A);
    const MinkVec& w0 = h.wNeutral;
    MinkVec p = x3 + w0.c3 * w0;  // foot of x3 on the axis
    p = p / std::sqrt(-minkowski_dot(p, p));
    MinkVec nu = lorentz_normalize(bracket_cross(w0, p));
    if (minkowski_dot(nu, h.wPlus) < 0.0) nu = -nu;
    return killing_exp(w0, shift - 0.5 * h.length) * nu;
}

double pairing_residual(const SchottkyData& data) {
    double r = 0.0;
    for (std::size_t i = 0; i < data.gens.size(); ++i)
        r = std::max(r, (data.gens[i] * data.minus[i].w() + data.plus[i].w()).euclidean_norm());
    return r;
}

bool schottky_check(const SchottkyData& data) {
    for (std::size_t i = 0; i < data.gens.size(); ++i) {
        if (classify_iso(data.gens[i]).kind != IsoClass::Hyperbolic)
            throw UnsupportedClassError(fmt::format("generator {} is not hyperbolic", i + 1));
    }
    const std::vector<OrientedGeodesic> s = data.sides();
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = a + 1; b < s.size(); ++b)
            if (!halfplanes_disjoint(s[a], s[b])) return false;
    return true;
}

std::string side_label(std::size_t k) { return fmt::format("{}{}", k % 2 == 0 ? '-' : '+', k / 2 + 1); }

std::string Certificate::description() const {
    const std::size_t n = gens.size();
    return fmt::format(
        "the {} affine generators pair {} pairwise disjoint crooked halfspaces; the group is free of rank {} and acts "
        "properly on E^{{2,1}} with a fundamental domain bounded by crooked planes, so the quotient is an open solid "
        "handlebody of genus {}",
        n, 2 * n, n, n);
}

std::string_view to_string(PingPongFailure::Kind k) {
    switch (k) {
        case PingPongFailure::Kind::PairingBroken: return "PairingBroken";
        case PingPongFailure::Kind::Overlap: return "Overlap";
        case PingPongFailure::Kind::PreconditionUnsupported: return "PreconditionUnsupported";
    }
    return "Unknown";
}

PingPongResult pingpong_certify(const std::vector<AffineIso>& gens, const std::vector<CrookedHalfspace>& halfspaces) {
    if (halfspaces.size() != 2 * gens.size())
        throw DomainError(fmt::format("{} generators need {} halfspaces, got {}", gens.size(), 2 * gens.size(),
                                      halfspaces.size()));
    Certificate cert;
    cert.gens = gens;
    cert.halfspaces = halfspaces;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const CrookedHalfspace& hm = halfspaces[2 * i];
        const CrookedHalfspace& hp = halfspaces[2 * i + 1];
        const CrookedHalfspace img = map_halfspace(gens[i], hm);
        const double vScale = std::max({1.0, hp.vertex.euclidean_norm(), img.vertex.euclidean_norm()});
        const double vr = (img.vertex - hp.vertex).euclidean_norm() / vScale;
        const double gr = (img.geod.w() + hp.geod.w()).euclidean_norm() / std::max(1.0, hp.geod.w().euclidean_norm());
        cert.maxPairingResidual = std::max({cert.maxPairingResidual, vr, gr});
        if (vr > kPairingTolerance || gr > kPairingTolerance) {
            return PingPongFailure{PingPongFailure::Kind::PairingBroken, i, i,
                                   fmt::format("generator {} maps CH{} to a halfspace off the complement of CH{} "
                                               "(vertex residual {:.3g}, geodesic residual {:.3g})",
                                               i + 1, side_label(2 * i), side_label(2 * i + 1), vr, gr)};
        }
    }
    for (std::size_t a = 0; a < halfspaces.size(); ++a) {
        for (std::size_t b = a + 1; b < halfspaces.size(); ++b) {
            bool disjoint = false;
            try {
                disjoint = crooked_disjoint(halfspaces[a], halfspaces[b]);
            } catch (const ConfigurationError& e) {
                return PingPongFailure{PingPongFailure::Kind::PreconditionUnsupported, a, b,
                                       fmt::format("CH{} and CH{}: {}", side_label(a), side_label(b), e.what())};
            } catch (const DegenerateError& e) {
                return PingPongFailure{PingPongFailure::Kind::PreconditionUnsupported, a, b,
                                       fmt::format("CH{} and CH{}: {}", side_label(a), side_label(b), e.what())};
            }
            if (!disjoint)
                return PingPongFailure{PingPongFailure::Kind::Overlap, a, b,
                                       fmt::format("CH{} and CH{} intersect", side_label(a), side_label(b))};
        }
    }
    return cert;
}

namespace {

PingPongResult scale_attempt(const SchottkyData& data, const std::vector<MinkVec>& q, double t) {
    std::vector<CrookedHalfspace> hs;
    const std::vector<OrientedGeodesic> sides = data.sides();
    for (std::size_t k = 0; k < sides.size(); ++k) hs.push_back({t * q[k], sides[k]});
    std::vector<AffineIso> gens;
    for (std::size_t i = 0; i < data.gens.size(); ++i)
        gens.push_back({data.gens[i], hs[2 * i + 1].vertex - data.gens[i] * hs[2 * i].vertex});
    PingPongResult r = pingpong_certify(gens, hs);
    if (auto* c = std::get_if<Certificate>(&r)) c->scale = t;
    return r;
}

}  // namespace

Certificate drumm_construct(const SchottkyData& data, const std::vector<double>& widths, const DrummOptions& opts) {
    const std::size_t n = data.gens.size();
    if (widths.size() != 2 * n) throw DomainError(fmt::format("expected {} widths, got {}", 2 * n, widths.size()));
    for (double w : widths)
        if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("widths must be finite and non-negative");
    if (!schottky_check(data)) throw ConfigurationError("slab halfplanes are not pairwise disjoint");

    const std::vector<OrientedGeodesic> sides = data.sides();
    std::vector<MinkVec> q;
    for (std::size_t k = 0; k < sides.size(); ++k) q.push_back(widths[k] * stem_quadrant(sides[k]).center());

    PingPongResult last = PingPongFailure{};
    for (double t = 1.0; t <= opts.tMax; t *= 2.0) {
        last = scale_attempt(data, q, t);
        if (!std::holds_alternative<Certificate>(last)) continue;
        if (t == 1.0) return std::get<Certificate>(last);
        double lo = 0.5 * t, hi = t;
        Certificate best = std::get<Certificate>(last);
        while (hi - lo > opts.bisectTolerance * hi) {
            const double mid = 0.5 * (lo + hi);
            PingPongResult r = scale_attempt(data, q, mid);
            if (auto* c = std::get_if<Certificate>(&r)) {
                best = *c;
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return best;
    }
    const auto& f = std::get<PingPongFailure>(last);
    throw ConstructionError(fmt::format("no scale up to {} certifies: {} ({})", opts.tMax, to_string(f.kind), f.detail));
}

Cocycle certificate_cocycle(const Certificate& c) {
    Cocycle u;
    for (const AffineIso& g : c.gens) u.uGen.push_back(g.trans);
    return u;
}

std::vector<LinearIso> certificate_linear(const Certificate& c) {
    std::vector<LinearIso> l;
    for (const AffineIso& g : c.gens) l.push_back(g.linear);
    return l;
}

MinkVec ideal_point(double phi) { return {std::cos(phi), std::sin(phi), 1.0}; }

MinkVec arc_geodesic(double a, double b) {
    const Eigen::Vector3d c = ideal_point(a).to_eigen().cross(ideal_point(b).to_eigen());
    MinkVec n = MinkVec::from_eigen(lorentz_gram() * c);
    if (minkowski_dot(n, ideal_point(0.5 * (a + b))) < 0.0) n = -n;
    return lorentz_normalize(n);
}

namespace {

Eigen::Matrix3d frame(const MinkVec& sigma) {
    const OrientedGeodesic g(sigma);
    const MinkVec t = 0.5 * (g.nPlus() + g.nMinus());
    const MinkVec s = 0.5 * (g.nPlus() - g.nMinus());
    Eigen::Matrix3d f;
    f.col(0) = g.w().to_eigen();
    f.col(1) = s.to_eigen();
    f.col(2) = t.to_eigen();
    return f;
}

}  // namespace

LinearIso pair_sides(const OrientedGeodesic& sigmaMinus, const OrientedGeodesic& sigmaPlus, double twist) {
    const LinearIso fm = LinearIso::unchecked(frame(sigmaMinus.w()));
    const LinearIso fp = LinearIso::unchecked(frame(-sigmaPlus.w()));
    const LinearIso g = killing_exp(sigmaPlus.w(), twist) * fp * fm.inverse();
    return LinearIso(g.matrix());
}

SchottkyData domain_from_sides(const std::vector<MinkVec>& sides, const std::vector<double>& twists) {
    if (sides.size() % 2 != 0 || sides.empty()) throw DomainError("a side-paired domain needs an even, nonzero number of sides");
    if (twists.size() != sides.size() / 2) throw DomainError("one twist per side pair is required");
    SchottkyData d;
    for (std::size_t i = 0; i < twists.size(); ++i) {
        d.minus.emplace_back(sides[2 * i]);
        d.plus.emplace_back(sides[2 * i + 1]);
        d.gens.push_back(pair_sides(d.minus.back(), d.plus.back(), twists[i]));
    }
    return d;
}

SchottkyData domain_from_arcs(const std::vector<IdealArc>& arcs, const std::vector<double>& twists) {
    std::vector<MinkVec> sides;
    for (const IdealArc& a : arcs) {
        if (!(a.end > a.start) || a.end - a.start >= 2.0 * std::numbers::pi) throw DomainError("arc must satisfy start < end < start + 2 pi");
        sides.push_back(arc_geodesic(a.start, a.end));
    }
    return domain_from_sides(sides, twists);
}

}  // namespace margulis
