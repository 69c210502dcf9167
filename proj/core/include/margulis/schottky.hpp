#pragma once

#include "margulis/crooked.hpp"
#include "margulis/freegroup.hpp"
#include "margulis/isometry.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace margulis {

/// Linear Schottky data: generators A_i with slab geodesics
/// m_{-i} = l_{-w_i} and m_{+i} = l_{A_i w_i}, so that A_i maps the closed
/// complement of h(m_{-i}) onto h(m_{+i}).
struct SchottkyData {
    std::vector<LinearIso> gens;
    std::vector<OrientedGeodesic> minus;
    std::vector<OrientedGeodesic> plus;

    int rank() const { return static_cast<int>(gens.size()); }

    /// Halfplane geodesics in side order m_{-1}, m_{+1}, m_{-2}, m_{+2}, ...
    std::vector<OrientedGeodesic> sides() const;
};

/// Builds m_{-i} = l_{-w_i}, m_{+i} = l_{A_i w_i}.
SchottkyData make_schottky_data(const std::vector<LinearIso>& gens, const std::vector<MinkVec>& ws);

/// Standard slab vector w for a hyperbolic A: orthogonal to the axis, pointing
/// to the attracting end, placed so that the slab between l_{-w} and l_{Aw} is
/// centred at the foot of x3 on the axis moved by `shift` towards the attracting end.
MinkVec axis_normal(const LinearIso& A, double shift = 0.0);

/// Largest |A_i m_{-i}.w + m_{+i}.w| over i.
double pairing_residual(const SchottkyData& data);

/// All closed halfplanes pairwise disjoint. Throws UnsupportedClassError for a
/// non-hyperbolic generator.
bool schottky_check(const SchottkyData& data);

/// Label of side k in side order: "-1", "+1", "-2", ...
std::string side_label(std::size_t k);

struct Certificate {
    std::vector<AffineIso> gens;
    std::vector<CrookedHalfspace> halfspaces;  ///< side order CH_{-1}, CH_{+1}, ...
    double maxPairingResidual = 0.0;
    double scale = 1.0;  ///< t of the stem-quadrant search, 1 otherwise

    std::string description() const;
};

struct PingPongFailure {
    enum class Kind { PairingBroken, Overlap, PreconditionUnsupported };
    Kind kind = Kind::Overlap;
    std::size_t i = 0;  ///< generator index (PairingBroken) or side index
    std::size_t j = 0;  ///< second side index
    std::string detail;
};

std::string_view to_string(PingPongFailure::Kind k);

using PingPongResult = std::variant<Certificate, PingPongFailure>;

/// Pairing tolerance on vertices and geodesic vectors (relative to their size).
inline constexpr double kPairingTolerance = 1e-9;

/// Checks exact pairing of CH_{-i} to the complement of CH_{+i} under gens[i]
/// and pairwise disjointness of all 2n halfspaces.
PingPongResult pingpong_certify(const std::vector<AffineIso>& gens, const std::vector<CrookedHalfspace>& halfspaces);

struct DrummOptions {
    double tMax = 1048576.0;
    double bisectTolerance = 1e-3;
};

/// Stem-quadrant construction: vertices t q_{+-i} in the stem quadrants, translational
/// parts u_i = p_{+i} - A_i p_{-i}, and a search on t. widths has 2n entries in
/// side order. Throws ConfigurationError if schottky_check fails and
/// ConstructionError when no t up to tMax certifies.
Certificate drumm_construct(const SchottkyData& data, const std::vector<double>& widths, const DrummOptions& opts = {});

/// The cocycle of a certificate's generators.
Cocycle certificate_cocycle(const Certificate& c);
std::vector<LinearIso> certificate_linear(const Certificate& c);

/// Future null vector of the ideal point at angle phi in the disk model.
MinkVec ideal_point(double phi);

/// Unit spacelike vector of the geodesic with ideal endpoints at angles a < b,
/// oriented so that its positive halfplane is bounded by the arc (a, b).
MinkVec arc_geodesic(double a, double b);

/// The isometry mapping sigmaMinus to -sigmaPlus, followed by a translation of
/// length `twist` along the geodesic of sigmaPlus.
LinearIso pair_sides(const OrientedGeodesic& sigmaMinus, const OrientedGeodesic& sigmaPlus, double twist);

/// A side-paired polygon from 2n outward side vectors (side order) and n twists.
SchottkyData domain_from_sides(const std::vector<MinkVec>& sides, const std::vector<double>& twists);

/// Ideal arc (start, end) in radians, counterclockwise, bounding a side halfplane.
struct IdealArc {
    double start = 0.0;
    double end = 0.0;
};

/// Same as domain_from_sides with each side given by its ideal arc.
SchottkyData domain_from_arcs(const std::vector<IdealArc>& arcs, const std::vector<double>& twists);

}  // namespace margulis
