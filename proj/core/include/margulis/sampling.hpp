#pragma once

#include "margulis/isometry.hpp"
#include "margulis/schottky.hpp"

#include <random>
#include <vector>

namespace margulis {

using Rng = std::mt19937_64;

/// Coordinates drawn i.i.d. normal with the given standard deviation.
MinkVec random_vec(Rng& rng, double scale = 1.0);

/// Ad of R(theta) diag(e^s, e^-s) R(phi) with s uniform in [0, spread].
LinearIso random_lorentz(Rng& rng, double spread = 1.0);

/// A random conjugate of a hyperbolic element with length uniform in [lmin, lmax].
LinearIso random_hyperbolic(Rng& rng, double lmin, double lmax, double spread = 1.0);

enum class Topology { Pants, OneHoledTorus };

/// Four disjoint ideal arcs in side order (-1, +1, -2, +2). Pants place them
/// counterclockwise as -1, +1, -2, +2; the one-holed torus interleaves them as
/// -1, -2, +1, +2.
std::vector<IdealArc> random_arcs(Rng& rng, Topology topology);

/// A rank-2 side-paired domain with random arcs and twists in [-1, 1].
SchottkyData random_domain(Rng& rng, Topology topology);

}  // namespace margulis
