#include "margulis/sampling.hpp"

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <numbers>

namespace margulis {

namespace {

Eigen::Matrix2d rotation(double t) {
    Eigen::Matrix2d r;
    r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    return r;
}

Eigen::Matrix2d diag(double s) {
    Eigen::Matrix2d d;
    d << std::exp(s), 0.0, 0.0, std::exp(-s);
    return d;
}

}  // namespace

MinkVec random_vec(Rng& rng, double scale) {
    std::normal_distribution<double> n(0.0, scale);
    const double a = n(rng), b = n(rng), c = n(rng);
    return {a, b, c};
}

LinearIso random_lorentz(Rng& rng, double spread) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> s(0.0, spread);
    const double t = angle(rng), u = s(rng), p = angle(rng);
    return adjoint_rep(rotation(t) * diag(u) * rotation(p));
}

LinearIso random_hyperbolic(Rng& rng, double lmin, double lmax, double spread) {
    std::uniform_real_distribution<double> len(lmin, lmax);
    const double l = len(rng);
    const LinearIso c = random_lorentz(rng, spread);
    return c * adjoint_rep(diag(0.5 * l)) * c.inverse();
}

std::vector<IdealArc> random_arcs(Rng& rng, Topology topology) {
    std::uniform_real_distribution<double> weight(0.5, 1.5);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::array<double, 8> seg{};
    double total = 0.0;
    for (double& x : seg) total += (x = weight(rng));
    double phi = angle(rng);
    std::array<IdealArc, 4> geometric{};
    for (int k = 0; k < 4; ++k) {
        const double a = seg[2 * k] * 2.0 * std::numbers::pi / total;
        const double g = seg[2 * k + 1] * 2.0 * std::numbers::pi / total;
        geometric[k] = {phi, phi + a};
        phi += a + g;
    }
    // geometric position of the sides -1, +1, -2, +2
    const std::array<int, 4> slot = topology == Topology::Pants ? std::array<int, 4>{0, 1, 2, 3}
                                                                : std::array<int, 4>{0, 2, 1, 3};
    std::vector<IdealArc> arcs;
    for (int k = 0; k < 4; ++k) arcs.push_back(geometric[slot[k]]);
    return arcs;
}

SchottkyData random_domain(Rng& rng, Topology topology) {
    std::uniform_real_distribution<double> tw(-1.0, 1.0);
    const std::vector<IdealArc> arcs = random_arcs(rng, topology);
    const double t1 = tw(rng), t2 = tw(rng);
    return domain_from_arcs(arcs, {t1, t2});
}

}  // namespace margulis
