#include "selftest.hpp"

#include "margulis/errors.hpp"
#include "margulis/sampling.hpp"

#include <cmath>

namespace margulis::cli {

namespace {

Json suite(const char* name, int checks, int failures, double worst) {
    Json j;
    j["suite"] = name;
    j["checks"] = checks;
    j["failures"] = failures;
    j["worst"] = worst;
    j["passed"] = failures == 0;
    return j;
}

Json alpha_invariants(Rng& rng) {
    int checks = 0, failures = 0;
    double worst = 0.0;
    auto rel = [&](double err, double scale) {
        const double r = err / std::max(1.0, scale);
        worst = std::max(worst, r);
        ++checks;
        if (!(r <= 1e-8)) ++failures;
    };
    for (int k = 0; k < 200; ++k) {
        const AffineIso g{random_hyperbolic(rng, 0.5, 3.0), random_vec(rng)};
        const AffineIso eta{random_lorentz(rng, 0.7), random_vec(rng)};
        const double a = margulis_alpha(g);
        const double scale = std::abs(a) + g.trans.euclidean_norm();
        rel(std::abs(margulis_alpha(eta * g * eta.inverse()) - a), scale);
        const MinkVec w = hyperbolic_data(g.linear).wNeutral;
        for (int p = 0; p < 3; ++p) {
            const MinkVec x = random_vec(rng, 3.0);
            rel(std::abs(minkowski_dot(g(x) - x, w) - a), scale + x.euclidean_norm());
        }
        AffineIso pw = g;
        for (int n = 2; n <= 3; ++n) {
            pw = pw * g;
            rel(std::abs(margulis_alpha(pw) - n * a), n * scale);
        }
        rel(std::abs(margulis_alpha(g.inverse()) - a), scale);
        const MinkVec v = random_vec(rng);
        const AffineIso fixed{g.linear, v - g.linear * v};
        rel(std::abs(margulis_alpha(fixed)), v.euclidean_norm());
    }
    return suite("alpha-invariants", checks, failures, worst);
}

Json covering(Rng& rng) {
    int checks = 0, failures = 0;
    for (int k = 0; k < 1000; ++k) {
        MinkVec w = random_vec(rng);
        if (minkowski_dot(w, w) < 0.05) continue;
        const OrientedGeodesic l(w);
        const MinkVec v = random_vec(rng, 2.0);
        const Membership a = ch_contains({MinkVec{}, l}, v);
        const Membership b = ch_contains({MinkVec{}, l.reversed()}, v);
        const int interiors = (a == Membership::Interior) + (b == Membership::Interior);
        const bool ok = (interiors == 1 && a != Membership::Boundary && b != Membership::Boundary) ||
                        (a == Membership::Boundary && b == Membership::Boundary);
        ++checks;
        if (!ok) ++failures;
    }
    return suite("crooked-covering", checks, failures, 0.0);
}

Json cocycle_split(Rng& rng) {
    int checks = 0, failures = 0;
    double worst = 0.0;
    std::uniform_int_distribution<int> letter(0, 3);
    for (int k = 0; k < 200; ++k) {
        const std::vector<LinearIso> gens{random_hyperbolic(rng, 0.5, 2.0), random_hyperbolic(rng, 0.5, 2.0)};
        const Cocycle u{{random_vec(rng), random_vec(rng)}};
        std::vector<int> a, b;
        for (int i = 0; i < 4; ++i) a.push_back(letter(rng) % 2 ? 1 + letter(rng) % 2 : -(1 + letter(rng) % 2));
        for (int i = 0; i < 4; ++i) b.push_back(letter(rng) % 2 ? 1 + letter(rng) % 2 : -(1 + letter(rng) % 2));
        const FreeWord x = reduce(a), y = reduce(b);
        const AffineIso gx = eval_affine(gens, u, x), gy = eval_affine(gens, u, y), gxy = eval_affine(gens, u, x * y);
        const MinkVec r = gxy.trans - gx.trans - gx.linear * gy.trans;
        const double e = r.euclidean_norm() / std::max(1.0, gxy.trans.euclidean_norm());
        worst = std::max(worst, e);
        ++checks;
        if (!(e <= 1e-10)) ++failures;
    }
    return suite("cocycle-identity", checks, failures, worst);
}

Json pipelines(Rng& rng) {
    int checks = 0, failures = 0;
    for (int k = 0; k < 6; ++k) {
        const SidePairedDomain d = random_domain(rng, k % 2 ? Topology::Pants : Topology::OneHoledTorus);
        ++checks;
        try {
            const Certificate c = drumm_construct(d, {1.0, 1.0, 1.0, 1.0});
            const SignReport r = sign_report(spectrum_scan(certificate_linear(c), certificate_cocycle(c), 5));
            if (!r.inconclusive()) ++failures;
        } catch (const Error&) {
            ++failures;
        }
        ++checks;
        const StripData s = StripData::uniform(d);
        const Cocycle u = strip_cocycle(d, s);
        if (!std::holds_alternative<Certificate>(pingpong_certify(strip_generators(d, u), arc_crooked_planes(d, s))))
            ++failures;
    }
    return suite("construction-pipelines", checks, failures, 0.0);
}

Json gradients(Rng& rng) {
    int checks = 0, failures = 0;
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const SidePairedDomain d = random_domain(rng, k % 2 ? Topology::Pants : Topology::OneHoledTorus);
        const Cocycle u{{random_vec(rng), random_vec(rng)}};
        for (const char* w : {"a", "ab", "aB"}) {
            const LengthDerivative r = length_derivative(d.gens, u, parse_word(w, 2), 1e-5);
            worst = std::max(worst, r.relErr);
            ++checks;
            if (!(r.relErr <= 1e-5)) ++failures;
        }
    }
    return suite("length-derivative", checks, failures, worst);
}

}  // namespace

Json run_selftest(std::uint64_t seed) {
    Rng rng(seed);
    Json suites = Json::array();
    suites.push_back(alpha_invariants(rng));
    suites.push_back(covering(rng));
    suites.push_back(cocycle_split(rng));
    suites.push_back(pipelines(rng));
    suites.push_back(gradients(rng));
    bool all = true;
    for (const Json& s : suites) all = all && s.at("passed").get<bool>();
    Json out;
    out["command"] = "selftest";
    out["seed"] = seed;
    out["suites"] = suites;
    out["passed"] = all;
    return out;
}

}  // namespace margulis::cli
