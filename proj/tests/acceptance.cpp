// Acceptance suites. `acceptance` runs all of them; `acceptance N` runs one.
// Each prints a single PASS/FAIL line.

#include "margulis/crooked.hpp"
#include "margulis/deformation.hpp"
#include "margulis/errors.hpp"
#include "margulis/sampling.hpp"
#include "margulis/schottky.hpp"
#include "margulis/strips.hpp"
#include "margulis_cli/cli.hpp"
#include "margulis_cli/config.hpp"
#include "oracles.hpp"

#include <Eigen/SVD>
#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <numeric>
#include <random>
#include <regex>
#include <sstream>
#include <thread>

using namespace margulis;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

void parallel(std::size_t n, const std::function<void(std::size_t)>& f) {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers(); ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) f(i);
        });
    for (auto& th : pool) th.join();
}

FreeWord random_word(Rng& rng, int maxLen) {
    std::uniform_int_distribution<int> L(1, maxLen), G(0, 3);
    const int alphabet[] = {1, -1, 2, -2};
    while (true) {
        std::vector<int> w(static_cast<std::size_t>(L(rng)));
        for (int& x : w) x = alphabet[G(rng)];
        const FreeWord r = cyclic_reduce(reduce(w));
        if (!r.empty()) return r;
    }
}

double magnitude(const AffineIso& g) {
    return g.trans.euclidean_norm() * hyperbolic_data(g.linear).wNeutral.euclidean_norm();
}

AffineIso power(const AffineIso& g, int n) {
    AffineIso out;
    const AffineIso base = n > 0 ? g : g.inverse();
    for (int k = 0; k < std::abs(n); ++k) out = out * base;
    return out;
}

Topology topology_of(std::size_t i) { return i % 2 ? Topology::OneHoledTorus : Topology::Pants; }

// 1. Invariance properties of alpha over random hyperbolic affine isometries.
Outcome alpha_invariance() {
    Rng rng(1001);
    constexpr int kCases = 1000;
    double worstBase = 0, worstConj = 0, worstPow = 0, worstFixed = 0;
    int fixedMismatch = 0;
    std::normal_distribution<double> N(0, 1);
    for (int i = 0; i < kCases; ++i) {
        const LinearIso A = random_hyperbolic(rng, 0.3, 3.0, 1.0);
        const HyperbolicData h = hyperbolic_data(A);
        const AffineIso g{A, random_vec(rng, 2.0)};
        const double a = margulis_alpha(g);
        const double mag = std::max(std::abs(a), magnitude(g));

        for (int k = 0; k < 10; ++k) {
            const MinkVec p = random_vec(rng, 3.0);
            const MinkVec disp = g(p) - p;
            const double scale = mag + disp.euclidean_norm() * h.wNeutral.euclidean_norm();
            worstBase = std::max(worstBase, std::abs(minkowski_dot(disp, h.wNeutral) - a) / scale);
        }
        const AffineIso eta{random_lorentz(rng, 0.7), random_vec(rng)};
        const AffineIso c = eta * g * eta.inverse();
        worstConj = std::max(worstConj, std::abs(margulis_alpha(c) - a) / std::max(mag, magnitude(c)));
        for (int n : {-3, -2, -1, 1, 2, 3}) {
            const AffineIso gn = power(g, n);
            worstPow = std::max(worstPow,
                                std::abs(margulis_alpha(gn) - std::abs(n) * a) / std::max(std::abs(n) * mag, magnitude(gn)));
        }
        // Fixed points: image(I - A) is found by SVD, independent of the eigendata.
        const Eigen::JacobiSVD<Eigen::Matrix3d> svd(Eigen::Matrix3d::Identity() - A.matrix(), Eigen::ComputeFullU);
        const Eigen::Vector3d kernelDir = svd.matrixU().col(2);
        auto off_image = [&](const MinkVec& u) { return std::abs(kernelDir.dot(u.to_eigen())) / u.euclidean_norm(); };
        const MinkVec v = random_vec(rng);
        const AffineIso fixer{A, v - A * v};
        worstFixed = std::max(worstFixed, std::abs(margulis_alpha(fixer)) / std::max(1e-300, magnitude(fixer)));
        if (off_image(fixer.trans) > 1e-8) ++fixedMismatch;
        // And the converse: a nonzero alpha pushes the translation off the image.
        const double c0 = std::pow(10.0, -3.0 * std::uniform_real_distribution<double>(0, 1)(rng)) * (N(rng) > 0 ? 1 : -1);
        const AffineIso mover{A, (v - A * v) + c0 * h.wNeutral};
        const bool alphaZero = std::abs(margulis_alpha(mover)) <= 1e-8 * std::max(std::abs(c0), magnitude(mover));
        if (alphaZero || off_image(mover.trans) <= 1e-8) ++fixedMismatch;
        const bool genericZero = std::abs(a) <= 1e-8 * mag;
        if (genericZero != (off_image(g.trans) <= 1e-8)) ++fixedMismatch;
    }
    const double worst = std::max({worstBase, worstConj, worstPow, worstFixed});
    return {worst <= 1e-8 && fixedMismatch == 0,
            fmt::format("{} isometries; worst relative error base point {:.2e}, conjugation {:.2e}, powers {:.2e}, "
                        "fixed-point alpha {:.2e}; fixed-point equivalence mismatches {}",
                        kCases, worstBase, worstConj, worstPow, worstFixed, fixedMismatch)};
}

// 2. Length derivative against alpha on random Schottky pairs.
Outcome length_derivative_identity() {
    Rng rng(1002);
    constexpr int kCases = 120;
    double worst = 0;
    int failures = 0;
    for (int i = 0; i < kCases; ++i) {
        const SchottkyData d = random_domain(rng, topology_of(static_cast<std::size_t>(i)));
        const Cocycle u{{random_vec(rng), random_vec(rng)}};
        const FreeWord w = random_word(rng, 6);
        const LengthDerivative ld = length_derivative(d.gens, u, w, 1e-5);
        worst = std::max(worst, ld.relErr);
        if (!(ld.relErr <= 1e-5)) ++failures;
    }
    return {failures == 0, fmt::format("{} instances at h = 1e-5; worst relative error {:.2e}", kCases, worst)};
}

// 3. Stem-quadrant disjointness against boundary sampling.
Outcome crooked_oracle() {
    Rng rng(1003);
    constexpr std::size_t kCases = 240;
    std::vector<oracle::CrookedPair> pairs;
    for (std::size_t i = 0; i < kCases; ++i) pairs.push_back(oracle::random_admissible_pair(rng, i % 6 == 0));
    struct Row {
        bool excluded = false, verdict = false, oracleIntersect = false, slackPositive = false;
        double score = 0;
    };
    std::vector<Row> rows(kCases);
    parallel(kCases, [&](std::size_t i) {
        Row& r = rows[i];
        const double slack = oracle::pair_slack(pairs[i]);
        if (std::abs(slack) <= 1e-12) {
            r.excluded = true;
            return;
        }
        r.slackPositive = slack > 0;
        r.verdict = crooked_disjoint(pairs[i].H1, pairs[i].H2);
        const oracle::SamplingResult s = oracle::sample_intersection(pairs[i].H1, pairs[i].H2, 64);
        r.oracleIntersect = s.intersect;
        r.score = s.bestScore;
    });
    int compared = 0, disjoint = 0, samplingDisagree = 0, slackDisagree = 0;
    for (const Row& r : rows) {
        if (r.excluded) continue;
        ++compared;
        disjoint += r.verdict;
        samplingDisagree += r.verdict == r.oracleIntersect;
        slackDisagree += r.verdict != r.slackPositive;
    }
    return {compared >= 200 && samplingDisagree == 0 && slackDisagree == 0,
            fmt::format("{} configurations ({} disjoint, {} within margin); disagreements with sampling {}, "
                        "with cone slack {}",
                        compared, disjoint, kCases - static_cast<std::size_t>(compared), samplingDisagree,
                        slackDisagree)};
}

// 4. Stem-quadrant construction on random Schottky pairs, then one-signed spectra.
Outcome schottky_pipeline() {
    Rng rng(1004);
    constexpr std::size_t kCases = 50;
    std::vector<SchottkyData> domains;
    std::vector<std::vector<double>> widths;
    std::uniform_real_distribution<double> W(0.5, 2.0);
    for (std::size_t i = 0; i < kCases; ++i) {
        domains.push_back(random_domain(rng, topology_of(i)));
        widths.push_back({W(rng), W(rng), W(rng), W(rng)});
    }
    std::vector<int> status(kCases, 0);  // 1 certified + one-signed, -1 not certified, -2 mixed spectrum
    parallel(kCases, [&](std::size_t i) {
        try {
            const Certificate c = drumm_construct(domains[i], widths[i]);
            if (!std::holds_alternative<Certificate>(pingpong_certify(c.gens, c.halfspaces))) {
                status[i] = -1;
                return;
            }
            const Spectrum s = spectrum_scan(certificate_linear(c), certificate_cocycle(c), 8);
            status[i] = sign_report(s).inconclusive() ? 1 : -2;
        } catch (const Error&) {
            status[i] = -1;
        }
    });
    const auto certified = std::count_if(status.begin(), status.end(), [](int s) { return s != -1; });
    const auto oneSigned = std::count(status.begin(), status.end(), 1);
    return {oneSigned == static_cast<long>(kCases),
            fmt::format("{} random pairs; {} certified, {} with one-signed spectra up to length 8", kCases,
                        certified, oneSigned)};
}

std::string write_config(const std::string& name, const std::vector<LinearIso>& gens, const Cocycle& u, int maxLen) {
    cli::Json doc;
    cli::Json g = cli::Json::array();
    for (const LinearIso& A : gens) g.push_back(cli::to_json(Eigen::MatrixXd(A.matrix())));
    doc["generators"] = g;
    cli::Json t = cli::Json::array();
    for (const MinkVec& v : u.uGen) t.push_back(cli::to_json(v));
    doc["translations"] = t;
    doc["scan"] = {{"maxLen", maxLen}};
    const std::filesystem::path p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << doc.dump(2);
    return p.string();
}

// 5. Mixed signs are detected and block certification; one-signed scans stay inconclusive.
Outcome opposite_signs() {
    Rng rng(1005);
    constexpr int kCases = 20;
    int mixedOk = 0, blocked = 0, cliMixed = 0, sameSign = 0, sameSignOk = 0, cliInconclusive = 0;
    std::uniform_real_distribution<double> C(0.2, 2.0);
    const std::string tag = std::to_string(::getpid());
    for (int i = 0; i < kCases; ++i) {
        const SchottkyData d = random_domain(rng, topology_of(static_cast<std::size_t>(i)));
        const MinkVec wa = hyperbolic_data(d.gens[0]).wNeutral, wb = hyperbolic_data(d.gens[1]).wNeutral;
        // Components of the form v - A v leave alpha(a) and alpha(b) unchanged.
        const MinkVec va = random_vec(rng), vb = random_vec(rng);
        const Cocycle mixed{{C(rng) * wa + (va - d.gens[0] * va), -C(rng) * wb + (vb - d.gens[1] * vb)}};
        const Spectrum s = spectrum_scan(d.gens, mixed, 8);
        const SignReport r = sign_report(s);
        const bool witnessesListed =
            r.positive && r.negative && r.positive->alpha > 0 && r.negative->alpha < 0 &&
            std::any_of(s.entries.begin(), s.entries.end(), [&](const SpectrumEntry& e) { return e.word == r.positive->word; }) &&
            std::any_of(s.entries.begin(), s.entries.end(), [&](const SpectrumEntry& e) { return e.word == r.negative->word; });
        if (r.verdict == Verdict::Mixed && witnessesListed) ++mixedOk;

        // Halfspaces exactly paired by the mixed generators, at several scales: never certified.
        const std::vector<AffineIso> gens = strip_generators(d, mixed);
        bool allFail = true;
        for (double t : {0.25, 1.0, 4.0, 16.0}) {
            std::vector<CrookedHalfspace> hs;
            for (std::size_t k = 0; k < 2; ++k) {
                const MinkVec pm = t * stem_quadrant(d.minus[k]).center();
                hs.push_back({pm, d.minus[k]});
                hs.push_back({gens[k](pm), d.plus[k]});
            }
            const PingPongResult res = pingpong_certify(gens, hs);
            if (std::holds_alternative<Certificate>(res) ||
                std::get<PingPongFailure>(res).kind == PingPongFailure::Kind::PairingBroken)
                allFail = false;
        }
        const Certificate honest = drumm_construct(d, {1, 1, 1, 1});
        if (std::holds_alternative<Certificate>(pingpong_certify(gens, honest.halfspaces))) allFail = false;
        if (allFail) ++blocked;

        std::ostringstream out, err;
        const int code = cli::run({"report", write_config("acc_mixed_" + tag + ".json", d.gens, mixed, 8)}, out, err);
        if (code == cli::kCertificationFailed && cli::Json::parse(out.str())["verdict"] == "Mixed") ++cliMixed;

        // Same-sign perturbations of a certified deformation.
        const Cocycle base = certificate_cocycle(honest);
        for (double eps : {1e-3, 1e-2, 5e-2}) {
            const Cocycle pert = base + eps * Cocycle{{random_vec(rng), random_vec(rng)}};
            const SignReport pr = sign_report(spectrum_scan(d.gens, pert, 8));
            if (pr.verdict == Verdict::Mixed || pr.verdict == Verdict::Zero) continue;
            ++sameSign;
            const std::string summary = pr.summary();
            if (pr.inconclusive() && summary.find("inconclusive") != std::string::npos &&
                summary.find("acts properly") == std::string::npos)
                ++sameSignOk;
            std::ostringstream o2, e2;
            const int c2 = cli::run({"report", write_config("acc_same_" + tag + ".json", d.gens, pert, 8)}, o2, e2);
            if (c2 == cli::kInconclusive && cli::Json::parse(o2.str())["inconclusive"].get<bool>()) ++cliInconclusive;
        }
    }
    const bool pass = mixedOk == kCases && blocked == kCases && cliMixed == kCases && sameSign >= kCases &&
                      sameSignOk == sameSign && cliInconclusive == sameSign;
    return {pass, fmt::format("{} mixed cocycles: {} Mixed with witnesses, {} never certified, {} exit 3 from report; "
                              "{} same-sign perturbations: {} inconclusive, {} exit 4",
                              kCases, mixedOk, blocked, cliMixed, sameSign, sameSignOk, cliInconclusive)};
}

// 6. Pants cone: the triangle of the a, b, ab lines.
struct Line2 {
    double a, b, c;
    double at(double X, double Y) const { return a * X + b * Y + c; }
};

PlotPoint intersect(const Line2& l, const Line2& m) {
    const double det = l.a * m.b - l.b * m.a;
    return {(l.b * m.c - l.c * m.b) / det, (l.c * m.a - l.a * m.c) / det};
}

std::vector<PlotPoint> svg_polygon(const std::string& svg) {
    std::vector<PlotPoint> pts;
    const std::regex poly("<polygon[^>]*points=\"([^\"]*)\"");
    std::smatch m;
    if (!std::regex_search(svg, m, poly)) return pts;
    std::istringstream in(m[1].str());
    std::string tok;
    while (in >> tok) {
        const auto comma = tok.find(',');
        pts.push_back({std::stod(tok.substr(0, comma)), -std::stod(tok.substr(comma + 1))});
    }
    return pts;
}

Outcome pants_cone() {
    Rng rng(1006);
    const SchottkyData d = domain_from_arcs({{0.2, 1.3}, {1.7, 2.8}, {3.3, 4.4}, {4.8, 5.9}}, {0.3, -0.2});
    const H1Chart chart = h1_chart(d.gens);
    const ConePlot plot = cone_plot(d.gens, 8, chart, {ChartChoice::Auto, false, kClassifyTolerance, static_cast<int>(workers())});
    std::vector<Line2> lines;
    for (const char* w : {"a", "b", "ab"}) {
        const Eigen::VectorXd cov = *alpha_covector(d.gens, parse_word(w, 2));
        Eigen::Vector3d c;
        for (int k = 0; k < 3; ++k) c(k) = cov.dot(flatten(chart.basis[static_cast<std::size_t>(k)]));
        lines.push_back({c.dot(plot.e1), c.dot(plot.e2), c.dot(plot.normal)});
    }
    const std::vector<PlotPoint> tri{intersect(lines[1], lines[2]), intersect(lines[0], lines[2]), intersect(lines[0], lines[1])};
    const PlotPoint centroid{(tri[0].x + tri[1].x + tri[2].x) / 3, (tri[0].y + tri[1].y + tri[2].y) / 3};
    const double orient = lines[0].at(centroid.x, centroid.y) > 0 ? 1.0 : -1.0;

    auto cocycle_at = [&](double X, double Y) {
        Eigen::Vector3d x = plot.lift(X, Y);
        return chart.cocycle(orient * x);
    };
    std::uniform_real_distribution<double> U(0, 1), Box(-kPlotHalfWidth, kPlotHalfWidth);
    constexpr int kPoints = 100;
    std::vector<std::pair<PlotPoint, bool>> samples;  // point, inside
    while (samples.size() < kPoints) {
        double w0 = U(rng), w1 = U(rng), w2 = U(rng);
        const double s = w0 + w1 + w2;
        w0 /= s, w1 /= s, w2 /= s;
        if (std::min({w0, w1, w2}) < 0.02) continue;
        samples.push_back({{w0 * tri[0].x + w1 * tri[1].x + w2 * tri[2].x, w0 * tri[0].y + w1 * tri[1].y + w2 * tri[2].y}, true});
    }
    while (samples.size() < 2 * kPoints) {
        const double X = Box(rng), Y = Box(rng);
        double worst = 1e300;
        for (const Line2& l : lines) worst = std::min(worst, orient * l.at(X, Y) / std::hypot(l.a, l.b));
        if (worst > -0.02) continue;  // inside or too close to a side
        samples.push_back({{X, Y}, false});
    }
    std::vector<int> ok(samples.size(), 0);
    parallel(samples.size(), [&](std::size_t i) {
        const auto& [p, inside] = samples[i];
        const Spectrum s = spectrum_scan(d.gens, cocycle_at(p.x, p.y), 8);
        double lo = 1e300;
        for (const SpectrumEntry& e : s.entries) lo = std::min(lo, e.ratio);
        ok[i] = inside ? lo > 0 : lo < 0;
    });
    const int insideOk = std::accumulate(ok.begin(), ok.begin() + kPoints, 0);
    const int outsideOk = std::accumulate(ok.begin() + kPoints, ok.end(), 0);

    const std::vector<PlotPoint> region = svg_polygon(render_svg(plot, ""));
    double worstVertex = 0;
    for (const PlotPoint& v : tri) {
        double best = 1e300;
        for (const PlotPoint& r : region) best = std::min(best, std::hypot(r.x - v.x, r.y - v.y));
        worstVertex = std::max(worstVertex, best);
    }
    const bool shape = region.size() == 3 && worstVertex <= 1e-6;
    return {insideOk == kPoints && outsideOk == kPoints && shape,
            fmt::format("{} of {} inside points all positive, {} of {} outside points with a negative witness; "
                        "SVG region has {} vertices, worst distance to the line intersections {:.1e}",
                        insideOk, kPoints, outsideOk, kPoints, region.size(), worstVertex)};
}

// 7. Strip deformations with unit widths.
Outcome strip_pipeline() {
    Rng rng(1007);
    constexpr std::size_t kCases = 24;
    std::vector<SchottkyData> domains;
    for (std::size_t i = 0; i < kCases; ++i) domains.push_back(random_domain(rng, topology_of(i)));
    std::vector<int> certified(kCases, 0), nestOk(kCases, 0), nestTotal(kCases, 0);
    parallel(kCases, [&](std::size_t i) {
        const SidePairedDomain& d = domains[i];
        const StripData strips = StripData::uniform(d, 1.0);
        const Cocycle u = strip_cocycle(d, strips);
        certified[i] = std::holds_alternative<Certificate>(
            pingpong_certify(strip_generators(d, u), arc_crooked_planes(d, strips)));
        for (int s : {-1, 1, -2, 2}) {
            for (int t : {-1, 1, -2, 2}) {
                if (s == t) continue;
                ++nestTotal[i];
                nestOk[i] += nesting_check(d, strips, {FreeWord{}, s, false}, {FreeWord{}, t, true});
            }
        }
    });
    const int cert = std::accumulate(certified.begin(), certified.end(), 0);
    const int ok = std::accumulate(nestOk.begin(), nestOk.end(), 0);
    const int total = std::accumulate(nestTotal.begin(), nestTotal.end(), 0);
    return {cert == static_cast<int>(kCases) && ok == total,
            fmt::format("{} pants and one-holed-torus domains: {} certified; nesting {} of {}", kCases, cert, ok, total)};
}

// 8. Additivity error shrinks as translation lengths grow.
Outcome additivity() {
    Rng rng(1008);
    std::normal_distribution<double> N(0, 1);
    std::vector<double> medians;
    int rejectedProducts = 0;
    for (double L : {2.0, 4.0, 8.0}) {
        std::vector<double> errs;
        while (errs.size() < 300) {
            const LinearIso A = random_hyperbolic(rng, L, L, 1.0);
            const LinearIso B = random_hyperbolic(rng, L, L, 1.0);
            if (epsilon_measures(A, B).transversality < 0.5) continue;
            // alpha(gh) needs a hyperbolic product.
            if (classify_iso(A * B).kind != IsoClass::Hyperbolic) {
                ++rejectedProducts;
                continue;
            }
            const AffineIso g{A, N(rng) * hyperbolic_data(A).wNeutral};
            const AffineIso h{B, N(rng) * hyperbolic_data(B).wNeutral};
            errs.push_back(std::abs(margulis_alpha(g * h) - margulis_alpha(g) - margulis_alpha(h)));
        }
        std::nth_element(errs.begin(), errs.begin() + 150, errs.end());
        medians.push_back(errs[150]);
    }
    return {medians[0] > medians[1] && medians[1] > medians[2],
            fmt::format("median additivity error at L = 2, 4, 8: {:.3e}, {:.3e}, {:.3e} (transversality >= 0.5, "
                        "{} non-hyperbolic products redrawn)",
                        medians[0], medians[1], medians[2], rejectedProducts)};
}

struct Criterion {
    const char* name;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"alpha invariance", alpha_invariance},
    {"length derivative", length_derivative_identity},
    {"crooked disjointness oracle", crooked_oracle},
    {"stem-quadrant construction", schottky_pipeline},
    {"opposite signs", opposite_signs},
    {"pants cone triangle", pants_cone},
    {"strip pipeline", strip_pipeline},
    {"additivity regime", additivity},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    if (argc > 1) {
        which.push_back(std::atoi(argv[1]));
    } else {
        for (int i = 1; i <= 8; ++i) which.push_back(i);
    }
    int failures = 0;
    for (int id : which) {
        if (id < 1 || id > 8) {
            std::cerr << "criterion must be 1..8\n";
            return 2;
        }
        const Criterion& c = kCriteria[id - 1];
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs >= 60.0) {
            o.pass = false;
            o.detail += " (over the 60 s budget)";
        }
        std::cout << fmt::format("{} [{}] {}: {} ({:.1f} s)", o.pass ? "PASS" : "FAIL", id, c.name, o.detail, secs)
                  << std::endl;
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
