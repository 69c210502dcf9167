#include "margulis/deformation.hpp"

#include "margulis/errors.hpp"

#include <Eigen/Geometry>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <thread>

namespace margulis {

Eigen::VectorXd flatten(const Cocycle& u) {
    Eigen::VectorXd v(3 * u.uGen.size());
    for (std::size_t i = 0; i < u.uGen.size(); ++i) v.segment<3>(static_cast<Eigen::Index>(3 * i)) = u.uGen[i].to_eigen();
    return v;
}

Cocycle unflatten(const Eigen::VectorXd& v) {
    if (v.size() % 3 != 0) throw DomainError("flattened cocycle length is not a multiple of 3");
    Cocycle u;
    for (Eigen::Index i = 0; i < v.size(); i += 3) u.uGen.push_back(MinkVec::from_eigen(v.segment<3>(i)));
    return u;
}

Eigen::VectorXd H1Chart::coordinates(const Cocycle& u) const {
    const Eigen::VectorXd f = flatten(u);
    Eigen::VectorXd x(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) x(static_cast<Eigen::Index>(j)) = flatten(basis[j]).dot(f);
    return x;
}

Cocycle H1Chart::cocycle(const Eigen::VectorXd& coords) const {
    if (coords.size() != static_cast<Eigen::Index>(basis.size())) throw DomainError("chart coordinate count mismatch");
    Eigen::VectorXd f = Eigen::VectorXd::Zero(3 * static_cast<Eigen::Index>(coboundaryBasis.front().uGen.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) f += coords(static_cast<Eigen::Index>(j)) * flatten(basis[j]);
    return unflatten(f);
}

H1Chart h1_chart(const std::vector<LinearIso>& gens) {
    if (gens.empty()) throw DomainError("no generators");
    const auto n = static_cast<Eigen::Index>(3 * gens.size());
    H1Chart chart;
    Eigen::MatrixXd D(n, 3);
    for (int k = 0; k < 3; ++k) {
        const MinkVec e = k == 0 ? x1 : (k == 1 ? x2 : x3);
        chart.coboundaryBasis.push_back(coboundary(gens, e));
        D.col(k) = flatten(chart.coboundaryBasis.back());
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(D);
    qr.setThreshold(1e-10);
    if (qr.rank() < 3)
        throw ConfigurationError(fmt::format("coboundary map has rank {} < 3: the linear group is elementary", qr.rank()));
    const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index j = 3; j < n; ++j) chart.basis.push_back(unflatten(Q.col(j)));
    return chart;
}

namespace {

// wNeutral of the rotation starting at letter k is L(prefix_k)^{-1} wNeutral. Taking it
// from the rotation's own eigendata keeps every term of the sum at the size of u,
// instead of cancelling down from |u(word)|, which grows like e^{length}.
std::optional<Eigen::VectorXd> covector_from(const std::vector<LinearIso>& gens, const FreeWord& word,
                                             const HyperbolicData& h, double tol) {
    const std::vector<int>& letters = word.letters();
    const std::size_t n = letters.size();
    const Eigen::Matrix3d& J = lorentz_gram();
    std::vector<Eigen::Vector3d> rotated(n + 1);
    rotated[0] = rotated[n] = J * h.wNeutral.to_eigen();
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<int> rot(letters.begin() + static_cast<std::ptrdiff_t>(k), letters.end());
        rot.insert(rot.end(), letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(k));
        std::optional<HyperbolicData> hk;
        try {
            hk = classify_iso(eval_linear(gens, reduce(rot)), tol).hyperbolic;
        } catch (const DegenerateError&) {
            return std::nullopt;
        }
        if (!hk) return std::nullopt;
        rotated[k] = J * hk->wNeutral.to_eigen();
    }
    Eigen::VectorXd cov = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(3 * gens.size()));
    for (std::size_t k = 0; k < n; ++k) {
        const int x = letters[k];
        auto block = cov.segment<3>(static_cast<Eigen::Index>(3 * (static_cast<std::size_t>(std::abs(x)) - 1)));
        if (x > 0) block += rotated[k];
        else block -= rotated[k + 1];
    }
    return cov;
}

}  // namespace

std::optional<Eigen::VectorXd> alpha_covector(const std::vector<LinearIso>& gens, const FreeWord& word, double tol) {
    const LinearIso L = eval_linear(gens, word);
    std::optional<HyperbolicData> h;
    try {
        h = classify_iso(L, tol).hyperbolic;
    } catch (const DegenerateError&) {
        return std::nullopt;
    }
    if (!h) return std::nullopt;
    return covector_from(gens, word, *h, tol);
}

std::vector<FreeWord> scan_words(int rank, int maxLen, const ScanOptions& opts) {
    if (opts.primitiveOnly) {
        if (rank != 2) throw DomainError("primitive-only scans are defined for rank 2");
        return primitive_classes(maxLen);
    }
    return enumerate_classes(rank, maxLen);
}

namespace {

template <class F>
void parallel_for(std::size_t n, int workers, F&& f) {
    const std::size_t w = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1, std::max<std::size_t>(n, 1));
    if (w == 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < w; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += w) f(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

Spectrum spectrum_scan(const std::vector<LinearIso>& gens, const Cocycle& u, int maxLen, const ScanOptions& opts) {
    const std::vector<FreeWord> words = scan_words(static_cast<int>(gens.size()), maxLen, opts);
    if (u.rank() != static_cast<int>(gens.size())) throw DomainError("cocycle rank does not match the generators");
    const Eigen::VectorXd flat = flatten(u);
    std::vector<std::optional<SpectrumEntry>> slots(words.size());
    parallel_for(words.size(), opts.workers, [&](std::size_t i) {
        std::optional<HyperbolicData> h;
        try {
            h = classify_iso(eval_linear(gens, words[i]), opts.tolerance).hyperbolic;
        } catch (const DegenerateError&) {
            return;
        }
        if (!h) return;
        const std::optional<Eigen::VectorXd> cov = covector_from(gens, words[i], *h, opts.tolerance);
        if (!cov) return;
        SpectrumEntry e;
        e.word = words[i];
        e.alpha = cov->dot(flat);
        e.length = h->length;
        e.ratio = e.alpha / e.length;
        slots[i] = std::move(e);
    });
    Spectrum s;
    s.maxLen = maxLen;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (slots[i]) s.entries.push_back(std::move(*slots[i]));
        else s.skipped.push_back(words[i]);
    }
    return s;
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::AllPositive: return "AllPositive";
        case Verdict::AllNegative: return "AllNegative";
        case Verdict::Mixed: return "Mixed";
        case Verdict::Zero: return "Zero";
    }
    return "Unknown";
}

std::string SignReport::summary() const {
    switch (verdict) {
        case Verdict::Mixed: return "not proper: Margulis invariants of opposite signs";
        case Verdict::Zero: return "not proper and not free: an element has a fixed point";
        case Verdict::AllPositive:
        case Verdict::AllNegative:
            return fmt::format("consistent with proper; inconclusive at word length {}", scannedMaxLen);
    }
    return {};
}

SignReport sign_report(const Spectrum& spectrum, double zeroTol) {
    if (spectrum.entries.empty()) throw DomainError("sign report needs a nonempty spectrum");
    SignReport r;
    r.scannedMaxLen = spectrum.maxLen;
    const SpectrumEntry* maxE = nullptr;
    const SpectrumEntry* minE = nullptr;
    const SpectrumEntry* zeroE = nullptr;
    for (const SpectrumEntry& e : spectrum.entries) {
        if (!maxE || e.ratio > maxE->ratio) maxE = &e;
        if (!minE || e.ratio < minE->ratio) minE = &e;
        if (!zeroE && std::abs(e.ratio) <= zeroTol) zeroE = &e;
    }
    if (maxE->ratio > zeroTol && minE->ratio < -zeroTol) {
        r.verdict = Verdict::Mixed;
        r.positive = *maxE;
        r.negative = *minE;
    } else if (zeroE) {
        r.verdict = Verdict::Zero;
        r.positive = *zeroE;
        r.extremeRatio = zeroE->ratio;
    } else if (minE->ratio > 0.0) {
        r.verdict = Verdict::AllPositive;
        r.positive = *minE;
        r.extremeRatio = minE->ratio;
    } else {
        r.verdict = Verdict::AllNegative;
        r.negative = *maxE;
        r.extremeRatio = maxE->ratio;
    }
    return r;
}

LengthDerivative length_derivative(const std::vector<LinearIso>& gens, const Cocycle& u, const FreeWord& word,
                                   double h) {
    if (!(h > 0.0 && h <= 1e-3)) throw DomainError(fmt::format("step {} outside (0, 1e-3]", h));
    if (u.uGen.size() != gens.size()) throw DomainError("cocycle rank does not match the generator count");
    auto length_at = [&](double t) {
        std::vector<LinearIso> g;
        for (std::size_t i = 0; i < gens.size(); ++i) g.push_back(killing_exp(u.uGen[i], t) * gens[i]);
        const Classification c = classify_iso(eval_linear(g, word));
        if (c.kind != IsoClass::Hyperbolic) throw DegenerateError("perturbed word left the hyperbolic regime; step too large");
        return c.hyperbolic->length;
    };
    LengthDerivative out;
    out.alpha = margulis_alpha(eval_affine(gens, u, word));
    out.fd = (length_at(h) - length_at(-h)) / (2.0 * h);
    out.relErr = std::abs(out.fd - out.alpha) / std::max(1.0, std::abs(out.alpha));
    return out;
}

ChartChoice parse_chart_choice(std::string_view s) {
    if (s == "auto") return ChartChoice::Auto;
    if (s == "x" || s == "x-plane") return ChartChoice::X;
    if (s == "y" || s == "y-plane") return ChartChoice::Y;
    if (s == "z" || s == "z-plane") return ChartChoice::Z;
    throw DomainError(fmt::format("unknown chart '{}'", s));
}

std::string_view to_string(ChartChoice c) {
    switch (c) {
        case ChartChoice::Auto: return "auto";
        case ChartChoice::X: return "x-plane";
        case ChartChoice::Y: return "y-plane";
        case ChartChoice::Z: return "z-plane";
    }
    return "unknown";
}

namespace {

using Polygon = std::vector<PlotPoint>;

// Keeps the part of poly where a X + b Y + c >= 0.
Polygon clip(const Polygon& poly, double a, double b, double c) {
    Polygon out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const PlotPoint& p = poly[i];
        const PlotPoint& q = poly[(i + 1) % n];
        const double fp = a * p.x + b * p.y + c;
        const double fq = a * q.x + b * q.y + c;
        if (fp >= 0.0) out.push_back(p);
        if ((fp >= 0.0) != (fq >= 0.0)) {
            const double t = fp / (fp - fq);
            out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
        }
    }
    return out;
}

// Drops repeated and collinear vertices left behind by nearly coincident clip lines.
Polygon simplify(const Polygon& poly) {
    Polygon p;
    for (const PlotPoint& q : poly) {
        if (!p.empty() && std::hypot(q.x - p.back().x, q.y - p.back().y) < 1e-9) continue;
        p.push_back(q);
    }
    while (p.size() > 1 && std::hypot(p.front().x - p.back().x, p.front().y - p.back().y) < 1e-9) p.pop_back();
    bool changed = true;
    while (changed && p.size() > 3) {
        changed = false;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const PlotPoint& a = p[(i + p.size() - 1) % p.size()];
            const PlotPoint& b = p[i];
            const PlotPoint& c = p[(i + 1) % p.size()];
            const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
            if (std::abs(cross) < 1e-9 * std::hypot(c.x - a.x, c.y - a.y)) {
                p.erase(p.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    return p;
}

double area(const Polygon& poly) {
    double s = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const PlotPoint& p = poly[i];
        const PlotPoint& q = poly[(i + 1) % poly.size()];
        s += p.x * q.y - q.x * p.y;
    }
    return 0.5 * s;
}

Polygon view_box() {
    const double w = kPlotHalfWidth;
    return {{-w, -w}, {w, -w}, {w, w}, {-w, w}};
}

std::optional<std::pair<PlotPoint, PlotPoint>> clip_line(double a, double b, double c) {
    const double w = kPlotHalfWidth;
    if (std::abs(b) >= std::abs(a)) {
        if (b == 0.0) return std::nullopt;
        // Y = -(a X + c) / b, Y in [-w, w]
        double lo = -w, hi = w;
        if (a != 0.0) {
            const double xa = (-w * b - c) / a, xb = (w * b - c) / a;
            lo = std::max(lo, std::min(xa, xb));
            hi = std::min(hi, std::max(xa, xb));
        } else if (std::abs(c / b) > w) {
            return std::nullopt;
        }
        if (lo > hi) return std::nullopt;
        return std::make_pair(PlotPoint{lo, -(a * lo + c) / b}, PlotPoint{hi, -(a * hi + c) / b});
    }
    double lo = -w, hi = w;
    if (b != 0.0) {
        const double ya = (-w * a - c) / b, yb = (w * a - c) / b;
        lo = std::max(lo, std::min(ya, yb));
        hi = std::min(hi, std::max(ya, yb));
    } else if (std::abs(c / a) > w) {
        return std::nullopt;
    }
    if (lo > hi) return std::nullopt;
    return std::make_pair(PlotPoint{-(b * lo + c) / a, lo}, PlotPoint{-(b * hi + c) / a, hi});
}

Eigen::Vector3d chart_covector(const H1Chart& chart, const Eigen::VectorXd& cov) {
    Eigen::Vector3d c;
    for (int j = 0; j < 3; ++j) c(j) = flatten(chart.basis[static_cast<std::size_t>(j)]).dot(cov);
    return c;
}

}  // namespace

ConePlot cone_plot(const std::vector<LinearIso>& gens, int maxLen, const H1Chart& chart, const ConePlotOptions& opts) {
    if (gens.size() != 2 || chart.dimension() != 3) throw DomainError("cone plots need rank 2");
    ConePlot plot;
    plot.maxLen = maxLen;
    const std::vector<FreeWord> words = scan_words(2, maxLen, {opts.primitiveOnly, opts.tolerance, 1});
    std::vector<std::optional<Eigen::VectorXd>> covs(words.size());
    parallel_for(words.size(), opts.workers, [&](std::size_t i) { covs[i] = alpha_covector(gens, words[i], opts.tolerance); });

    for (std::size_t i = 0; i < words.size(); ++i) {
        if (!covs[i]) {
            ++plot.skipped;
            continue;
        }
        const Eigen::Vector3d c = chart_covector(chart, *covs[i]);
        if (c.norm() < 1e-14) continue;
        // powers and other positive multiples draw the same line with the same sign
        const Eigen::Vector3d u = c.normalized();
        const bool repeated = std::any_of(plot.lines.begin(), plot.lines.end(), [&](const PlotLine& l) {
            return (l.covector.normalized() - u).norm() < 1e-9;
        });
        if (repeated) {
            ++plot.repeated;
            continue;
        }
        PlotLine line;
        line.word = words[i];
        line.covector = c;
        plot.lines.push_back(std::move(line));
    }
    if (plot.lines.empty()) throw ConfigurationError("every scanned functional vanishes");

    switch (opts.chart) {
        case ChartChoice::X: plot.normal = Eigen::Vector3d::UnitX(); break;
        case ChartChoice::Y: plot.normal = Eigen::Vector3d::UnitY(); break;
        case ChartChoice::Z: plot.normal = Eigen::Vector3d::UnitZ(); break;
        case ChartChoice::Auto: {
            Eigen::Vector3d sum = Eigen::Vector3d::Zero();
            for (const FreeWord& w : {reduce({1}), reduce({2}), reduce({1, 2})}) {
                if (auto cov = alpha_covector(gens, w, opts.tolerance)) {
                    const Eigen::Vector3d c = chart_covector(chart, *cov);
                    if (c.norm() > 1e-14) sum += c.normalized();
                }
            }
            plot.normal = sum.norm() > 1e-12 ? sum.normalized() : plot.lines.front().covector.normalized();
            break;
        }
    }
    const Eigen::Vector3d& n = plot.normal;
    Eigen::Index k = 0;
    n.cwiseAbs().minCoeff(&k);
    Eigen::Vector3d helper = Eigen::Vector3d::Zero();
    helper(k) = 1.0;
    plot.e1 = (helper - helper.dot(n) * n).normalized();
    plot.e2 = n.cross(plot.e1);

    for (PlotLine& line : plot.lines) {
        line.a = line.covector.dot(plot.e1);
        line.b = line.covector.dot(plot.e2);
        line.c = line.covector.dot(n);
        line.segment = clip_line(line.a, line.b, line.c);
    }

    for (int sign : {+1, -1}) {
        Polygon poly = view_box();
        for (const PlotLine& line : plot.lines) {
            poly = clip(poly, sign * line.a, sign * line.b, sign * line.c);
            if (poly.size() < 3) break;
        }
        poly = simplify(poly);
        if (poly.size() >= 3 && std::abs(area(poly)) > 1e-12) {
            plot.region = std::move(poly);
            plot.regionSign = sign;
            break;
        }
    }
    return plot;
}

namespace {

std::string num(double v) {
    if (std::abs(v) < 5e-7) v = 0.0;
    return fmt::format("{:.6f}", v);
}

std::string escape_comment(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '-' && !out.empty() && out.back() == '-') out.push_back(' ');
        out.push_back(c);
    }
    return out;
}

}  // namespace

std::string render_svg(const ConePlot& plot, const std::string& metadata) {
    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.5 -1.5 3 3\" width=\"600\" height=\"600\">\n";
    s += "<!--\n";
    if (!metadata.empty()) s += escape_comment(metadata) + "\n";
    s += fmt::format("maxLen: {}\n", plot.maxLen);
    s += fmt::format("chart normal: {} {} {}\n", num(plot.normal(0)), num(plot.normal(1)), num(plot.normal(2)));
    s += fmt::format("lines: {}\nrepeated: {}\nskipped: {}\nregion sign: {}\n", plot.lines.size(), plot.repeated,
                     plot.skipped, plot.regionSign);
    s += "-->\n";
    s += "<rect x=\"-1.5\" y=\"-1.5\" width=\"3\" height=\"3\" fill=\"#ffffff\"/>\n";
    if (!plot.region.empty()) {
        s += "<polygon fill=\"#9ecae1\" stroke=\"none\" points=\"";
        for (std::size_t i = 0; i < plot.region.size(); ++i) {
            if (i) s += ' ';
            s += num(plot.region[i].x) + "," + num(-plot.region[i].y);
        }
        s += "\"/>\n";
    }
    s += "<g stroke=\"#252525\" stroke-width=\"0.004\" fill=\"none\">\n";
    for (const PlotLine& line : plot.lines) {
        if (!line.segment) continue;
        const auto& [p, q] = *line.segment;
        s += fmt::format("<path data-word=\"{}\" d=\"M {} {} L {} {}\"/>\n", line.word.to_string(), num(p.x), num(-p.y),
                         num(q.x), num(-q.y));
    }
    s += "</g>\n</svg>\n";
    return s;
}

}  // namespace margulis
