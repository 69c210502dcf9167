#include "margulis_cli/cli.hpp"

#include "margulis/errors.hpp"
#include "margulis_cli/config.hpp"
#include "selftest.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <ostream>

namespace margulis::cli {

namespace {

struct Flags {
    std::string config;
    std::optional<int> maxLen;
    std::optional<double> tolerance;
    std::optional<std::string> chart;
    std::optional<bool> primitiveOnly;
    std::uint64_t seed = 1;
    std::string output;
    std::optional<std::string> format;
    std::optional<std::string> word;
    int workers = 1;
    double step = 1e-5;
};

struct Outcome {
    std::string text;
    int code = kOk;
};

Json entry_json(const SpectrumEntry& e) {
    Json j;
    j["word"] = e.word.to_string();
    j["alpha"] = e.alpha;
    j["length"] = e.length;
    j["ratio"] = e.ratio;
    return j;
}

Json halfspace_json(const CrookedHalfspace& h, std::size_t k) {
    Json j;
    j["side"] = side_label(k);
    j["vertex"] = to_json(h.vertex);
    j["normal"] = to_json(h.geod.w());
    return j;
}

Json cocycle_json(const Cocycle& u) {
    Json j = Json::array();
    for (const MinkVec& v : u.uGen) j.push_back(to_json(v));
    return j;
}

Json report_json(const SignReport& r, const Spectrum& s) {
    Json j;
    j["verdict"] = std::string(to_string(r.verdict));
    j["inconclusive"] = r.inconclusive();
    j["summary"] = r.summary();
    j["scannedMaxLen"] = r.scannedMaxLen;
    j["scanned"] = s.entries.size();
    j["skipped"] = s.skipped.size();
    j["extremeRatio"] = r.extremeRatio;
    Json w = Json::object();
    if (r.positive) w[r.verdict == Verdict::Zero ? "zero" : "positive"] = entry_json(*r.positive);
    if (r.negative) w["negative"] = entry_json(*r.negative);
    j["witnesses"] = w;
    return j;
}

Json certificate_json(const Certificate& c) {
    Json j;
    j["certified"] = true;
    Json gens = Json::array();
    for (const AffineIso& g : c.gens) {
        Json gj;
        gj["linear"] = to_json(Eigen::MatrixXd(g.linear.matrix()));
        gj["translation"] = to_json(g.trans);
        gens.push_back(gj);
    }
    j["generators"] = gens;
    Json hs = Json::array();
    for (std::size_t k = 0; k < c.halfspaces.size(); ++k) hs.push_back(halfspace_json(c.halfspaces[k], k));
    j["halfspaces"] = hs;
    j["scale"] = c.scale;
    j["maxPairingResidual"] = c.maxPairingResidual;
    j["description"] = c.description();
    return j;
}

Json failure_json(const PingPongFailure& f) {
    Json j;
    j["certified"] = false;
    Json fj;
    fj["kind"] = std::string(to_string(f.kind));
    if (f.kind == PingPongFailure::Kind::PairingBroken) {
        fj["generator"] = f.i + 1;
    } else {
        fj["sides"] = Json::array({side_label(f.i), side_label(f.j)});
    }
    fj["detail"] = f.detail;
    j["failure"] = fj;
    return j;
}

ScanOptions scan_options(const Config& cfg, bool defaultPrimitive, int workers) {
    ScanOptions o;
    o.tolerance = cfg.scan.tolerance;
    o.primitiveOnly = cfg.scan.primitiveOnly.value_or(defaultPrimitive);
    o.workers = workers;
    return o;
}

Cocycle translations_or_zero(const Config& cfg) { return cfg.translations.value_or(Cocycle::zero(cfg.rank())); }

Cocycle require_translations(const Config& cfg, const char* cmd) {
    if (!cfg.translations) throw DomainError(fmt::format("{} needs a \"translations\" block", cmd));
    return *cfg.translations;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Outcome cmd_invariant(const Config& cfg, const Flags& f) {
    const FreeWord w = parse_word(f.word.value_or(cfg.word.value_or("a")), cfg.rank());
    const AffineIso g = eval_affine(cfg.generators, translations_or_zero(cfg), w);
    const Classification c = classify_iso(g.linear, cfg.scan.tolerance);
    Json j;
    j["command"] = "invariant";
    j["word"] = w.to_string();
    j["class"] = std::string(to_string(c.kind));
    if (c.kind != IsoClass::Hyperbolic)
        throw UnsupportedClassError(fmt::format("word {} has {} linear part; the invariant needs a hyperbolic one",
                                                w.to_string(), to_string(c.kind)));
    const HyperbolicData& h = *c.hyperbolic;
    const double alpha = minkowski_dot(g.trans, h.wNeutral);
    j["length"] = h.length;
    j["alpha"] = alpha;
    j["ratio"] = alpha / h.length;
    const AffineAxis ax = affine_axis(g, cfg.scan.tolerance);
    j["axis"] = Json{{"point", to_json(ax.point)}, {"direction", to_json(ax.direction)}};
    j["eigen"] = Json{{"wPlus", to_json(h.wPlus)}, {"wMinus", to_json(h.wMinus)}, {"wNeutral", to_json(h.wNeutral)}};
    return {dump(j), kOk};
}

Outcome cmd_spectrum(const Config& cfg, const Flags& f) {
    const ScanOptions o = scan_options(cfg, false, f.workers);
    const Spectrum s = spectrum_scan(cfg.generators, translations_or_zero(cfg), cfg.scan.maxLen, o);
    Json j;
    j["command"] = "spectrum";
    j["maxLen"] = cfg.scan.maxLen;
    j["primitiveOnly"] = o.primitiveOnly;
    Json e = Json::array();
    for (const SpectrumEntry& x : s.entries) e.push_back(entry_json(x));
    j["entries"] = e;
    Json sk = Json::array();
    for (const FreeWord& w : s.skipped) sk.push_back(w.to_string());
    j["skipped"] = sk;
    return {dump(j), kOk};
}

Outcome cmd_report(const Config& cfg, const Flags& f) {
    const ScanOptions o = scan_options(cfg, false, f.workers);
    const Spectrum s = spectrum_scan(cfg.generators, translations_or_zero(cfg), cfg.scan.maxLen, o);
    const SignReport r = sign_report(s);
    Json j;
    j["command"] = "report";
    j["primitiveOnly"] = o.primitiveOnly;
    j.update(report_json(r, s));
    return {dump(j), r.inconclusive() ? kInconclusive : kCertificationFailed};
}

Outcome cmd_certify(const Config& cfg, const Flags&) {
    if (cfg.halfspaces.empty()) throw DomainError("certify needs a \"halfspaces\" block");
    const Cocycle u = require_translations(cfg, "certify");
    std::vector<AffineIso> gens;
    for (int i = 0; i < cfg.rank(); ++i) gens.push_back({cfg.generators[static_cast<std::size_t>(i)], u.uGen[static_cast<std::size_t>(i)]});
    const PingPongResult r = pingpong_certify(gens, cfg.halfspaces);
    Json j;
    j["command"] = "certify";
    if (const auto* c = std::get_if<Certificate>(&r)) {
        j.update(certificate_json(*c));
        return {dump(j), kOk};
    }
    j.update(failure_json(std::get<PingPongFailure>(r)));
    return {dump(j), kCertificationFailed};
}

SchottkyData schottky_from(const Config& cfg) {
    if (cfg.domain) return *cfg.domain;
    std::vector<MinkVec> ws = cfg.slabs;
    if (ws.empty())
        for (const LinearIso& g : cfg.generators) ws.push_back(axis_normal(g));
    return make_schottky_data(cfg.generators, ws);
}

Outcome cmd_drumm(const Config& cfg, const Flags& f) {
    const SchottkyData data = schottky_from(cfg);
    const std::vector<double> widths = cfg.widths.empty() ? std::vector<double>(2 * data.gens.size(), 1.0) : cfg.widths;
    Json j;
    j["command"] = "drumm";
    Certificate c;
    try {
        c = drumm_construct(data, widths);
    } catch (const ConstructionError& e) {
        j["certified"] = false;
        j["failure"] = Json{{"kind", "ConstructionFailed"}, {"detail", e.what()}};
        return {dump(j), kCertificationFailed};
    }
    j.update(certificate_json(c));
    const Spectrum s = spectrum_scan(certificate_linear(c), certificate_cocycle(c), cfg.scan.maxLen,
                                     scan_options(cfg, false, f.workers));
    j["report"] = report_json(sign_report(s), s);
    return {dump(j), kOk};
}

Outcome cmd_strip(const Config& cfg, const Flags&) {
    if (!cfg.domain) throw DomainError("strip needs a \"domain\" block");
    const SidePairedDomain& d = *cfg.domain;
    validate_domain(d);
    StripData s = StripData::uniform(d);
    if (cfg.strips) {
        s.widths = cfg.strips->widths;
        if (!cfg.strips->waists.empty()) s.waists = cfg.strips->waists;
        if (!cfg.strips->signs.empty()) s.signs = cfg.strips->signs;
    }
    const Cocycle u = strip_cocycle(d, s);
    const std::vector<CrookedHalfspace> hs = arc_crooked_planes(d, s);
    Json j;
    j["command"] = "strip";
    j["translations"] = cocycle_json(u);
    const PingPongResult r = pingpong_certify(strip_generators(d, u), hs);
    bool ok = std::holds_alternative<Certificate>(r);
    j["certificate"] = ok ? certificate_json(std::get<Certificate>(r)) : failure_json(std::get<PingPongFailure>(r));
    Json nest = Json::array();
    const int n = d.rank();
    for (int a = 1; a <= 2 * n; ++a) {
        for (int b = 1; b <= 2 * n; ++b) {
            if (a == b) continue;
            const int sa = (a % 2 ? -1 : 1) * ((a + 1) / 2);
            const int sb = (b % 2 ? -1 : 1) * ((b + 1) / 2);
            const bool nested = nesting_check(d, u, {FreeWord{}, sa, false}, {FreeWord{}, sb, true});
            ok = ok && nested;
            nest.push_back(Json{{"inner", side_label(static_cast<std::size_t>(a - 1))},
                                {"outer", "reversed " + side_label(static_cast<std::size_t>(b - 1))},
                                {"nested", nested}});
        }
    }
    j["nesting"] = nest;
    j["passed"] = ok;
    return {dump(j), ok ? kOk : kCertificationFailed};
}

Outcome cmd_cone_plot(const Config& cfg, const Flags& f) {
    ConePlotOptions o;
    o.chart = cfg.scan.chart;
    o.primitiveOnly = cfg.scan.primitiveOnly.value_or(true);
    o.tolerance = cfg.scan.tolerance;
    o.workers = f.workers;
    const H1Chart chart = h1_chart(cfg.generators);
    const ConePlot p = cone_plot(cfg.generators, cfg.scan.maxLen, chart, o);
    if (f.format.value_or("svg") == "json") {
        Json j;
        j["command"] = "cone-plot";
        j["maxLen"] = p.maxLen;
        j["chart"] = std::string(to_string(o.chart));
        j["normal"] = Json::array({p.normal(0), p.normal(1), p.normal(2)});
        j["regionSign"] = p.regionSign;
        Json reg = Json::array();
        for (const PlotPoint& q : p.region) reg.push_back(Json::array({q.x, q.y}));
        j["region"] = reg;
        Json lines = Json::array();
        for (const PlotLine& l : p.lines) lines.push_back(Json{{"word", l.word.to_string()}, {"a", l.a}, {"b", l.b}, {"c", l.c}});
        j["lines"] = lines;
        j["repeated"] = p.repeated;
        j["skipped"] = p.skipped;
        return {dump(j), kOk};
    }
    std::string meta = "margulis cone plot\ngenerators:";
    for (const Eigen::MatrixXd& m : cfg.rawGenerators) meta += " " + to_json(m).dump();
    meta += fmt::format("\nchart: {}\nprimitive only: {}", to_string(o.chart), o.primitiveOnly);
    return {render_svg(p, meta), kOk};
}

Outcome cmd_gradcheck(const Config& cfg, const Flags& f) {
    const Cocycle u = require_translations(cfg, "gradcheck");
    const std::vector<FreeWord> words = scan_words(cfg.rank(), cfg.scan.maxLen, scan_options(cfg, false, 1));
    Json rows = Json::array();
    double worst = 0.0;
    int skipped = 0;
    for (const FreeWord& w : words) {
        const Classification c = classify_iso(eval_linear(cfg.generators, w), cfg.scan.tolerance);
        if (c.kind != IsoClass::Hyperbolic) {
            ++skipped;
            continue;
        }
        const LengthDerivative r = length_derivative(cfg.generators, u, w, f.step);
        worst = std::max(worst, r.relErr);
        rows.push_back(Json{{"word", w.to_string()}, {"fd", r.fd}, {"alpha", r.alpha}, {"relErr", r.relErr}});
    }
    Json j;
    j["command"] = "gradcheck";
    j["step"] = f.step;
    j["maxLen"] = cfg.scan.maxLen;
    j["entries"] = rows;
    j["skipped"] = skipped;
    j["maxRelErr"] = worst;
    j["passed"] = worst <= 1e-5;
    return {dump(j), worst <= 1e-5 ? kOk : kCertificationFailed};
}

void apply_flags(Config& cfg, const Flags& f) {
    if (f.maxLen) {
        if (*f.maxLen < 1) throw DomainError("--max-length must be >= 1");
        cfg.scan.maxLen = *f.maxLen;
    }
    if (f.tolerance) {
        if (!(*f.tolerance > 0.0)) throw DomainError("--tolerance must be positive");
        cfg.scan.tolerance = *f.tolerance;
    }
    if (f.chart) cfg.scan.chart = parse_chart_choice(*f.chart);
    if (f.primitiveOnly) cfg.scan.primitiveOnly = *f.primitiveOnly;
}

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::Degenerate: return kDegenerate;
        case ErrorKind::ConstructionFailed: return kCertificationFailed;
        default: return kInvalidInput;
    }
}

std::string_view kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::Domain: return "domain";
        case ErrorKind::Degenerate: return "degenerate";
        case ErrorKind::UnsupportedClass: return "unsupported-class";
        case ErrorKind::Configuration: return "configuration";
        case ErrorKind::ConstructionFailed: return "construction-failed";
    }
    return "error";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Margulis spacetime toolkit: invariants, spectra, crooked-plane certificates and cone plots", "margulis"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags f;
    app.add_option("--max-length", f.maxLen, "Maximal word length of scans");
    app.add_option("--tolerance", f.tolerance, "Eigenvalue-gap tolerance of the classifier (default 1e-8)");
    app.add_option("--chart", f.chart, "Affine chart of cone plots: auto, x, y, z-plane");
    app.add_option("--primitive-only", f.primitiveOnly, "Scan primitive classes only (rank 2)");
    app.add_option("--seed", f.seed, "Seed of randomised suites");
    app.add_option("--output", f.output, "Write the report to this file instead of stdout");
    app.add_option("--format", f.format, "Output format: json or svg")->check(CLI::IsMember({"json", "svg"}));
    app.add_option("--word", f.word, "Word for the invariant command, e.g. aB");
    app.add_option("--workers", f.workers, "Worker threads for scans")->check(CLI::PositiveNumber);
    app.add_option("--step", f.step, "Finite-difference step of gradcheck");

    struct Cmd {
        const char* name;
        const char* help;
        Outcome (*fn)(const Config&, const Flags&);
    };
    const std::vector<Cmd> cmds{
        {"invariant", "Margulis invariant, length and axis of one word", cmd_invariant},
        {"spectrum", "Normalised Margulis spectrum over conjugacy classes", cmd_spectrum},
        {"report", "Sign report of the spectrum (exit 3 if not proper, 4 if inconclusive)", cmd_report},
        {"certify", "Crooked ping-pong certificate for given halfspaces", cmd_certify},
        {"drumm", "Stem-quadrant construction of translations, then certification", cmd_drumm},
        {"strip", "Strip deformation, arc crooked planes and certification", cmd_strip},
        {"cone-plot", "SVG plot of the projectivised positive cone (rank 2)", cmd_cone_plot},
        {"gradcheck", "Finite-difference check of length derivatives against alpha", cmd_gradcheck},
    };
    std::vector<CLI::App*> subs;
    for (const Cmd& c : cmds) {
        CLI::App* s = app.add_subcommand(c.name, c.help);
        s->add_option("config", f.config, "Configuration file (JSON)")->required()->check(CLI::ExistingFile);
        subs.push_back(s);
    }
    CLI::App* selftest = app.add_subcommand("selftest", "Randomised invariant suites");

    std::vector<std::string> argvStore{"margulis"};
    argvStore.insert(argvStore.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const std::string& s : argvStore) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kOk : kInvalidInput;
    }

    Outcome result;
    try {
        if (selftest->parsed()) {
            const Json j = run_selftest(f.seed);
            result = {dump(j), j.at("passed").get<bool>() ? kOk : kCertificationFailed};
        } else {
            for (std::size_t i = 0; i < cmds.size(); ++i) {
                if (!subs[i]->parsed()) continue;
                Config cfg = load_config(f.config);
                apply_flags(cfg, f);
                result = cmds[i].fn(cfg, f);
            }
        }
    } catch (const Error& e) {
        err << Json{{"error", std::string(kind_name(e.kind()))}, {"message", e.what()}}.dump() << "\n";
        return exit_code(e.kind());
    } catch (const nlohmann::json::exception& e) {
        err << Json{{"error", "parse"}, {"message", e.what()}}.dump() << "\n";
        return kInvalidInput;
    }

    if (f.output.empty()) {
        out << result.text;
    } else {
        std::ofstream file(f.output, std::ios::binary);
        if (!file) {
            err << Json{{"error", "io"}, {"message", "cannot write " + f.output}}.dump() << "\n";
            return kInvalidInput;
        }
        file << result.text;
    }
    return result.code;
}

}  // namespace margulis::cli
