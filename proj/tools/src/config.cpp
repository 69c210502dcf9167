#include "margulis_cli/config.hpp"

#include "margulis/errors.hpp"
#include "margulis/isometry.hpp"

#include <fmt/format.h>

#include <fstream>

namespace margulis::cli {

namespace {

MinkVec vec3(const Json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 3) throw DomainError(fmt::format("{} must be an array of 3 numbers", what));
    return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

Eigen::MatrixXd matrix(const Json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) throw DomainError(fmt::format("{} must be a square matrix", what));
    const auto n = static_cast<Eigen::Index>(j.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const Json& row = j.at(static_cast<std::size_t>(r));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
            throw DomainError(fmt::format("{} must be a square matrix", what));
        for (Eigen::Index c = 0; c < n; ++c) m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
    }
    return m;
}

LinearIso generator(const Eigen::MatrixXd& m, std::size_t i) {
    if (m.rows() != 2 && m.rows() != 3) throw DomainError(fmt::format("generator {} must be 2x2 or 3x3", i + 1));
    // A matrix that is not an isometry is bad input here, not a failed construction.
    try {
        if (m.rows() == 2) return adjoint_rep(m);
        return LinearIso(Eigen::Matrix3d(m));
    } catch (const ConstructionError& e) {
        throw DomainError(fmt::format("generator {}: {}", i + 1, e.what()));
    }
}

SidePairedDomain parse_domain(const Json& d) {
    std::vector<double> twists;
    if (d.contains("twists")) twists = d.at("twists").get<std::vector<double>>();
    if (d.contains("arcs")) {
        std::vector<IdealArc> arcs;
        for (const Json& a : d.at("arcs")) {
            if (!a.is_array() || a.size() != 2) throw DomainError("each arc is a pair [start, end] of angles");
            arcs.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
        }
        if (twists.empty()) twists.assign(arcs.size() / 2, 0.0);
        return domain_from_arcs(arcs, twists);
    }
    if (d.contains("vectors")) {
        std::vector<MinkVec> sides;
        for (const Json& v : d.at("vectors")) sides.push_back(vec3(v, "side vector"));
        if (twists.empty()) twists.assign(sides.size() / 2, 0.0);
        return domain_from_sides(sides, twists);
    }
    throw DomainError("domain block needs \"arcs\" or \"vectors\"");
}

}  // namespace

namespace {

// No negative zeros in reports.
double clean(double x) { return x + 0.0; }

}  // namespace

Json to_json(const MinkVec& v) { return Json::array({clean(v.c1), clean(v.c2), clean(v.c3)}); }

Json to_json(const Eigen::MatrixXd& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(clean(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

Config parse_config(const Json& doc) {
    if (!doc.is_object()) throw DomainError("configuration must be a JSON object");
    Config cfg;

    if (doc.contains("generators")) {
        std::size_t i = 0;
        for (const Json& g : doc.at("generators")) {
            cfg.rawGenerators.push_back(matrix(g, fmt::format("generator {}", i + 1)));
            cfg.generators.push_back(generator(cfg.rawGenerators.back(), i));
            ++i;
        }
    }
    if (doc.contains("domain")) {
        if (!cfg.generators.empty()) throw DomainError("give either \"generators\" or \"domain\", not both");
        cfg.domain = parse_domain(doc.at("domain"));
        cfg.generators = cfg.domain->gens;
        for (const LinearIso& g : cfg.generators) cfg.rawGenerators.push_back(g.matrix());
    }
    if (cfg.generators.empty()) throw DomainError("configuration has no generators");
    const std::size_t n = cfg.generators.size();

    if (doc.contains("translations")) {
        Cocycle u;
        for (const Json& t : doc.at("translations")) u.uGen.push_back(vec3(t, "translation"));
        if (u.uGen.size() != n)
            throw DomainError(fmt::format("{} translations given for {} generators", u.uGen.size(), n));
        cfg.translations = u;
    }
    if (doc.contains("slabs")) {
        for (const Json& s : doc.at("slabs")) cfg.slabs.push_back(vec3(s, "slab vector"));
        if (cfg.slabs.size() != n) throw DomainError(fmt::format("{} slab vectors given for {} generators", cfg.slabs.size(), n));
    }
    if (doc.contains("widths")) {
        cfg.widths = doc.at("widths").get<std::vector<double>>();
        if (cfg.widths.size() != 2 * n) throw DomainError(fmt::format("expected {} widths", 2 * n));
    }
    if (doc.contains("strips")) {
        const Json& s = doc.at("strips");
        StripSpec spec;
        spec.widths = s.contains("widths") ? s.at("widths").get<std::vector<double>>() : std::vector<double>(n, 1.0);
        if (spec.widths.size() != n) throw DomainError(fmt::format("expected {} strip widths", n));
        if (s.contains("waists"))
            for (const Json& w : s.at("waists")) spec.waists.push_back(vec3(w, "waist"));
        if (!spec.waists.empty() && spec.waists.size() != n) throw DomainError(fmt::format("expected {} waists", n));
        if (s.contains("signs")) spec.signs = s.at("signs").get<std::vector<int>>();
        if (!spec.signs.empty() && spec.signs.size() != n) throw DomainError(fmt::format("expected {} strip signs", n));
        cfg.strips = spec;
    }
    if (doc.contains("halfspaces")) {
        for (const Json& h : doc.at("halfspaces"))
            cfg.halfspaces.push_back({vec3(h.at("vertex"), "halfspace vertex"), OrientedGeodesic(vec3(h.at("normal"), "halfspace normal"))});
        if (cfg.halfspaces.size() != 2 * n) throw DomainError(fmt::format("expected {} halfspaces", 2 * n));
    }
    if (doc.contains("word")) cfg.word = doc.at("word").get<std::string>();
    if (doc.contains("scan")) {
        const Json& s = doc.at("scan");
        if (s.contains("maxLen")) cfg.scan.maxLen = s.at("maxLen").get<int>();
        if (s.contains("tolerance")) cfg.scan.tolerance = s.at("tolerance").get<double>();
        if (s.contains("chart")) cfg.scan.chart = parse_chart_choice(s.at("chart").get<std::string>());
        if (s.contains("primitiveOnly")) cfg.scan.primitiveOnly = s.at("primitiveOnly").get<bool>();
    }
    return cfg;
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError(fmt::format("cannot open configuration {}", path.string()));
    return parse_config(Json::parse(in));
}

}  // namespace margulis::cli
