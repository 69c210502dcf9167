#pragma once

#include "margulis/crooked.hpp"
#include "margulis/deformation.hpp"
#include "margulis/schottky.hpp"
#include "margulis/strips.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace margulis::cli {

using Json = nlohmann::ordered_json;

/// Partial strip block; missing waists default to feet of x3, signs to +1.
struct StripSpec {
    std::vector<double> widths;
    std::vector<MinkVec> waists;
    std::vector<int> signs;
};

struct ScanSettings {
    int maxLen = 6;
    double tolerance = kClassifyTolerance;
    ChartChoice chart = ChartChoice::Auto;
    std::optional<bool> primitiveOnly;
};

/// One configuration document.
struct Config {
    std::vector<LinearIso> generators;
    std::vector<Eigen::MatrixXd> rawGenerators;  ///< as written, for report metadata
    std::optional<Cocycle> translations;
    std::optional<SidePairedDomain> domain;
    std::vector<MinkVec> slabs;
    std::vector<double> widths;
    std::optional<StripSpec> strips;
    std::vector<CrookedHalfspace> halfspaces;
    std::optional<std::string> word;
    ScanSettings scan;

    int rank() const { return static_cast<int>(generators.size()); }
};

/// Validation failures throw DomainError; JSON syntax errors propagate as
/// nlohmann::json::exception.
Config parse_config(const Json& doc);
Config load_config(const std::filesystem::path& path);

Json to_json(const MinkVec& v);
Json to_json(const Eigen::MatrixXd& m);

}  // namespace margulis::cli
