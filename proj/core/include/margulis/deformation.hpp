#pragma once

#include "margulis/freegroup.hpp"
#include "margulis/isometry.hpp"

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

namespace margulis {

/// A cocycle flattened to R^{3r}: (u_1.c1, u_1.c2, u_1.c3, u_2.c1, ...).
Eigen::VectorXd flatten(const Cocycle& u);
Cocycle unflatten(const Eigen::VectorXd& v);

/// A complement of the coboundaries inside Z^1 = R^{3r}, orthonormal for the
/// Euclidean inner product on flattened coordinates.
struct H1Chart {
    std::vector<Cocycle> basis;            ///< 3(r - 1) cocycles
    std::vector<Cocycle> coboundaryBasis;  ///< delta(x1), delta(x2), delta(x3)

    int dimension() const { return static_cast<int>(basis.size()); }
    /// Orthogonal projection coordinates of u on the chart basis.
    Eigen::VectorXd coordinates(const Cocycle& u) const;
    Cocycle cocycle(const Eigen::VectorXd& coords) const;
};

/// Throws ConfigurationError when the coboundary map has rank below 3.
H1Chart h1_chart(const std::vector<LinearIso>& gens);

/// The functional u -> u(word).wNeutral(L(word)) on flattened cocycles, or
/// nullopt when L(word) is not hyperbolic.
std::optional<Eigen::VectorXd> alpha_covector(const std::vector<LinearIso>& gens, const FreeWord& word,
                                              double tol = kClassifyTolerance);

struct SpectrumEntry {
    FreeWord word;
    double alpha = 0.0;
    double length = 0.0;
    double ratio = 0.0;
};

struct ScanOptions {
    bool primitiveOnly = false;  ///< rank 2 only
    double tolerance = kClassifyTolerance;
    int workers = 1;
};

struct Spectrum {
    std::vector<SpectrumEntry> entries;
    std::vector<FreeWord> skipped;  ///< classes whose linear part is not hyperbolic
    int maxLen = 0;
};

/// The classes scanned for the given options, in shortlex order.
std::vector<FreeWord> scan_words(int rank, int maxLen, const ScanOptions& opts);

/// One entry per enumerated class with hyperbolic linear part. The output does
/// not depend on the worker count.
Spectrum spectrum_scan(const std::vector<LinearIso>& gens, const Cocycle& u, int maxLen,
                       const ScanOptions& opts = {});

enum class Verdict { AllPositive, AllNegative, Mixed, Zero };

std::string_view to_string(Verdict v);

/// |ratio| at or below this counts as zero.
inline constexpr double kZeroRatioTolerance = 1e-9;

struct SignReport {
    Verdict verdict = Verdict::Zero;
    /// Mixed: positive and negative witnesses; Zero: the zero witness in `positive`;
    /// AllPositive: the minimal-ratio entry; AllNegative: the maximal-ratio entry.
    std::optional<SpectrumEntry> positive;
    std::optional<SpectrumEntry> negative;
    double extremeRatio = 0.0;
    int scannedMaxLen = 0;

    /// Same-sign scans are never a proof of properness.
    bool inconclusive() const { return verdict == Verdict::AllPositive || verdict == Verdict::AllNegative; }
    std::string summary() const;
};

/// Throws DomainError on an empty spectrum.
SignReport sign_report(const Spectrum& spectrum, double zeroTol = kZeroRatioTolerance);

struct LengthDerivative {
    double fd = 0.0;
    double alpha = 0.0;
    double relErr = 0.0;
};

/// Central difference of t -> l(word) along the path of generators
/// killing_exp(u_i, t) A_i, compared with alpha. Requires 0 < h <= 1e-3.
LengthDerivative length_derivative(const std::vector<LinearIso>& gens, const Cocycle& u, const FreeWord& word,
                                   double h);

enum class ChartChoice { Auto, X, Y, Z };

ChartChoice parse_chart_choice(std::string_view s);
std::string_view to_string(ChartChoice c);

struct ConePlotOptions {
    ChartChoice chart = ChartChoice::Auto;
    bool primitiveOnly = true;
    double tolerance = kClassifyTolerance;
    int workers = 1;
};

struct PlotPoint {
    double x = 0.0;
    double y = 0.0;
};

struct PlotLine {
    FreeWord word;
    Eigen::Vector3d covector;  ///< functional in chart coordinates
    double a = 0.0, b = 0.0, c = 0.0;  ///< a X + b Y + c = 0 in the affine chart
    std::optional<std::pair<PlotPoint, PlotPoint>> segment;  ///< clipped to the view box
};

/// A projective plot of the positive cone over the affine chart {x : n.x = 1}
/// of the 3-dimensional chart space.
struct ConePlot {
    Eigen::Vector3d normal;
    Eigen::Vector3d e1, e2;
    std::vector<PlotLine> lines;
    std::vector<PlotPoint> region;  ///< convex polygon where every functional has one sign
    int regionSign = 0;             ///< +1, -1, or 0 when the region is empty
    int skipped = 0;
    int repeated = 0;  ///< classes whose functional repeats an earlier line up to positive scale
    int maxLen = 0;

    /// Chart-space point at affine coordinates (X, Y).
    Eigen::Vector3d lift(double X, double Y) const { return normal + X * e1 + Y * e2; }
};

inline constexpr double kPlotHalfWidth = 1.5;

/// Rank 2 only. Throws DomainError for other ranks and ConfigurationError when
/// every functional vanishes.
ConePlot cone_plot(const std::vector<LinearIso>& gens, int maxLen, const H1Chart& chart,
                   const ConePlotOptions& opts = {});

/// Deterministic SVG text for a plot; metadata goes into a leading comment block.
std::string render_svg(const ConePlot& plot, const std::string& metadata);

}  // namespace margulis
