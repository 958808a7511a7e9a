#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "projdyn/slice.hpp"

namespace projdyn {

enum class Provenance { Mu, Nu, Alpha, Custom };

std::string_view to_string(Provenance p) noexcept;
Provenance provenance_from_string(std::string_view s);

/// Weighted point cloud standing in for mu, nu or alpha.
struct EmpiricalMeasure {
    std::vector<ProjPoint> points;
    std::vector<double> weights;  ///< nonnegative, summing to 1
    std::uint64_t seed = 0;
    Provenance provenance = Provenance::Custom;
    double mass = 1.0;  ///< unnormalized mass, used only when merging

    std::size_t size() const noexcept { return points.size(); }

    /// Equal weights 1/N.
    static EmpiricalMeasure uniform(std::vector<ProjPoint> points, std::uint64_t seed, Provenance provenance);

    /// Throws InvalidArgument unless weights are nonnegative and sum to 1 within 1e-12.
    void validate() const;
};

/// Concatenation with weights rescaled by the relative masses of a and b.
EmpiricalMeasure merge(const EmpiricalMeasure& a, const EmpiricalMeasure& b);

struct MuSamplerOptions {
    std::size_t n_backward = 30;
    std::size_t n_points = 10000;
    std::uint64_t seed = 1;
    int threads = 1;
};

/// Equilibrium measure mu = T ^ T by random backward iteration: every sample
/// follows one uniformly random preimage branch (d^2 branches with
/// multiplicity) for n_backward steps from a random start in the polydisc of
/// radius 1/2. Product maps only.
EmpiricalMeasure sample_mu(const HomogeneousEndomorphism& f, const MuSamplerOptions& options);

/// One term of the averaged current S_m = (1/m) sum_i [f^i(L)] / d^i.
struct FamilyCurve {
    Curve curve;           ///< parametrization of f^iterate(L)
    int iterate = 0;
    double weight = 0.0;   ///< 1 / (m d^iterate)
    long multiplicity = 1; ///< sheets of the parametrization over the image curve
};

struct CurveFamily {
    std::vector<FamilyCurve> curves;
    int m = 0;
    int degree = 0;

    /// sum_i weight_i d^i; equals 1 by construction.
    double normalization() const noexcept;
};

/// For product maps and coordinate lines {z = a} or {w = b} the image curves
/// are again lines (z = p^i(a), covered d^i times); otherwise f^i o L is kept
/// as a composed parametrization.
CurveFamily build_S_m(const HomogeneousEndomorphism& f, const ProjectiveLine& line, int m);

struct NuSamplerOptions {
    int grid_size = 256;
    std::size_t n_points = 100000;
    std::uint64_t seed = 1;
    SliceOptions slice;
};

struct NuSample {
    EmpiricalMeasure measure;
    std::vector<double> curve_mass;       ///< normalized mass carried by each family curve
    std::vector<double> clipped_fraction; ///< per-curve slicing diagnostics
};

/// nu = T ^ S_m: slice each family curve with T and sample cells with
/// probability proportional to (curve weight x multiplicity x cell mass),
/// uniformly jittered inside the cell.
NuSample sample_nu(const GreenEvaluator& ge, const CurveFamily& family, const NuSamplerOptions& options);

}  // namespace projdyn
