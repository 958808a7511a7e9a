#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <vector>

#include "projdyn/measures.hpp"
#include "projdyn/orbit.hpp"

namespace projdyn {

/// Which admissible chart to use at each orbit point.
enum class ChartPolicy {
    Largest,         ///< largest-modulus coordinate
    FirstAdmissible, ///< lowest index whose modulus exceeds 1/sqrt(3) - 1e-9
    LastAdmissible,  ///< highest such index
};

/// Jacobian cocycle A_k = Df(f^k x) along an orbit, in chained charts:
/// steps[k] maps chart charts[k] at orbit[k] to chart charts[k+1] at orbit[k+1].
struct OrbitCocycle {
    std::vector<ProjPoint> orbit;  ///< n + 1 points
    std::vector<AffineChart> charts;
    std::vector<Eigen::Matrix2cd> steps;

    std::size_t length() const noexcept { return steps.size(); }
    /// A_{n-1} ... A_0.
    Eigen::Matrix2cd product() const;
};

/// Forward orbit of length n from x.
OrbitCocycle build_cocycle(const HomogeneousEndomorphism& f, const ProjPoint& x, std::size_t n,
                           ChartPolicy policy = ChartPolicy::Largest);

/// Cocycle over a supplied orbit (consecutive points must satisfy
/// f(orbit[k]) = orbit[k+1]; checked to 1e-8 chordal distance).
OrbitCocycle cocycle_along(const HomogeneousEndomorphism& f, std::vector<ProjPoint> orbit,
                           ChartPolicy policy = ChartPolicy::Largest);

/// (1/n) sum log |A_k v_k| with v renormalized each step, v_0 = (1, 1)/sqrt(2).
double top_lyapunov(std::span<const Eigen::Matrix2cd> steps);
double top_lyapunov(const OrbitCocycle& c);

struct LyapunovEstimate {
    double chi1 = 0.0;  ///< chi1 <= chi2
    double chi2 = 0.0;
    std::size_t n = 0;
    double stderr_chi1 = 0.0;  ///< bootstrap over orbit blocks
    double stderr_chi2 = 0.0;
    double mean_log_det = 0.0; ///< Birkhoff average of log |det A_k|
};

/// chi2 from top_lyapunov; chi1 = mean log|det| - chi2; then sorted.
LyapunovEstimate lyapunov_pair(std::span<const Eigen::Matrix2cd> steps);
LyapunovEstimate lyapunov_pair(const OrbitCocycle& c);

/// Inverse cocycle A_{n-1}^{-1}, ..., A_0^{-1} (reverse order).
std::vector<Eigen::Matrix2cd> inverse_cocycle(std::span<const Eigen::Matrix2cd> steps);

struct EnsembleOptions {
    std::size_t n_orbits = 50;
    std::size_t n = 10000;  ///< steps per orbit
    BranchRules rules;
    ChartPolicy policy = ChartPolicy::Largest;
    std::uint64_t seed = 1;
    int threads = 1;
};

struct EnsembleLyapunov {
    std::vector<std::size_t> ends;  ///< cloud index each orbit ends at
    std::vector<LyapunovEstimate> orbits;
    double chi1 = 0.0;  ///< ensemble means
    double chi2 = 0.0;
    double stderr_chi1 = 0.0;  ///< spread of the orbit means / sqrt(n_orbits)
    double stderr_chi2 = 0.0;
};

/// Exponents along orbits that end at cloud points drawn without replacement.
/// Each orbit is built by backward iteration (inverse branches per `rules`),
/// so for a measure preserved by those branches its first point is again a
/// sample of the measure and the orbit stays on the support in floating point.
EnsembleLyapunov ensemble_lyapunov(const HomogeneousEndomorphism& f, const EmpiricalMeasure& cloud,
                                   const EnsembleOptions& options);

struct EntropyOptions {
    std::size_t n = 8;          ///< Bowen time
    double epsilon = 0.05;      ///< chordal radius
    std::size_t n_centers = 200;
    std::uint64_t seed = 1;
    int threads = 1;
};

struct EntropyEstimate {
    double entropy = 0.0;
    double cap = 0.0;             ///< (1/n) log N, the largest value the cloud can resolve
    std::size_t floor_hits = 0;   ///< centers whose ball held no other cloud point
    double floor_fraction = 0.0;
    bool resolution_floor = false;  ///< more than 20% of centers hit the floor
    std::vector<std::size_t> centers;
};

/// Brin-Katok local entropy: mean over centers x of -(1/n) log nu(B_n(x, eps)),
/// with nu(B_n) the cloud mass of the Bowen ball (the center included,
/// floored at 1/N). Centers are drawn without replacement from the cloud.
EntropyEstimate brin_katok_entropy(const HomogeneousEndomorphism& f, const EmpiricalMeasure& cloud,
                                   const EntropyOptions& options);

struct RuelleCheck {
    bool pass = false;
    double margin = 0.0;  ///< (chi1^+ + chi2^+ + tol) - h/2
};

/// h/2 <= max(chi1, 0) + max(chi2, 0) + tol.
RuelleCheck ruelle_check(double entropy, const LyapunovEstimate& est, double tol);

}  // namespace projdyn
