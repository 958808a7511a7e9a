#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "projdyn/error.hpp"

namespace projdyn {

struct BivariateTerm {
    int i = 0;  ///< power of x
    int j = 0;  ///< power of y
    cplx coeff;
};

/// Polynomial in (x, y) without constant term.
class BivariatePolynomial {
public:
    BivariatePolynomial() = default;
    explicit BivariatePolynomial(std::vector<BivariateTerm> terms);

    const std::vector<BivariateTerm>& terms() const noexcept { return terms_; }
    cplx operator()(cplx x, cplx y) const noexcept;
    std::pair<cplx, cplx> gradient(cplx x, cplx y) const noexcept;

    /// Upper bound for |grad| on the ball |x|^2 + |y|^2 <= r^2 from |x|, |y| <= r.
    double gradient_bound(double r) const noexcept;

private:
    std::vector<BivariateTerm> terms_;
};

/// g(x, y) = (lambda x + alpha(x, y), mu y + beta(x, y)) on the ball B(0, r)
/// of C^2, with |grad alpha|, |grad beta| <= delta there.
struct LocalDiagonalMap {
    cplx lambda;
    cplx mu;
    BivariatePolynomial alpha;
    BivariatePolynomial beta;
    double r = 1.0;
    double delta = 0.0;

    std::pair<cplx, cplx> operator()(cplx x, cplx y) const noexcept {
        return {lambda * x + alpha(x, y), mu * y + beta(x, y)};
    }

    /// Max gradient norm of alpha and beta over `samples` points of B(0, r)
    /// (half of them on the boundary sphere).
    double sampled_c1_norm(int samples = 10000, std::uint64_t seed = 7) const;

    /// delta = gradient bound of the coefficients (an upper bound for the C^1 norm).
    static LocalDiagonalMap with_coefficient_bound(cplx lambda, cplx mu, BivariatePolynomial alpha,
                                                   BivariatePolynomial beta, double r);

    /// Throws InvalidArgument unless 0 < |mu| < |lambda| and the sampled C^1
    /// norm does not exceed the declared delta.
    void validate(int samples = 10000) const;
};

/// Quasi-uniform nodes on a disc: the center plus rings k = 1..K of 6k nodes
/// at radius rho k / K, triangulated ring to ring. The hull is a convex
/// regular 6K-gon inscribed in the disc.
class DiscMesh {
public:
    DiscMesh(cplx center, double radius, int rings);

    cplx center() const noexcept { return center_; }
    double radius() const noexcept { return radius_; }
    int rings() const noexcept { return rings_; }
    const std::vector<cplx>& nodes() const noexcept { return nodes_; }
    const std::vector<std::array<int, 3>>& triangles() const noexcept { return triangles_; }
    /// Node indices of the outer ring, counterclockwise.
    std::vector<int> boundary() const;
    /// Largest distance between neighbouring outer-ring nodes.
    double boundary_spacing() const noexcept;

    /// Triangle containing x (or -1) and its barycentric coordinates.
    int locate(cplx x, std::array<double, 3>& bary) const;
    /// Nearest point of the (convex) mesh hull.
    cplx project(cplx x) const;

private:
    cplx center_;
    double radius_;
    int rings_;
    std::vector<cplx> nodes_;
    std::vector<std::array<int, 3>> triangles_;
    int buckets_ = 1;
    std::vector<std::vector<int>> bucket_triangles_;
};

/// Minimum ring count giving at least 256 nodes.
inline constexpr int kDefaultRings = 9;

/// Graph {(x, phi(x)) : x in D} sampled at mesh nodes, extended by
/// piecewise-affine interpolation on the mesh triangles.
class LipschitzGraph {
public:
    LipschitzGraph(DiscMesh mesh, std::vector<cplx> values, double gamma);

    /// Samples `phi` at the nodes. With gamma absent, the declared constant is
    /// the interpolant's exact Lipschitz constant.
    static LipschitzGraph sample(DiscMesh mesh, const std::function<cplx(cplx)>& phi,
                                 std::optional<double> gamma = std::nullopt);

    const DiscMesh& mesh() const noexcept { return mesh_; }
    const std::vector<cplx>& values() const noexcept { return values_; }
    double gamma() const noexcept { return gamma_; }

    /// Interpolated value; points outside the hull are projected onto it first.
    cplx operator()(cplx x) const;

    /// Exact Lipschitz constant of the piecewise-affine interpolant
    /// (max over triangles of the operator norm of the affine piece).
    double interpolant_lipschitz() const;

private:
    DiscMesh mesh_;
    std::vector<cplx> values_;
    double gamma_;
};

/// Max over node pairs of |phi(x1) - phi(x2)| / |x1 - x2|.
double measure_lipschitz(const LipschitzGraph& graph);

/// (|mu| gamma + delta (1 + gamma)) / (|lambda| - delta (1 + gamma)).
double transformed_lipschitz_bound(const LocalDiagonalMap& g, double gamma);

struct GraphTransformOptions {
    std::optional<int> rings;          ///< output ring count (default: same as input)
    std::optional<double> max_radius;  ///< cap on the output disc radius
    double tolerance = 1e-12;
    int max_iterations = 500;
    bool validate_map = true;
};

struct GraphTransformResult {
    LipschitzGraph graph;
    double gamma_in = 0.0;          ///< constant actually used: max(declared, interpolant)
    double contraction = 0.0;       ///< t = delta (1 + gamma_in) / |lambda|
    double worst_step_ratio = 0.0;  ///< largest observed |x_{k+1}-x_k| / |x_k - x_{k-1}|
    int worst_iterations = 0;
};

/// Image of the graph under g, resampled over the disc centred at the image
/// of the mesh centre whose radius is the distance to the images of the hull
/// vertices minus a Lipschitz bound on the image of one hull edge. Each output node's abscissa preimage is
/// the fixed point of F(x) = (x0 - alpha(x, phi(x))) / lambda.
/// Throws ConditionViolated if delta (1 + gamma) >= |lambda|, EscapedBall if
/// the input graph leaves B(0, r).
GraphTransformResult graph_transform(const LocalDiagonalMap& g, const LipschitzGraph& graph,
                                     const GraphTransformOptions& options = {});

struct GraphIteration {
    LipschitzGraph graph;
    std::vector<double> gammas;  ///< declared constants gamma_0, gamma_1, ...
    std::optional<std::size_t> steps_to_target;
};

/// Applies the maps in order. With keep_domain, every output disc is capped at
/// the radius of graph0's domain (graphs over a fixed disc, as in Pesin charts).
/// Errors are rethrown as StepError carrying the failing index.
GraphIteration iterate_graph_transform(const std::vector<LocalDiagonalMap>& cocycle, const LipschitzGraph& graph0,
                                       double gamma_target, bool keep_domain = true);

}  // namespace projdyn
