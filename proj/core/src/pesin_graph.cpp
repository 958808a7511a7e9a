#include "projdyn/pesin_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "projdyn/random.hpp"

namespace projdyn {

BivariatePolynomial::BivariatePolynomial(std::vector<BivariateTerm> terms) {
    for (const auto& t : terms) {
        require(t.i >= 0 && t.j >= 0, "negative exponent in bivariate term");
        require(t.i + t.j >= 1, "bivariate perturbation must not have a constant term");
        if (t.coeff != cplx{}) terms_.push_back(t);
    }
}

namespace {

cplx ipow(cplx z, int k) {
    cplx r{1.0, 0.0};
    for (int e = 0; e < k; ++e) r *= z;
    return r;
}

}  // namespace

cplx BivariatePolynomial::operator()(cplx x, cplx y) const noexcept {
    cplx s{};
    for (const auto& t : terms_) s += t.coeff * ipow(x, t.i) * ipow(y, t.j);
    return s;
}

std::pair<cplx, cplx> BivariatePolynomial::gradient(cplx x, cplx y) const noexcept {
    cplx dx{}, dy{};
    for (const auto& t : terms_) {
        if (t.i > 0) dx += t.coeff * static_cast<double>(t.i) * ipow(x, t.i - 1) * ipow(y, t.j);
        if (t.j > 0) dy += t.coeff * static_cast<double>(t.j) * ipow(x, t.i) * ipow(y, t.j - 1);
    }
    return {dx, dy};
}

double BivariatePolynomial::gradient_bound(double r) const noexcept {
    double bx = 0.0, by = 0.0;
    for (const auto& t : terms_) {
        const double m = std::abs(t.coeff) * std::pow(r, t.i + t.j - 1);
        bx += t.i * m;
        by += t.j * m;
    }
    return std::hypot(bx, by);
}

double LocalDiagonalMap::sampled_c1_norm(int samples, std::uint64_t seed) const {
    Rng rng(seed);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        double v[4];
        double n2 = 0.0;
        for (double& c : v) {
            c = rng.normal();
            n2 += c * c;
        }
        const double n = std::sqrt(n2);
        if (n == 0.0) continue;
        const double rad = (s % 2 == 0) ? r : r * std::pow(rng.uniform(), 0.25);
        const cplx x{v[0] / n * rad, v[1] / n * rad};
        const cplx y{v[2] / n * rad, v[3] / n * rad};
        for (const auto* p : {&alpha, &beta}) {
            const auto [dx, dy] = p->gradient(x, y);
            worst = std::max(worst, std::hypot(std::abs(dx), std::abs(dy)));
        }
    }
    return worst;
}

LocalDiagonalMap LocalDiagonalMap::with_coefficient_bound(cplx lambda, cplx mu, BivariatePolynomial alpha,
                                                          BivariatePolynomial beta, double r) {
    LocalDiagonalMap g{lambda, mu, std::move(alpha), std::move(beta), r, 0.0};
    g.delta = std::max(g.alpha.gradient_bound(r), g.beta.gradient_bound(r));
    return g;
}

void LocalDiagonalMap::validate(int samples) const {
    require(std::isfinite(r) && r > 0.0, "ball radius must be positive");
    require(std::isfinite(delta) && delta >= 0.0, "delta must be non-negative");
    require(std::abs(mu) < std::abs(lambda), "local map needs |mu| < |lambda|");
    const double measured = sampled_c1_norm(samples);
    require(measured <= delta * (1.0 + 1e-12) + 1e-15,
            "declared delta " + std::to_string(delta) + " is below the measured C^1 norm " +
                std::to_string(measured));
}

// ---------------------------------------------------------------------------

DiscMesh::DiscMesh(cplx center, double radius, int rings) : center_(center), radius_(radius), rings_(rings) {
    require(std::isfinite(radius) && radius > 0.0, "disc radius must be positive");
    require(rings >= 1, "mesh needs at least one ring");
    nodes_.push_back(center);
    std::vector<int> previous{0};
    for (int k = 1; k <= rings; ++k) {
        const int n = 6 * k;
        std::vector<int> ring(n);
        for (int j = 0; j < n; ++j) {
            ring[j] = static_cast<int>(nodes_.size());
            nodes_.push_back(center + std::polar(radius * k / rings, 2.0 * std::numbers::pi * j / n));
        }
        const int m = static_cast<int>(previous.size());
        if (m == 1) {
            for (int j = 0; j < n; ++j) triangles_.push_back({previous[0], ring[j], ring[(j + 1) % n]});
        } else {
            // Zip the two rings by angle.
            int i = 0, o = 0;
            while (i < m || o < n) {
                const double next_in = static_cast<double>(i + 1) / m;
                const double next_out = static_cast<double>(o + 1) / n;
                if (o < n && (i == m || next_out <= next_in + 1e-12)) {
                    triangles_.push_back({previous[i % m], ring[o % n], ring[(o + 1) % n]});
                    ++o;
                } else {
                    triangles_.push_back({previous[i % m], ring[o % n], previous[(i + 1) % m]});
                    ++i;
                }
            }
        }
        previous = std::move(ring);
    }

    buckets_ = 2 * rings + 1;
    bucket_triangles_.assign(static_cast<std::size_t>(buckets_) * buckets_, {});
    const double cell = 2.0 * radius_ / buckets_;
    auto bucket_of = [&](double v) { return std::clamp(static_cast<int>(std::floor(v / cell)), 0, buckets_ - 1); };
    for (int t = 0; t < static_cast<int>(triangles_.size()); ++t) {
        double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
        for (int v : triangles_[t]) {
            const cplx p = nodes_[v] - center_ + cplx{radius_, radius_};
            xlo = std::min(xlo, p.real());
            xhi = std::max(xhi, p.real());
            ylo = std::min(ylo, p.imag());
            yhi = std::max(yhi, p.imag());
        }
        for (int by = bucket_of(ylo); by <= bucket_of(yhi); ++by)
            for (int bx = bucket_of(xlo); bx <= bucket_of(xhi); ++bx)
                bucket_triangles_[static_cast<std::size_t>(by) * buckets_ + bx].push_back(t);
    }
}

std::vector<int> DiscMesh::boundary() const {
    const int n = 6 * rings_;
    std::vector<int> b(n);
    const int first = static_cast<int>(nodes_.size()) - n;
    for (int j = 0; j < n; ++j) b[j] = first + j;
    return b;
}

double DiscMesh::boundary_spacing() const noexcept {
    // Regular 6K-gon of circumradius rho.
    return 2.0 * radius_ * std::sin(std::numbers::pi / (6.0 * rings_));
}

int DiscMesh::locate(cplx x, std::array<double, 3>& bary) const {
    const cplx p = x - center_ + cplx{radius_, radius_};
    const double cell = 2.0 * radius_ / buckets_;
    const double fx = std::floor(p.real() / cell), fy = std::floor(p.imag() / cell);
    // Points just outside the bucket range may still sit on the hull.
    if (!(fx >= -1.0 && fx <= buckets_ && fy >= -1.0 && fy <= buckets_)) return -1;
    const int bx = std::clamp(static_cast<int>(fx), 0, buckets_ - 1);
    const int by = std::clamp(static_cast<int>(fy), 0, buckets_ - 1);
    constexpr double tol = 1e-12;
    for (int t : bucket_triangles_[static_cast<std::size_t>(by) * buckets_ + bx]) {
        const cplx a = nodes_[triangles_[t][0]], b = nodes_[triangles_[t][1]], c = nodes_[triangles_[t][2]];
        const cplx e1 = b - a, e2 = c - a, d = x - a;
        const double det = e1.real() * e2.imag() - e1.imag() * e2.real();
        const double l1 = (d.real() * e2.imag() - d.imag() * e2.real()) / det;
        const double l2 = (e1.real() * d.imag() - e1.imag() * d.real()) / det;
        const double l0 = 1.0 - l1 - l2;
        if (l0 >= -tol && l1 >= -tol && l2 >= -tol) {
            bary = {l0, l1, l2};
            return t;
        }
    }
    return -1;
}

namespace {

struct EdgeHit {
    int a = 0, b = 0;
    double s = 0.0;
    cplx point;
};

EdgeHit nearest_on_hull(const DiscMesh& mesh, cplx x) {
    const auto ring = mesh.boundary();
    const auto& nodes = mesh.nodes();
    EdgeHit best;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < ring.size(); ++j) {
        const int a = ring[j], b = ring[(j + 1) % ring.size()];
        const cplx e = nodes[b] - nodes[a];
        const double s = std::clamp(((x - nodes[a]) * std::conj(e)).real() / std::norm(e), 0.0, 1.0);
        const cplx q = nodes[a] + s * e;
        const double d = std::abs(x - q);
        if (d < best_d) {
            best_d = d;
            best = {a, b, s, q};
        }
    }
    return best;
}

}  // namespace

cplx DiscMesh::project(cplx x) const {
    std::array<double, 3> bary;
    if (locate(x, bary) >= 0) return x;
    return nearest_on_hull(*this, x).point;
}

// ---------------------------------------------------------------------------

LipschitzGraph::LipschitzGraph(DiscMesh mesh, std::vector<cplx> values, double gamma)
    : mesh_(std::move(mesh)), values_(std::move(values)), gamma_(gamma) {
    require(values_.size() == mesh_.nodes().size(), "graph needs one value per mesh node");
    require(std::isfinite(gamma_) && gamma_ >= 0.0, "Lipschitz constant must be non-negative");
    for (const cplx& v : values_) require(std::isfinite(v.real()) && std::isfinite(v.imag()), "non-finite graph value");
}

LipschitzGraph LipschitzGraph::sample(DiscMesh mesh, const std::function<cplx(cplx)>& phi,
                                      std::optional<double> gamma) {
    std::vector<cplx> values;
    values.reserve(mesh.nodes().size());
    for (const cplx& x : mesh.nodes()) values.push_back(phi(x));
    LipschitzGraph g(std::move(mesh), std::move(values), gamma.value_or(0.0));
    if (!gamma) g.gamma_ = g.interpolant_lipschitz();
    return g;
}

cplx LipschitzGraph::operator()(cplx x) const {
    std::array<double, 3> bary;
    const int t = mesh_.locate(x, bary);
    if (t >= 0) {
        const auto& tri = mesh_.triangles()[t];
        return bary[0] * values_[tri[0]] + bary[1] * values_[tri[1]] + bary[2] * values_[tri[2]];
    }
    const EdgeHit h = nearest_on_hull(mesh_, x);
    return (1.0 - h.s) * values_[h.a] + h.s * values_[h.b];
}

double LipschitzGraph::interpolant_lipschitz() const {
    double worst = 0.0;
    const auto& nodes = mesh_.nodes();
    for (const auto& tri : mesh_.triangles()) {
        const cplx e1 = nodes[tri[1]] - nodes[tri[0]], e2 = nodes[tri[2]] - nodes[tri[0]];
        const cplx v1 = values_[tri[1]] - values_[tri[0]], v2 = values_[tri[2]] - values_[tri[0]];
        // A = V P^{-1} as real 2x2 matrices.
        const double det = e1.real() * e2.imag() - e2.real() * e1.imag();
        const double p00 = e2.imag() / det, p01 = -e2.real() / det;
        const double p10 = -e1.imag() / det, p11 = e1.real() / det;
        const double a = v1.real() * p00 + v2.real() * p10, b = v1.real() * p01 + v2.real() * p11;
        const double c = v1.imag() * p00 + v2.imag() * p10, d = v1.imag() * p01 + v2.imag() * p11;
        // A h = p h + q conj(h), with operator norm |p| + |q|.
        const cplx pw{0.5 * (a + d), 0.5 * (c - b)}, qw{0.5 * (a - d), 0.5 * (c + b)};
        worst = std::max(worst, std::abs(pw) + std::abs(qw));
    }
    return worst;
}

double measure_lipschitz(const LipschitzGraph& graph) {
    const auto& x = graph.mesh().nodes();
    const auto& v = graph.values();
    require(x.size() >= 2, "need at least two nodes");
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            worst = std::max(worst, std::abs(v[i] - v[j]) / std::abs(x[i] - x[j]));
    return worst;
}

double transformed_lipschitz_bound(const LocalDiagonalMap& g, double gamma) {
    const double spread = g.delta * (1.0 + gamma);
    return (std::abs(g.mu) * gamma + spread) / (std::abs(g.lambda) - spread);
}

GraphTransformResult graph_transform(const LocalDiagonalMap& g, const LipschitzGraph& graph,
                                     const GraphTransformOptions& options) {
    if (options.validate_map) g.validate();
    require(options.tolerance > 0.0, "tolerance must be positive");

    const auto& nodes = graph.mesh().nodes();
    const auto& values = graph.values();
    for (std::size_t k = 0; k < nodes.size(); ++k)
        if (std::norm(nodes[k]) + std::norm(values[k]) > g.r * g.r * (1.0 + 1e-12))
            fail(ErrorKind::EscapedBall, "graph leaves the ball B(0, r) at node " + std::to_string(k));

    // A piecewise-affine interpolant may be steeper than the declared constant.
    const double gamma_in = std::max(graph.gamma(), graph.interpolant_lipschitz());
    const double spread = g.delta * (1.0 + gamma_in);
    const double lam = std::abs(g.lambda);
    if (spread >= lam)
        fail(ErrorKind::ConditionViolated, "delta (1 + gamma) = " + std::to_string(spread) + " >= |lambda| = " +
                                               std::to_string(lam));
    const double t = spread / lam;

    auto abscissa_image = [&](cplx x, cplx y) { return g.lambda * x + g.alpha(x, y); };
    const cplx c0 = graph.mesh().center();
    const cplx center = abscissa_image(c0, graph(c0));
    double dist = std::numeric_limits<double>::infinity();
    for (int b : graph.mesh().boundary()) dist = std::min(dist, std::abs(abscissa_image(nodes[b], values[b]) - center));
    double radius = dist - (lam + spread) * graph.mesh().boundary_spacing();
    if (options.max_radius) radius = std::min(radius, *options.max_radius);
    if (!(radius > 0.0)) fail(ErrorKind::ConditionViolated, "image disc is empty");

    DiscMesh out_mesh(center, radius, options.rings.value_or(graph.mesh().rings()));
    const int max_iter = std::max(
        options.max_iterations,
        static_cast<int>(std::min(1e5, std::ceil(std::log(options.tolerance) / std::log(std::max(t, 1e-300))) + 50)));

    GraphTransformResult result{LipschitzGraph(out_mesh, std::vector<cplx>(out_mesh.nodes().size()), 0.0), gamma_in, t,
                                0.0, 0};
    std::vector<cplx> out_values(out_mesh.nodes().size());
    const auto& mesh = graph.mesh();
    for (std::size_t k = 0; k < out_values.size(); ++k) {
        const cplx x0 = out_mesh.nodes()[k];
        cplx x = mesh.project((x0 - g.alpha(c0, graph(c0))) / g.lambda);
        double prev_step = 0.0;
        int it = 0;
        for (;; ++it) {
            if (it >= max_iter) fail(ErrorKind::ConditionViolated, "preimage iteration did not converge");
            const cplx next = mesh.project((x0 - g.alpha(x, graph(x))) / g.lambda);
            const double step = std::abs(next - x);
            if (prev_step > 1e-10) result.worst_step_ratio = std::max(result.worst_step_ratio, step / prev_step);
            prev_step = step;
            x = next;
            if (step <= options.tolerance * std::max(1.0, std::abs(x))) break;
        }
        result.worst_iterations = std::max(result.worst_iterations, it + 1);
        const cplx y = graph(x);
        out_values[k] = g.mu * y + g.beta(x, y);
    }
    result.graph =
        LipschitzGraph(std::move(out_mesh), std::move(out_values), transformed_lipschitz_bound(g, gamma_in));
    return result;
}

GraphIteration iterate_graph_transform(const std::vector<LocalDiagonalMap>& cocycle, const LipschitzGraph& graph0,
                                       double gamma_target, bool keep_domain) {
    require(!cocycle.empty(), "empty cocycle");
    GraphIteration out{graph0, {graph0.gamma()}, std::nullopt};
    if (graph0.gamma() <= gamma_target) out.steps_to_target = 0;
    GraphTransformOptions options;
    if (keep_domain) options.max_radius = graph0.mesh().radius();
    for (std::size_t s = 0; s < cocycle.size(); ++s) {
        try {
            out.graph = graph_transform(cocycle[s], out.graph, options).graph;
        } catch (const StepError&) {
            throw;
        } catch (const Error& e) {
            throw StepError(e.kind(), s, e.message());
        }
        out.gammas.push_back(out.graph.gamma());
        if (!out.steps_to_target && out.graph.gamma() <= gamma_target) out.steps_to_target = s + 1;
    }
    return out;
}

}  // namespace projdyn
