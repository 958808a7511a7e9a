#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "projdyn/ergodic.hpp"
#include "projdyn/io.hpp"
#include "projdyn/map_io.hpp"
#include "projdyn/orbit.hpp"
#include "projdyn/parallel.hpp"
#include "projdyn/pesin_graph.hpp"
#include "projdyn/siegel.hpp"

namespace projdyn::cli {

namespace {

void check(bool ok, const std::string& message) {
    if (!ok) fail(ErrorKind::InvalidArgument, message);
}

Json pair_json(cplx c) { return Json::array({c.real(), c.imag()}); }

Json lift_json(const ProjPoint& p) {
    const Lift l = p.lift();
    return Json::array({l[0].real(), l[0].imag(), l[1].real(), l[1].imag(), l[2].real(), l[2].imag()});
}

Json source_json(const Common& c) {
    Json j = Json::object();
    if (!c.map_path.empty()) {
        j["map"] = c.map_path;
    } else {
        j["builtin"] = c.builtin;
        if (c.builtin == "siegel") j["theta"] = c.theta;
    }
    j["seed"] = c.seed;
    return j;
}

Json siegel_source_json(const Common& c) {
    Json j = Json::object();
    j["builtin"] = "siegel";
    j["theta"] = c.theta;
    j["seed"] = c.seed;
    return j;
}

Json cloud_json(const MeasureParams& p) {
    Json j = Json::object();
    j["measure"] = p.measure;
    j["n_points"] = p.n_points;
    if (p.measure == "mu") {
        j["n_backward"] = p.n_backward;
    } else {
        j["m"] = p.m;
        j["grid_size"] = p.grid_size;
        j["n_iter"] = p.n_iter;
        if (!p.line_z.empty()) j["line_z"] = p.line_z;
    }
    return j;
}

void validate_cloud(const MeasureParams& p) {
    check(p.measure == "mu" || p.measure == "nu", "measure must be \"mu\" or \"nu\"");
    check(p.n_points > 0, "n_points must be positive");
    check(p.n_backward >= 10, "n_backward must be at least 10");
    check(p.m > 0, "m must be positive");
    check(p.grid_size >= 16, "grid_size must be at least 16");
    check(p.n_iter > 0, "n_iter must be positive");
    check(p.line_z.empty() || p.line_z.size() == 2, "line_z takes two numbers");
}

void validate_epsilon(double eps) { check(eps > 0.0 && eps < 0.5, "epsilon must lie in (0, 0.5)"); }

bool is_siegel_source(const Common& c) { return c.map_path.empty() && c.builtin == "siegel"; }

// The vertical line z = a carrying nu: a point of the invariant curve in the
// Siegel disk for the builtin Siegel map, otherwise a fixed generic value.
cplx nu_line_value(const Common& c, const MeasureParams& p) {
    if (!p.line_z.empty()) return {p.line_z[0], p.line_z[1]};
    if (is_siegel_source(c)) {
        const auto lin = siegel_linearize(rotation_multiplier(c.theta));
        return invariant_curve_point(lin, default_alpha_level(lin));
    }
    return {0.3, 0.0};
}

ProjectiveLine vertical_line(cplx a) { return {{a, 0.0, 1.0}, {0.0, 1.0, 0.0}}; }

NuSample nu_cloud(const HomogeneousEndomorphism& f, const Common& c, const MeasureParams& p, cplx a) {
    const GreenEvaluator ge(f, p.n_iter);
    const CurveFamily family = build_S_m(f, vertical_line(a), p.m);
    NuSamplerOptions o;
    o.grid_size = p.grid_size;
    o.n_points = p.n_points;
    o.seed = c.seed;
    o.slice.threads = c.threads;
    return sample_nu(ge, family, o);
}

EmpiricalMeasure cloud(const HomogeneousEndomorphism& f, const Common& c, const MeasureParams& p) {
    if (p.measure == "nu") return nu_cloud(f, c, p, nu_line_value(c, p)).measure;
    MuSamplerOptions o;
    o.n_points = p.n_points;
    o.n_backward = p.n_backward;
    o.seed = c.seed;
    o.threads = c.threads;
    return sample_mu(f, o);
}

BranchRules branch_rules(const std::string& z_branch, const std::string& measure) {
    check(z_branch == "auto" || z_branch == "random" || z_branch == "min-modulus",
          "z_branch must be \"auto\", \"random\" or \"min-modulus\"");
    BranchRules rules;
    // nu lives on the Siegel disk in z, where the small inverse branch follows the rotation.
    if (z_branch == "min-modulus" || (z_branch == "auto" && measure == "nu")) rules.z = BranchRule::MinModulus;
    return rules;
}

Json lyapunov_json(const EnsembleLyapunov& e, std::size_t n) {
    Json j = Json::object();
    j["chi1"] = e.chi1;
    j["chi2"] = e.chi2;
    j["stderr"] = {{"chi1", e.stderr_chi1}, {"chi2", e.stderr_chi2}};
    j["n"] = n;
    j["n_orbits"] = e.orbits.size();
    Json orbits = Json::array();
    for (const auto& o : e.orbits) orbits.push_back(Json::array({o.chi1, o.chi2}));
    j["orbits"] = orbits;
    return j;
}

Json entropy_json(const EntropyEstimate& e) {
    Json j = Json::object();
    j["entropy"] = e.entropy;
    j["cap"] = e.cap;
    j["floor_hits"] = e.floor_hits;
    j["floor_fraction"] = e.floor_fraction;
    j["resolution_floor"] = e.resolution_floor;
    return j;
}

std::vector<std::string> entropy_warnings(const EntropyEstimate& e) {
    if (e.resolution_floor) return {"ResolutionFloor"};
    return {};
}

std::string measure_metadata(const EmpiricalMeasure& m, const std::string& hash, std::optional<int> m_curves,
                             std::optional<std::size_t> n_backward) {
    return dump_json(metadata_json({hash, m.seed, m.provenance, m.size(), m_curves, n_backward}));
}

}  // namespace

HomogeneousEndomorphism source_map(const Common& c) {
    if (!c.map_path.empty()) return load_map(c.map_path);
    return builtin_map(c.builtin, c.theta);
}

Json config_json(const Common& c, const GreenParams& p) {
    Json j = source_json(c);
    j["n_iter"] = p.n_iter;
    j["grid_size"] = p.grid_size;
    j["extent"] = p.extent;
    j["w"] = p.w;
    return j;
}

Json config_json(const Common& c, const OrbitParams& p) {
    Json j = source_json(c);
    j["start"] = p.start;
    j["n"] = p.n;
    return j;
}

Json config_json(const Common& c, const MuParams& p) {
    Json j = source_json(c);
    j["n_points"] = p.n_points;
    j["n_backward"] = p.n_backward;
    return j;
}

Json config_json(const Common& c, const NuParams& p) {
    Json j = source_json(c);
    j.update(cloud_json(p.cloud));
    return j;
}

Json config_json(const Common& c, const AlphaParams& p) {
    Json j = siegel_source_json(c);
    j["n_skip"] = p.n_skip;
    j["n_points"] = p.n_points;
    if (p.level) j["level"] = *p.level;
    j["n_terms"] = p.n_terms;
    return j;
}

Json config_json(const Common& c, const LyapunovParams& p) {
    Json j = source_json(c);
    j["cloud"] = cloud_json(p.cloud);
    j["n_orbits"] = p.n_orbits;
    j["n"] = p.n;
    j["z_branch"] = p.z_branch;
    return j;
}

Json config_json(const Common& c, const EntropyParams& p) {
    Json j = source_json(c);
    j["cloud"] = cloud_json(p.cloud);
    j["n"] = p.n;
    j["epsilon"] = p.epsilon;
    j["n_centers"] = p.n_centers;
    return j;
}

Json config_json(const Common& c, const RuelleParams& p) {
    Json j = source_json(c);
    j["cloud"] = cloud_json(p.cloud);
    j["n_orbits"] = p.n_orbits;
    j["orbit_length"] = p.orbit_length;
    j["z_branch"] = p.z_branch;
    j["n"] = p.n;
    j["epsilon"] = p.epsilon;
    j["n_centers"] = p.n_centers;
    j["tol"] = p.tol;
    return j;
}

Json config_json(const Common& c, const SiegelParams& p) {
    Json j = siegel_source_json(c);
    j["n_terms"] = p.n_terms;
    return j;
}

Json config_json(const Common& c, const GraphParams& p) {
    Json j = Json::object();
    if (!p.input.empty())
        j["input"] = p.input;
    else
        j["fixture"] = p.fixture;
    j["seed"] = c.seed;
    j["steps"] = p.steps;
    j["gamma_target"] = p.gamma_target;
    j["keep_domain"] = p.keep_domain;
    return j;
}

Outcome run_green(const Common& c, const GreenParams& p) {
    check(p.n_iter > 0, "n_iter must be positive");
    check(p.grid_size >= 2, "grid_size must be at least 2");
    check(p.extent > 0.0, "extent must be positive");
    check(p.w.size() == 2, "w takes two numbers");
    const auto f = source_map(c);
    const GreenEvaluator ge(f, p.n_iter);
    const int n = p.grid_size;
    const cplx w{p.w[0], p.w[1]};
    std::vector<double> grid(static_cast<std::size_t>(n) * n);
    auto coord = [&](int i) { return -p.extent + 2.0 * p.extent * i / (n - 1); };
    for_each_block(static_cast<std::size_t>(n), c.threads, [&](std::size_t iy) {
        for (int ix = 0; ix < n; ++ix)
            grid[iy * n + ix] = ge(ProjPoint(cplx{coord(ix), coord(static_cast<int>(iy))}, w, 1.0)).value;
    });

    Outcome out;
    out.source_hash = map_hash(f);
    std::string csv = "re_z,im_z,green\n";
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
            csv += format_double(coord(ix)) + "," + format_double(coord(iy)) + "," + format_double(grid[iy * n + ix]) + "\n";
    out.artifacts.push_back({"green.csv", std::move(csv)});
    out.artifacts.push_back({"green.pgm", pgm_image(grid, n)});
    double sum = 0.0;
    for (double g : grid) sum += g;
    out.result["error_bound"] = ge.error_bound();
    out.result["u_bound"] = ge.u_bound();
    out.result["min"] = *std::min_element(grid.begin(), grid.end());
    out.result["max"] = *std::max_element(grid.begin(), grid.end());
    out.result["mean"] = sum / static_cast<double>(grid.size());
    return out;
}

Outcome run_orbit(const Common& c, const OrbitParams& p) {
    check(p.start.size() == 4, "start takes four numbers: re z, im z, re w, im w");
    check(p.n > 0, "n must be positive");
    const auto f = source_map(c);
    const auto orbit = forward_orbit(f, ProjPoint(cplx{p.start[0], p.start[1]}, cplx{p.start[2], p.start[3]}, 1.0), p.n);
    Outcome out;
    out.source_hash = map_hash(f);
    std::string csv = "k,re_z,im_z,re_w,im_w,re_t,im_t\n";
    for (std::size_t k = 0; k < orbit.size(); ++k) {
        csv += std::to_string(k);
        for (const auto& v : lift_json(orbit[k])) csv += "," + format_double(v.get<double>());
        csv += "\n";
    }
    out.artifacts.push_back({"orbit.csv", std::move(csv)});
    out.result["n"] = p.n;
    out.result["final"] = lift_json(orbit.back());
    return out;
}

Outcome run_sample_mu(const Common& c, const MuParams& p) {
    check(p.n_points > 0, "n_points must be positive");
    check(p.n_backward >= 10, "n_backward must be at least 10");
    const auto f = source_map(c);
    MuSamplerOptions o;
    o.n_points = p.n_points;
    o.n_backward = p.n_backward;
    o.seed = c.seed;
    o.threads = c.threads;
    const auto mu = sample_mu(f, o);
    Outcome out;
    out.source_hash = map_hash(f);
    out.artifacts.push_back({"mu.csv", measure_csv(mu)});
    out.artifacts.push_back({"mu.json", measure_metadata(mu, out.source_hash, std::nullopt, p.n_backward)});
    out.result["n_points"] = mu.size();
    out.result["provenance"] = std::string(to_string(mu.provenance));
    return out;
}

Outcome run_sample_nu(const Common& c, const NuParams& p) {
    validate_cloud(p.cloud);
    const auto f = source_map(c);
    const cplx a = nu_line_value(c, p.cloud);
    const auto nu = nu_cloud(f, c, p.cloud, a);
    const GreenEvaluator ge(f, p.cloud.n_iter);
    SliceOptions so;
    so.threads = c.threads;
    const auto density = line_slice_density(ge, Curve{vertical_line(a), 0}, p.cloud.grid_size, so);

    Outcome out;
    out.source_hash = map_hash(f);
    out.artifacts.push_back({"nu.csv", measure_csv(nu.measure)});
    out.artifacts.push_back({"nu.json", measure_metadata(nu.measure, out.source_hash, p.cloud.m, std::nullopt)});
    out.artifacts.push_back({"nu_slice.pgm", pgm_image(density.inner, density.grid_size)});
    out.result["n_points"] = nu.measure.size();
    out.result["line_z"] = pair_json(a);
    out.result["curve_mass"] = nu.curve_mass;
    out.result["clipped_fraction"] = nu.clipped_fraction;
    return out;
}

Outcome run_sample_alpha(const Common& c, const AlphaParams& p) {
    check(p.n_points > 0, "n_points must be positive");
    check(p.n_terms >= 2, "n_terms must be at least 2");
    const auto lin = siegel_linearize(rotation_multiplier(c.theta), p.n_terms);
    const double level = p.level.value_or(default_alpha_level(lin));
    check(level > 0.0 && level < lin.radius_estimate, "level must lie in (0, radius_estimate)");
    const cplx a0 = invariant_curve_point(lin, level);
    const auto alpha = sample_alpha(lin, a0, p.n_skip, p.n_points);
    Outcome out;
    out.source_hash = map_hash(siegel_product_map(c.theta));
    out.artifacts.push_back({"alpha.csv", measure_csv(alpha)});
    out.artifacts.push_back({"alpha.json", measure_metadata(alpha, out.source_hash, std::nullopt, std::nullopt)});
    out.result["n_points"] = alpha.size();
    out.result["level"] = level;
    out.result["a0"] = pair_json(a0);
    out.result["radius_estimate"] = lin.radius_estimate;
    return out;
}

Outcome run_lyapunov(const Common& c, const LyapunovParams& p) {
    validate_cloud(p.cloud);
    check(p.n_orbits > 0 && p.n_orbits <= p.cloud.n_points, "n_orbits must lie in [1, n_points]");
    check(p.n > 0, "n must be positive");
    const BranchRules rules = branch_rules(p.z_branch, p.cloud.measure);
    const auto f = source_map(c);
    const auto points = cloud(f, c, p.cloud);
    EnsembleOptions o;
    o.n_orbits = p.n_orbits;
    o.n = p.n;
    o.rules = rules;
    o.seed = mix_seed(c.seed, 1);
    o.threads = c.threads;
    Outcome out;
    out.source_hash = map_hash(f);
    out.result = lyapunov_json(ensemble_lyapunov(f, points, o), p.n);
    return out;
}

Outcome run_entropy(const Common& c, const EntropyParams& p) {
    validate_cloud(p.cloud);
    validate_epsilon(p.epsilon);
    check(p.n > 0, "n must be positive");
    check(p.n_centers > 0, "n_centers must be positive");
    const auto f = source_map(c);
    const auto points = cloud(f, c, p.cloud);
    EntropyOptions o;
    o.n = p.n;
    o.epsilon = p.epsilon;
    o.n_centers = p.n_centers;
    o.seed = mix_seed(c.seed, 2);
    o.threads = c.threads;
    const auto e = brin_katok_entropy(f, points, o);
    Outcome out;
    out.source_hash = map_hash(f);
    out.result = entropy_json(e);
    out.warnings = entropy_warnings(e);
    return out;
}

Outcome run_ruelle(const Common& c, const RuelleParams& p) {
    validate_cloud(p.cloud);
    validate_epsilon(p.epsilon);
    check(p.n_orbits > 0 && p.n_orbits <= p.cloud.n_points, "n_orbits must lie in [1, n_points]");
    check(p.orbit_length > 0 && p.n > 0 && p.n_centers > 0, "counts must be positive");
    check(p.tol >= 0.0, "tol must be nonnegative");
    const BranchRules rules = branch_rules(p.z_branch, p.cloud.measure);
    const auto f = source_map(c);
    const auto points = cloud(f, c, p.cloud);

    EnsembleOptions lo;
    lo.n_orbits = p.n_orbits;
    lo.n = p.orbit_length;
    lo.rules = rules;
    lo.seed = mix_seed(c.seed, 1);
    lo.threads = c.threads;
    const auto lyap = ensemble_lyapunov(f, points, lo);
    EntropyOptions eo;
    eo.n = p.n;
    eo.epsilon = p.epsilon;
    eo.n_centers = p.n_centers;
    eo.seed = mix_seed(c.seed, 2);
    eo.threads = c.threads;
    const auto ent = brin_katok_entropy(f, points, eo);
    LyapunovEstimate mean;
    mean.chi1 = lyap.chi1;
    mean.chi2 = lyap.chi2;
    const auto check_result = ruelle_check(ent.entropy, mean, p.tol);

    Outcome out;
    out.source_hash = map_hash(f);
    out.result["chi1"] = lyap.chi1;
    out.result["chi2"] = lyap.chi2;
    out.result["stderr"] = {{"chi1", lyap.stderr_chi1}, {"chi2", lyap.stderr_chi2}};
    out.result["entropy"] = ent.entropy;
    out.result["entropy_cap"] = ent.cap;
    out.result["ruelle_margin"] = check_result.margin;
    out.result["pass"] = check_result.pass;
    out.warnings = entropy_warnings(ent);
    return out;
}

Outcome run_siegel(const Common& c, const SiegelParams& p) {
    check(p.n_terms >= 2, "n_terms must be at least 2");
    const cplx lambda = rotation_multiplier(c.theta);
    const auto lin = siegel_linearize(lambda, p.n_terms);
    Outcome out;
    out.source_hash = map_hash(siegel_product_map(c.theta));
    out.result["lambda"] = pair_json(lambda);
    out.result["radius_estimate"] = lin.radius_estimate;
    out.result["default_level"] = default_alpha_level(lin);
    Json coeffs = Json::array();
    for (cplx a : lin.coeffs) coeffs.push_back(pair_json(a));
    out.result["coefficients"] = coeffs;
    return out;
}

namespace {

// Appendix-style example: g = (2x + 0.05x^2, 0.5y + 0.05xy) on B(0, 1) and a
// 0.2-Lipschitz graph over the disc of radius 0.8; "inadmissible" breaks
// delta (1 + gamma) < |lambda|.
Json graph_fixture(const std::string& name) {
    Json j = Json::object();
    if (name == "quadratic") {
        const auto g = LocalDiagonalMap::with_coefficient_bound(2.0, 0.5, BivariatePolynomial({{2, 0, 0.05}}),
                                                               BivariatePolynomial({{1, 1, 0.05}}), 1.0);
        j["cocycle"] = Json::array({local_map_json(g)});
        j["graph"] = graph_json(LipschitzGraph::sample(DiscMesh(0.0, 0.8, kDefaultRings), [](cplx x) {
            return 0.1 * x + 0.05 * std::conj(x) * x;
        }));
    } else if (name == "inadmissible") {
        LocalDiagonalMap g{1.0, 0.5, BivariatePolynomial({{1, 0, 0.6}}), {}, 1.0, 0.6};
        j["cocycle"] = Json::array({local_map_json(g)});
        j["graph"] = graph_json(LipschitzGraph::sample(DiscMesh(0.0, 0.5, kDefaultRings), [](cplx x) { return 0.9 * x; }, 0.9));
    } else {
        fail(ErrorKind::InvalidArgument, "unknown fixture \"" + name + "\"");
    }
    return j;
}

}  // namespace

Outcome run_graph_transform(const Common&, const GraphParams& p) {
    check(p.steps > 0, "steps must be positive");
    check(p.gamma_target >= 0.0, "gamma_target must be nonnegative");
    const Json input = p.input.empty() ? graph_fixture(p.fixture) : parse_json(read_text_file(p.input));
    if (!input.is_object() || !input.contains("graph") || !(input.contains("cocycle") || input.contains("map")))
        fail(ErrorKind::ParseError, "graph-transform input needs \"graph\" and \"cocycle\" (or \"map\")");
    std::vector<LocalDiagonalMap> one_pass;
    if (input.contains("cocycle")) {
        if (!input["cocycle"].is_array() || input["cocycle"].empty()) fail(ErrorKind::ParseError, "\"cocycle\" must be a nonempty array");
        for (const auto& m : input["cocycle"]) one_pass.push_back(local_map_from_json(m));
    } else {
        one_pass.push_back(local_map_from_json(input["map"]));
    }
    const auto graph0 = graph_from_json(input["graph"]);
    std::vector<LocalDiagonalMap> cocycle;
    for (std::size_t s = 0; s < p.steps; ++s) cocycle.insert(cocycle.end(), one_pass.begin(), one_pass.end());

    const auto it = iterate_graph_transform(cocycle, graph0, p.gamma_target, p.keep_domain);
    Outcome out;
    out.source_hash = content_hash(dump_json(input));
    out.artifacts.push_back({"graph.json", dump_json(graph_json(it.graph))});
    out.result["gammas"] = it.gammas;
    if (it.steps_to_target)
        out.result["steps_to_target"] = *it.steps_to_target;
    else
        out.result["steps_to_target"] = nullptr;
    out.result["gamma_out"] = it.graph.gamma();
    out.result["measured_lipschitz"] = measure_lipschitz(it.graph);
    out.result["domain"] = {{"center", pair_json(it.graph.mesh().center())}, {"radius", it.graph.mesh().radius()}};
    return out;
}

}  // namespace projdyn::cli
