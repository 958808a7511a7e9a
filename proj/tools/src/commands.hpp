#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "projdyn/endomorphism.hpp"
#include "projdyn/json.hpp"

namespace projdyn::cli {

struct Common {
    std::string map_path;
    std::string builtin = "squaring";
    double theta = 0.0;
    std::uint64_t seed = 1;
    int threads = 1;
    std::string out_dir;
};

/// How a cloud of sample points is produced for the ergodic commands.
struct MeasureParams {
    std::string measure = "mu";  ///< "mu" or "nu"
    std::size_t n_points = 1000;
    std::size_t n_backward = 30;
    int m = 8;
    int grid_size = 256;
    int n_iter = 25;
    std::vector<double> line_z;  ///< (re, im) of the line z = a; empty for the default
};

struct GreenParams {
    int n_iter = 25;
    int grid_size = 128;
    double extent = 2.0;
    std::vector<double> w{0.0, 0.0};
};

struct OrbitParams {
    std::vector<double> start{0.5, 0.5, 0.7, -0.2};  ///< re z, im z, re w, im w
    std::size_t n = 100;
};

struct MuParams {
    std::size_t n_points = 10000;
    std::size_t n_backward = 30;
};

struct NuParams {
    MeasureParams cloud{"nu", 100000, 30, 8, 256, 25, {}};
};

struct AlphaParams {
    std::size_t n_skip = 100;
    std::size_t n_points = 10000;
    std::optional<double> level;
    int n_terms = 64;
};

struct LyapunovParams {
    MeasureParams cloud;
    std::size_t n_orbits = 10;
    std::size_t n = 10000;
    std::string z_branch = "auto";
};

struct EntropyParams {
    MeasureParams cloud{"mu", 100000, 30, 8, 256, 25, {}};
    std::size_t n = 8;
    double epsilon = 0.05;
    std::size_t n_centers = 200;
};

struct RuelleParams {
    MeasureParams cloud{"mu", 100000, 30, 8, 256, 25, {}};
    std::size_t n_orbits = 10;
    std::size_t orbit_length = 10000;
    std::string z_branch = "auto";
    std::size_t n = 8;
    double epsilon = 0.05;
    std::size_t n_centers = 200;
    double tol = 0.05;
};

struct SiegelParams {
    int n_terms = 64;
};

struct GraphParams {
    std::string input;
    std::string fixture = "quadratic";
    std::size_t steps = 1;
    double gamma_target = 1e-3;
    bool keep_domain = true;
};

struct Artifact {
    std::string name;  ///< path relative to the output directory
    std::string content;
};

/// Everything a subcommand produces besides its resolved config.
struct Outcome {
    std::string source_hash;
    Json result = Json::object();
    std::vector<Artifact> artifacts;
    std::vector<std::string> warnings;
};

/// The map named by --map or --builtin.
HomogeneousEndomorphism source_map(const Common& c);

Json config_json(const Common& c, const GreenParams& p);
Json config_json(const Common& c, const OrbitParams& p);
Json config_json(const Common& c, const MuParams& p);
Json config_json(const Common& c, const NuParams& p);
Json config_json(const Common& c, const AlphaParams& p);
Json config_json(const Common& c, const LyapunovParams& p);
Json config_json(const Common& c, const EntropyParams& p);
Json config_json(const Common& c, const RuelleParams& p);
Json config_json(const Common& c, const SiegelParams& p);
Json config_json(const Common& c, const GraphParams& p);

// Each validates its parameters (InvalidArgument) before doing any work.
Outcome run_green(const Common& c, const GreenParams& p);
Outcome run_orbit(const Common& c, const OrbitParams& p);
Outcome run_sample_mu(const Common& c, const MuParams& p);
Outcome run_sample_nu(const Common& c, const NuParams& p);
Outcome run_sample_alpha(const Common& c, const AlphaParams& p);
Outcome run_lyapunov(const Common& c, const LyapunovParams& p);
Outcome run_entropy(const Common& c, const EntropyParams& p);
Outcome run_ruelle(const Common& c, const RuelleParams& p);
Outcome run_siegel(const Common& c, const SiegelParams& p);
Outcome run_graph_transform(const Common& c, const GraphParams& p);

}  // namespace projdyn::cli
