#include "projdyn/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <functional>

#include "commands.hpp"
#include "projdyn/io.hpp"
#include "projdyn/siegel.hpp"

namespace projdyn::cli {

namespace {

struct Command {
    CLI::App* app = nullptr;
    std::function<Json()> config;
    std::function<Outcome()> run;
};

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument:
        case ErrorKind::ParseError:
        case ErrorKind::DegreeMismatch:
        case ErrorKind::Unsupported: return kExitValidation;
        default: return kExitNumerical;
    }
}

Json error_json(std::string_view kind, const std::string& message, std::optional<std::size_t> step = std::nullopt) {
    Json e = Json::object();
    e["kind"] = std::string(kind);
    e["message"] = message;
    if (step) e["step"] = *step;
    return e;
}

void emit(const Json& doc, const std::string& command, const Common& common, const std::vector<Artifact>& artifacts,
          std::ostream& out) {
    const std::string text = dump_json(doc);
    out << text;
    if (common.out_dir.empty()) return;
    const std::filesystem::path dir(common.out_dir);
    write_text_file(dir / (command + ".json"), text);
    for (const auto& a : artifacts) write_text_file(dir / a.name, a.content);
}

void add_cloud_options(CLI::App* sub, MeasureParams& p) {
    sub->add_option("--measure", p.measure, "sample cloud: mu (equilibrium) or nu (slice of the averaged line pushforwards)")
        ->capture_default_str();
    sub->add_option("--n-points", p.n_points, "cloud size")->capture_default_str();
    sub->add_option("--n-backward", p.n_backward, "backward steps per mu sample")->capture_default_str();
    sub->add_option("--m", p.m, "number of line pushforwards averaged for nu")->capture_default_str();
    sub->add_option("--grid-size", p.grid_size, "slice grid size for nu")->capture_default_str();
    sub->add_option("--n-iter", p.n_iter, "Green series terms for nu")->capture_default_str();
    sub->add_option("--line-z", p.line_z, "re im of the line z = a carrying nu")->expected(2);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Common common;
    common.theta = golden_mean();

    CLI::App app{"Numerical dynamics of holomorphic endomorphisms of the complex projective plane", "projdyn"};
    app.set_config("--config", "",
                   "TOML-style file: top-level keys set global flags, [subcommand] sections set that "
                   "subcommand's flags; command-line flags take precedence");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--map", common.map_path, "map definition (JSON)");
    app.add_option("--builtin", common.builtin, "builtin map: squaring or siegel")->capture_default_str();
    app.add_option("--theta", common.theta, "rotation number of the siegel map")->capture_default_str();
    app.add_option("--seed", common.seed, "random seed")->capture_default_str();
    app.add_option("--threads", common.threads, "worker threads (results do not depend on it)")->capture_default_str();
    app.add_option("--out", common.out_dir, "directory for the JSON document and artifacts");

    std::vector<Command> commands;

    GreenParams green;
    {
        auto* sub = app.add_subcommand("green", "Green potential on a grid of the z-plane at fixed w (CSV + PGM)");
        sub->add_option("--n-iter", green.n_iter)->capture_default_str();
        sub->add_option("--grid-size", green.grid_size)->capture_default_str();
        sub->add_option("--extent", green.extent, "grid covers [-extent, extent]^2")->capture_default_str();
        sub->add_option("--w", green.w, "re im of the fixed w coordinate")->expected(2);
        commands.push_back({sub, [&] { return config_json(common, green); }, [&] { return run_green(common, green); }});
    }
    OrbitParams orbit;
    {
        auto* sub = app.add_subcommand("orbit", "forward orbit of [z : w : 1] (CSV)");
        sub->add_option("--start", orbit.start, "re z, im z, re w, im w")->expected(4);
        sub->add_option("--n", orbit.n, "number of steps")->capture_default_str();
        commands.push_back({sub, [&] { return config_json(common, orbit); }, [&] { return run_orbit(common, orbit); }});
    }
    MuParams mu;
    {
        auto* sub = app.add_subcommand("sample-mu", "samples of the equilibrium measure (CSV + JSON)");
        sub->add_option("--n-points", mu.n_points)->capture_default_str();
        sub->add_option("--n-backward", mu.n_backward)->capture_default_str();
        commands.push_back({sub, [&] { return config_json(common, mu); }, [&] { return run_sample_mu(common, mu); }});
    }
    NuParams nu;
    {
        auto* sub = app.add_subcommand("sample-nu", "samples of T ^ S_m for a vertical line (CSV + JSON + PGM)");
        add_cloud_options(sub, nu.cloud);
        commands.push_back({sub, [&] { return config_json(common, nu); }, [&] { return run_sample_nu(common, nu); }});
    }
    AlphaParams alpha;
    CLI::Option* alpha_level = nullptr;
    double alpha_level_value = 0.0;
    {
        auto* sub = app.add_subcommand("sample-alpha", "rotation-orbit samples on an invariant curve of the Siegel disk");
        sub->add_option("--n-skip", alpha.n_skip)->capture_default_str();
        sub->add_option("--n-points", alpha.n_points)->capture_default_str();
        alpha_level = sub->add_option("--level", alpha_level_value, "|Phi| of the invariant curve (default 0.05 x radius)");
        sub->add_option("--n-terms", alpha.n_terms)->capture_default_str();
        commands.push_back({sub, [&] { return config_json(common, alpha); }, [&] { return run_sample_alpha(common, alpha); }});
    }
    LyapunovParams lyapunov;
    {
        auto* sub = app.add_subcommand("lyapunov", "Lyapunov exponents along orbits sampled from mu or nu");
        add_cloud_options(sub, lyapunov.cloud);
        sub->add_option("--n-orbits", lyapunov.n_orbits)->capture_default_str();
        sub->add_option("--n", lyapunov.n, "orbit length")->capture_default_str();
        sub->add_option("--z-branch", lyapunov.z_branch, "inverse branch in z: auto, random or min-modulus")->capture_default_str();
        commands.push_back({sub, [&] { return config_json(common, lyapunov); }, [&] { return run_lyapunov(common, lyapunov); }});
    }
    EntropyParams entropy;
    {
        auto* sub = app.add_subcommand("entropy", "Brin-Katok local entropy of a sample cloud");
        add_cloud_options(sub, entropy.cloud);
        sub->add_option("--n", entropy.n, "Bowen time")->capture_default_str();
        sub->add_option("--epsilon", entropy.epsilon, "chordal Bowen radius")->capture_default_str();
        sub->add_option("--n-centers", entropy.n_centers)->capture_default_str();
        commands.push_back({sub, [&] { return config_json(common, entropy); }, [&] { return run_entropy(common, entropy); }});
    }
    RuelleParams ruelle;
    {
        auto* sub = app.add_subcommand("ruelle", "entropy and exponents of one cloud, checked against h/2 <= sum of positive exponents");
        add_cloud_options(sub, ruelle.cloud);
        sub->add_option("--n-orbits", ruelle.n_orbits)->capture_default_str();
        sub->add_option("--orbit-length", ruelle.orbit_length)->capture_default_str();
        sub->add_option("--z-branch", ruelle.z_branch)->capture_default_str();
        sub->add_option("--n", ruelle.n, "Bowen time")->capture_default_str();
        sub->add_option("--epsilon", ruelle.epsilon)->capture_default_str();
        sub->add_option("--n-centers", ruelle.n_centers)->capture_default_str();
        sub->add_option("--tol", ruelle.tol)->capture_default_str();
        commands.push_back({sub, [&] { return config_json(common, ruelle); }, [&] { return run_ruelle(common, ruelle); }});
    }
    SiegelParams siegel;
    {
        auto* sub = app.add_subcommand("siegel", "linearizing series of lambda z + z^2 at lambda = exp(2 pi i theta)");
        sub->add_option("--n-terms", siegel.n_terms)->capture_default_str();
        commands.push_back({sub, [&] { return config_json(common, siegel); }, [&] { return run_siegel(common, siegel); }});
    }
    GraphParams graph;
    {
        auto* sub = app.add_subcommand("graph-transform", "push a Lipschitz graph through a cocycle of local diagonal maps");
        sub->add_option("--input", graph.input, "JSON with \"cocycle\" (or \"map\") and \"graph\"");
        sub->add_option("--fixture", graph.fixture, "builtin input when --input is absent: quadratic or inadmissible")
            ->capture_default_str();
        sub->add_option("--steps", graph.steps, "passes through the cocycle")->capture_default_str();
        sub->add_option("--gamma-target", graph.gamma_target)->capture_default_str();
        sub->add_flag("--keep-domain,!--no-keep-domain", graph.keep_domain, "cap output discs at the input radius");
        commands.push_back({sub, [&] { return config_json(common, graph); }, [&] { return run_graph_transform(common, graph); }});
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        out << dump_json(Json{{"status", "error"}, {"error", error_json("ParseError", e.what())}});
        return kExitValidation;
    }
    if (alpha_level->count() > 0) alpha.level = alpha_level_value;

    const Command* cmd = nullptr;
    for (const auto& c : commands)
        if (c.app->parsed()) cmd = &c;
    const std::string name = cmd->app->get_name();

    Json doc = Json::object();
    doc["command"] = name;
    doc["config"] = cmd->config();
    int code = kExitOk;
    std::vector<Artifact> artifacts;
    try {
        if (common.threads < 1) fail(ErrorKind::InvalidArgument, "threads must be at least 1");
        if (common.map_path.empty() && common.builtin != "squaring" && common.builtin != "siegel")
            fail(ErrorKind::InvalidArgument, "builtin must be \"squaring\" or \"siegel\"");
        Outcome outcome = cmd->run();
        doc["status"] = "ok";
        doc["map_hash"] = outcome.source_hash;
        doc["result"] = std::move(outcome.result);
        doc["warnings"] = outcome.warnings;
        Json names = Json::array();
        for (const auto& a : outcome.artifacts) names.push_back(a.name);
        doc["artifacts"] = names;
        artifacts = std::move(outcome.artifacts);
    } catch (const StepError& e) {
        doc["status"] = "error";
        doc["error"] = error_json(to_string(e.kind()), e.message(), e.step());
        code = exit_code(e.kind());
    } catch (const Error& e) {
        doc["status"] = "error";
        doc["error"] = error_json(to_string(e.kind()), e.message());
        code = exit_code(e.kind());
    }
    try {
        emit(doc, name, common, artifacts, out);
    } catch (const Error& e) {
        err << "projdyn: " << e.what() << "\n";
        return kExitValidation;
    }
    return code;
}

}  // namespace projdyn::cli
