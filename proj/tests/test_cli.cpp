#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <initializer_list>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "projdyn/cli.hpp"
#include "projdyn/io.hpp"
#include "projdyn/json.hpp"

using projdyn::Json;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
    Json doc() const { return projdyn::parse_json(out); }
};

Run run(std::initializer_list<std::string> args) {
    std::vector<std::string> storage{"projdyn"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : storage) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = projdyn::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::filesystem::path scratch(const char* name) {
    auto dir = std::filesystem::temp_directory_path() / ("projdyn_cli_" + std::to_string(::getpid())) / name;
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("lyapunov on the squaring map") {
    const Run r = run({"lyapunov", "--builtin", "squaring"});
    REQUIRE(r.code == 0);
    const Json j = r.doc();
    CHECK(j["status"] == "ok");
    CHECK(std::abs(j["result"]["chi1"].get<double>() - std::log(2.0)) <= 0.01);
    CHECK(std::abs(j["result"]["chi2"].get<double>() - std::log(2.0)) <= 0.01);
    CHECK(j["map_hash"].get<std::string>().size() == 16);
    CHECK(j["config"]["builtin"] == "squaring");
    CHECK(j["config"]["n"] == 10000);
}

TEST_CASE("numerical failures exit with 3 and name the error kind") {
    const Run g = run({"graph-transform", "--fixture", "inadmissible"});
    CHECK(g.code == 3);
    CHECK(g.doc()["error"]["kind"] == "ConditionViolated");
    CHECK(g.doc()["error"]["step"] == 0);
    const Run s = run({"siegel", "--theta", "0.5"});
    CHECK(s.code == 3);
    CHECK(s.doc()["error"]["kind"] == "SmallDivisorOverflow");
    CHECK(s.doc()["config"]["theta"] == 0.5);
}

TEST_CASE("validation failures exit with 2") {
    CHECK(run({"entropy", "--epsilon", "0.7"}).code == 2);
    CHECK(run({"entropy", "--epsilon", "0.7"}).doc()["error"]["kind"] == "InvalidArgument");
    CHECK(run({"lyapunov", "--measure", "lebesgue"}).code == 2);
    CHECK(run({"sample-mu", "--n-points", "0"}).code == 2);
    CHECK(run({"orbit", "--builtin", "cubing"}).code == 2);
    CHECK(run({"orbit", "--no-such-flag"}).code == 2);
    CHECK(run({"orbit", "--no-such-flag"}).doc()["error"]["kind"] == "ParseError");
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);

    const auto dir = scratch("bad_map");
    projdyn::write_text_file(dir / "m.json", R"({"product": {"p": [0, 0, 1], "q": [0, 1]}})");
    const Run bad = run({"orbit", "--map", (dir / "m.json").string()});
    CHECK(bad.code == 2);
    CHECK(bad.doc()["error"]["kind"] == "DegreeMismatch");
    std::filesystem::remove_all(dir);
}

TEST_CASE("map files and output directories") {
    const auto dir = scratch("out");
    projdyn::write_text_file(dir / "m.json", R"({"product": {"p": [0, 0, 1], "q": [0, 0, 1]}})");
    const Run from_file = run({"orbit", "--map", (dir / "m.json").string(), "--n", "5", "--out", (dir / "o").string()});
    REQUIRE(from_file.code == 0);
    const Run builtin = run({"orbit", "--n", "5"});
    CHECK(from_file.doc()["map_hash"] == builtin.doc()["map_hash"]);
    CHECK(from_file.doc()["result"] == builtin.doc()["result"]);
    CHECK(projdyn::read_text_file(dir / "o" / "orbit.json") == from_file.out);
    const std::string csv = projdyn::read_text_file(dir / "o" / "orbit.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
    std::filesystem::remove_all(dir);
}

TEST_CASE("config files set defaults and flags override them") {
    const auto dir = scratch("config");
    projdyn::write_text_file(dir / "c.toml", "seed = 4\n[entropy]\nn = 4\nn-points = 3000\nn-centers = 10\nepsilon = 0.1\n");
    const Run a = run({"--config", (dir / "c.toml").string(), "entropy", "--n-centers", "12"});
    REQUIRE(a.code == 0);
    const Json cfg = a.doc()["config"];
    CHECK(cfg["seed"] == 4);
    CHECK(cfg["n"] == 4);
    CHECK(cfg["n_centers"] == 12);
    CHECK(cfg["epsilon"] == 0.1);
    CHECK(cfg["cloud"]["n_points"] == 3000);
    projdyn::write_text_file(dir / "bad.toml", "[entropy]\nno-such-key = 1\n");
    CHECK(run({"--config", (dir / "bad.toml").string(), "entropy"}).code == 2);
    std::filesystem::remove_all(dir);
}

TEST_CASE("outputs are reproducible and independent of the thread count") {
    const std::vector<std::vector<std::string>> commands{
        {"green", "--grid-size", "24"},
        {"sample-mu", "--n-points", "500"},
        {"--builtin", "siegel", "sample-nu", "--grid-size", "64", "--n-points", "500", "--m", "2"},
        {"lyapunov", "--n-orbits", "3", "--n", "500", "--n-points", "50"},
        {"entropy", "--n-points", "2000", "--n-centers", "10", "--n", "3"},
    };
    for (const auto& args : commands) {
        auto with_threads = [&](const char* t) {
            std::vector<std::string> storage{"projdyn", "--threads", t};
            storage.insert(storage.end(), args.begin(), args.end());
            std::vector<const char*> argv;
            for (const auto& a : storage) argv.push_back(a.c_str());
            std::ostringstream out, err;
            const int code = projdyn::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
            REQUIRE(code == 0);
            return out.str();
        };
        const std::string one = with_threads("1");
        INFO(args[0]);
        CHECK(with_threads("1") == one);
        CHECK(with_threads("4") == one);
    }
}

}
