#include "projdyn/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace projdyn {

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + path.string());
    out << text;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::InvalidArgument, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string measure_csv(const EmpiricalMeasure& m) {
    std::string out = "re_z,im_z,re_w,im_w,re_t,im_t,weight\n";
    for (std::size_t k = 0; k < m.size(); ++k) {
        const Lift& z = m.points[k].lift();
        for (int c = 0; c < 3; ++c) {
            out += format_double(z[c].real());
            out += ',';
            out += format_double(z[c].imag());
            out += ',';
        }
        out += format_double(m.weights[k]);
        out += '\n';
    }
    return out;
}

EmpiricalMeasure parse_measure_csv(const std::string& text, std::uint64_t seed, Provenance provenance) {
    std::istringstream in(text);
    std::string line;
    EmpiricalMeasure m;
    m.seed = seed;
    m.provenance = provenance;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || row == 1) continue;
        double v[7];
        std::istringstream ls(line);
        for (int c = 0; c < 7; ++c) {
            std::string cell;
            if (!std::getline(ls, cell, ',')) fail(ErrorKind::ParseError, "measure CSV row " + std::to_string(row));
            try {
                v[c] = std::stod(cell);
            } catch (const std::exception&) {
                fail(ErrorKind::ParseError, "measure CSV row " + std::to_string(row) + ": bad number");
            }
        }
        m.points.emplace_back(Lift{cplx{v[0], v[1]}, cplx{v[2], v[3]}, cplx{v[4], v[5]}});
        m.weights.push_back(v[6]);
    }
    double total = 0.0;
    for (double w : m.weights) total += w;
    require(total > 0.0, "measure CSV has no mass");
    for (double& w : m.weights) w /= total;
    m.validate();
    return m;
}

Json metadata_json(const MeasureMetadata& meta) {
    Json j = Json::object();
    j["map_hash"] = meta.map_hash;
    j["seed"] = meta.seed;
    j["provenance"] = std::string(to_string(meta.provenance));
    j["n_points"] = meta.n_points;
    j["m"] = meta.m ? Json(*meta.m) : Json(nullptr);
    j["n_backward"] = meta.n_backward ? Json(*meta.n_backward) : Json(nullptr);
    return j;
}

MeasureMetadata metadata_from_json(const Json& j) {
    try {
        MeasureMetadata meta;
        meta.map_hash = j.at("map_hash").get<std::string>();
        meta.seed = j.at("seed").get<std::uint64_t>();
        meta.provenance = provenance_from_string(j.at("provenance").get<std::string>());
        meta.n_points = j.at("n_points").get<std::size_t>();
        if (j.contains("m") && !j["m"].is_null()) meta.m = j["m"].get<int>();
        if (j.contains("n_backward") && !j["n_backward"].is_null()) meta.n_backward = j["n_backward"].get<std::size_t>();
        return meta;
    } catch (const Json::exception& e) {
        fail(ErrorKind::ParseError, std::string("measure metadata: ") + e.what());
    }
}

void export_measure(const std::filesystem::path& stem, const EmpiricalMeasure& m, const MeasureMetadata& meta) {
    auto csv = stem, json = stem;
    csv += ".csv";
    json += ".json";
    write_text_file(csv, measure_csv(m));
    write_text_file(json, dump_json(metadata_json(meta)));
}

EmpiricalMeasure import_measure(const std::filesystem::path& stem) {
    auto csv = stem, json = stem;
    csv += ".csv";
    json += ".json";
    const MeasureMetadata meta = metadata_from_json(parse_json(read_text_file(json)));
    return parse_measure_csv(read_text_file(csv), meta.seed, meta.provenance);
}

std::string slice_csv(const SliceDensity& s) {
    std::string out = "re_zeta,im_zeta,weight\n";
    for (SliceChart chart : {SliceChart::Inner, SliceChart::Outer}) {
        const auto& w = s.weights(chart);
        for (int iy = 0; iy < s.grid_size; ++iy)
            for (int ix = 0; ix < s.grid_size; ++ix) {
                if (s.blend(chart, ix, iy) == 0.0) continue;
                const cplx zeta = s.parameter(chart, ix, iy);
                out += format_double(zeta.real()) + ',' + format_double(zeta.imag()) + ',' +
                       format_double(w[static_cast<std::size_t>(iy) * s.grid_size + ix]) + '\n';
            }
    }
    return out;
}

std::string pgm_image(const std::vector<double>& grid, int grid_size) {
    require(grid_size > 0 && grid.size() == static_cast<std::size_t>(grid_size) * grid_size, "grid size mismatch");
    double hi = 0.0;
    for (double v : grid) hi = std::max(hi, v);
    std::string out = "P5\n" + std::to_string(grid_size) + ' ' + std::to_string(grid_size) + "\n255\n";
    for (double v : grid) {
        const double scaled = hi > 0.0 ? std::clamp(v / hi, 0.0, 1.0) * 255.0 : 0.0;
        out += static_cast<char>(static_cast<unsigned char>(std::lround(scaled)));
    }
    return out;
}

namespace {

Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from(const Json& j) {
    if (!j.is_array() || j.size() != 2) fail(ErrorKind::ParseError, "expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

template <class Fn>
auto parsing(const char* what, Fn&& fn) {
    try {
        return fn();
    } catch (const Json::exception& e) {
        fail(ErrorKind::ParseError, std::string(what) + ": " + e.what());
    }
}

}  // namespace

Json polynomial_table_json(const BivariatePolynomial& p) {
    Json t = Json::array();
    for (const auto& term : p.terms()) t.push_back(Json::array({term.i, term.j, term.coeff.real(), term.coeff.imag()}));
    return t;
}

BivariatePolynomial polynomial_table_from_json(const Json& j) {
    return parsing("coefficient table", [&] {
        if (!j.is_array()) fail(ErrorKind::ParseError, "coefficient table must be an array of [i, j, re, im]");
        std::vector<BivariateTerm> terms;
        for (const auto& row : j) {
            if (!row.is_array() || row.size() != 4) fail(ErrorKind::ParseError, "coefficient row must be [i, j, re, im]");
            terms.push_back({row[0].get<int>(), row[1].get<int>(), {row[2].get<double>(), row[3].get<double>()}});
        }
        return BivariatePolynomial(std::move(terms));
    });
}

Json local_map_json(const LocalDiagonalMap& g) {
    Json j = Json::object();
    j["lambda"] = complex_json(g.lambda);
    j["mu"] = complex_json(g.mu);
    j["alpha"] = polynomial_table_json(g.alpha);
    j["beta"] = polynomial_table_json(g.beta);
    j["r"] = g.r;
    j["delta"] = g.delta;
    return j;
}

LocalDiagonalMap local_map_from_json(const Json& j) {
    return parsing("local map", [&] {
        LocalDiagonalMap g;
        g.lambda = complex_from(j.at("lambda"));
        g.mu = complex_from(j.at("mu"));
        g.alpha = polynomial_table_from_json(j.at("alpha"));
        g.beta = polynomial_table_from_json(j.at("beta"));
        g.r = j.at("r").get<double>();
        g.delta = j.at("delta").get<double>();
        return g;
    });
}

Json graph_json(const LipschitzGraph& g) {
    Json j = Json::object();
    const DiscMesh& mesh = g.mesh();
    j["domain"] = Json{{"center", complex_json(mesh.center())}, {"radius", mesh.radius()}, {"rings", mesh.rings()}};
    j["gamma"] = g.gamma();
    Json nodes = Json::array();
    for (std::size_t k = 0; k < mesh.nodes().size(); ++k) {
        const cplx x = mesh.nodes()[k], v = g.values()[k];
        nodes.push_back(Json::array({x.real(), x.imag(), v.real(), v.imag()}));
    }
    j["nodes"] = nodes;
    return j;
}

LipschitzGraph graph_from_json(const Json& j) {
    return parsing("graph", [&] {
        const Json& d = j.at("domain");
        DiscMesh mesh(complex_from(d.at("center")), d.at("radius").get<double>(), d.at("rings").get<int>());
        const Json& nodes = j.at("nodes");
        if (!nodes.is_array() || nodes.size() != mesh.nodes().size())
            fail(ErrorKind::ParseError, "graph node count does not match its domain");
        std::vector<cplx> values;
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            const Json& row = nodes[k];
            if (!row.is_array() || row.size() != 4) fail(ErrorKind::ParseError, "graph node must be [re x, im x, re phi, im phi]");
            const cplx x{row[0].get<double>(), row[1].get<double>()};
            if (std::abs(x - mesh.nodes()[k]) > 1e-9 * std::max(1.0, mesh.radius()))
                fail(ErrorKind::ParseError, "graph node " + std::to_string(k) + " is off the domain mesh");
            values.emplace_back(row[2].get<double>(), row[3].get<double>());
        }
        return LipschitzGraph(std::move(mesh), std::move(values), j.at("gamma").get<double>());
    });
}

}  // namespace projdyn
