#include "projdyn/map_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "projdyn/siegel.hpp"

namespace projdyn {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { fail(ErrorKind::ParseError, "map definition: " + what); }

double number(const Json& j, const char* what) {
    if (!j.is_number()) parse_fail(std::string(what) + " must be a number");
    return j.get<double>();
}

cplx coefficient(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {number(j[0], "real part"), number(j[1], "imaginary part")};
    parse_fail("coefficient must be a number or [re, im]");
}

Polynomial polynomial(const Json& j, const char* name) {
    if (!j.is_array()) parse_fail(std::string(name) + " must be an array of coefficients");
    std::vector<cplx> c;
    for (const auto& e : j) c.push_back(coefficient(e));
    return Polynomial(std::move(c));
}

Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

HomogeneousEndomorphism map_from_json(const Json& j) {
    if (!j.is_object()) parse_fail("top level must be an object");
    if (j.contains("product")) {
        const Json& p = j["product"];
        if (!p.is_object() || !p.contains("p") || !p.contains("q")) parse_fail("product needs p and q");
        return homogenize(polynomial(p["p"], "p"), polynomial(p["q"], "q"));
    }
    if (!j.contains("degree") || !j.contains("components")) parse_fail("need degree and components, or product");
    if (!j["degree"].is_number_integer()) parse_fail("degree must be an integer");
    const int degree = j["degree"].get<int>();
    const Json& comps = j["components"];
    if (!comps.is_array() || comps.size() != 3) parse_fail("components must hold three term lists");
    std::array<HomogeneousPolynomial, 3> polys;
    for (int c = 0; c < 3; ++c) {
        if (!comps[c].is_array()) parse_fail("component term list must be an array");
        std::vector<Monomial> terms;
        for (const auto& t : comps[c]) {
            if (!t.is_array() || t.size() != 3 || !t[0].is_array() || t[0].size() != 3)
                parse_fail("term must be [[i,j,k], re, im]");
            Exponent e;
            for (int k = 0; k < 3; ++k) {
                if (!t[0][k].is_number_integer()) parse_fail("exponents must be integers");
                e[k] = t[0][k].get<int>();
                if (e[k] < 0) fail(ErrorKind::DegreeMismatch, "negative exponent");
            }
            terms.push_back({e, {number(t[1], "re"), number(t[2], "im")}});
        }
        polys[c] = HomogeneousPolynomial(degree, std::move(terms));
    }
    return HomogeneousEndomorphism(degree, std::move(polys));
}

HomogeneousEndomorphism parse_map(std::string_view text) { return map_from_json(parse_json(text)); }

HomogeneousEndomorphism load_map(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidArgument, "cannot open map file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_map(ss.str());
}

Json map_to_json(const HomogeneousEndomorphism& f) {
    Json out = Json::object();
    if (const ProductFactors* pf = f.product()) {
        Json p = Json::array(), q = Json::array();
        for (int k = 0; k <= pf->p.degree(); ++k) p.push_back(complex_json(pf->p.coefficient(k)));
        for (int k = 0; k <= pf->q.degree(); ++k) q.push_back(complex_json(pf->q.coefficient(k)));
        out["product"] = Json{{"p", p}, {"q", q}};
        return out;
    }
    out["degree"] = f.degree();
    Json comps = Json::array();
    for (const auto& poly : f.components()) {
        Json terms = Json::array();
        for (const auto& m : poly.terms())
            terms.push_back(Json::array({Json::array({m.exponent[0], m.exponent[1], m.exponent[2]}), m.coeff.real(),
                                         m.coeff.imag()}));
        comps.push_back(terms);
    }
    out["components"] = comps;
    return out;
}

std::string map_hash(const HomogeneousEndomorphism& f) { return content_hash(dump_json(map_to_json(f))); }

std::string content_hash(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

HomogeneousEndomorphism builtin_map(std::string_view name, double theta) {
    if (name == "squaring") return squaring_map();
    if (name == "siegel") return siegel_product_map(theta);
    fail(ErrorKind::InvalidArgument, "unknown builtin map '" + std::string(name) + "'");
}

}  // namespace projdyn
