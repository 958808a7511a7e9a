#include "projdyn/json.hpp"

#include <cmath>
#include <cstdio>

#include "projdyn/error.hpp"

namespace projdyn {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void indent(std::string& out, int level) { out.append(static_cast<std::size_t>(2 * level), ' '); }

void write(const Json& v, std::string& out, int level) {
    switch (v.type()) {
        case Json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                indent(out, level + 1);
                out += Json(it.key()).dump();
                out += ": ";
                write(it.value(), out, level + 1);
            }
            out += '\n';
            indent(out, level);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line.
            bool flat = true;
            for (const auto& e : v) flat = flat && !e.is_structured();
            if (flat) {
                out += '[';
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) out += ", ";
                    write(v[i], out, level);
                }
                out += ']';
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += ",\n";
                indent(out, level + 1);
                write(v[i], out, level + 1);
            }
            out += '\n';
            indent(out, level);
            out += ']';
            return;
        }
        case Json::value_t::number_float: {
            const double d = v.get<double>();
            out += std::isfinite(d) ? format_double(d) : "null";
            return;
        }
        default:
            out += v.dump();
    }
}

}  // namespace

std::string dump_json(const Json& value) {
    std::string out;
    write(value, out, 0);
    out += '\n';
    return out;
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::exception& e) {
        fail(ErrorKind::ParseError, e.what());
    }
}

}  // namespace projdyn
