#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace projdyn {

/// Insertion-ordered, so serialized field order is the construction order.
using Json = nlohmann::ordered_json;

/// Pretty-printed (2-space indent, trailing newline) with every floating-point
/// number written as %.17g; non-finite numbers become null.
std::string dump_json(const Json& value);

/// Throws ParseError with the parser's message.
Json parse_json(std::string_view text);

/// "%.17g"
std::string format_double(double v);

}  // namespace projdyn
