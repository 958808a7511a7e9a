#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "projdyn/endomorphism.hpp"
#include "projdyn/json.hpp"

namespace projdyn {

/// Accepts
///   { "degree": d, "components": [ [ [[i,j,k], re, im], ... ] x 3 ] }
///   { "product": { "p": [c0, c1, ...], "q": [...] } }
/// with product coefficients in ascending order, each a number or [re, im].
/// Throws ParseError for malformed input, DegreeMismatch for bad exponents.
HomogeneousEndomorphism map_from_json(const Json& j);
HomogeneousEndomorphism parse_map(std::string_view text);
HomogeneousEndomorphism load_map(const std::filesystem::path& path);

/// Product form when the map remembers its factors, component form otherwise.
Json map_to_json(const HomogeneousEndomorphism& f);

/// FNV-1a 64 of the dumped canonical JSON, as 16 hex digits.
std::string map_hash(const HomogeneousEndomorphism& f);
std::string content_hash(std::string_view text);

/// "squaring" or "siegel" (theta only affects the latter).
HomogeneousEndomorphism builtin_map(std::string_view name, double theta);

}  // namespace projdyn
