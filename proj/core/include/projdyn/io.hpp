#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "projdyn/json.hpp"
#include "projdyn/measures.hpp"
#include "projdyn/pesin_graph.hpp"
#include "projdyn/slice.hpp"

namespace projdyn {

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

/// Rows "re z,im z,re w,im w,re t,im t,weight" of unit lifts, %.17g, with a header line.
std::string measure_csv(const EmpiricalMeasure& m);
/// Inverse of measure_csv; weights are renormalized and validated.
EmpiricalMeasure parse_measure_csv(const std::string& text, std::uint64_t seed, Provenance provenance);

struct MeasureMetadata {
    std::string map_hash;
    std::uint64_t seed = 0;
    Provenance provenance = Provenance::Custom;
    std::size_t n_points = 0;
    std::optional<int> m;
    std::optional<std::size_t> n_backward;
};

Json metadata_json(const MeasureMetadata& meta);
MeasureMetadata metadata_from_json(const Json& j);

/// Writes <stem>.csv and <stem>.json.
void export_measure(const std::filesystem::path& stem, const EmpiricalMeasure& m, const MeasureMetadata& meta);
/// Reads <stem>.csv with the seed and provenance from <stem>.json.
EmpiricalMeasure import_measure(const std::filesystem::path& stem);

/// Rows "re zeta,im zeta,weight" over cells with nonzero blend weight, inner chart first.
std::string slice_csv(const SliceDensity& s);

/// Binary 8-bit PGM (P5) of a grid_size x grid_size row-major grid, scaled
/// linearly so the maximum maps to 255 (all zeros for a zero grid).
std::string pgm_image(const std::vector<double>& grid, int grid_size);

Json polynomial_table_json(const BivariatePolynomial& p);
BivariatePolynomial polynomial_table_from_json(const Json& j);

Json local_map_json(const LocalDiagonalMap& g);
LocalDiagonalMap local_map_from_json(const Json& j);

/// { "domain": {center, radius, rings}, "gamma": ..., "nodes": [[re x, im x, re phi, im phi], ...] }
Json graph_json(const LipschitzGraph& g);
/// Node abscissae must match the mesh rebuilt from "domain" to 1e-9.
LipschitzGraph graph_from_json(const Json& j);

}  // namespace projdyn
