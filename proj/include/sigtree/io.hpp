#pragma once

// File formats.
//
// PolyPath CSV: one row per vertex, comma separated. An optional header row
// (any non-numeric field) names the columns; a first column named "t" or
// "time" holds time stamps, the remaining columns are coordinates x1..xd.
// Without a header every column is a coordinate unless the caller asks for
// a leading time column.
//
// TensorSeries JSON: {"dim": d, "depth": N, "levels": [[...], ...]} with
// level n listing d^n coefficients in lexicographic word order. Numbers are
// written with 17 significant digits so that parsing restores the exact
// doubles.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "sigtree/functionals.hpp"
#include "sigtree/lift.hpp"
#include "sigtree/paths.hpp"
#include "sigtree/tensor_algebra.hpp"

namespace sigtree::io {

using json = nlohmann::json;

PolyPath read_path_csv(std::istream& in, bool leading_time = false);
PolyPath read_path_csv_file(const std::string& filename, bool leading_time = false);
void write_path_csv(std::ostream& out, const PolyPath& x);

/// JSON text with doubles printed as %.17g; object keys sorted.
std::string dump(const json& value);
/// Parses JSON text; syntax errors become ParseError with line and column.
json parse(const std::string& text);
json parse_file(const std::string& filename);

json to_json(const TensorSeries& s);
TensorSeries tensor_from_json(const json& j);

/// {"base_dim", "truncation", "level", "blocks": {"(i1,...,in)": [...]}}
json lift_to_json(const TensorSeries& lifted, const GradedSpace& space);

/// Either {"terms": [...]} or a bare array of {"alpha": [...], "letter": i,
/// "coef": c}. `dim` is the ambient dimension the form must match.
Polynomial1Form form_from_json(const json& j, int dim);

json path_to_json(const PolyPath& x);

}  // namespace sigtree::io
