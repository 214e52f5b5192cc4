#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "schurlab/eigen.hpp"
#include "schurlab/matmap.hpp"
#include "schurlab/matrix.hpp"
#include "schurlab/preserver.hpp"
#include "schurlab/stability.hpp"

namespace schurlab {

// Malformed file or schema violation.  CLI exit code 1.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using json = nlohmann::json;

// Matrix files: JSON {"rows": r, "cols": c, "data": [[...], ...]} with
// row-major data, or plain text (whitespace-separated entries, one row per
// line).  Ragged rows and non-finite values are rejected.
Matrix matrix_from_json(const json& j, const std::string& where = "$");
json matrix_to_json(const Matrix& m);
Matrix parse_matrix_text(const std::string& text);
Matrix load_matrix_file(const std::string& path);

// Map spec files: a JSON tree of constructor nodes keyed by "op":
//   {"op":"leftRight","M":<matrix>,"N":<matrix>}
//   {"op":"congruence","A":<matrix>}
//   {"op":"similarity","T":<matrix>}
//   {"op":"transpose","n":<int>}
//   {"op":"traceShift","alpha":<num>,"beta":<num>,"S":<matrix>}
//   {"op":"scale","c":<num>,"child":<node>}
//   {"op":"sum","children":[<node>...]}
//   {"op":"compose","children":[<node>...]}   (rightmost child applied first)
// Schema violations report the offending JSON path.
MapSpec map_spec_from_json(const json& j, const std::string& where = "$");
MapSpec load_map_spec_file(const std::string& path);
json map_spec_to_json(const MapSpec& spec);

json to_json(const Spectrum& s);
json to_json(const TwoByTwoCriterion& c);
json to_json(const SteinSolution& s);
json to_json(const PowerLimitResult& p);
json to_json(const AloidClassification& a);
json to_json(const StabilityReport& r);
json to_json(const Witness& w);
json to_json(const PreserverVerdict& v);
json to_json(const OntoVerdict& v);
json to_json(const RhoPreservationResult& r);

}  // namespace schurlab
