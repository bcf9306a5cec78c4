#pragma once

#include <json.hpp>
#include <string>

#include "symred/bohr.hpp"
#include "symred/connection.hpp"
#include "symred/curve.hpp"
#include "symred/redhom.hpp"
#include "symred/redmeasure.hpp"
#include "symred/su2.hpp"

namespace symred {

using Json = nlohmann::json;

// Serializers produce the documented wire schema; loaders validate structure
// and route every value through the validating factories. Structural problems
// raise std::invalid_argument (or nlohmann parse errors), domain problems the
// usual Error subclasses; the CLI maps the two groups to different exit codes.

// [a, b1, b2, b3]
Json to_json(const GroupElement2& g);
GroupElement2 group_from_json(const Json& j);

// [x, y, z]
Json to_json(const Vec3& v);
Vec3 vec3_from_json(const Json& j);

// {"family": "Linear"|"Circular"|"LieAlgGen", fields per family}
Json to_json(const Curve& c);
Curve curve_from_json(const Json& j);

// {"tag": ..., "w1"/"w2" for the planar case}
Json to_json(const Symmetry& sym);
Symmetry symmetry_from_json(const Json& j);

// {"family": ..., coefficient fields per family}
Json to_json(const InvariantConnection& w);
InvariantConnection connection_from_json(const Json& j);

// {"labels": [...], "values": [number|null, ...]}
Json to_json(const FreqModule& m);
FreqModule module_from_json(const Json& j);

// {label: [re, im], ...}; the module fixes the label set and order
Json to_json(const FreqModule& m, const BohrElement& psi);
BohrElement bohr_from_json(const FreqModule& m, const Json& j);

// integer matrix, one row per member
Json to_json(const FreqTuple& t);
FreqTuple freq_tuple_from_json(const Json& j);

// {"sym", "family": {"curves", "splits", "inverses"}, "table": {id: 4-array}}
Json to_json(const GenHom& h);
GenHom genhom_from_json(const Json& j);

// {"module", "factors": [{"kind", "axis"}, ...]}
Json to_json(const LagFactorSpec& spec);
LagFactorSpec lag_spec_from_json(const Json& j);

// {"sym", "segments": [curve, ...]}
Json to_json(const FreeIndex& idx);
FreeIndex free_index_from_json(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace symred
