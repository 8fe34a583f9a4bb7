#pragma once

#include <string>

#include "copulab/copula.hpp"
#include "copulab/pickands.hpp"

namespace copulab {

// JSON spec files are the single source of copula definitions.  Families are
// discriminated by "family":
//   {"family":"M"} | {"family":"W"} | {"family":"Pi"}
//   {"family":"gumbel","theta":2}
//   {"family":"evc","measure":{"atoms":[[t,w],...],
//                              "density":{"breaks":[...],"values":[...]},
//                              "singular_weight":s}}
//   {"family":"shuffle","N":3,"sigma":[2,3,1]}
//   {"family":"checkerboard","N":2,"T":[[...],[...]],"base":<spec>}
//   {"family":"rotation","terms":6}  or  {"family":"rotation","offsets":[...]}
//   {"family":"mix","parts":[[w,<spec>],...]}
// Measure fields are optional and default to empty / 0.  Serialization emits
// a canonical form that re-parses to the identical structure.

PickandsMeasure measure_from_json_text(const std::string& text);
Copula copula_from_json_text(const std::string& text);

std::string measure_to_json_text(const PickandsMeasure& m);
std::string copula_to_json_text(const Copula& c);

PickandsMeasure load_measure(const std::string& path);

// Loads a spec file; the bare names M, W, Pi are accepted as built-ins.
Copula load_copula(const std::string& path_or_builtin);

} // namespace copulab
