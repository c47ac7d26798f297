#pragma once

#include <json.hpp>

#include "convexlab/geometry.hpp"

namespace convexlab::geometry {

struct ParsedBody {
  ConvexBody body;
  // True when the barycenter is the origin by construction (named shapes
  // without a shift).
  bool centered = false;
};

// {"type": "hpoly"|"vpoly"|"ball"|"cube"|"simplex"|"cross", "dim": n,
//  optional "A", "b", "vertices", "center", "radius", "map", "shift"}.
ParsedBody parse_body(const nlohmann::json& spec);

}  // namespace convexlab::geometry
