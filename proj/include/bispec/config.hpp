#pragma once

#include <string>

#include "bispec/map2.hpp"
#include "bispec/oracle.hpp"
#include "bispec/poly.hpp"

namespace bispec {

// One run = one JSON document. Map factors arrive in canonical form
// (rotation / parabolic / hyperbolic) or as a raw matrix; rotation angles
// carry the declared rational/irrational dichotomy and optional relation.
// Unknown keys anywhere are rejected.
struct RunConfig {
    Map2 map;                // swap flag folded into the pair
    WeightPoly weight;
    std::string weight_text;
    OracleOptions oracle;
    std::string json_path;   // empty: stdout only
    std::string svg_path;    // empty: no SVG requested
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace bispec
