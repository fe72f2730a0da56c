#pragma once

#include <string>

#include <json.hpp>

#include "perclab/degree_model.hpp"
#include "perclab/percolation.hpp"

namespace perclab {

// {"family": ..., parameters..., "max_degree"?: M}. Unknown fields are rejected.
//   poisson          {"mean"}
//   point-mass       {"degree"}
//   two-point        {"degrees": [d1, d2], "weights": [w1, w2]} or {"degrees", "p": P(D = d1)}
//   table            {"probabilities": [p0, p1, ...]} or {"support": [...], "weights": [...]},
//                    optional "normalize": true
//   poisson-mixture  {"components": [{"weight", "mean"}, ...]}
//   power-law        {"gamma", "k_min"?, "k_max"?}
DegreeDistribution distribution_from_json(const nlohmann::json& j);

// Inline JSON, a shorthand ("poisson:5", "point:3", "two-point:1,3,0.5", "power-law:3.5[,2]"),
// or the path of a JSON file.
DegreeDistribution parse_distribution(const std::string& text);

// {"values": [pi_0, pi_1, ...], "beyond": pi} as inline JSON or a file path.
RetentionByDegree parse_retention(const std::string& text);

}  // namespace perclab
