#ifndef TORICVOL_IO_HPP
#define TORICVOL_IO_HPP

#include "toricvol/cone.hpp"
#include "toricvol/polytope.hpp"

#include <string>
#include <variant>

// vendored single-header json
#include "json.hpp"

namespace toricvol {

using Geometry = std::variant<Polytope, MomentCone>;

// Polytope schema: {"dim": int, "name": str?, "vertices": [[num|"p/q",...]],
//                   "facets": [{"normal": [int,...], "offset": num|"p/q"}]?,
//                   "incidence": [[int,...]]?}
// Cone schema:     {"dim": int, "name": str?, "fan_rays": [[int,...]]}
Geometry parse_geometry_json(const nlohmann::json& j);
Geometry parse_geometry(const std::string& path);

nlohmann::json to_json(const Polytope& p);
nlohmann::json to_json(const MomentCone& c);
nlohmann::json to_json(const Geometry& g);

// FNV-1a hash of the canonical serialized geometry, as "fnv1a:<hex>"
std::string geometry_digest(const Geometry& g);

}  // namespace toricvol

#endif
