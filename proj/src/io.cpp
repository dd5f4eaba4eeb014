#include "toricvol/io.hpp"

#include <fstream>
#include <sstream>

namespace toricvol {

namespace {

using nlohmann::json;

Rational rational_from_json(const json& v, const std::string& where) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(static_cast<long long>(v.get<std::int64_t>()));
  if (v.is_number_float()) return rational_from_double(v.get<double>());
  throw std::invalid_argument(where + ": expected a number or a \"p/q\" string");
}

RatVector vector_from_json(const json& arr, const std::string& where) {
  if (!arr.is_array() || arr.empty())
    throw std::invalid_argument(where + ": expected a non-empty array");
  RatVector v(arr.size());
  for (size_t i = 0; i < arr.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = rational_from_json(arr[i], where);
  return v;
}

json rational_to_json(const Rational& q) {
  if (is_integer(q) && boost::multiprecision::abs(numerator(q)) < BigInt(1) << 53)
    return json(numerator(q).convert_to<std::int64_t>());
  return json(to_string(q));
}

json vector_to_json(const RatVector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(rational_to_json(v[i]));
  return arr;
}

Polytope polytope_from_json(const json& j) {
  const int dim = j.at("dim").get<int>();
  std::vector<RatVector> vertices;
  for (size_t i = 0; i < j.at("vertices").size(); ++i) {
    RatVector v = vector_from_json(j["vertices"][i], "vertices[" + std::to_string(i) + "]");
    if (v.size() != dim)
      throw std::invalid_argument("vertices[" + std::to_string(i) + "]: wrong dimension");
    vertices.push_back(std::move(v));
  }
  std::optional<std::vector<std::pair<RatVector, Rational>>> facets;
  if (j.contains("facets") && !j["facets"].is_null()) {
    facets.emplace();
    for (size_t i = 0; i < j["facets"].size(); ++i) {
      const json& fj = j["facets"][i];
      const std::string where = "facets[" + std::to_string(i) + "]";
      RatVector normal = vector_from_json(fj.at("normal"), where + ".normal");
      if (!is_integer(normal))
        throw std::invalid_argument(where + ".normal: entries must be integers");
      facets->emplace_back(std::move(normal),
                           rational_from_json(fj.at("offset"), where + ".offset"));
    }
  }
  std::optional<std::vector<std::vector<int>>> incidence;
  if (j.contains("incidence") && !j["incidence"].is_null())
    incidence = j["incidence"].get<std::vector<std::vector<int>>>();
  std::string name = j.value("name", std::string{});
  return build_polytope(dim, std::move(vertices), std::move(facets), std::move(incidence),
                        std::move(name));
}

MomentCone cone_from_json(const json& j) {
  const int dim = j.at("dim").get<int>();
  std::vector<RatVector> rays;
  for (size_t i = 0; i < j.at("fan_rays").size(); ++i) {
    RatVector v = vector_from_json(j["fan_rays"][i], "fan_rays[" + std::to_string(i) + "]");
    if (v.size() != dim)
      throw std::invalid_argument("fan_rays[" + std::to_string(i) + "]: wrong dimension");
    if (!is_integer(v))
      throw std::invalid_argument("fan_rays[" + std::to_string(i) + "]: entries must be integers");
    rays.push_back(std::move(v));
  }
  return build_moment_cone(rays, j.value("name", std::string{}));
}

}  // namespace

Geometry parse_geometry_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("geometry: expected a JSON object");
  if (j.contains("fan_rays")) return cone_from_json(j);
  if (j.contains("vertices")) return polytope_from_json(j);
  throw std::invalid_argument("geometry: need either \"vertices\" (polytope) or \"fan_rays\" (cone)");
}

Geometry parse_geometry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open geometry file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
  return parse_geometry_json(j);
}

nlohmann::json to_json(const Polytope& p) {
  json j;
  j["dim"] = p.dim;
  if (!p.name.empty()) j["name"] = p.name;
  j["vertices"] = json::array();
  for (const auto& v : p.vertices) j["vertices"].push_back(vector_to_json(v));
  j["facets"] = json::array();
  j["incidence"] = json::array();
  for (const auto& f : p.facets) {
    json fj;
    fj["normal"] = vector_to_json(f.normal);
    fj["offset"] = rational_to_json(f.offset);
    j["facets"].push_back(fj);
    j["incidence"].push_back(f.vertex_indices);
  }
  return j;
}

nlohmann::json to_json(const MomentCone& c) {
  json j;
  j["dim"] = c.ambient_dim;
  if (!c.name.empty()) j["name"] = c.name;
  j["fan_rays"] = json::array();
  for (const auto& v : c.fan_rays) j["fan_rays"].push_back(vector_to_json(v));
  j["dual_rays"] = json::array();
  for (const auto& u : c.dual_rays) j["dual_rays"].push_back(vector_to_json(u));
  j["decomposition"] = json::array();
  for (const auto& sub : c.decomposition) {
    json sj;
    sj["dual_ray_indices"] = sub.dual_ray_indices;
    sj["det_abs"] = sub.det_abs.convert_to<std::int64_t>();
    j["decomposition"].push_back(sj);
  }
  return j;
}

nlohmann::json to_json(const Geometry& g) {
  return std::visit([](const auto& x) { return to_json(x); }, g);
}

std::string geometry_digest(const Geometry& g) {
  const std::string canonical = to_json(g).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << "fnv1a:" << std::hex << h;
  return os.str();
}

}  // namespace toricvol
