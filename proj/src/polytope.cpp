#include "toricvol/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace toricvol {

// ---------------------------------------------------------------------------
// exact arithmetic helpers (declared in rational.hpp)

Rational rational_from_double(double x, long long max_den) {
  if (x == 0.0) return Rational(0);
  bool neg = x < 0;
  double a = std::abs(x);
  // continued-fraction convergents
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = a;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(frac);
    if (fl > 9e17) break;
    long long ai = static_cast<long long>(fl);
    long long p2 = ai * p1 + p0;
    long long q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = frac - fl;
    if (std::abs(to_double(Rational(p1, q1)) - a) < 1e-14 * a || rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  Rational r(p1, q1);
  return neg ? -r : r;
}

RatVector primitive_integer_direction(const RatVector& v) {
  BigInt lcm_den = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    lcm_den = boost::multiprecision::lcm(lcm_den, denominator(v[i]));
  std::vector<BigInt> ints(v.size());
  BigInt g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    ints[i] = numerator(v[i]) * (lcm_den / denominator(v[i]));
    g = boost::multiprecision::gcd(g, ints[i]);
  }
  if (g == 0) throw std::invalid_argument("primitive direction of the zero vector");
  RatVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = Rational(ints[i] / g);
  return out;
}

Rational exact_determinant(RatMatrix a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  Rational det = 1;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = col; r < n; ++r)
      if (a(r, col) != 0) { pivot = r; break; }
    if (pivot < 0) return Rational(0);
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      det = -det;
    }
    det *= a(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      Rational factor = a(r, col) / a(col, col);
      for (Eigen::Index c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
    }
  }
  return det;
}

int exact_rank(RatMatrix a) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  int rank = 0;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = row; r < rows; ++r)
      if (a(r, col) != 0) { pivot = r; break; }
    if (pivot < 0) continue;
    if (pivot != row) a.row(pivot).swap(a.row(row));
    for (Eigen::Index r = row + 1; r < rows; ++r) {
      if (a(r, col) == 0) continue;
      Rational factor = a(r, col) / a(row, col);
      for (Eigen::Index c = col; c < cols; ++c) a(r, c) -= factor * a(row, c);
    }
    ++rank;
    ++row;
  }
  return rank;
}

int affine_rank(const std::vector<RatVector>& points) {
  if (points.size() <= 1) return 0;
  RatMatrix diffs(points.size() - 1, points[0].size());
  for (size_t i = 1; i < points.size(); ++i)
    diffs.row(static_cast<Eigen::Index>(i - 1)) = (points[i] - points[0]).transpose();
  return exact_rank(diffs);
}

// ---------------------------------------------------------------------------
// Polytope members

Rational Polytope::facet_value(int facet, const RatVector& point) const {
  const Facet& f = facets[facet];
  Rational acc = f.offset;
  for (int i = 0; i < dim; ++i) acc += f.normal[i] * point[i];
  return acc;
}

bool Polytope::contains_origin_interior() const {
  for (const auto& f : facets)
    if (f.offset <= 0) return false;
  return true;
}

RatVector Polytope::vertex_centroid() const {
  RatVector c = RatVector::Zero(dim);
  for (const auto& v : vertices) c += v;
  return c / Rational(static_cast<long long>(vertices.size()));
}

Eigen::MatrixXd Polytope::vertices_as_double() const {
  Eigen::MatrixXd out(vertices.size(), dim);
  for (size_t i = 0; i < vertices.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = to_double(vertices[i]).transpose();
  return out;
}

// ---------------------------------------------------------------------------
// construction

namespace {

// cross product z-component of (b-a) x (c-a)
Rational orient2d(const RatVector& a, const RatVector& b, const RatVector& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

// Andrew's monotone chain on exact rationals; returns hull indices in
// counterclockwise order, collinear points dropped.
std::vector<int> convex_hull_2d(const std::vector<RatVector>& pts) {
  std::vector<int> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) {
    if (pts[i][0] != pts[j][0]) return pts[i][0] < pts[j][0];
    return pts[i][1] < pts[j][1];
  });
  idx.erase(std::unique(idx.begin(), idx.end(),
                        [&](int i, int j) { return pts[i] == pts[j]; }),
            idx.end());
  const int n = static_cast<int>(idx.size());
  if (n < 3) throw std::invalid_argument("polytope vertices do not span the plane");
  std::vector<int> hull(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {  // lower
    while (k >= 2 && orient2d(pts[hull[k - 2]], pts[hull[k - 1]], pts[idx[i]]) <= 0) --k;
    hull[k++] = idx[i];
  }
  for (int i = n - 2, lower = k + 1; i >= 0; --i) {  // upper
    while (k >= lower && orient2d(pts[hull[k - 2]], pts[hull[k - 1]], pts[idx[i]]) <= 0) --k;
    hull[k++] = idx[i];
  }
  hull.resize(k - 1);
  return hull;
}

std::string point_str(const RatVector& v) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i)
    os << (i ? "," : "") << toricvol::to_string(v[i]);
  os << ")";
  return os.str();
}

}  // namespace

Polytope build_polytope(int dim, std::vector<RatVector> vertices,
                        std::optional<std::vector<std::pair<RatVector, Rational>>> facets,
                        std::optional<std::vector<std::vector<int>>> incidence,
                        std::string name) {
  if (dim < 1) throw std::invalid_argument("polytope dimension must be positive");
  if (vertices.size() < static_cast<size_t>(dim) + 1)
    throw std::invalid_argument("need at least dim+1 vertices");
  for (const auto& v : vertices)
    if (v.size() != dim) throw std::invalid_argument("vertex of wrong dimension");
  if (affine_rank(vertices) != dim)
    throw std::invalid_argument("vertices do not affinely span R^m (lower-dimensional input)");

  Polytope p;
  p.dim = dim;
  p.name = std::move(name);
  p.vertices = std::move(vertices);

  if (!facets) {
    if (dim != 2)
      throw std::invalid_argument(
          "facets may be omitted only for dim = 2 (internal hull is planar only)");
    std::vector<int> hull = convex_hull_2d(p.vertices);
    if (hull.size() != p.vertices.size())
      throw std::invalid_argument("vertex list contains non-extreme or duplicate points");
    // consecutive CCW hull edges; inward normal is the left-rotated direction
    std::vector<std::pair<RatVector, Rational>> fs;
    for (size_t i = 0; i < hull.size(); ++i) {
      const RatVector& a = p.vertices[hull[i]];
      const RatVector& b = p.vertices[hull[(i + 1) % hull.size()]];
      RatVector dir = b - a;
      RatVector normal(2);
      normal[0] = -dir[1];
      normal[1] = dir[0];
      normal = primitive_integer_direction(normal);
      Rational offset = -(normal[0] * a[0] + normal[1] * a[1]);
      fs.emplace_back(normal, offset);
    }
    facets = std::move(fs);
  }

  for (size_t fi = 0; fi < facets->size(); ++fi) {
    auto& [normal, offset] = (*facets)[fi];
    if (normal.size() != dim) throw std::invalid_argument("facet normal of wrong dimension");
    if (!is_integer(normal))
      throw std::invalid_argument("facet " + std::to_string(fi) +
                                  " has a non-integer normal direction");
    normal = primitive_integer_direction(normal);  // also errors on zero
    Facet f;
    f.normal = normal;
    f.offset = offset;
    p.facets.push_back(std::move(f));
  }

  // exact saturation incidence + containment
  for (size_t vi = 0; vi < p.vertices.size(); ++vi) {
    int saturated = 0;
    std::vector<RatVector> sat_normals;
    for (size_t fi = 0; fi < p.facets.size(); ++fi) {
      Rational val = p.facet_value(static_cast<int>(fi), p.vertices[vi]);
      if (val < 0)
        throw std::invalid_argument("vertex " + point_str(p.vertices[vi]) +
                                    " violates facet " + std::to_string(fi));
      if (val == 0) {
        p.facets[fi].vertex_indices.push_back(static_cast<int>(vi));
        sat_normals.push_back(p.facets[fi].normal);
        ++saturated;
      }
    }
    if (saturated < dim)
      throw std::invalid_argument("vertex " + point_str(p.vertices[vi]) +
                                  " saturates fewer than m facets");
    RatMatrix nm(sat_normals.size(), dim);
    for (size_t i = 0; i < sat_normals.size(); ++i)
      nm.row(static_cast<Eigen::Index>(i)) = sat_normals[i].transpose();
    if (exact_rank(nm) != dim)
      throw std::invalid_argument("facets meeting at vertex " + point_str(p.vertices[vi]) +
                                  " do not span R^m");
  }

  for (size_t fi = 0; fi < p.facets.size(); ++fi) {
    const auto& inc = p.facets[fi].vertex_indices;
    if (inc.size() < static_cast<size_t>(dim))
      throw std::invalid_argument("facet " + std::to_string(fi) +
                                  " is not supported by m affinely independent vertices");
    std::vector<RatVector> pts;
    for (int vi : inc) pts.push_back(p.vertices[vi]);
    if (affine_rank(pts) != dim - 1)
      throw std::invalid_argument("facet " + std::to_string(fi) +
                                  " does not have dimension m-1 (unbounded or redundant input)");
  }

  if (incidence) {
    if (incidence->size() != p.facets.size())
      throw std::invalid_argument("incidence list length does not match the facet count");
    for (size_t fi = 0; fi < p.facets.size(); ++fi) {
      std::set<int> given((*incidence)[fi].begin(), (*incidence)[fi].end());
      std::set<int> computed(p.facets[fi].vertex_indices.begin(),
                             p.facets[fi].vertex_indices.end());
      if (given != computed)
        throw std::invalid_argument("supplied incidence for facet " + std::to_string(fi) +
                                    " disagrees with exact saturation testing");
    }
  }

  return p;
}

// ---------------------------------------------------------------------------
// validation

DelzantReport validate_delzant(const Polytope& p) {
  DelzantReport report;
  report.delzant = true;
  for (size_t vi = 0; vi < p.vertices.size(); ++vi) {
    DelzantVertexCheck check;
    check.vertex = static_cast<int>(vi);
    for (size_t fi = 0; fi < p.facets.size(); ++fi)
      if (p.facet_value(static_cast<int>(fi), p.vertices[vi]) == 0)
        check.saturating_facets.push_back(static_cast<int>(fi));
    if (check.saturating_facets.size() != static_cast<size_t>(p.dim)) {
      check.simple = false;
      check.ok = false;
    } else {
      RatMatrix nm(p.dim, p.dim);
      for (int i = 0; i < p.dim; ++i)
        nm.row(i) = p.facets[check.saturating_facets[i]].normal.transpose();
      Rational det = exact_determinant(nm);
      check.normal_det_abs = boost::multiprecision::abs(numerator(det));
      check.ok = (det == 1 || det == -1);
    }
    if (!check.ok) {
      report.delzant = false;
      report.offending_vertices.push_back(check.vertex);
    }
    report.per_vertex.push_back(std::move(check));
  }
  return report;
}

bool validate_reflexive(const Polytope& p) {
  for (const auto& v : p.vertices)
    if (!is_integer(v)) return false;
  for (const auto& f : p.facets)
    if (f.offset != 1) return false;
  return true;
}

// ---------------------------------------------------------------------------
// triangulation

namespace {

// Faces of a face: intersect with every polytope facet and keep the
// (k-1)-dimensional results. Every proper face of a face arises this way.
std::vector<std::vector<int>> face_boundary(const Polytope& p, const std::vector<int>& face,
                                            int face_dim) {
  std::set<int> face_set(face.begin(), face.end());
  std::set<std::set<int>> seen;
  std::vector<std::vector<int>> out;
  for (const auto& f : p.facets) {
    std::vector<int> inter;
    for (int vi : f.vertex_indices)
      if (face_set.count(vi)) inter.push_back(vi);
    if (inter.empty() || inter.size() == face.size()) continue;
    std::vector<RatVector> pts;
    for (int vi : inter) pts.push_back(p.vertices[vi]);
    if (affine_rank(pts) != face_dim - 1) continue;
    std::set<int> key(inter.begin(), inter.end());
    if (seen.insert(key).second) out.push_back(std::move(inter));
  }
  return out;
}

// Recursive centroid fan of a face into simplices (vertex index lists).
void triangulate_face(const Polytope& p, const std::vector<int>& face, int face_dim,
                      std::vector<std::vector<RatVector>>& out) {
  if (face.size() == static_cast<size_t>(face_dim) + 1) {
    std::vector<RatVector> pts;
    for (int vi : face) pts.push_back(p.vertices[vi]);
    out.push_back(std::move(pts));
    return;
  }
  RatVector centroid = RatVector::Zero(p.dim);
  for (int vi : face) centroid += p.vertices[vi];
  centroid /= Rational(static_cast<long long>(face.size()));
  for (const auto& sub : face_boundary(p, face, face_dim)) {
    std::vector<std::vector<RatVector>> pieces;
    triangulate_face(p, sub, face_dim - 1, pieces);
    for (auto& piece : pieces) {
      piece.push_back(centroid);
      out.push_back(std::move(piece));
    }
  }
}

Rational lebesgue_volume(const std::vector<RatVector>& simplex) {
  const int m = static_cast<int>(simplex.size()) - 1;
  RatMatrix e(m, m);
  for (int i = 0; i < m; ++i) e.row(i) = (simplex[i + 1] - simplex[0]).transpose();
  Rational det = exact_determinant(e);
  Rational fact = 1;
  for (int i = 2; i <= m; ++i) fact *= i;
  return boost::multiprecision::abs(det) / fact;
}

// Lattice boundary mass of an (m-1)-simplex lying in the facet with primitive
// normal u: |det([edges; u])| / (|u|^2 (m-1)!), an exact rational equal to
// Euclidean (m-1)-volume divided by |u|_2.
Rational lattice_mass(const std::vector<RatVector>& simplex, const RatVector& normal) {
  const int m = static_cast<int>(normal.size());
  RatMatrix e(m, m);
  for (int i = 0; i < m - 1; ++i) e.row(i) = (simplex[i + 1] - simplex[0]).transpose();
  e.row(m - 1) = normal.transpose();
  Rational det = exact_determinant(e);
  Rational norm2 = 0;
  for (int i = 0; i < m; ++i) norm2 += normal[i] * normal[i];
  Rational fact = 1;
  for (int i = 2; i <= m - 1; ++i) fact *= i;
  return boost::multiprecision::abs(det) / (norm2 * fact);
}

}  // namespace

std::vector<Simplex> triangulate(const Polytope& p) {
  std::vector<Simplex> out;
  if (p.vertices.size() == static_cast<size_t>(p.dim) + 1) {
    Simplex s;
    s.vertices = p.vertices;
    s.weight = lebesgue_volume(s.vertices);
    if (s.weight > 0) out.push_back(std::move(s));
    return out;
  }
  RatVector centroid = p.vertex_centroid();
  for (size_t fi = 0; fi < p.facets.size(); ++fi) {
    std::vector<std::vector<RatVector>> pieces;
    triangulate_face(p, p.facets[fi].vertex_indices, p.dim - 1, pieces);
    for (auto& piece : pieces) {
      piece.push_back(centroid);
      Simplex s;
      s.vertices = std::move(piece);
      s.weight = lebesgue_volume(s.vertices);
      if (s.weight > 0) out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<Simplex> boundary_pieces(const Polytope& p) {
  std::vector<Simplex> out;
  for (size_t fi = 0; fi < p.facets.size(); ++fi) {
    std::vector<std::vector<RatVector>> pieces;
    triangulate_face(p, p.facets[fi].vertex_indices, p.dim - 1, pieces);
    for (auto& piece : pieces) {
      Simplex s;
      s.vertices = std::move(piece);
      s.weight = lattice_mass(s.vertices, p.facets[fi].normal);
      s.facet = static_cast<int>(fi);
      if (s.weight > 0) out.push_back(std::move(s));
    }
  }
  return out;
}

Rational volume(const Polytope& p) {
  Rational total = 0;
  for (const auto& s : triangulate(p)) total += s.weight;
  return total;
}

Rational boundary_measure(const Polytope& p) {
  Rational total = 0;
  for (const auto& s : boundary_pieces(p)) total += s.weight;
  return total;
}

}  // namespace toricvol
