#include "toricvol/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace toricvol {

// ---------------------------------------------------------------------------
// kernels

Kernel Kernel::inv_power(int k) {
  if (k < 1) throw std::invalid_argument("InvPower kernel needs k >= 1");
  return Kernel(Tag::InvPower, k);
}

Kernel Kernel::monomial(int s) {
  if (s < 0) throw std::invalid_argument("Monomial kernel needs s >= 0");
  return Kernel(Tag::Monomial, s);
}

double Kernel::antiderivative(int q, double t) const {
  switch (tag_) {
    case Tag::Exp:
      return std::exp(t);
    case Tag::Monomial: {
      const int s = param_;
      if (q >= 0) {
        // t^{s+q} s!/(s+q)!
        double coeff = 1.0;
        for (int i = s + 1; i <= s + q; ++i) coeff /= i;
        return coeff * std::pow(t, s + q);
      }
      const int j = -q;  // derivative order
      if (j > s) return 0.0;
      double coeff = 1.0;
      for (int i = s - j + 1; i <= s; ++i) coeff *= i;
      return coeff * std::pow(t, s - j);
    }
    case Tag::InvPower: {
      const int k = param_;
      if (q < k) {
        // A_q = c_q t^{q-k} with c_0 = 1 and c_q = c_{q-1} / (q-k)
        double c = 1.0;
        if (q >= 1) {
          for (int i = 1; i <= q; ++i) c /= static_cast<double>(i - k);
        } else {
          for (int i = 0; i > q; --i) c *= static_cast<double>(i - k);
        }
        return c * std::pow(t, q - k);
      }
      // logarithmic branch: A_q = c_{k-1} t^n (ln t - H_n) / n!, n = q - k
      double c = 1.0;
      for (int i = 1; i <= k - 1; ++i) c /= static_cast<double>(i - k);
      const int n = q - k;
      double harmonic = 0.0, fact = 1.0;
      for (int i = 1; i <= n; ++i) {
        harmonic += 1.0 / i;
        fact *= i;
      }
      return c * std::pow(t, n) * (std::log(t) - harmonic) / fact;
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// divided differences

namespace {

constexpr double kClusterTol = 1e-7;   // confluence width for tableau leaves
constexpr double kTaylorSpan = 0.1;    // relative span for the global Taylor path
constexpr double kRescueRelError = 1e-9;  // > ~6-7 decimal digits lost
constexpr double kEps = 2.3e-16;

struct TaylorResult {
  double value = 0.0;
  double err = 0.0;       // absolute error estimate
  bool converged = false;
};

// Taylor evaluation of [x_0..x_n]G around the mean:
//   sum_t G^{(n+t)}(mean)/(n+t)! * h_t(deviations)
// with h_t the complete homogeneous symmetric polynomials. Exact through
// total confluence; convergence is monitored, a rising tail aborts.
TaylorResult taylor_divided_difference(const std::function<double(int, double)>& deriv,
                                       std::span<const double> nodes, double mean) {
  const int n = static_cast<int>(nodes.size()) - 1;
  constexpr int kMaxTerms = 72;
  std::array<double, kMaxTerms> h{};
  h[0] = 1.0;
  for (double x : nodes) {
    const double d = x - mean;
    // h_t(S + {d}) = h_t(S) + d h_{t-1}(S + {d}), updated in ascending t
    for (int t = 1; t < kMaxTerms; ++t) h[t] = h[t] + d * h[t - 1];
  }
  double inv_fact = 1.0;
  for (int i = 2; i <= n; ++i) inv_fact /= i;
  TaylorResult out;
  double abs_sum = 0.0;
  // odd-degree h_t vanish for symmetric node sets, so single small terms do
  // not mean convergence; insist on two consecutive ones and compare the
  // divergence monitor against the last two magnitudes
  double prev1 = std::numeric_limits<double>::infinity();
  double prev2 = std::numeric_limits<double>::infinity();
  for (int t = 0; t < kMaxTerms; ++t) {
    if (t > 0) inv_fact /= (n + t);
    const double term = deriv(n + t, mean) * inv_fact * h[t];
    out.value += term;
    abs_sum += std::abs(term);
    const double floor = 1e-18 * std::max(std::abs(out.value), 1e-300);
    if (t >= 3 && std::abs(term) <= floor && prev1 <= floor) {
      out.converged = true;
      out.err = kEps * abs_sum + std::abs(term) + prev1;
      return out;
    }
    if (t > 12 && std::abs(term) > std::max(prev1, prev2)) {
      out.converged = false;  // diverging tail
      return out;
    }
    prev2 = prev1;
    prev1 = std::abs(term);
  }
  out.converged = false;
  return out;
}

}  // namespace

DividedDifferenceResult divided_difference_ex(
    const std::function<double(int, double)>& deriv, std::vector<double> nodes) {
  if (nodes.empty()) throw std::invalid_argument("divided difference needs at least one node");
  for (double x : nodes)
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite divided-difference node");
  std::sort(nodes.begin(), nodes.end());
  const int n = static_cast<int>(nodes.size());
  double scale = 0.0;
  for (double x : nodes) scale = std::max(scale, std::abs(x));
  const double span = nodes.back() - nodes.front();

  // small spans: one Taylor expansion covers every node without cancellation
  if (span <= kTaylorSpan * (1.0 + scale)) {
    double mean = 0.0;
    for (double x : nodes) mean += x;
    mean /= n;
    TaylorResult t = taylor_divided_difference(deriv, std::span(nodes), mean);
    if (t.converged)
      return {t.value, t.err / std::max(std::abs(t.value), 1e-300)};
  }

  const double tol = kClusterTol * (1.0 + scale);
  std::vector<int> cluster(n, 0);
  for (int i = 1; i < n; ++i)
    cluster[i] = (nodes[i] - nodes[i - 1] <= tol) ? cluster[i - 1] : cluster[i - 1] + 1;
  const int n_clusters = cluster[n - 1] + 1;
  std::vector<double> cluster_mean(n_clusters, 0.0);
  std::vector<int> cluster_count(n_clusters, 0);
  for (int i = 0; i < n; ++i) {
    cluster_mean[cluster[i]] += nodes[i];
    ++cluster_count[cluster[i]];
  }
  for (int c = 0; c < n_clusters; ++c) cluster_mean[c] /= cluster_count[c];

  // generalized Newton tableau over ranges with a running error estimate
  std::vector<std::vector<double>> table(n, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> err(n, std::vector<double>(n, 0.0));
  for (int len = 0; len < n; ++len) {
    for (int i = 0; i + len < n; ++i) {
      const int j = i + len;
      if (cluster[i] == cluster[j]) {
        TaylorResult t = taylor_divided_difference(
            deriv, std::span(nodes).subspan(i, len + 1), cluster_mean[cluster[i]]);
        table[i][j] = t.value;
        // a cluster of width below kClusterTol always converges fast; if the
        // monitor aborted anyway, poison the estimate so the rescue fires
        err[i][j] = t.converged ? t.err : std::abs(t.value) + 1.0;
      } else {
        const double a = table[i + 1][j];
        const double b = table[i][j - 1];
        const double gap = nodes[j] - nodes[i];
        table[i][j] = (a - b) / gap;
        err[i][j] = (err[i + 1][j] + err[i][j - 1] + kEps * (std::abs(a) + std::abs(b))) / gap +
                    kEps * std::abs(table[i][j]);
      }
    }
  }
  const double rel = err[0][n - 1] / std::max(std::abs(table[0][n - 1]), 1e-300);
  return {table[0][n - 1], rel};
}

// ---------------------------------------------------------------------------
// simplex integrals

SimplexD compile_simplex(const Simplex& s) {
  SimplexD d;
  d.verts.resize(s.vertices.size(), s.ambient_dim());
  for (size_t i = 0; i < s.vertices.size(); ++i)
    d.verts.row(static_cast<Eigen::Index>(i)) = to_double(s.vertices[i]).transpose();
  d.weight = to_double(s.weight);
  return d;
}

std::vector<SimplexD> compile_interior(const Polytope& p) {
  std::vector<SimplexD> out;
  for (const auto& s : triangulate(p)) out.push_back(compile_simplex(s));
  return out;
}

std::vector<SimplexD> compile_boundary(const Polytope& p) {
  std::vector<SimplexD> out;
  for (const auto& s : boundary_pieces(p)) out.push_back(compile_simplex(s));
  return out;
}

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::vector<double> node_values(const SimplexD& s, const AffineFunction& f) {
  std::vector<double> l(s.verts.rows());
  for (Eigen::Index i = 0; i < s.verts.rows(); ++i)
    l[static_cast<size_t>(i)] = f(s.verts.row(i).transpose());
  return l;
}

void check_positivity(const std::vector<double>& nodes, const Kernel& g, const SimplexD& s) {
  if (!g.requires_positive_nodes()) return;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] <= 0.0) {
      std::ostringstream os;
      os << "InvPower kernel needs f > 0; violated at vertex (" << s.verts.row(i) << ")";
      throw std::domain_error(os.str());
    }
  }
}

// derivative family of the N-fold antiderivative of g
std::function<double(int, double)> antiderivative_family(const Kernel& g, int level) {
  return [g, level](int order, double t) { return g.antiderivative(level - order, t); };
}

}  // namespace

double integrate_simplex(const SimplexD& sd, const AffineFunction& f, const Kernel& g) {
  const int r = sd.dim();
  std::vector<double> nodes = node_values(sd, f);
  check_positivity(nodes, g, sd);
  auto dd = divided_difference_ex(antiderivative_family(g, r), nodes);
  if (dd.condition > kRescueRelError)
    return numeric_fallback(
        sd, [&](const Eigen::VectorXd& y) { return g(f(y)); }, 1e-11);
  return factorial(r) * sd.weight * dd.value;
}

double integrate_simplex(const Simplex& s, const AffineFunction& f, const Kernel& g) {
  return integrate_simplex(compile_simplex(s), f, g);
}

Eigen::VectorXd simplex_moment1(const SimplexD& sd, const AffineFunction& f, const Kernel& g) {
  const int r = sd.dim();
  const int nv = r + 1;
  std::vector<double> nodes = node_values(sd, f);
  check_positivity(nodes, g, sd);
  auto family = antiderivative_family(g, r + 1);
  const double pref = factorial(r) * sd.weight;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(sd.ambient_dim());
  bool rescue = false;
  for (int a = 0; a < nv && !rescue; ++a) {
    std::vector<double> ext = nodes;
    ext.push_back(nodes[a]);
    auto dd = divided_difference_ex(family, std::move(ext));
    if (dd.condition > kRescueRelError) rescue = true;
    out += pref * dd.value * sd.verts.row(a).transpose();
  }
  if (rescue) {
    for (int i = 0; i < out.size(); ++i)
      out[i] = numeric_fallback(
          sd, [&](const Eigen::VectorXd& y) { return y[i] * g(f(y)); }, 1e-11);
  }
  return out;
}

Eigen::VectorXd simplex_moment1(const Simplex& s, const AffineFunction& f, const Kernel& g) {
  return simplex_moment1(compile_simplex(s), f, g);
}

Eigen::MatrixXd simplex_moment2(const SimplexD& sd, const AffineFunction& f, const Kernel& g) {
  const int r = sd.dim();
  const int nv = r + 1;
  const int m = sd.ambient_dim();
  std::vector<double> nodes = node_values(sd, f);
  check_positivity(nodes, g, sd);
  auto family = antiderivative_family(g, r + 2);
  const double pref = factorial(r) * sd.weight;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  bool rescue = false;
  for (int a = 0; a < nv && !rescue; ++a) {
    for (int b = a; b < nv && !rescue; ++b) {
      std::vector<double> ext = nodes;
      ext.push_back(nodes[a]);
      ext.push_back(nodes[b]);
      auto dd = divided_difference_ex(family, std::move(ext));
      if (dd.condition > kRescueRelError) rescue = true;
      const double coeff = pref * (a == b ? 2.0 : 1.0) * dd.value;
      // grouped so the accumulated matrix is symmetric to the last bit
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
          const double sym = (a == b)
                                 ? sd.verts(a, i) * sd.verts(a, j)
                                 : sd.verts(a, i) * sd.verts(b, j) +
                                       sd.verts(b, i) * sd.verts(a, j);
          const double term = coeff * sym;
          out(i, j) += term;
          if (i != j) out(j, i) += term;
        }
    }
  }
  if (rescue) {
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        out(i, j) = numeric_fallback(
            sd, [&](const Eigen::VectorXd& y) { return y[i] * y[j] * g(f(y)); }, 1e-11);
        out(j, i) = out(i, j);
      }
  }
  return out;
}

Eigen::MatrixXd simplex_moment2(const Simplex& s, const AffineFunction& f, const Kernel& g) {
  return simplex_moment2(compile_simplex(s), f, g);
}

// ---------------------------------------------------------------------------
// polytope-level wrappers

namespace {

void check_polytope_positivity(const Polytope& p, const AffineFunction& f, const Kernel& g) {
  if (!g.requires_positive_nodes()) return;
  for (size_t i = 0; i < p.vertices.size(); ++i) {
    if (f(to_double(p.vertices[i])) <= 0.0) {
      std::ostringstream os;
      os << "InvPower kernel needs f > 0 on the polytope; violated at vertex " << i << " (";
      for (int c = 0; c < p.dim; ++c) os << (c ? "," : "") << to_string(p.vertices[i][c]);
      os << ")";
      throw std::domain_error(os.str());
    }
  }
}

template <class Eval>
auto sum_pieces(const std::vector<SimplexD>& pieces, Eval&& eval) {
  auto acc = eval(pieces.front());
  for (size_t i = 1; i < pieces.size(); ++i) acc += eval(pieces[i]);
  return acc;
}

void check_pieces_positivity(const std::vector<SimplexD>& pieces, const AffineFunction& f,
                             const Kernel& g) {
  if (!g.requires_positive_nodes()) return;
  for (const auto& s : pieces)
    for (Eigen::Index i = 0; i < s.verts.rows(); ++i)
      if (f(s.verts.row(i).transpose()) <= 0.0) {
        std::ostringstream os;
        os << "InvPower kernel needs f > 0; violated at (" << s.verts.row(i) << ")";
        throw std::domain_error(os.str());
      }
}

}  // namespace

double integrate_pieces(const std::vector<SimplexD>& pieces, const AffineFunction& f,
                        const Kernel& g) {
  check_pieces_positivity(pieces, f, g);
  return sum_pieces(pieces, [&](const SimplexD& s) { return integrate_simplex(s, f, g); });
}

Eigen::VectorXd moment1_pieces(const std::vector<SimplexD>& pieces, const AffineFunction& f,
                               const Kernel& g) {
  check_pieces_positivity(pieces, f, g);
  return sum_pieces(pieces, [&](const SimplexD& s) { return simplex_moment1(s, f, g); });
}

Eigen::MatrixXd moment2_pieces(const std::vector<SimplexD>& pieces, const AffineFunction& f,
                               const Kernel& g) {
  check_pieces_positivity(pieces, f, g);
  return sum_pieces(pieces, [&](const SimplexD& s) { return simplex_moment2(s, f, g); });
}

double integrate_polytope(const Polytope& p, const AffineFunction& f, const Kernel& g) {
  check_polytope_positivity(p, f, g);
  return integrate_pieces(compile_interior(p), f, g);
}

double integrate_boundary(const Polytope& p, const AffineFunction& f, const Kernel& g) {
  check_polytope_positivity(p, f, g);
  return integrate_pieces(compile_boundary(p), f, g);
}

Eigen::VectorXd moment1_polytope(const Polytope& p, const AffineFunction& f, const Kernel& g) {
  check_polytope_positivity(p, f, g);
  return moment1_pieces(compile_interior(p), f, g);
}

Eigen::VectorXd moment1_boundary(const Polytope& p, const AffineFunction& f, const Kernel& g) {
  check_polytope_positivity(p, f, g);
  return moment1_pieces(compile_boundary(p), f, g);
}

Eigen::MatrixXd moment2_polytope(const Polytope& p, const AffineFunction& f, const Kernel& g) {
  check_polytope_positivity(p, f, g);
  return moment2_pieces(compile_interior(p), f, g);
}

Eigen::MatrixXd moment2_boundary(const Polytope& p, const AffineFunction& f, const Kernel& g) {
  check_polytope_positivity(p, f, g);
  return moment2_pieces(compile_boundary(p), f, g);
}

double integrate_weighted_exp(const Polytope& p, const Eigen::VectorXd& c, int i) {
  if (i < 0 || i >= p.dim) throw std::invalid_argument("coordinate index out of range");
  AffineFunction f{c, 0.0};
  return moment1_polytope(p, f, Kernel::exponential())[i];
}

// ---------------------------------------------------------------------------
// adaptive fallback

namespace {

struct GaussRule {
  std::vector<double> nodes;    // on [0, 1]
  std::vector<double> weights;  // summing to 1
};

// Gauss-Legendre nodes by Newton iteration on P_n.
GaussRule gauss_legendre_01(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = 0.5 * (x + 1.0);
    rule.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GaussRule& rule_low() {
  static const GaussRule r = gauss_legendre_01(5);
  return r;
}
const GaussRule& rule_high() {
  static const GaussRule r = gauss_legendre_01(8);
  return r;
}

struct FallbackState {
  const std::function<double(const Eigen::VectorXd&)>* integrand;
  long long evals = 0;
  long long max_evals = 0;
  bool abs_mode = false;  // integrate |phi| (used for the scale estimate)
};

// Duffy map: u in [0,1]^k -> barycentric coordinates; Jacobian
// prod (1-u_i)^{k-i} normalized so that int J du = 1/k!.
double duffy_rule(const Eigen::MatrixXd& verts, double weight, const GaussRule& rule,
                  FallbackState& st) {
  const int k = static_cast<int>(verts.rows()) - 1;
  const int n = static_cast<int>(rule.nodes.size());
  const double kfact = factorial(k);
  double acc = 0.0;
  std::vector<int> idx(std::max(k, 1), 0);
  Eigen::VectorXd y(verts.cols());
  if (k == 0) {
    ++st.evals;
    double v = (*st.integrand)(verts.row(0).transpose());
    return weight * (st.abs_mode ? std::abs(v) : v);
  }
  while (true) {
    double w = 1.0, remaining = 1.0;
    y = verts.row(0).transpose();
    Eigen::VectorXd point = Eigen::VectorXd::Zero(verts.cols());
    double lambda0 = 1.0;
    point.setZero();
    for (int i = 0; i < k; ++i) {
      const double u = rule.nodes[idx[i]];
      w *= rule.weights[idx[i]];
      const double lam = u * remaining;
      remaining *= (1.0 - u);
      point += lam * verts.row(i + 1).transpose();
      lambda0 -= lam;
      // Jacobian factor (1-u)^{k-i-1}
      for (int e = 0; e < k - i - 1; ++e) w *= (1.0 - u);
    }
    point += lambda0 * verts.row(0).transpose();
    ++st.evals;
    double v = (*st.integrand)(point);
    acc += w * (st.abs_mode ? std::abs(v) : v);
    int carry = 0;
    while (carry < k && ++idx[carry] == n) idx[carry++] = 0;
    if (carry == k) break;
  }
  return weight * kfact * acc;
}

double adaptive(const Eigen::MatrixXd& verts, double weight, double tol_abs, FallbackState& st,
                int depth) {
  if (st.evals > st.max_evals)
    throw std::runtime_error("numeric_fallback: subdivision budget exhausted before tolerance");
  const double q_low = duffy_rule(verts, weight, rule_low(), st);
  const double q_high = duffy_rule(verts, weight, rule_high(), st);
  if (std::abs(q_high - q_low) <= tol_abs || depth > 48) return q_high;
  // bisect the longest edge
  const int nv = static_cast<int>(verts.rows());
  int bi = 0, bj = 1;
  double best = -1.0;
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j) {
      double d = (verts.row(i) - verts.row(j)).squaredNorm();
      if (d > best) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  Eigen::RowVectorXd mid = 0.5 * (verts.row(bi) + verts.row(bj));
  Eigen::MatrixXd left = verts, right = verts;
  left.row(bj) = mid;
  right.row(bi) = mid;
  return adaptive(left, 0.5 * weight, 0.5 * tol_abs, st, depth + 1) +
         adaptive(right, 0.5 * weight, 0.5 * tol_abs, st, depth + 1);
}

}  // namespace

double numeric_fallback(const Simplex& s,
                        const std::function<double(const Eigen::VectorXd&)>& integrand,
                        double rel_tol, long long max_evals) {
  return numeric_fallback(compile_simplex(s), integrand, rel_tol, max_evals);
}

double numeric_fallback(const SimplexD& sd,
                        const std::function<double(const Eigen::VectorXd&)>& integrand,
                        double rel_tol, long long max_evals) {
  if (rel_tol <= 0) throw std::invalid_argument("numeric_fallback needs a positive tolerance");
  FallbackState st;
  st.integrand = &integrand;
  st.max_evals = max_evals;
  st.abs_mode = true;
  const double scale = duffy_rule(sd.verts, sd.weight, rule_high(), st);
  st.abs_mode = false;
  const double tol_abs = rel_tol * std::max(scale, 1e-300);
  return adaptive(sd.verts, sd.weight, tol_abs, st, 0);
}

}  // namespace toricvol
