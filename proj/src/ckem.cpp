#include "toricvol/ckem.hpp"

#include "toricvol/parallel.hpp"
#include "toricvol/rng.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace toricvol {

// ---------------------------------------------------------------------------
// EH functional

namespace {

double eh_prefactor(int m) {
  double mfact = 1.0;
  for (int i = 2; i <= m; ++i) mfact *= i;
  return 4.0 * M_PI / std::pow(mfact, 1.0 / m);
}

// triangulations and constants compiled once per polytope
struct EhContext {
  int m = 0;
  Eigen::MatrixXd verts;  // one row per polytope vertex
  std::vector<SimplexD> interior;
  std::vector<SimplexD> boundary;
  double q = 0.0;
  double kappa = 0.0;
};

EhContext make_eh_context(const Polytope& p) {
  if (p.dim < 2) throw std::invalid_argument("EH functional needs polytope dimension >= 2");
  EhContext ctx;
  ctx.m = p.dim;
  ctx.verts = p.vertices_as_double();
  ctx.interior = compile_interior(p);
  ctx.boundary = compile_boundary(p);
  ctx.q = (p.dim - 1.0) / p.dim;
  ctx.kappa = eh_prefactor(p.dim);
  return ctx;
}

void check_admissible(const EhContext& ctx, const Eigen::VectorXd& K, double a) {
  if (K.size() != ctx.m) throw std::invalid_argument("K has wrong dimension");
  for (Eigen::Index i = 0; i < ctx.verts.rows(); ++i) {
    if (K.dot(ctx.verts.row(i).transpose()) + a <= 0.0) {
      std::ostringstream os;
      os << "(K,a) is not admissible: f <= 0 at vertex " << i << " ("
         << ctx.verts.row(i) << ")";
      throw std::domain_error(os.str());
    }
  }
}

struct EhParts {
  double value = 0.0;
  Eigen::VectorXd gradient;  // d/d(K, a)
  Eigen::MatrixXd hessian;
};

// order: 0 value, 1 +gradient, 2 +hessian
EhParts eh_parts(const EhContext& ctx, const Eigen::VectorXd& K, double a, int order) {
  check_admissible(ctx, K, a);
  const int m = ctx.m;
  const AffineFunction f{K, a};
  const double q = ctx.q;
  const double kappa = ctx.kappa;

  const double B = integrate_pieces(ctx.boundary, f, Kernel::inv_power(2 * m - 2));
  const double I = integrate_pieces(ctx.interior, f, Kernel::inv_power(2 * m));

  EhParts out;
  out.value = kappa * B * std::pow(I, -q);
  if (order < 1) return out;

  const int n = m + 1;
  auto pack = [m, n](const Eigen::VectorXd& mu_part, double a_part) {
    Eigen::VectorXd v(n);
    v.head(m) = mu_part;
    v[m] = a_part;
    return v;
  };

  const Eigen::VectorXd b1 = moment1_pieces(ctx.boundary, f, Kernel::inv_power(2 * m - 1));
  const double b0 = integrate_pieces(ctx.boundary, f, Kernel::inv_power(2 * m - 1));
  const Eigen::VectorXd i1 = moment1_pieces(ctx.interior, f, Kernel::inv_power(2 * m + 1));
  const double i0 = integrate_pieces(ctx.interior, f, Kernel::inv_power(2 * m + 1));

  const Eigen::VectorXd dB = -(2.0 * m - 2.0) * pack(b1, b0);
  const Eigen::VectorXd dI = -(2.0 * m) * pack(i1, i0);
  out.gradient =
      kappa * (dB * std::pow(I, -q) - q * B * std::pow(I, -q - 1.0) * dI);
  if (order < 2) return out;

  auto pack2 = [m, n](const Eigen::MatrixXd& mm, const Eigen::VectorXd& mv, double s) {
    Eigen::MatrixXd h(n, n);
    h.topLeftCorner(m, m) = mm;
    h.topRightCorner(m, 1) = mv;
    h.bottomLeftCorner(1, m) = mv.transpose();
    h(m, m) = s;
    return h;
  };

  const Eigen::MatrixXd b2 = moment2_pieces(ctx.boundary, f, Kernel::inv_power(2 * m));
  const Eigen::VectorXd b1h = moment1_pieces(ctx.boundary, f, Kernel::inv_power(2 * m));
  const double b0h = integrate_pieces(ctx.boundary, f, Kernel::inv_power(2 * m));
  const Eigen::MatrixXd i2 = moment2_pieces(ctx.interior, f, Kernel::inv_power(2 * m + 2));
  const Eigen::VectorXd i1h = moment1_pieces(ctx.interior, f, Kernel::inv_power(2 * m + 2));
  const double i0h = integrate_pieces(ctx.interior, f, Kernel::inv_power(2 * m + 2));

  const Eigen::MatrixXd ddB = (2.0 * m - 2.0) * (2.0 * m - 1.0) * pack2(b2, b1h, b0h);
  const Eigen::MatrixXd ddI = (2.0 * m) * (2.0 * m + 1.0) * pack2(i2, i1h, i0h);

  out.hessian = kappa * (ddB * std::pow(I, -q)
                         - q * std::pow(I, -q - 1.0) *
                               (dB * dI.transpose() + dI * dB.transpose())
                         - q * B * std::pow(I, -q - 1.0) * ddI
                         + q * (q + 1.0) * B * std::pow(I, -q - 2.0) * dI * dI.transpose());
  return out;
}

}  // namespace

bool eh_admissible(const Polytope& p, const Eigen::VectorXd& K, double a) {
  for (const auto& v : p.vertices)
    if (K.dot(to_double(v)) + a <= 0.0) return false;
  return true;
}

double eh_value(const Polytope& p, const Eigen::VectorXd& K, double a) {
  return eh_parts(make_eh_context(p), K, a, 0).value;
}

Eigen::VectorXd eh_gradient(const Polytope& p, const Eigen::VectorXd& K, double a) {
  return eh_parts(make_eh_context(p), K, a, 1).gradient;
}

Eigen::MatrixXd eh_hessian(const Polytope& p, const Eigen::VectorXd& K, double a) {
  return eh_parts(make_eh_context(p), K, a, 2).hessian;
}

// ---------------------------------------------------------------------------
// critical point search

std::string to_string(HessianSignature s) {
  switch (s) {
    case HessianSignature::Minimum: return "minimum";
    case HessianSignature::Maximum: return "maximum";
    case HessianSignature::Saddle: return "saddle";
    case HessianSignature::Degenerate: return "degenerate";
  }
  return "degenerate";
}

namespace {

constexpr double kDedupAngle = 1e-6;
constexpr double kDegenerateBand = 1e-7;

double projective_angle(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  double c = std::abs(x.normalized().dot(y.normalized()));
  return std::acos(std::min(1.0, c));
}

bool admissible_unit(const EhContext& ctx, const Eigen::VectorXd& x) {
  const int m = ctx.m;
  for (Eigen::Index i = 0; i < ctx.verts.rows(); ++i)
    if (x.head(m).dot(ctx.verts.row(i).transpose()) + x[m] <= 0.0) return false;
  return true;
}

// orthonormal basis of the tangent space at unit x: the trailing columns of
// the Q factor of [x | e_1 .. e_{n-1}]
Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd a(n, n);
  a.col(0) = x;
  a.rightCols(n - 1) = Eigen::MatrixXd::Identity(n, n).leftCols(n - 1);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(n - 1);
}

struct StartResult {
  bool converged = false;
  Eigen::VectorXd x;
  double value = 0.0;
  double gradient_norm = 0.0;
  HessianSignature signature = HessianSignature::Degenerate;
};

StartResult run_start(const EhContext& ctx, Rng rng) {
  const int n = ctx.m + 1;
  StartResult res;

  Eigen::VectorXd x(n);
  bool found = false;
  for (int tries = 0; tries < 20000 && !found; ++tries) {
    for (int i = 0; i < n; ++i) x[i] = rng.normal();
    double norm = x.norm();
    if (norm < 1e-12) continue;
    x /= norm;
    if (admissible_unit(ctx, x)) { found = true; break; }
    x = -x;
    if (admissible_unit(ctx, x)) { found = true; break; }
  }
  if (!found)
    throw std::logic_error(
        "no admissible start found: bounded polytopes always admit a >> 0, "
        "this signals an internal bug");

  // Levenberg-damped tangent Newton on grad EH = 0. Near a degenerate
  // critical point (pitchfork parameters) the gradient passes below tolerance
  // along a whole valley, so convergence additionally waits until the
  // iterate stops moving; the valley slide is linear but fast enough.
  double lambda = 0.0;
  double last_step = std::numeric_limits<double>::infinity();
  EhParts cur;
  try {
    cur = eh_parts(ctx, x.head(ctx.m), x[ctx.m], 2);
    for (int iter = 0; iter < 200; ++iter) {
      const double tol = 1e-11 * (1.0 + std::abs(cur.value));
      if (cur.gradient.norm() <= tol && last_step <= 1e-8) {
        res.converged = true;
        break;
      }
      Eigen::MatrixXd q = tangent_basis(x);
      Eigen::VectorXd gt = q.transpose() * cur.gradient;
      Eigen::MatrixXd ht = q.transpose() * cur.hessian * q;
      const double merit = gt.squaredNorm();

      bool stepped = false;
      for (int attempt = 0; attempt < 60; ++attempt) {
        Eigen::MatrixXd lhs = ht * ht + lambda * Eigen::MatrixXd::Identity(n - 1, n - 1);
        Eigen::VectorXd delta = lhs.ldlt().solve(-(ht * gt));
        Eigen::VectorXd x_new = (x + q * delta).normalized();
        if (admissible_unit(ctx, x_new)) {
          EhParts trial = eh_parts(ctx, x_new.head(ctx.m), x_new[ctx.m], 2);
          if (trial.gradient.squaredNorm() < merit) {
            last_step = delta.norm();
            x = x_new;
            cur = std::move(trial);
            lambda = (lambda < 1e-14) ? 0.0 : lambda * 0.1;
            stepped = true;
            break;
          }
        }
        lambda = std::max(lambda * 10.0, 1e-8 * (1.0 + ht.norm()));
      }
      if (!stepped) {
        // merit can no longer decrease; accept when the gradient is at its
        // noise floor, otherwise the start stalled off a root
        const double tol_stall = 1e-11 * (1.0 + std::abs(cur.value));
        res.converged = cur.gradient.norm() <= tol_stall;
        break;
      }
    }
  } catch (const std::exception&) {
    return res;  // integrals blew up in an extreme sliver of the patch
  }
  if (!res.converged) return res;

  res.x = x;
  res.value = cur.value;
  res.gradient_norm = cur.gradient.norm();
  Eigen::MatrixXd q = tangent_basis(x);
  Eigen::MatrixXd ht = q.transpose() * cur.hessian * q;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ht);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double band = kDegenerateBand * cur.hessian.norm();
  if ((ev.array().abs() <= band).any())
    res.signature = HessianSignature::Degenerate;
  else if ((ev.array() > 0).all())
    res.signature = HessianSignature::Minimum;
  else if ((ev.array() < 0).all())
    res.signature = HessianSignature::Maximum;
  else
    res.signature = HessianSignature::Saddle;
  return res;
}

}  // namespace

CriticalPointReport find_critical_points(const Polytope& p, int n_starts, std::uint64_t seed) {
  if (p.dim != 2)
    throw std::invalid_argument("critical point finder is specialized to 2-D polytopes");
  if (n_starts < 1) throw std::invalid_argument("need at least one start");
  const EhContext ctx = make_eh_context(p);

  std::vector<StartResult> results(n_starts);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  parallel_for(n_starts, [&](int i) {
    try {
      results[i] = run_start(ctx, Rng(Rng::split(seed, static_cast<std::uint64_t>(i))));
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  });
  if (first_error) std::rethrow_exception(first_error);

  CriticalPointReport report;
  report.starts_used = n_starts;
  report.seed = seed;
  for (const auto& r : results) {
    if (!r.converged) {
      ++report.non_converged;
      continue;
    }
    bool merged = false;
    for (auto& cp : report.points) {
      if (projective_angle(cp.representative, r.x) <= kDedupAngle) {
        ++cp.basin_count;
        ++report.duplicates_merged;
        if (r.gradient_norm < cp.gradient_norm) {
          cp.representative = r.x;
          cp.value = r.value;
          cp.gradient_norm = r.gradient_norm;
          cp.signature = r.signature;
        }
        merged = true;
        break;
      }
    }
    if (!merged) {
      CriticalPoint cp;
      cp.representative = r.x;
      cp.value = r.value;
      cp.gradient_norm = r.gradient_norm;
      cp.signature = r.signature;
      cp.basin_count = 1;
      report.points.push_back(std::move(cp));
    }
  }
  std::sort(report.points.begin(), report.points.end(),
            [](const CriticalPoint& a, const CriticalPoint& b) {
              if (a.value != b.value) return a.value < b.value;
              for (Eigen::Index i = 0; i < a.representative.size(); ++i)
                if (a.representative[i] != b.representative[i])
                  return a.representative[i] < b.representative[i];
              return false;
            });
  return report;
}

// ---------------------------------------------------------------------------
// quartic roots via Sturm chain

namespace {

using Poly = std::vector<Rational>;  // coefficients, ascending degree

Poly derivative(const Poly& f) {
  Poly d;
  for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * Rational(static_cast<long long>(i)));
  return d;
}

Poly remainder(Poly a, const Poly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Rational factor = a.back() / b.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= factor * b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

Rational eval_poly(const Poly& f, const Rational& x) {
  Rational acc = 0;
  for (size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

int sturm_sign_changes(const std::vector<Poly>& chain, const Rational& x) {
  int changes = 0, prev = 0;
  for (const auto& f : chain) {
    Rational v = eval_poly(f, x);
    int s = (v > 0) - (v < 0);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

double newton_polish(const Poly& f, const Poly& df, double x) {
  for (int it = 0; it < 60; ++it) {
    double fx = 0.0, dfx = 0.0;
    for (size_t i = f.size(); i-- > 0;) fx = fx * x + to_double(f[i]);
    for (size_t i = df.size(); i-- > 0;) dfx = dfx * x + to_double(df[i]);
    double step = fx / dfx;
    x -= step;
    if (std::abs(step) < 1e-16 * (1.0 + std::abs(x))) break;
  }
  return x;
}

}  // namespace

std::pair<double, double> quartic_roots() {
  const Poly f = {Rational(4), Rational(-16), Rational(16), Rational(-4), Rational(1)};
  const Poly df = derivative(f);
  std::vector<Poly> chain = {f, df};
  while (chain.back().size() > 1) {
    Poly r = remainder(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }

  // isolate roots in (0, 1) by Sturm bisection
  struct Interval { Rational lo, hi; };
  std::vector<Interval> isolated;
  std::vector<Interval> work = {{Rational(0), Rational(1)}};
  while (!work.empty()) {
    Interval iv = work.back();
    work.pop_back();
    int count = sturm_sign_changes(chain, iv.lo) - sturm_sign_changes(chain, iv.hi);
    if (count == 0) continue;
    if (count == 1 && (iv.hi - iv.lo) < Rational(1, 1024)) {
      isolated.push_back(iv);
      continue;
    }
    Rational mid = (iv.lo + iv.hi) / 2;
    work.push_back({iv.lo, mid});
    work.push_back({mid, iv.hi});
  }
  if (isolated.size() != 2)
    throw std::logic_error("Sturm isolation failed for the blow-up quartic");
  std::sort(isolated.begin(), isolated.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  double alpha = newton_polish(f, df, to_double((isolated[0].lo + isolated[0].hi) / 2));
  double beta = newton_polish(f, df, to_double((isolated[1].lo + isolated[1].hi) / 2));
  return {alpha, beta};
}

// ---------------------------------------------------------------------------
// closed-form critical points

std::vector<Eigen::Vector3d> closed_form_critical(CkemFamily family, double p) {
  std::vector<Eigen::Vector3d> out;
  if (family == CkemFamily::Product) {
    if (p < 1.0)
      throw std::invalid_argument("product family needs p >= 1");
    out.emplace_back(0.0, 0.0, 1.0);
    if (p > 2.0) {
      const double root = std::pow(p, 1.5) / std::sqrt(p - 2.0);
      out.emplace_back(1.0, 0.0, 0.5 * (root - p));
      out.emplace_back(-1.0, 0.0, 0.5 * (root + p));
    }
    return out;
  }
  if (p <= 0.0 || p >= 1.0)
    throw std::invalid_argument("blow-up family needs 0 < p < 1");
  const double s = std::sqrt(1.0 - p);
  out.emplace_back(1.0, 0.0, p * (1.0 - s) / (2.0 * s + p - 2.0));
  if (p > 8.0 / 9.0) {
    const double r = std::sqrt(9.0 * p * p - 8.0 * p);
    out.emplace_back(-1.0, 0.0, p * (3.0 * p + r) / (2.0 * (p + r)));
    out.emplace_back(-1.0, 0.0, p * (3.0 * p - r) / (2.0 * (p - r)));
  }
  const double alpha = quartic_roots().first;
  if (p < alpha) {
    const double fp = (((p - 4.0) * p + 16.0) * p - 16.0) * p + 4.0;
    const double rf = std::sqrt(fp);
    out.emplace_back(p * p - 4.0 * p + 2.0 + rf, 2.0 * rf, p * p + 2.0 * p - 2.0 - rf);
    out.emplace_back(p * p - 4.0 * p + 2.0 - rf, -2.0 * rf, p * p + 2.0 * p - 2.0 + rf);
  }
  return out;
}

// ---------------------------------------------------------------------------
// product-construction ODE

double OdeSolution::psi(double t) const {
  return coef_quadratic * t * t + coef_constant + coef_c1 * std::pow(t, 2 * m - 1) +
         coef_c2 * std::pow(t, 2 * m);
}

double OdeSolution::psi_prime(double t) const {
  return 2.0 * coef_quadratic * t + (2 * m - 1) * coef_c1 * std::pow(t, 2 * m - 2) +
         2 * m * coef_c2 * std::pow(t, 2 * m - 1);
}

namespace {

struct OdeAnsatz {
  int m;
  double c;

  double quad_coef() const { return c / (2.0 * (2 * m - 3) * (m - 1)); }
  double const_coef(double d) const { return -d / (2.0 * m * (2 * m - 1)); }

  // Psi(a) = Psi(a+1) = 0 determine (C1, C2) linearly.
  bool homogeneous_coefs(double a, double d, double& c1, double& c2) const {
    const double A = quad_coef(), B = const_coef(d);
    const double b = a + 1.0;
    Eigen::Matrix2d lhs;
    lhs << std::pow(a, 2 * m - 1), std::pow(a, 2 * m),
           std::pow(b, 2 * m - 1), std::pow(b, 2 * m);
    Eigen::Vector2d rhs(-A * a * a - B, -A * b * b - B);
    const double det = lhs.determinant();
    if (std::abs(det) < 1e-300) return false;
    Eigen::Vector2d sol = lhs.fullPivLu().solve(rhs);
    c1 = sol[0];
    c2 = sol[1];
    return std::isfinite(c1) && std::isfinite(c2);
  }

  // residuals of the derivative conditions
  bool residual(const Eigen::Vector2d& ad, Eigen::Vector2d& r) const {
    const double a = ad[0], d = ad[1];
    if (a <= 0.0) return false;
    double c1, c2;
    if (!homogeneous_coefs(a, d, c1, c2)) return false;
    OdeSolution s;
    s.m = m;
    s.c = c;
    s.coef_quadratic = quad_coef();
    s.coef_constant = const_coef(d);
    s.coef_c1 = c1;
    s.coef_c2 = c2;
    r[0] = s.psi_prime(a) - 2.0;
    r[1] = s.psi_prime(a + 1.0) + 2.0;
    return std::isfinite(r[0]) && std::isfinite(r[1]);
  }
};

}  // namespace

std::optional<OdeSolution> solve_product_ode(int m, double c, double tol) {
  if (m < 2) throw std::invalid_argument("product ODE needs m >= 2");

  OdeAnsatz ansatz{m, c};
  std::vector<OdeSolution> found;

  std::vector<double> a_grid, d_grid;
  for (double a = 0.05; a <= 4.0; a += 0.15) a_grid.push_back(a);
  for (double s : {0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0})
    d_grid.push_back(std::abs(c) * s + 0.1);

  for (double a0 : a_grid) {
    for (double d0 : d_grid) {
      Eigen::Vector2d x(a0, d0), r;
      if (!ansatz.residual(x, r)) continue;
      bool converged = false;
      for (int iter = 0; iter < 80; ++iter) {
        if (r.norm() <= tol) { converged = true; break; }
        // finite-difference Jacobian
        Eigen::Matrix2d jac;
        bool ok = true;
        for (int j = 0; j < 2 && ok; ++j) {
          const double h = 1e-7 * (1.0 + std::abs(x[j]));
          Eigen::Vector2d xp = x, xm = x, rp, rm;
          xp[j] += h;
          xm[j] -= h;
          ok = ansatz.residual(xp, rp) && ansatz.residual(xm, rm);
          if (ok) jac.col(j) = (rp - rm) / (2.0 * h);
        }
        if (!ok) break;
        Eigen::Vector2d step = jac.fullPivLu().solve(-r);
        if (!step.allFinite()) break;
        // damped update keeping a positive
        double alpha = 1.0;
        bool stepped = false;
        for (int bt = 0; bt < 40; ++bt) {
          Eigen::Vector2d x_new = x + alpha * step;
          Eigen::Vector2d r_new;
          if (x_new[0] > 1e-6 && ansatz.residual(x_new, r_new) && r_new.norm() < r.norm()) {
            x = x_new;
            r = r_new;
            stepped = true;
            break;
          }
          alpha *= 0.5;
        }
        if (!stepped) break;
      }
      if (!converged || x[0] <= 0.0 || x[1] <= 0.0) continue;

      OdeSolution sol;
      sol.m = m;
      sol.c = c;
      sol.a = x[0];
      sol.d = x[1];
      sol.coef_quadratic = ansatz.quad_coef();
      sol.coef_constant = ansatz.const_coef(x[1]);
      if (!ansatz.homogeneous_coefs(x[0], x[1], sol.coef_c1, sol.coef_c2)) continue;

      // admissibility: Psi > 0 on the interior sample grid
      double min_psi = std::numeric_limits<double>::infinity();
      double max_ode = 0.0;
      for (int i = 1; i <= 1000; ++i) {
        const double t = sol.a + static_cast<double>(i) / 1001.0;
        const double psi = sol.psi(t);
        min_psi = std::min(min_psi, psi);
        // second derivative of the ansatz
        const double psi2 = 2.0 * sol.coef_quadratic +
                            (2 * m - 1) * (2 * m - 2) * sol.coef_c1 * std::pow(t, 2 * m - 3) +
                            2 * m * (2 * m - 1) * sol.coef_c2 * std::pow(t, 2 * m - 2);
        const double lhs = t * t * psi2 - 2.0 * (2 * m - 1) * t * sol.psi_prime(t) +
                           2.0 * m * (2 * m - 1) * psi;
        const double rhs = c * t * t - sol.d;
        max_ode = std::max(max_ode, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
      }
      if (min_psi <= 0.0) continue;
      sol.min_psi = min_psi;
      sol.ode_residual = max_ode;
      sol.bc_residual = std::max(
          std::max(std::abs(sol.psi(sol.a)), std::abs(sol.psi(sol.a + 1.0))),
          std::max(std::abs(sol.psi_prime(sol.a) - 2.0), std::abs(sol.psi_prime(sol.a + 1.0) + 2.0)));
      if (sol.bc_residual > 1e-10) continue;

      bool duplicate = false;
      for (const auto& other : found)
        if (std::abs(other.a - sol.a) < 1e-6 && std::abs(other.d - sol.d) < 1e-6 * (1.0 + sol.d))
          duplicate = true;
      if (!duplicate) found.push_back(sol);
    }
  }

  if (found.empty()) return std::nullopt;
  std::sort(found.begin(), found.end(),
            [](const OdeSolution& a, const OdeSolution& b) { return a.a < b.a; });
  return found.front();
}

}  // namespace toricvol
