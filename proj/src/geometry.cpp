#include "sel/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "sel/errors.hpp"

namespace sel {

void Mat2::eigenvalues(double& lo, double& hi) const {
  const double m = 0.5 * (xx + yy);
  const double d = std::sqrt(0.25 * (xx - yy) * (xx - yy) + xy * xy);
  lo = m - d;
  hi = m + d;
}

void Mat2::eigensystem(double& lo, double& hi, Vec2& vlo, Vec2& vhi) const {
  eigenvalues(lo, hi);
  if (std::abs(xy) < 1e-300) {
    if (xx <= yy) {
      vlo = {1.0, 0.0};
      vhi = {0.0, 1.0};
    } else {
      vlo = {0.0, 1.0};
      vhi = {1.0, 0.0};
    }
    return;
  }
  Vec2 v = {xy, lo - xx};
  double n = norm(v);
  vlo = (1.0 / n) * v;
  vhi = {-vlo.y, vlo.x};
}

void NumericConfig::validate() const {
  if (angular_nodes < 16) throw std::domain_error("NumericConfig: angular_nodes must be >= 16");
  if (!(root_tol > 0.0)) throw std::domain_error("NumericConfig: root_tol must be positive");
  if (max_iter <= 0) throw std::domain_error("NumericConfig: max_iter must be positive");
  if (!(mollify_eps > 0.0)) throw std::domain_error("NumericConfig: mollify_eps must be positive");
  if (mc_samples <= 0) throw std::domain_error("NumericConfig: mc_samples must be positive");
}

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw EvaluationError(std::string(what) + ": non-finite evaluator output");
}

}  // namespace

SurfaceJet surface_eval(const SurfaceSpec& s, Vec2 y) {
  SurfaceJet jet;
  if (s.base == SurfaceBase::PurePower) {
    const double p = s.power;
    const double r2 = norm_sq(y);
    if (r2 == 0.0) {
      jet.psi = 0.0;
      jet.grad = {0.0, 0.0};
      if (p == 2.0) {
        jet.hess = identity2(2.0);
      } else {
        jet.hess = Mat2{};          // entrywise limit for p > 2
        jet.hess_degenerate = true; // det H vanishes at the origin
      }
      return jet;
    }
    jet.psi = std::pow(r2, 0.5 * p);
    const double c = p * std::pow(r2, 0.5 * p - 1.0);
    jet.grad = c * y;
    jet.hess = c * identity2() + (p * (p - 2.0) * std::pow(r2, 0.5 * p - 2.0)) * outer_sym(y);
    jet.hess_degenerate = !(jet.hess.det() > 0.0);
    require_finite(jet.psi, "surface_eval(psi)");
    return jet;
  }
  const double phi = s.phi(y);
  require_finite(phi, "surface_eval(phi)");
  const Vec2 g = s.grad_phi(y);
  require_finite(g.x + g.y, "surface_eval(grad_phi)");
  const Mat2 h = s.hess_phi(y);
  require_finite(h.xx + h.xy + h.yy, "surface_eval(hess_phi)");
  jet.psi = norm_sq(y) + phi;
  jet.grad = 2.0 * y + g;
  jet.hess = identity2(2.0) + h;
  return jet;
}

double psi_value(const SurfaceSpec& s, Vec2 y) {
  if (s.base == SurfaceBase::PurePower) {
    const double r2 = norm_sq(y);
    return r2 == 0.0 ? 0.0 : std::pow(r2, 0.5 * s.power);
  }
  const double phi = s.phi(y);
  require_finite(phi, "psi_value");
  return norm_sq(y) + phi;
}

Vec2 grad_psi(const SurfaceSpec& s, Vec2 y) {
  if (s.base == SurfaceBase::PurePower) {
    const double r2 = norm_sq(y);
    if (r2 == 0.0) return {0.0, 0.0};
    return (s.power * std::pow(r2, 0.5 * s.power - 1.0)) * y;
  }
  const Vec2 g = s.grad_phi(y);
  require_finite(g.x + g.y, "grad_psi");
  return 2.0 * y + g;
}

double weight_value(const SurfaceSpec& s, Vec2 y) {
  if (!s.weight) return 1.0;
  const double w = s.weight(y);
  require_finite(w, "weight");
  return w;
}

double solve_lambda(const SurfaceSpec& s, Vec2 xi, Vec2 w, const NumericConfig& cfg) {
  cfg.validate();
  const double wn2 = norm_sq(w);
  if (wn2 == 0.0) throw std::domain_error("solve_lambda: w must be nonzero");
  if (wn2 < 1e-16) return 1.0;  // |w| < 1e-8: continuous limit, avoids ill-conditioned division

  const Vec2 h = 0.5 * xi;
  const double psi_h = psi_value(s, h);
  const double target = 2.0 * wn2;  // h(1) for the comparison function |.|^2
  auto g = [&](double lam) {
    return psi_value(s, h + lam * w) + psi_value(s, h - lam * w) - 2.0 * psi_h;
  };
  auto g_prime = [&](double lam) {
    return dot(grad_psi(s, h + lam * w) - grad_psi(s, h - lam * w), w);
  };

  // Bracket [0, 1] suffices when psi - |.|^2 is convex; the pure-power base
  // may need a wider bracket.
  double lo = 0.0, hi = 1.0;
  int expand = 0;
  while (g(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (++expand > 60) throw SolverError("solve_lambda: failed to bracket the root");
  }

  // Bisect to width 1e-3, then Newton-polish with a bisection safeguard.
  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < target ? lo : hi) = mid;
  }
  const double tol = cfg.root_tol * std::max(1.0, std::abs(target));
  double lam = 0.5 * (lo + hi);
  for (int it = 0; it < cfg.max_iter; ++it) {
    const double r = g(lam) - target;
    if (std::abs(r) <= tol) return lam;
    (r < 0.0 ? lo : hi) = lam;
    const double d = g_prime(lam);
    double next = d > 0.0 ? lam - r / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == lam) return lam;  // step below machine resolution
    lam = next;
  }
  if (std::abs(g(lam) - target) <= tol * 64.0 || hi - lo <= 1e-15 * (1.0 + hi)) return lam;
  throw SolverError("solve_lambda: no convergence within max_iter");
}

Vec2 transform_T(const SurfaceSpec& s, Vec2 xi, Vec2 y, const NumericConfig& cfg) {
  if (norm_sq(y) == 0.0) throw std::domain_error("transform_T: y must be nonzero");
  return solve_lambda(s, xi, y, cfg) * y;
}

double det_T_prime(const SurfaceSpec& s, Vec2 xi, Vec2 y, const NumericConfig& cfg) {
  if (norm_sq(y) == 0.0) throw std::domain_error("det_T_prime: y must be nonzero");
  const double lam = solve_lambda(s, xi, y, cfg);
  const Vec2 h = 0.5 * xi;
  const Vec2 ty = lam * y;
  const double num = 4.0 * norm_sq(y);  // <grad|.|^2(h+y) - grad|.|^2(h-y), y>
  const double den = dot(grad_psi(s, h + ty) - grad_psi(s, h - ty), y);
  if (!(den > 0.0)) {
    throw std::domain_error("det_T_prime: nonpositive denominator (surface not strictly convex)");
  }
  return lam * num / den;  // lambda^{d-1} with d = 2
}

// ---------------------------------------------------------------------------
// Surface registry
// ---------------------------------------------------------------------------

namespace {

// phi(y) = f(r) with r = |y|^2:
//   grad phi = 2 f'(r) y,  H(phi) = 2 f'(r) I + 4 f''(r) y y^T.
SurfaceSpec radial_surface(std::string name, std::function<double(double)> f,
                           std::function<double(double)> fp, std::function<double(double)> fpp) {
  SurfaceSpec s;
  s.name = std::move(name);
  s.phi = [f](Vec2 y) { return f(norm_sq(y)); };
  s.grad_phi = [fp](Vec2 y) { return (2.0 * fp(norm_sq(y))) * y; };
  s.hess_phi = [fp, fpp](Vec2 y) {
    const double r = norm_sq(y);
    return 2.0 * fp(r) * identity2() + 4.0 * fpp(r) * outer_sym(y);
  };
  return s;
}

double parse_number(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw std::domain_error("surface registry: cannot parse " + what + " from '" + text + "'");
  }
}

// "key1=v1,key2=v2" -> values in declaration order of `keys`.
std::vector<double> parse_kv(const std::string& body, const std::vector<std::string>& keys) {
  std::vector<double> out(keys.size(), std::nan(""));
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::domain_error("surface registry: expected key=value in '" + item + "'");
    const std::string key = item.substr(0, eq);
    bool known = false;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (keys[i] == key) {
        out[i] = parse_number(item.substr(eq + 1), key);
        known = true;
      }
    }
    if (!known) throw std::domain_error("surface registry: unknown key '" + key + "'");
  }
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (std::isnan(out[i])) throw std::domain_error("surface registry: missing key '" + keys[i] + "'");
  }
  return out;
}

}  // namespace

SurfaceSpec make_surface(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);

  if (head == "paraboloid") {
    SurfaceSpec s;
    s.name = "paraboloid";
    s.phi = [](Vec2) { return 0.0; };
    s.grad_phi = [](Vec2) { return Vec2{}; };
    s.hess_phi = [](Vec2) { return Mat2{}; };
    s.strictly_convex = false;
    return s;
  }
  if (head == "quartic-mixed") {
    auto s = radial_surface("quartic-mixed", [](double r) { return r * r; },
                            [](double r) { return 2.0 * r; }, [](double) { return 2.0; });
    return s;
  }
  if (head == "purepower") {
    const double p = parse_kv(body, {"p"})[0];
    if (p < 2.0) throw std::domain_error("purepower: requires p >= 2");
    SurfaceSpec s;
    s.name = spec;
    s.base = SurfaceBase::PurePower;
    s.power = p;
    s.weight = [p](Vec2 y) {
      const double r2 = norm_sq(y);
      return r2 == 0.0 ? (p == 2.0 ? 1.0 : 0.0) : std::pow(r2, 0.25 * (p - 2.0));
    };
    s.strictly_convex = p > 2.0;
    return s;
  }
  if (head == "powerpert") {
    const auto kv = parse_kv(body, {"a", "p"});
    const double a = kv[0], p = kv[1];
    if (!(a > 0.0)) throw std::domain_error("powerpert: requires a > 0");
    if (!(p > 2.0)) throw std::domain_error("powerpert: requires p > 2");
    const double q = 0.5 * p;  // phi = a r^q in r = |y|^2
    return radial_surface(spec, [a, q](double r) { return a * std::pow(r, q); },
                          [a, q](double r) { return r == 0.0 ? 0.0 : a * q * std::pow(r, q - 1.0); },
                          [a, q](double r) {
                            if (q == 2.0) return a * q * (q - 1.0);
                            return r == 0.0 ? 0.0 : a * q * (q - 1.0) * std::pow(r, q - 2.0);
                          });
  }
  if (head == "expsum") {
    SurfaceSpec s;
    s.name = "expsum";
    s.phi = [](Vec2 y) { return std::exp(y.x) + std::exp(y.y); };
    s.grad_phi = [](Vec2 y) { return Vec2{std::exp(y.x), std::exp(y.y)}; };
    s.hess_phi = [](Vec2 y) { return Mat2{std::exp(y.x), 0.0, std::exp(y.y)}; };
    s.radial = false;
    return s;
  }
  if (head == "poly") {
    std::vector<double> c;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) c.push_back(parse_number(item, "poly coefficient"));
    if (c.empty()) throw std::domain_error("poly: needs at least one coefficient");
    bool any = false;
    for (double ck : c) {
      if (ck < 0.0) throw std::domain_error("poly: coefficients must be nonnegative");
      any = any || ck > 0.0;
    }
    auto f = [c](double r) {
      double acc = 0.0, rk = r;
      for (double ck : c) { acc += ck * rk; rk *= r; }
      return acc;
    };
    auto fp = [c](double r) {
      double acc = 0.0, rk = 1.0;
      for (std::size_t k = 0; k < c.size(); ++k) { acc += c[k] * double(k + 1) * rk; rk *= r; }
      return acc;
    };
    auto fpp = [c](double r) {
      double acc = 0.0, rk = 1.0;
      for (std::size_t k = 1; k < c.size(); ++k) { acc += c[k] * double(k + 1) * double(k) * rk; rk *= r; }
      return acc;
    };
    auto s = radial_surface(spec, f, fp, fpp);
    s.strictly_convex = any;
    return s;
  }
  throw std::domain_error("surface registry: unknown surface '" + spec + "'");
}

std::vector<std::string> builtin_surfaces() {
  return {"paraboloid", "quartic-mixed", "purepower:p=4", "powerpert:a=1,p=4", "expsum"};
}

}  // namespace sel
