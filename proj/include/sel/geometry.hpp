#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace sel {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm_sq(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(norm_sq(a)); }

/// Symmetric 2x2 matrix.
struct Mat2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  double det() const { return xx * yy - xy * xy; }
  double trace() const { return xx + yy; }
  Vec2 apply(Vec2 v) const { return {xx * v.x + xy * v.y, xy * v.x + yy * v.y}; }
  /// Eigenvalues in ascending order.
  void eigenvalues(double& lo, double& hi) const;
  /// Orthonormal eigenvectors matching eigenvalues(lo, hi).
  void eigensystem(double& lo, double& hi, Vec2& vlo, Vec2& vhi) const;
};

inline Mat2 operator+(Mat2 a, Mat2 b) { return {a.xx + b.xx, a.xy + b.xy, a.yy + b.yy}; }
inline Mat2 operator*(double s, Mat2 a) { return {s * a.xx, s * a.xy, s * a.yy}; }
inline Mat2 identity2(double s = 1.0) { return {s, 0.0, s}; }
inline Mat2 outer_sym(Vec2 v) { return {v.x * v.x, v.x * v.y, v.y * v.y}; }

enum class SurfaceBase {
  ParaboloidPlusPhi,  // psi(y) = |y|^2 + phi(y)
  PurePower,          // psi(y) = |y|^p
};

/// A convex surface psi together with an optional weight. For the
/// paraboloid-plus-phi base the evaluators describe the perturbation phi;
/// for the pure-power base they are unused and `power` holds the exponent.
struct SurfaceSpec {
  std::string name;
  SurfaceBase base = SurfaceBase::ParaboloidPlusPhi;
  double power = 0.0;  // exponent p for the pure-power base

  std::function<double(Vec2)> phi;
  std::function<Vec2(Vec2)> grad_phi;
  std::function<Mat2(Vec2)> hess_phi;
  std::function<double(Vec2)> weight;  // default: constant 1

  bool strictly_convex = true;  // false for the flat paraboloid (phi = 0)
  bool radial = true;           // psi depends on |y| only
};

struct SurfaceJet {
  double psi = 0.0;
  Vec2 grad;
  Mat2 hess;
  bool hess_degenerate = false;  // pure-power Hessian at the origin
};

struct NumericConfig {
  int angular_nodes = 256;   // quadrature nodes on the unit circle
  double root_tol = 1e-12;   // absolute tolerance for implicit solves
  int max_iter = 100;        // iteration cap for solvers
  double mollify_eps = 1e-3; // oracle slab half-width
  long mc_samples = 200000;  // Monte Carlo sample count

  /// Throws std::domain_error if any field is out of range.
  void validate() const;
};

/// psi, grad psi, Hessian of psi at y.
SurfaceJet surface_eval(const SurfaceSpec& s, Vec2 y);

/// psi(y) only (cheaper than the full jet).
double psi_value(const SurfaceSpec& s, Vec2 y);
Vec2 grad_psi(const SurfaceSpec& s, Vec2 y);
double weight_value(const SurfaceSpec& s, Vec2 y);

/// The unique positive root lambda of
///   psi(xi/2 + lambda w) + psi(xi/2 - lambda w) = 2|w|^2 + 2 psi(xi/2).
/// Lies in (0,1] whenever psi - |.|^2 is convex (paraboloid-plus-phi base).
double solve_lambda(const SurfaceSpec& s, Vec2 xi, Vec2 w, const NumericConfig& cfg);

/// T(y) = lambda(y, xi) y.
Vec2 transform_T(const SurfaceSpec& s, Vec2 xi, Vec2 y, const NumericConfig& cfg);

/// Jacobian determinant of T at y (d = 2):
///   det T'(y) = lambda * <2(xi/2+y) - 2(xi/2-y), y> /
///               <grad psi(xi/2+T(y)) - grad psi(xi/2-T(y)), y>.
/// Lies in (0,1) for strictly convex perturbations of the paraboloid.
double det_T_prime(const SurfaceSpec& s, Vec2 xi, Vec2 y, const NumericConfig& cfg);

/// Registry lookup. Accepted names:
///   "paraboloid"
///   "quartic-mixed"
///   "purepower:p=<p>"          (p >= 2; carries weight |y|^((p-2)/2))
///   "powerpert:a=<a>,p=<p>"    (phi = a|y|^p, a > 0, p > 2)
///   "expsum"                   (phi = e^{y1} + e^{y2})
///   "poly:c1,c2,..."           (phi = sum_k c_k |y|^{2k}, c_k >= 0)
SurfaceSpec make_surface(const std::string& spec);

std::vector<std::string> builtin_surfaces();

}  // namespace sel
