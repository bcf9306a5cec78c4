#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "symred/su2.hpp"

namespace symred {

// Supported families of embedded analytic curves in R^3. All carry canonical
// parameters: Linear at unit speed on [0,l], Circular at unit angular speed
// on [0,tau], LieAlgGen as the flow of y' = 2 s x y + v on [0,l].
struct LinearCurve {
  Vec3 x = Vec3::Zero();
  Vec3 v = Vec3::UnitX();
  double l = 1.0;
};

struct CircularCurve {
  Vec3 x = Vec3::Zero();       // center
  Vec3 n = Vec3::UnitZ();      // unit normal, orientation of traversal
  Vec3 r = Vec3::UnitX();      // radius vector, orthogonal to n
  double tau = M_PI;           // angle in (0, 2*pi)
};

struct LieAlgGenCurve {
  Vec3 x = Vec3::Zero();       // base point
  Vec3 v = Vec3::Zero();       // translation part of the generator
  Vec3 s = Vec3::Zero();       // su(2) part of the generator (coordinates of mu(s))
  double l = 1.0;              // parameter length, < period
};

using Curve = std::variant<LinearCurve, CircularCurve, LieAlgGenCurve>;

enum class SymTag {
  Homogeneous,
  SemiHomogeneous,
  SphericallySymmetric,
  HomogeneousIsotropic,
};

struct Symmetry {
  SymTag tag = SymTag::Homogeneous;
  // orthonormal plane basis, used by SemiHomogeneous only
  Vec3 w1 = Vec3::UnitX();
  Vec3 w2 = Vec3::UnitY();
  Vec3 plane_normal() const { return w1.cross(w2); }
};

Symmetry make_symmetry(SymTag tag);
Symmetry make_semi_homogeneous(const Vec3& w1, const Vec3& w2);

enum class CurveClass { LAG, FreeNonSym, FreeSym, Unsupported };

// Element (w, sigma) of R^3 x SU(2) acting by x -> w + rho(sigma) x; the four
// symmetry groups embed as subgroups.
struct EuclideanElement {
  Vec3 w = Vec3::Zero();
  GroupElement2 sigma;
  Vec3 apply(const Vec3& x) const { return w + adjoint(sigma, x); }
};

EuclideanElement euclid_compose(const EuclideanElement& a, const EuclideanElement& b);
EuclideanElement euclid_inverse(const EuclideanElement& a);
EuclideanElement sample_sym(const Symmetry& sym, Rng& rng, double scale = 2.0);

// Validating factories; the JSON loader and tests go through these.
LinearCurve make_linear(const Vec3& x, const Vec3& v, double l);
CircularCurve make_circular(const Vec3& center, const Vec3& n, const Vec3& r, double tau);
LieAlgGenCurve make_lag(const Vec3& x, const Vec3& v, const Vec3& s, double l);
void validate_curve(const Curve& c);

double curve_domain(const Curve& c);
Vec3 evaluate(const Curve& c, double t);
Vec3 tangent(const Curve& c, double t);
Curve invert(const Curve& c);
std::pair<Curve, Curve> split(const Curve& c, double t);
// restriction of c to [t0, t1], re-based to start at parameter 0
Curve subcurve(const Curve& c, double t0, double t1);

bool equivalent(const Curve& c1, const Curve& c2);

// Period of the one-parameter flow of (v, s) through base: +infinity when the
// flow is injective, pi/|s| for closed circles; StabilizerElement when constant.
double period(const Vec3& v, const Vec3& s, const Vec3& base);

CurveClass classify(const Symmetry& sym, const Curve& c);

Curve transform_curve(const EuclideanElement& g, const Curve& c);

// A symmetry element g such that phi_g . c1 shares an open segment with c2,
// when one exists. Solved analytically per family.
std::optional<EuclideanElement> translate_overlap(const Symmetry& sym, const Curve& c1,
                                                  const Curve& c2);

// Exact transporter: g with phi_g . c1 equivalent to c2 (as parametrized
// curves), when one exists in the symmetry group.
std::optional<EuclideanElement> transporter(const Symmetry& sym, const Curve& c1,
                                            const Curve& c2);

struct DecompSegment {
  double t0 = 0.0, t1 = 0.0;   // parameter subinterval of gamma
  bool matched = false;
  EuclideanElement g;          // gamma|[t0,t1] ~ phi_g . (delta|[s0,s1])^{inv}
  bool inverted = false;
  double s0 = 0.0, s1 = 0.0;   // parameter subinterval of delta
};

struct Decomposition {
  std::vector<double> breakpoints;
  std::vector<DecompSegment> segments;
};

Decomposition free_decompose(const Symmetry& sym, const Curve& gamma, const Curve& delta);

// Generator form (x, (v,s), l) of a supported curve; every family embeds.
struct LagData {
  Vec3 x;
  Vec3 v;
  Vec3 s;
  double l;
};

LagData lag_data(const Curve& c);
// Reduce a LieAlgGen curve to its canonical Linear or Circular form;
// empty for helical flows (nonzero drift along the rotation axis).
std::optional<Curve> lag_reduce(const LieAlgGenCurve& c);

}  // namespace symred
