#pragma once

#include <Eigen/Dense>
#include <complex>

#include "symred/errors.hpp"
#include "symred/rng.hpp"

namespace symred {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat2c = Eigen::Matrix2cd;

// Unit element of SU(2), stored as coefficients over the basis
// {1, t1, t2, t3} with t_i t_j = -delta_ij + eps_ijk t_k.
// Renormalized after construction and after every product.
struct GroupElement2 {
  double a = 1.0;
  Vec3 b = Vec3::Zero();

  GroupElement2() = default;
  GroupElement2(double a_, const Vec3& b_) : a(a_), b(b_) { renormalize(); }

  void renormalize() {
    const double n = std::sqrt(a * a + b.squaredNorm());
    a /= n;
    b /= n;
  }
};

// mu(v) in su(2); the coordinate vector is over (t1, t2, t3).
struct AlgElement2 {
  Vec3 v = Vec3::Zero();
  AlgElement2() = default;
  explicit AlgElement2(const Vec3& v_) : v(v_) {}
};

struct Rotation3 {
  Mat3 m = Mat3::Identity();
};

inline GroupElement2 identity2() { return {}; }

GroupElement2 mul(const GroupElement2& x, const GroupElement2& y);
inline GroupElement2 inv(const GroupElement2& x) { return {x.a, -x.b}; }
inline GroupElement2 conj2(const GroupElement2& g, const GroupElement2& x) {
  return mul(mul(g, x), inv(g));
}

GroupElement2 exp2(const Vec3& v);
inline GroupElement2 exp2(const AlgElement2& v) { return exp2(v.v); }

// Principal branch, |result| in [0, pi); AntipodalBranch within 1e-9 of -1.
Vec3 log2v(const GroupElement2& x);
inline AlgElement2 log2(const GroupElement2& x) { return AlgElement2(log2v(x)); }

Rotation3 covering(const GroupElement2& x);
// One of the two preimages of a rotation matrix under the covering map.
GroupElement2 from_rotation(const Mat3& m);
Vec3 adjoint(const GroupElement2& x, const Vec3& v);
inline AlgElement2 adjoint(const GroupElement2& x, const AlgElement2& v) {
  return AlgElement2(adjoint(x, v.v));
}

// Unit axis n with both (commuting, not both central) inputs in H_n;
// the sign of n is not canonical.
Vec3 torus_axis(const GroupElement2& s, const GroupElement2& s2);

// exp2((pi/2) m) for m orthogonal to n; conjugation by it inverts H_n.
GroupElement2 torus_flip(const Vec3& n, const Vec3& m);

GroupElement2 haar2(Rng& rng);

inline GroupElement2 fiber_delta(const GroupElement2& s, const GroupElement2& s2) {
  return mul(inv(s), s2);
}

// 2x2 complex representation  [[a - i b3, -b2 - i b1], [b2 - i b1, a + i b3]].
Mat2c to_matrix(const GroupElement2& x);

// Distance as the operator norm of the matrix difference, which for this
// representation equals the euclidean distance of the coefficient 4-vectors.
inline double dist(const GroupElement2& x, const GroupElement2& y) {
  const double da = x.a - y.a;
  return std::sqrt(da * da + (x.b - y.b).squaredNorm());
}

inline double dist_to_center(const GroupElement2& x) {
  return std::min(dist(x, identity2()), dist(x, GroupElement2(-1.0, Vec3::Zero())));
}

}  // namespace symred
