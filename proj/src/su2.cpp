#include "symred/su2.hpp"

#include <cmath>

namespace symred {

namespace {
constexpr double kBranchTol = 1e-9;
constexpr double kPredicateTol = 1e-10;
}  // namespace

GroupElement2 mul(const GroupElement2& x, const GroupElement2& y) {
  // (a, b)(a', b') = (aa' - <b,b'>, ab' + a'b + b x b')
  return {x.a * y.a - x.b.dot(y.b), x.a * y.b + y.a * x.b + x.b.cross(y.b)};
}

GroupElement2 exp2(const Vec3& v) {
  const double t = v.norm();
  if (t == 0.0) return identity2();
  return {std::cos(t), (std::sin(t) / t) * v};
}

Vec3 log2v(const GroupElement2& x) {
  if (dist(x, GroupElement2(-1.0, Vec3::Zero())) < kBranchTol)
    throw AntipodalBranch("axis undefined at -1");
  const double bn = x.b.norm();
  if (bn == 0.0) return Vec3::Zero();
  const double t = std::atan2(bn, x.a);  // in (0, pi)
  return (t / bn) * x.b;
}

Rotation3 covering(const GroupElement2& x) {
  // rotation about b/|b| by angle 2*atan2(|b|, a)
  Mat3 bx;
  bx << 0, -x.b.z(), x.b.y(), x.b.z(), 0, -x.b.x(), -x.b.y(), x.b.x(), 0;
  Rotation3 r;
  r.m = (x.a * x.a - x.b.squaredNorm()) * Mat3::Identity() +
        2.0 * (x.b * x.b.transpose()) + 2.0 * x.a * bx;
  return r;
}

GroupElement2 from_rotation(const Mat3& m) {
  // Shepperd's method: pick the largest of the four squared coefficients.
  const double tr = m.trace();
  double q[4] = {1.0 + tr, 1.0 + m(0, 0) - m(1, 1) - m(2, 2),
                 1.0 - m(0, 0) + m(1, 1) - m(2, 2), 1.0 - m(0, 0) - m(1, 1) + m(2, 2)};
  int k = 0;
  for (int i = 1; i < 4; ++i)
    if (q[i] > q[k]) k = i;
  double a, b1, b2, b3;
  if (k == 0) {
    a = 0.5 * std::sqrt(q[0]);
    b1 = (m(2, 1) - m(1, 2)) / (4.0 * a);
    b2 = (m(0, 2) - m(2, 0)) / (4.0 * a);
    b3 = (m(1, 0) - m(0, 1)) / (4.0 * a);
  } else if (k == 1) {
    b1 = 0.5 * std::sqrt(q[1]);
    a = (m(2, 1) - m(1, 2)) / (4.0 * b1);
    b2 = (m(0, 1) + m(1, 0)) / (4.0 * b1);
    b3 = (m(0, 2) + m(2, 0)) / (4.0 * b1);
  } else if (k == 2) {
    b2 = 0.5 * std::sqrt(q[2]);
    a = (m(0, 2) - m(2, 0)) / (4.0 * b2);
    b1 = (m(0, 1) + m(1, 0)) / (4.0 * b2);
    b3 = (m(1, 2) + m(2, 1)) / (4.0 * b2);
  } else {
    b3 = 0.5 * std::sqrt(q[3]);
    a = (m(1, 0) - m(0, 1)) / (4.0 * b3);
    b1 = (m(0, 2) + m(2, 0)) / (4.0 * b3);
    b2 = (m(1, 2) + m(2, 1)) / (4.0 * b3);
  }
  GroupElement2 g(a, Vec3(b1, b2, b3));
  if (g.a < 0.0) {
    g.a = -g.a;
    g.b = -g.b;
  }
  return g;
}

Vec3 adjoint(const GroupElement2& x, const Vec3& v) {
  // Ad_x[mu(v)] = mu(covering(x) v); expanded directly to avoid the matrix build.
  return (x.a * x.a - x.b.squaredNorm()) * v + 2.0 * x.b.dot(v) * x.b +
         2.0 * x.a * x.b.cross(v);
}

Vec3 torus_axis(const GroupElement2& s, const GroupElement2& s2) {
  if (dist(mul(s, s2), mul(s2, s)) > kPredicateTol)
    throw NotCommuting("inputs do not share a torus");
  if (dist_to_center(s) <= kBranchTol && dist_to_center(s2) <= kBranchTol)
    throw CentralPair("axis undetermined for central elements");
  const Vec3& b = s.b.norm() >= s2.b.norm() ? s.b : s2.b;
  return b.normalized();
}

GroupElement2 torus_flip(const Vec3& n, const Vec3& m) {
  const Vec3 nu = n.normalized();
  const Vec3 mu_ = m.normalized();
  if (std::abs(nu.dot(mu_)) > kPredicateTol)
    throw NotOrthogonal("flip axis must be orthogonal to the torus axis");
  return exp2((M_PI / 2.0) * mu_);
}

GroupElement2 haar2(Rng& rng) {
  double a = 0.0;
  Vec3 b = Vec3::Zero();
  double n = 0.0;
  do {
    a = gaussian(rng);
    b = gaussian3(rng);
    n = std::sqrt(a * a + b.squaredNorm());
  } while (n < 1e-12);
  return {a / n, b / n};
}

Mat2c to_matrix(const GroupElement2& x) {
  using namespace std::complex_literals;
  Mat2c m;
  m(0, 0) = x.a - 1i * x.b.z();
  m(0, 1) = -x.b.y() - 1i * x.b.x();
  m(1, 0) = x.b.y() - 1i * x.b.x();
  m(1, 1) = x.a + 1i * x.b.z();
  return m;
}

}  // namespace symred
