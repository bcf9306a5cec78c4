#pragma once

#include <array>
#include <functional>
#include <variant>
#include <vector>

#include "symred/curve.hpp"
#include "symred/su2.hpp"

namespace symred {

// Families of invariant connections on R^3 x SU(2). Polynomial data is kept
// as coefficient lists (lowest degree first), degree at most 8.
struct IsotropicConn {
  double c = 0.0;
};

// omega(v, sigma) = Ad_{s^-1}[ a v + 2 b (x % v) + 4 c (x % (x % v)) ] + sigma,
// with a = f(|x|^2), b = g(|x|^2), c = h(|x|^2).
struct SphericalConn {
  std::vector<double> f{0.0};
  std::vector<double> g{0.0};
  std::vector<double> h{0.0};
};

// omega(v, sigma) = Ad_{s^-1}[ psi v ] + sigma, columns psi(e_j).
struct HomogeneousConn {
  Mat3 psi = Mat3::Zero();
};

// Translations along the plane spanned by (w1, w2); with z the coordinate
// along the plane normal, omega(v, sigma) =
//   Ad_{s^-1}[ A1(z) (v.w1) + A2(z) (v.w2) + b(z) (v.n) ] + sigma.
struct SemiHomogeneousConn {
  Vec3 w1 = Vec3::UnitX();
  Vec3 w2 = Vec3::UnitY();
  std::vector<Vec3> A1{Vec3::Zero()};
  std::vector<Vec3> A2{Vec3::Zero()};
  std::vector<Vec3> b{Vec3::Zero()};
};

using InvariantConnection =
    std::variant<IsotropicConn, SphericalConn, HomogeneousConn, SemiHomogeneousConn>;

void validate_connection(const InvariantConnection& w);

// Connection form evaluated at the point (x, s) on the tangent (v, sigma_body),
// where sigma_body = s^-1 sigma is the left-translated group component.
Vec3 eval_conn(const InvariantConnection& w, const Vec3& x, const GroupElement2& s,
               const Vec3& v, const Vec3& sigma_body);

// || (L_g^* omega - omega)(point, tangent) ||
double pullback_residual(const InvariantConnection& w, const Symmetry& sym,
                         const EuclideanElement& g, const Vec3& x, const GroupElement2& s,
                         const Vec3& v, const Vec3& sigma_body);

// The reduced linear map at the base point (0, 1): 3x3 for a transitive
// translation group, 3x6 (spatial block | group block) when rotations join in.
Eigen::MatrixXd wang_reduce(const InvariantConnection& w, const Symmetry& sym);

struct WangReport {
  bool pass = false;
  double res_stabilizer_identity = 0.0;  // condition on the group summand
  double res_equivariance = 0.0;         // sampled stabilizer conjugation
};
WangReport wang_check(const Eigen::MatrixXd& psi, const Symmetry& sym, Rng& rng,
                      int samples = 32, double tol = 1e-10);

struct NullspaceReport {
  int dim = 0;
  Eigen::VectorXd singular_values;  // ascending
  Eigen::MatrixXd basis;            // columns spanning the nullspace, as 3x3 stacks
};
// Nullspace of the linear system binding a 3x3 map to rotation equivariance.
// mode 0: full system; 1: one sign flipped (mutation); 2: diagonal rows only.
NullspaceReport equiv_nullspace(int mode = 0);

struct RadialFns {
  std::function<double(double)> f, g, h;  // functions of u = |x|^2
};

struct TrivBundleReport {
  bool pass = false;
  double res_kernel = 0.0;
  double res_equiv_v = 0.0;
  double res_equiv_g = 0.0;
  std::array<double, 3> origin_residuals{0.0, 0.0, 0.0};  // radii 1e-2, 1e-4, 1e-6
};
TrivBundleReport trivbundle_check(const SphericalConn& w, int samples, Rng& rng);
TrivBundleReport trivbundle_check(const RadialFns& fns, int samples, Rng& rng);

// Local 1-form A = sum_i A_i dx^i with polynomial su(2)-valued components.
struct Poly3Term {
  std::array<int, 3> e{0, 0, 0};
  Vec3 c = Vec3::Zero();
};
struct GaugeField {
  std::array<std::vector<Poly3Term>, 3> comp;
};

Vec3 eval_field_component(const std::vector<Poly3Term>& p, const Vec3& x);
Vec3 eval_field(const GaugeField& A, const Vec3& x, const Vec3& v);

// Pullback by the section x -> (x, 1); throws NonPolynomial past degree 4.
GaugeField to_gauge_field(const InvariantConnection& w);

}  // namespace symred
