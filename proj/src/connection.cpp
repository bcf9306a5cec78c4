#include "symred/connection.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "symred/errors.hpp"

namespace symred {

namespace {

constexpr int kConnDegreeMax = 8;
constexpr int kFieldDegreeMax = 4;

double horner(const std::vector<double>& p, double t) {
  double r = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * t + *it;
  return r;
}

Vec3 horner(const std::vector<Vec3>& p, double t) {
  Vec3 r = Vec3::Zero();
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * t + *it;
  return r;
}

void check_finite(const std::vector<double>& p, const char* what) {
  if (p.size() > kConnDegreeMax + 1)
    throw OutOfDomain(std::string(what) + ": polynomial degree exceeds 8");
  for (double c : p)
    if (!std::isfinite(c)) throw OutOfDomain(std::string(what) + ": non-finite coefficient");
}

void check_finite(const std::vector<Vec3>& p, const char* what) {
  if (p.size() > kConnDegreeMax + 1)
    throw OutOfDomain(std::string(what) + ": polynomial degree exceeds 8");
  for (const Vec3& c : p)
    if (!c.allFinite()) throw OutOfDomain(std::string(what) + ": non-finite coefficient");
}

// a v + 2 b (x % v) + 4 c (x % (x % v))
Vec3 radial_matrix_apply(double a, double b, double c, const Vec3& x, const Vec3& v) {
  return a * v + 2.0 * b * x.cross(v) + 4.0 * c * x.cross(x.cross(v));
}

}  // namespace

void validate_connection(const InvariantConnection& w) {
  std::visit(
      [](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, IsotropicConn>) {
          if (!std::isfinite(c.c)) throw OutOfDomain("Isotropic: non-finite symbol");
        } else if constexpr (std::is_same_v<T, SphericalConn>) {
          check_finite(c.f, "Spherical f");
          check_finite(c.g, "Spherical g");
          check_finite(c.h, "Spherical h");
        } else if constexpr (std::is_same_v<T, HomogeneousConn>) {
          if (!c.psi.allFinite()) throw OutOfDomain("Homogeneous: non-finite matrix");
        } else {
          if (c.w1.cross(c.w2).norm() < 1e-9)
            throw OutOfDomain("SemiHomogeneous: degenerate plane basis");
          check_finite(c.A1, "SemiHomogeneous A1");
          check_finite(c.A2, "SemiHomogeneous A2");
          check_finite(c.b, "SemiHomogeneous b");
        }
      },
      w);
}

Vec3 eval_conn(const InvariantConnection& w, const Vec3& x, const GroupElement2& s,
               const Vec3& v, const Vec3& sigma_body) {
  const GroupElement2 si = inv(s);
  return std::visit(
      [&](const auto& c) -> Vec3 {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, IsotropicConn>) {
          return c.c * adjoint(si, v) + sigma_body;
        } else if constexpr (std::is_same_v<T, SphericalConn>) {
          const double u = x.squaredNorm();
          return adjoint(si, radial_matrix_apply(horner(c.f, u), horner(c.g, u),
                                                 horner(c.h, u), x, v)) +
                 sigma_body;
        } else if constexpr (std::is_same_v<T, HomogeneousConn>) {
          return adjoint(si, c.psi * v) + sigma_body;
        } else {
          const Vec3 w1 = c.w1.normalized();
          const Vec3 w2u = (c.w2 - c.w2.dot(w1) * w1).normalized();
          const Vec3 n = w1.cross(w2u);
          const double z = x.dot(n);
          const Vec3 val = horner(c.A1, z) * v.dot(w1) + horner(c.A2, z) * v.dot(w2u) +
                           horner(c.b, z) * v.dot(n);
          return adjoint(si, val) + sigma_body;
        }
      },
      w);
}

double pullback_residual(const InvariantConnection& w, const Symmetry&,
                         const EuclideanElement& g, const Vec3& x, const GroupElement2& s,
                         const Vec3& v, const Vec3& sigma_body) {
  // push the point and tangent through the action; body coordinates of the
  // group component are unchanged by left translation
  const Vec3 xg = g.apply(x);
  const GroupElement2 sg = mul(g.sigma, s);
  const Vec3 vg = adjoint(g.sigma, v);
  const Vec3 lhs = eval_conn(w, xg, sg, vg, sigma_body);
  const Vec3 rhs = eval_conn(w, x, s, v, sigma_body);
  return (lhs - rhs).norm();
}

Eigen::MatrixXd wang_reduce(const InvariantConnection& w, const Symmetry& sym) {
  if (sym.tag != SymTag::Homogeneous && sym.tag != SymTag::HomogeneousIsotropic)
    throw NotTransitive("wang_reduce: the action must be fibre transitive");
  const int cols = sym.tag == SymTag::Homogeneous ? 3 : 6;
  Eigen::MatrixXd m(3, cols);
  for (int j = 0; j < 3; ++j) {
    Vec3 ej = Vec3::Zero();
    ej(j) = 1.0;
    m.col(j) = eval_conn(w, Vec3::Zero(), identity2(), ej, Vec3::Zero());
  }
  if (cols == 6) {
    for (int j = 0; j < 3; ++j) {
      Vec3 ej = Vec3::Zero();
      ej(j) = 1.0;
      // the generator (0, s) moves the fibre only: spatial part 2 s % x = 0 at x = 0
      m.col(3 + j) = eval_conn(w, Vec3::Zero(), identity2(), Vec3::Zero(), ej);
    }
  }
  return m;
}

WangReport wang_check(const Eigen::MatrixXd& psi, const Symmetry& sym, Rng& rng,
                      int samples, double tol) {
  WangReport rep;
  if (psi.rows() != 3 || (psi.cols() != 3 && psi.cols() != 6))
    throw OutOfDomain("wang_check: map must be 3x3 or 3x6");
  if (sym.tag == SymTag::Homogeneous) {
    // trivial stabilizer: both conditions are empty
    rep.pass = psi.cols() == 3;
    return rep;
  }
  if (sym.tag != SymTag::HomogeneousIsotropic)
    throw NotTransitive("wang_check: the action must be fibre transitive");
  if (psi.cols() != 6) throw OutOfDomain("wang_check: expected a 3x6 map");
  // condition a): identity on the group summand
  rep.res_stabilizer_identity = (psi.rightCols<3>() - Mat3::Identity()).norm();
  // condition b): psi o Ad_h = Ad_{phi_p(h)} o psi on stabilizer samples
  for (int k = 0; k < samples; ++k) {
    const GroupElement2 sig = haar2(rng);
    const Mat3 R = covering(sig).m;
    for (int j = 0; j < 6; ++j) {
      Eigen::VectorXd gvec = Eigen::VectorXd::Zero(6);
      gvec(j) = 1.0;
      Eigen::VectorXd adg(6);
      adg.head<3>() = R * gvec.head<3>();
      adg.tail<3>() = R * gvec.tail<3>();
      const Vec3 lhs = psi * adg;
      const Vec3 rhs = R * (psi * gvec);
      rep.res_equivariance = std::max(rep.res_equivariance, (lhs - rhs).norm());
    }
  }
  rep.pass = rep.res_stabilizer_identity < tol && rep.res_equivariance < tol;
  return rep;
}

NullspaceReport equiv_nullspace(int mode) {
  // unknowns: the columns m_1, m_2, m_3 of a 3x3 map, stacked as a 9-vector;
  // rows: e_i % m_j - eps_{ijk} m_k = 0 for all i, j
  std::vector<Eigen::Matrix<double, 3, 9>> rows;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (mode == 2 && i != j) continue;
      Eigen::Matrix<double, 3, 9> r = Eigen::Matrix<double, 3, 9>::Zero();
      // e_i % m_j term: cross-product matrix of e_i applied to column j
      Mat3 cx = Mat3::Zero();
      Vec3 ei = Vec3::Zero();
      ei(i) = 1.0;
      cx << 0, -ei.z(), ei.y(), ei.z(), 0, -ei.x(), -ei.y(), ei.x(), 0;
      r.block<3, 3>(0, 3 * j) += cx;
      for (int k = 0; k < 3; ++k) {
        const int eps = (i == j || j == k || i == k)
                            ? 0
                            : (((j - i + 3) % 3 == 1 && (k - j + 3) % 3 == 1) ? 1 : -1);
        if (eps == 0) continue;
        double sign = -double(eps);
        if (mode == 1 && i == 0 && j == 1) sign = -sign;  // deliberate mutation
        r.block<3, 3>(0, 3 * k) += sign * Mat3::Identity();
      }
      rows.push_back(r);
    }
  }
  Eigen::MatrixXd sys(3 * (int)rows.size(), 9);
  for (size_t r = 0; r < rows.size(); ++r) sys.middleRows<3>(3 * (int)r) = rows[r];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys, Eigen::ComputeFullV);
  NullspaceReport rep;
  Eigen::VectorXd sv = svd.singularValues();
  // pad to 9 when fewer rows than unknowns
  Eigen::VectorXd svfull = Eigen::VectorXd::Zero(9);
  svfull.tail(sv.size()) = sv.reverse();  // ascending
  rep.singular_values = svfull;
  int dim = 0;
  for (int i = 0; i < 9; ++i)
    if (svfull(i) < 1e-10) ++dim;
  rep.dim = dim;
  rep.basis = svd.matrixV().rightCols(dim);
  return rep;
}

namespace {

Vec3 psi_radial(const RadialFns& fns, const Vec3& x, const Vec3& gvec, const Vec3& v) {
  const double u = x.squaredNorm();
  return radial_matrix_apply(fns.f(u), fns.g(u), fns.h(u), x, 2.0 * gvec.cross(x) + v) + gvec;
}

TrivBundleReport trivbundle_impl(const RadialFns& fns, int samples, Rng& rng) {
  TrivBundleReport rep;
  for (int k = 0; k < samples; ++k) {
    const Vec3 x = 1.5 * gaussian3(rng);
    const Vec3 gvec = gaussian3(rng);
    const Vec3 v = gaussian3(rng);
    const GroupElement2 sig = haar2(rng);
    // i) the kernel direction of the action: v = -2 g % x with matching fibre part
    rep.res_kernel = std::max(
        rep.res_kernel, (psi_radial(fns, x, gvec, -2.0 * gvec.cross(x)) - gvec).norm());
    // ii) equivariance in the spatial argument
    const Vec3 lhs_v = psi_radial(fns, adjoint(sig, x), Vec3::Zero(), adjoint(sig, v));
    const Vec3 rhs_v = adjoint(sig, psi_radial(fns, x, Vec3::Zero(), v));
    rep.res_equiv_v = std::max(rep.res_equiv_v, (lhs_v - rhs_v).norm());
    // iii) equivariance in the group argument
    const Vec3 lhs_g = psi_radial(fns, adjoint(sig, x), adjoint(sig, gvec), Vec3::Zero());
    const Vec3 rhs_g = adjoint(sig, psi_radial(fns, x, gvec, Vec3::Zero()));
    rep.res_equiv_g = std::max(rep.res_equiv_g, (lhs_g - rhs_g).norm());
  }
  // continuity probe towards the origin: compare radii r and r/2 so a pole
  // at 0 shows up as growth while a smooth family decays with r
  const double radii[3] = {1e-2, 1e-4, 1e-6};
  for (int ri = 0; ri < 3; ++ri) {
    double worst = 0.0;
    for (int k = 0; k < 16; ++k) {
      const Vec3 n = random_unit3(rng);
      const Vec3 v = random_unit3(rng);
      const Vec3 at_r = psi_radial(fns, radii[ri] * n, Vec3::Zero(), v);
      const Vec3 at_half = psi_radial(fns, 0.5 * radii[ri] * n, Vec3::Zero(), v);
      worst = std::max(worst, (at_r - at_half).norm());
    }
    rep.origin_residuals[ri] = worst;
  }
  rep.pass = rep.res_kernel < 1e-9 && rep.res_equiv_v < 1e-9 && rep.res_equiv_g < 1e-9 &&
             rep.origin_residuals[2] < 1e-5;
  return rep;
}

}  // namespace

TrivBundleReport trivbundle_check(const SphericalConn& w, int samples, Rng& rng) {
  RadialFns fns;
  fns.f = [&w](double u) { return horner(w.f, u); };
  fns.g = [&w](double u) { return horner(w.g, u); };
  fns.h = [&w](double u) { return horner(w.h, u); };
  return trivbundle_impl(fns, samples, rng);
}

TrivBundleReport trivbundle_check(const RadialFns& fns, int samples, Rng& rng) {
  return trivbundle_impl(fns, samples, rng);
}

Vec3 eval_field_component(const std::vector<Poly3Term>& p, const Vec3& x) {
  Vec3 r = Vec3::Zero();
  for (const auto& t : p) {
    double m = 1.0;
    for (int d = 0; d < t.e[0]; ++d) m *= x.x();
    for (int d = 0; d < t.e[1]; ++d) m *= x.y();
    for (int d = 0; d < t.e[2]; ++d) m *= x.z();
    r += m * t.c;
  }
  return r;
}

Vec3 eval_field(const GaugeField& A, const Vec3& x, const Vec3& v) {
  Vec3 r = Vec3::Zero();
  for (int i = 0; i < 3; ++i) r += v(i) * eval_field_component(A.comp[i], x);
  return r;
}

namespace {

// sparse trivariate polynomial helper used only for the gauge-field expansion
using Poly3 = std::vector<Poly3Term>;

void add_term(Poly3& p, const std::array<int, 3>& e, const Vec3& c) {
  if (c.norm() == 0.0) return;
  for (auto& t : p)
    if (t.e == e) {
      t.c += c;
      return;
    }
  p.push_back(Poly3Term{e, c});
}

Poly3 scalar_times(const Poly3& p, double k) {
  Poly3 r = p;
  for (auto& t : r) t.c *= k;
  return r;
}

// multiply a Vec3-valued polynomial by a scalar monomial
void accumulate_product(Poly3& out, const Poly3& p, const std::array<int, 3>& e, double k) {
  for (const auto& t : p)
    add_term(out, {t.e[0] + e[0], t.e[1] + e[1], t.e[2] + e[2]}, k * t.c);
}

// powers of a scalar linear/quadratic form given as monomial list (coeff, e)
struct ScalarTerm {
  std::array<int, 3> e;
  double c;
};

std::vector<ScalarTerm> scalar_pow(const std::vector<ScalarTerm>& base, int n) {
  std::vector<ScalarTerm> acc{{{0, 0, 0}, 1.0}};
  for (int k = 0; k < n; ++k) {
    std::vector<ScalarTerm> next;
    for (const auto& a : acc)
      for (const auto& b : base) {
        const std::array<int, 3> e{a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2]};
        bool merged = false;
        for (auto& t : next)
          if (t.e == e) {
            t.c += a.c * b.c;
            merged = true;
            break;
          }
        if (!merged) next.push_back({e, a.c * b.c});
      }
    acc = std::move(next);
  }
  return acc;
}

int max_degree(const Poly3& p) {
  int d = 0;
  for (const auto& t : p)
    if (t.c.norm() > 0.0) d = std::max(d, t.e[0] + t.e[1] + t.e[2]);
  return d;
}

}  // namespace

GaugeField to_gauge_field(const InvariantConnection& w) {
  validate_connection(w);
  GaugeField A;
  std::visit(
      [&A](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, IsotropicConn>) {
          for (int i = 0; i < 3; ++i) {
            Vec3 ei = Vec3::Zero();
            ei(i) = 1.0;
            add_term(A.comp[i], {0, 0, 0}, c.c * ei);
          }
        } else if constexpr (std::is_same_v<T, HomogeneousConn>) {
          for (int i = 0; i < 3; ++i) add_term(A.comp[i], {0, 0, 0}, c.psi.col(i));
        } else if constexpr (std::is_same_v<T, SemiHomogeneousConn>) {
          const Vec3 w1 = c.w1.normalized();
          const Vec3 w2u = (c.w2 - c.w2.dot(w1) * w1).normalized();
          const Vec3 n = w1.cross(w2u);
          const std::vector<ScalarTerm> z{{{1, 0, 0}, n.x()}, {{0, 1, 0}, n.y()},
                                          {{0, 0, 1}, n.z()}};
          for (int i = 0; i < 3; ++i) {
            // A_i(x) = A1(z) w1_i + A2(z) w2_i + b(z) n_i
            for (size_t d = 0; d < std::max({c.A1.size(), c.A2.size(), c.b.size()}); ++d) {
              Vec3 coef = Vec3::Zero();
              if (d < c.A1.size()) coef += c.A1[d] * w1(i);
              if (d < c.A2.size()) coef += c.A2[d] * w2u(i);
              if (d < c.b.size()) coef += c.b[d] * n(i);
              if (coef.norm() == 0.0) continue;
              for (const auto& zt : scalar_pow(z, (int)d))
                add_term(A.comp[i], zt.e, zt.c * coef);
            }
          }
        } else {
          // A_i(x) = f(u) e_i + 2 g(u) (x % e_i) + 4 h(u) x % (x % e_i), u = |x|^2
          const std::vector<ScalarTerm> u{{{2, 0, 0}, 1.0}, {{0, 2, 0}, 1.0},
                                          {{0, 0, 2}, 1.0}};
          for (int i = 0; i < 3; ++i) {
            Vec3 ei = Vec3::Zero();
            ei(i) = 1.0;
            // base polynomials in x multiplying each radial function
            Poly3 base_f, base_g, base_h;
            add_term(base_f, {0, 0, 0}, ei);
            for (int j = 0; j < 3; ++j) {
              Vec3 xj = Vec3::Zero();
              xj(j) = 1.0;
              std::array<int, 3> ej{0, 0, 0};
              ej[j] = 1;
              add_term(base_g, ej, 2.0 * xj.cross(ei));
              for (int k = 0; k < 3; ++k) {
                Vec3 xk = Vec3::Zero();
                xk(k) = 1.0;
                std::array<int, 3> ejk{0, 0, 0};
                ejk[j] += 1;
                ejk[k] += 1;
                add_term(base_h, ejk, 4.0 * xj.cross(xk.cross(ei)));
              }
            }
            auto expand = [&](const std::vector<double>& poly, const Poly3& base) {
              for (size_t d = 0; d < poly.size(); ++d) {
                if (poly[d] == 0.0) continue;
                for (const auto& ut : scalar_pow(u, (int)d))
                  accumulate_product(A.comp[i], scalar_times(base, poly[d]), ut.e, ut.c);
              }
            };
            expand(c.f, base_f);
            expand(c.g, base_g);
            expand(c.h, base_h);
          }
        }
      },
      w);
  for (int i = 0; i < 3; ++i)
    if (max_degree(A.comp[i]) > kFieldDegreeMax)
      throw NonPolynomial("to_gauge_field: expansion exceeds the degree bound");
  return A;
}

}  // namespace symred
