#include "symred/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symred/errors.hpp"

namespace symred {

namespace {

constexpr double kGeomTol = 1e-9;
constexpr double kTinyTol = 1e-12;

Vec3 rodrigues(const Vec3& x, const Vec3& axis_unit, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return c * x + s * axis_unit.cross(x) + (1.0 - c) * axis_unit.dot(x) * axis_unit;
}

Vec3 any_perp_unit(const Vec3& v) {
  Vec3 u = v.normalized();
  int k = 0;
  u.cwiseAbs().minCoeff(&k);
  Vec3 e = Vec3::Zero();
  e(k) = 1.0;
  return u.cross(e).normalized();
}

// group element whose covering rotation maps unit vector a to unit vector b
GroupElement2 rotation_between(const Vec3& a_in, const Vec3& b_in) {
  const Vec3 a = a_in.normalized(), b = b_in.normalized();
  const double d = a.dot(b);
  if (d >= 1.0 - kTinyTol) return identity2();
  if (d <= -1.0 + kTinyTol) return exp2((M_PI / 2.0) * any_perp_unit(a));
  const Vec3 axis = a.cross(b).normalized();
  const double angle = std::atan2(a.cross(b).norm(), d);
  return exp2((angle / 2.0) * axis);
}

// group element covering the rotation with orthonormal columns f -> g
GroupElement2 from_frames(const Vec3& f1, const Vec3& f2, const Vec3& g1, const Vec3& g2) {
  Mat3 F, G;
  F.col(0) = f1;
  F.col(1) = f2;
  F.col(2) = f1.cross(f2);
  G.col(0) = g1;
  G.col(1) = g2;
  G.col(2) = g1.cross(g2);
  return from_rotation(G * F.transpose());
}

bool near(double a, double b, double tol = kGeomTol) { return std::abs(a - b) <= tol; }
bool near(const Vec3& a, const Vec3& b, double tol = kGeomTol) { return (a - b).norm() <= tol; }

double clamp_param(double t, double dom, const char* what) {
  if (t < -1e-12 || t > dom + 1e-12)
    throw OutOfDomain(std::string(what) + ": parameter outside [0, domain]");
  return std::min(std::max(t, 0.0), dom);
}

}  // namespace

Symmetry make_symmetry(SymTag tag) {
  Symmetry s;
  s.tag = tag;
  return s;
}

Symmetry make_semi_homogeneous(const Vec3& w1, const Vec3& w2) {
  if (w1.norm() < kGeomTol || w1.cross(w2).norm() < kGeomTol)
    throw OutOfDomain("make_semi_homogeneous: plane basis is degenerate");
  Symmetry s;
  s.tag = SymTag::SemiHomogeneous;
  s.w1 = w1.normalized();
  Vec3 w2p = w2 - w2.dot(s.w1) * s.w1;
  s.w2 = w2p.normalized();
  return s;
}

EuclideanElement euclid_compose(const EuclideanElement& a, const EuclideanElement& b) {
  return EuclideanElement{a.w + adjoint(a.sigma, b.w), mul(a.sigma, b.sigma)};
}

EuclideanElement euclid_inverse(const EuclideanElement& a) {
  const GroupElement2 si = inv(a.sigma);
  return EuclideanElement{-adjoint(si, a.w), si};
}

EuclideanElement sample_sym(const Symmetry& sym, Rng& rng, double scale) {
  EuclideanElement g;
  switch (sym.tag) {
    case SymTag::Homogeneous:
      g.w = scale * gaussian3(rng);
      break;
    case SymTag::SemiHomogeneous:
      g.w = scale * gaussian(rng) * sym.w1 + scale * gaussian(rng) * sym.w2;
      break;
    case SymTag::SphericallySymmetric:
      g.sigma = haar2(rng);
      break;
    case SymTag::HomogeneousIsotropic:
      g.w = scale * gaussian3(rng);
      g.sigma = haar2(rng);
      break;
  }
  return g;
}

LinearCurve make_linear(const Vec3& x, const Vec3& v, double l) {
  if (v.norm() < kGeomTol) throw OutOfDomain("make_linear: zero direction");
  if (!(l > 0.0)) throw OutOfDomain("make_linear: length must be positive");
  return LinearCurve{x, v.normalized(), l};
}

CircularCurve make_circular(const Vec3& center, const Vec3& n, const Vec3& r, double tau) {
  if (n.norm() < kGeomTol) throw OutOfDomain("make_circular: zero normal");
  const Vec3 nu = n.normalized();
  const Vec3 rp = r - r.dot(nu) * nu;
  if (r.norm() < kGeomTol || rp.norm() < (1.0 - kGeomTol) * r.norm())
    throw OutOfDomain("make_circular: radius vector degenerate or not orthogonal to normal");
  if (!(tau > 0.0) || !(tau < 2.0 * M_PI))
    throw OutOfDomain("make_circular: angle must lie in (0, 2*pi)");
  return CircularCurve{center, nu, rp, tau};
}

LieAlgGenCurve make_lag(const Vec3& x, const Vec3& v, const Vec3& s, double l) {
  const double p = period(v, s, x);  // throws StabilizerElement on fixed points
  if (!(l > 0.0)) throw OutOfDomain("make_lag: length must be positive");
  if (std::isfinite(p) && !(l < p * (1.0 - 1e-10)))
    throw OutOfDomain("make_lag: length must be smaller than the flow period");
  return LieAlgGenCurve{x, v, s, l};
}

void validate_curve(const Curve& c) {
  std::visit(
      [](const auto& cc) {
        using T = std::decay_t<decltype(cc)>;
        if constexpr (std::is_same_v<T, LinearCurve>) {
          if (std::abs(cc.v.norm() - 1.0) > kGeomTol)
            throw OutOfDomain("validate_curve: linear direction must be unit");
          if (!(cc.l > 0.0)) throw OutOfDomain("validate_curve: length must be positive");
        } else if constexpr (std::is_same_v<T, CircularCurve>) {
          make_circular(cc.x, cc.n, cc.r, cc.tau);
        } else {
          make_lag(cc.x, cc.v, cc.s, cc.l);
        }
      },
      c);
}

double curve_domain(const Curve& c) {
  return std::visit(
      [](const auto& cc) {
        using T = std::decay_t<decltype(cc)>;
        if constexpr (std::is_same_v<T, CircularCurve>)
          return cc.tau;
        else
          return cc.l;
      },
      c);
}

Vec3 evaluate(const Curve& c, double t) {
  const double tt = clamp_param(t, curve_domain(c), "evaluate");
  return std::visit(
      [tt](const auto& cc) -> Vec3 {
        using T = std::decay_t<decltype(cc)>;
        if constexpr (std::is_same_v<T, LinearCurve>) {
          return cc.x + tt * cc.v;
        } else if constexpr (std::is_same_v<T, CircularCurve>) {
          return cc.x + std::cos(tt) * cc.r + std::sin(tt) * cc.n.cross(cc.r);
        } else {
          const double omega = 2.0 * cc.s.norm();
          if (omega <= kTinyTol) return cc.x + tt * cc.v;
          const Vec3 su = cc.s.normalized();
          const Vec3 vpar = cc.v.dot(su) * su;
          const Vec3 vperp = cc.v - vpar;
          return rodrigues(cc.x, su, omega * tt) + tt * vpar +
                 (std::sin(omega * tt) / omega) * vperp +
                 ((1.0 - std::cos(omega * tt)) / omega) * su.cross(vperp);
        }
      },
      c);
}

Vec3 tangent(const Curve& c, double t) {
  const double tt = clamp_param(t, curve_domain(c), "tangent");
  return std::visit(
      [tt, &c](const auto& cc) -> Vec3 {
        using T = std::decay_t<decltype(cc)>;
        if constexpr (std::is_same_v<T, LinearCurve>) {
          return cc.v;
        } else if constexpr (std::is_same_v<T, CircularCurve>) {
          return -std::sin(tt) * cc.r + std::cos(tt) * cc.n.cross(cc.r);
        } else {
          return 2.0 * cc.s.cross(evaluate(c, tt)) + cc.v;
        }
      },
      c);
}

Curve invert(const Curve& c) {
  return std::visit(
      [&c](const auto& cc) -> Curve {
        using T = std::decay_t<decltype(cc)>;
        if constexpr (std::is_same_v<T, LinearCurve>) {
          return LinearCurve{cc.x + cc.l * cc.v, -cc.v, cc.l};
        } else if constexpr (std::is_same_v<T, CircularCurve>) {
          const Vec3 rend = std::cos(cc.tau) * cc.r + std::sin(cc.tau) * cc.n.cross(cc.r);
          return CircularCurve{cc.x, -cc.n, rend, cc.tau};
        } else {
          return LieAlgGenCurve{evaluate(c, cc.l), -cc.v, -cc.s, cc.l};
        }
      },
      c);
}

Curve subcurve(const Curve& c, double t0, double t1) {
  const double dom = curve_domain(c);
  const double a = clamp_param(t0, dom, "subcurve");
  const double b = clamp_param(t1, dom, "subcurve");
  if (!(b - a > kTinyTol)) throw OutOfDomain("subcurve: empty parameter range");
  return std::visit(
      [&](const auto& cc) -> Curve {
        using T = std::decay_t<decltype(cc)>;
        if constexpr (std::is_same_v<T, LinearCurve>) {
          return LinearCurve{cc.x + a * cc.v, cc.v, b - a};
        } else if constexpr (std::is_same_v<T, CircularCurve>) {
          const Vec3 ra = std::cos(a) * cc.r + std::sin(a) * cc.n.cross(cc.r);
          return CircularCurve{cc.x, cc.n, ra, b - a};
        } else {
          return LieAlgGenCurve{evaluate(c, a), cc.v, cc.s, b - a};
        }
      },
      c);
}

std::pair<Curve, Curve> split(const Curve& c, double t) {
  const double dom = curve_domain(c);
  if (!(t > kTinyTol) || !(t < dom - kTinyTol))
    throw OutOfDomain("split: point must lie strictly inside the domain");
  return {subcurve(c, 0.0, t), subcurve(c, t, dom)};
}

double period(const Vec3& v, const Vec3& s, const Vec3& base) {
  const double sn = s.norm();
  if (sn <= kTinyTol) {
    if (v.norm() <= kTinyTol) throw StabilizerElement("period: generator is trivial");
    return std::numeric_limits<double>::infinity();
  }
  const Vec3 su = s / sn;
  if (std::abs(v.dot(su)) > kGeomTol) return std::numeric_limits<double>::infinity();
  // pure rotation about the axis through q with direction su
  const Vec3 q = s.cross(v) / (2.0 * sn * sn);
  const Vec3 rel = base - q;
  const Vec3 radial = rel - rel.dot(su) * su;
  if (radial.norm() <= kGeomTol)
    throw StabilizerElement("period: generator stabilizes the base point");
  return M_PI / sn;
}

std::optional<Curve> lag_reduce(const LieAlgGenCurve& c) {
  const double sn = c.s.norm();
  if (sn <= kTinyTol) {
    const double vn = c.v.norm();
    if (vn <= kTinyTol) throw StabilizerElement("lag_reduce: generator is trivial");
    return Curve{LinearCurve{c.x, c.v / vn, c.l * vn}};
  }
  const Vec3 su = c.s / sn;
  if (std::abs(c.v.dot(su)) > kGeomTol * std::max(1.0, c.v.norm())) return std::nullopt;
  const Vec3 q = c.s.cross(c.v) / (2.0 * sn * sn);
  const Vec3 center = q + (c.x - q).dot(su) * su;
  const Vec3 r = c.x - center;
  return Curve{CircularCurve{center, su, r, 2.0 * sn * c.l}};
}

LagData lag_data(const Curve& c) {
  return std::visit(
      [](const auto& cc) -> LagData {
        using T = std::decay_t<decltype(cc)>;
        if constexpr (std::is_same_v<T, LinearCurve>) {
          return LagData{cc.x, cc.v, Vec3::Zero(), cc.l};
        } else if constexpr (std::is_same_v<T, CircularCurve>) {
          return LagData{cc.x + cc.r, -cc.n.cross(cc.x), 0.5 * cc.n, cc.tau};
        } else {
          return LagData{cc.x, cc.v, cc.s, cc.l};
        }
      },
      c);
}

namespace {

bool same_linear(const LinearCurve& a, const LinearCurve& b) {
  return near(a.x, b.x) && near(a.v, b.v) && near(a.l, b.l);
}

bool same_circular(const CircularCurve& a, const CircularCurve& b) {
  return near(a.x, b.x) && near(a.n, b.n) && near(a.r, b.r) && near(a.tau, b.tau);
}

// canonical helix data: start, unit-speed-normalized generator, scaled length
struct HelixCanon {
  Vec3 x, v, s;
  double l;
};

HelixCanon helix_canon(const LieAlgGenCurve& c) {
  const double kappa = 2.0 * c.s.norm();
  return HelixCanon{c.x, c.v / kappa, c.s / kappa, c.l * kappa};
}

}  // namespace

bool equivalent(const Curve& c1, const Curve& c2) {
  const auto idx1 = c1.index(), idx2 = c2.index();
  if (idx1 != 2 && idx2 != 2) {
    if (idx1 != idx2)
      throw UnsupportedPair("equivalent: mixed Linear/Circular comparison is not supported");
    if (idx1 == 0) return same_linear(std::get<LinearCurve>(c1), std::get<LinearCurve>(c2));
    return same_circular(std::get<CircularCurve>(c1), std::get<CircularCurve>(c2));
  }
  // at least one generator-form curve: reduce and compare canonical forms
  auto reduce = [](const Curve& c) -> std::optional<Curve> {
    if (c.index() == 2) return lag_reduce(std::get<LieAlgGenCurve>(c));
    return c;
  };
  const auto r1 = reduce(c1), r2 = reduce(c2);
  if (r1 && r2) {
    if (r1->index() != r2->index()) return false;
    if (r1->index() == 0)
      return same_linear(std::get<LinearCurve>(*r1), std::get<LinearCurve>(*r2));
    return same_circular(std::get<CircularCurve>(*r1), std::get<CircularCurve>(*r2));
  }
  if ((bool)r1 != (bool)r2) return false;  // helix against non-helix
  const auto h1 = helix_canon(std::get<LieAlgGenCurve>(c1));
  const auto h2 = helix_canon(std::get<LieAlgGenCurve>(c2));
  return near(h1.x, h2.x) && near(h1.v, h2.v) && near(h1.s, h2.s) && near(h1.l, h2.l);
}

CurveClass classify(const Symmetry& sym, const Curve& c) {
  if (c.index() == 2) {
    const auto& lag = std::get<LieAlgGenCurve>(c);
    if (sym.tag == SymTag::HomogeneousIsotropic) return CurveClass::LAG;
    const auto red = lag_reduce(lag);
    if (!red) return CurveClass::Unsupported;
    return classify(sym, *red);
  }
  if (c.index() == 0) {
    const auto& lin = std::get<LinearCurve>(c);
    switch (sym.tag) {
      case SymTag::Homogeneous:
      case SymTag::HomogeneousIsotropic:
        return CurveClass::LAG;
      case SymTag::SemiHomogeneous:
        return std::abs(lin.v.dot(sym.plane_normal())) <= kGeomTol ? CurveClass::LAG
                                                                   : CurveClass::FreeNonSym;
      case SymTag::SphericallySymmetric: {
        const Vec3 foot = lin.x - lin.x.dot(lin.v) * lin.v;
        return foot.norm() <= kGeomTol ? CurveClass::FreeSym : CurveClass::FreeNonSym;
      }
    }
  }
  const auto& cir = std::get<CircularCurve>(c);
  switch (sym.tag) {
    case SymTag::Homogeneous:
    case SymTag::SemiHomogeneous:
      return CurveClass::FreeNonSym;
    case SymTag::HomogeneousIsotropic:
      return CurveClass::LAG;
    case SymTag::SphericallySymmetric:
      return cir.x.cross(cir.n).norm() <= kGeomTol * std::max(1.0, cir.x.norm())
                 ? CurveClass::LAG
                 : CurveClass::FreeNonSym;
  }
  return CurveClass::Unsupported;
}

Curve transform_curve(const EuclideanElement& g, const Curve& c) {
  return std::visit(
      [&g](const auto& cc) -> Curve {
        using T = std::decay_t<decltype(cc)>;
        if constexpr (std::is_same_v<T, LinearCurve>) {
          return LinearCurve{g.apply(cc.x), adjoint(g.sigma, cc.v), cc.l};
        } else if constexpr (std::is_same_v<T, CircularCurve>) {
          return CircularCurve{g.apply(cc.x), adjoint(g.sigma, cc.n), adjoint(g.sigma, cc.r),
                               cc.tau};
        } else {
          const Vec3 rv = adjoint(g.sigma, cc.v), rs = adjoint(g.sigma, cc.s);
          return LieAlgGenCurve{g.apply(cc.x), rv - 2.0 * rs.cross(g.w), rs, cc.l};
        }
      },
      c);
}

namespace {

// ---- translate_overlap helpers ------------------------------------------

struct LineSeg {
  Vec3 x, v;  // unit direction
  double l;
};

std::optional<LineSeg> as_line(const Curve& c) {
  Curve r = c;
  if (c.index() == 2) {
    auto red = lag_reduce(std::get<LieAlgGenCurve>(c));
    if (!red) throw UnsupportedPair("helical generator curve has no line or circle reduction");
    r = *red;
  }
  if (r.index() != 0) return std::nullopt;
  const auto& lin = std::get<LinearCurve>(r);
  return LineSeg{lin.x, lin.v, lin.l};
}

std::optional<CircularCurve> as_circle(const Curve& c) {
  Curve r = c;
  if (c.index() == 2) {
    auto red = lag_reduce(std::get<LieAlgGenCurve>(c));
    if (!red) throw UnsupportedPair("helical generator curve has no line or circle reduction");
    r = *red;
  }
  if (r.index() != 1) return std::nullopt;
  return std::get<CircularCurve>(r);
}

bool open_interval_overlap(double a0, double a1, double b0, double b1) {
  return std::min(a1, b1) - std::max(a0, b0) > kGeomTol;
}

// overlap of arcs [phi0, phi0+len1] (mod 2*pi) and [0, len2] on the circle
bool arc_overlap(double phi0, double len1, double len2) {
  double p = std::fmod(phi0, 2.0 * M_PI);
  if (p < 0.0) p += 2.0 * M_PI;
  if (p < len2 - kGeomTol) return true;
  if (p + len1 > 2.0 * M_PI + kGeomTol) return true;
  return false;
}

// phase of radius vector r relative to the frame of circle c (angle along c)
double phase_in(const CircularCurve& c, const Vec3& r) {
  const Vec3 rh = c.r.normalized();
  const Vec3 th = c.n.cross(rh);
  return std::atan2(r.dot(th), r.dot(rh));
}

std::optional<EuclideanElement> line_line_overlap(const Symmetry& sym, const LineSeg& c1,
                                                  const LineSeg& c2) {
  const double align = c1.v.dot(c2.v);
  switch (sym.tag) {
    case SymTag::Homogeneous:
    case SymTag::SemiHomogeneous: {
      if (std::abs(align) < 1.0 - kGeomTol) return std::nullopt;
      Vec3 w;
      if (align > 0.0)
        w = c2.x - c1.x;
      else
        w = c2.x - (c1.x + c1.l * c1.v);
      if (sym.tag == SymTag::Homogeneous) return EuclideanElement{w, identity2()};
      // restrict to translations inside the plane W
      const Vec3 nW = sym.plane_normal();
      const Vec3 u = c2.v;
      if (std::abs(u.dot(nW)) <= kGeomTol) {
        // direction lies in W: w must also lie in W
        if (std::abs(w.dot(nW)) > kGeomTol) return std::nullopt;
        return EuclideanElement{w, identity2()};
      }
      // unique translation in W mapping line1 onto line2
      const Vec3 d = c2.x - c1.x;
      const Vec3 dperp = d - d.dot(u) * u;
      const double lam = -dperp.dot(nW) / u.dot(nW);
      const Vec3 w0 = dperp + lam * u;
      if (std::abs(w0.dot(nW)) > kGeomTol) return std::nullopt;
      // interval overlap along the common line after translating
      const double z0 = (c1.x + w0 - c2.x).dot(u);
      const double eps = c1.v.dot(u);
      const double a0 = std::min(z0, z0 + eps * c1.l), a1 = std::max(z0, z0 + eps * c1.l);
      if (!open_interval_overlap(a0, a1, 0.0, c2.l)) return std::nullopt;
      return EuclideanElement{w0, identity2()};
    }
    case SymTag::SphericallySymmetric: {
      const Vec3 f1 = c1.x - c1.x.dot(c1.v) * c1.v;
      const Vec3 f2 = c2.x - c2.x.dot(c2.v) * c2.v;
      const double rho1 = f1.norm(), rho2 = f2.norm();
      if (!near(rho1, rho2)) return std::nullopt;
      const double a1 = c1.x.dot(c1.v), b1 = a1 + c1.l;
      const double a2 = c2.x.dot(c2.v), b2 = a2 + c2.l;
      if (rho1 > kGeomTol) {
        for (int flip = 0; flip < 2; ++flip) {
          const Vec3 vt = flip ? Vec3(-c2.v) : c2.v;
          const GroupElement2 sig = from_frames(f1.normalized(), c1.v, f2.normalized(), vt);
          const bool ok = flip ? open_interval_overlap(-b1, -a1, a2, b2)
                               : open_interval_overlap(a1, b1, a2, b2);
          if (ok) return EuclideanElement{Vec3::Zero(), sig};
        }
        return std::nullopt;
      }
      for (int flip = 0; flip < 2; ++flip) {
        const Vec3 vt = flip ? Vec3(-c2.v) : c2.v;
        const bool ok = flip ? open_interval_overlap(-b1, -a1, a2, b2)
                             : open_interval_overlap(a1, b1, a2, b2);
        if (ok) return EuclideanElement{Vec3::Zero(), rotation_between(c1.v, vt)};
      }
      return std::nullopt;
    }
    case SymTag::HomogeneousIsotropic:
      break;  // handled by the caller
  }
  return std::nullopt;
}

std::optional<EuclideanElement> circle_circle_overlap(const Symmetry& sym,
                                                      const CircularCurve& c1,
                                                      const CircularCurve& c2) {
  if (!near(c1.r.norm(), c2.r.norm())) return std::nullopt;
  switch (sym.tag) {
    case SymTag::Homogeneous:
    case SymTag::SemiHomogeneous: {
      const double ndot = c1.n.dot(c2.n);
      if (std::abs(ndot) < 1.0 - kGeomTol) return std::nullopt;
      const Vec3 w = c2.x - c1.x;
      if (sym.tag == SymTag::SemiHomogeneous && std::abs(w.dot(sym.plane_normal())) > kGeomTol)
        return std::nullopt;
      const double phi0 = phase_in(c2, c1.r);
      const bool ok = (ndot > 0.0) ? arc_overlap(phi0, c1.tau, c2.tau)
                                   : arc_overlap(phi0 - c1.tau, c1.tau, c2.tau);
      if (!ok) return std::nullopt;
      return EuclideanElement{w, identity2()};
    }
    case SymTag::SphericallySymmetric: {
      const double h1 = c1.x.norm(), h2 = c2.x.norm();
      if (!near(h1, h2)) return std::nullopt;
      if (h1 <= kGeomTol) {
        // concentric circles about the origin: align normals, then phases
        const GroupElement2 base = rotation_between(c1.n, c2.n);
        const Vec3 r1m = adjoint(base, c1.r);
        const double dphi = -phase_in(c2, r1m);
        const GroupElement2 ph = exp2((dphi / 2.0) * c2.n);
        return EuclideanElement{Vec3::Zero(), mul(ph, base)};
      }
      const double al1 = c1.x.normalized().dot(c1.n);
      for (int flip = 0; flip < 2; ++flip) {
        const Vec3 n2t = flip ? Vec3(-c2.n) : c2.n;
        const double al2 = c2.x.normalized().dot(n2t);
        if (!near(al1, al2)) continue;
        GroupElement2 sig;
        if (std::abs(al1) >= 1.0 - kGeomTol) {
          // axis through the center: free phase, align start points
          sig = rotation_between(c1.x, c2.x);
          if ((adjoint(sig, c1.n) - n2t).norm() > kGeomTol) continue;
          const Vec3 r1m = adjoint(sig, c1.r);
          const double dphi = -phase_in(c2, r1m);
          const GroupElement2 ph = exp2((dphi / 2.0) * c2.x.normalized() *
                                        (c2.x.normalized().dot(c2.n) > 0 ? 1.0 : -1.0));
          GroupElement2 full = mul(ph, sig);
          if ((adjoint(full, c1.x) - c2.x).norm() > kGeomTol) continue;
          const double p0 = phase_in(c2, adjoint(full, c1.r));
          const bool ok = flip ? arc_overlap(p0 - c1.tau, c1.tau, c2.tau)
                               : arc_overlap(p0, c1.tau, c2.tau);
          if (ok) return EuclideanElement{Vec3::Zero(), full};
          continue;
        }
        const Vec3 m1 = (c1.n - al1 * c1.x.normalized()).normalized();
        const Vec3 m2 = (n2t - al2 * c2.x.normalized()).normalized();
        const GroupElement2 sig0 = from_frames(c1.x.normalized(), m1, c2.x.normalized(), m2);
        const double p0 = phase_in(c2, adjoint(sig0, c1.r));
        const bool ok = flip ? arc_overlap(p0 - c1.tau, c1.tau, c2.tau)
                             : arc_overlap(p0, c1.tau, c2.tau);
        if (ok) return EuclideanElement{Vec3::Zero(), sig0};
      }
      return std::nullopt;
    }
    case SymTag::HomogeneousIsotropic:
      break;  // handled by the caller
  }
  return std::nullopt;
}

}  // namespace

std::optional<EuclideanElement> translate_overlap(const Symmetry& sym, const Curve& c1,
                                                  const Curve& c2) {
  if (sym.tag == SymTag::HomogeneousIsotropic)
    throw UnsupportedPair(
        "translate_overlap: the free sector is empty under the fully homogeneous-isotropic "
        "symmetry");
  const auto l1 = as_line(c1), l2 = as_line(c2);
  if (l1 && l2) return line_line_overlap(sym, *l1, *l2);
  if (l1 || l2) return std::nullopt;  // a line and a circle never share an open segment
  const auto k1 = as_circle(c1), k2 = as_circle(c2);
  return circle_circle_overlap(sym, *k1, *k2);
}

std::optional<EuclideanElement> transporter(const Symmetry& sym, const Curve& c1,
                                            const Curve& c2) {
  auto check = [&](const EuclideanElement& g) -> bool {
    switch (sym.tag) {  // membership of g in the symmetry subgroup
      case SymTag::Homogeneous:
        if (dist_to_center(g.sigma) > kGeomTol && dist(g.sigma, identity2()) > kGeomTol)
          return false;
        break;
      case SymTag::SemiHomogeneous:
        if (dist(g.sigma, identity2()) > kGeomTol && dist_to_center(g.sigma) > kGeomTol)
          return false;
        if (std::abs(g.w.dot(sym.plane_normal())) > kGeomTol) return false;
        break;
      case SymTag::SphericallySymmetric:
        if (g.w.norm() > kGeomTol) return false;
        break;
      case SymTag::HomogeneousIsotropic:
        break;
    }
    try {
      return equivalent(transform_curve(g, c1), c2);
    } catch (const UnsupportedPair&) {
      return false;
    }
  };

  auto reduce = [](const Curve& c) -> Curve {
    if (c.index() == 2)
      if (auto r = lag_reduce(std::get<LieAlgGenCurve>(c))) return *r;
    return c;
  };
  const Curve r1 = reduce(c1), r2 = reduce(c2);
  if (r1.index() != r2.index()) return std::nullopt;

  std::vector<GroupElement2> rots;  // rotation parts of candidates
  std::vector<EuclideanElement> cands;
  if (r1.index() == 0) {
    const auto &L1 = std::get<LinearCurve>(r1), &L2 = std::get<LinearCurve>(r2);
    switch (sym.tag) {
      case SymTag::Homogeneous:
      case SymTag::SemiHomogeneous:
        cands.push_back(EuclideanElement{L2.x - L1.x, identity2()});
        break;
      case SymTag::SphericallySymmetric: {
        const Vec3 f1 = L1.x - L1.x.dot(L1.v) * L1.v;
        const Vec3 f2 = L2.x - L2.x.dot(L2.v) * L2.v;
        if (f1.norm() > kGeomTol && f2.norm() > kGeomTol)
          rots.push_back(from_frames(f1.normalized(), L1.v, f2.normalized(), L2.v));
        else if (f1.norm() <= kGeomTol && f2.norm() <= kGeomTol)
          rots.push_back(rotation_between(L1.v, L2.v));
        for (const auto& sig : rots) cands.push_back(EuclideanElement{Vec3::Zero(), sig});
        break;
      }
      case SymTag::HomogeneousIsotropic: {
        const GroupElement2 sig = rotation_between(L1.v, L2.v);
        cands.push_back(EuclideanElement{L2.x - adjoint(sig, L1.x), sig});
        break;
      }
    }
  } else if (r1.index() == 1) {
    const auto &K1 = std::get<CircularCurve>(r1), &K2 = std::get<CircularCurve>(r2);
    switch (sym.tag) {
      case SymTag::Homogeneous:
      case SymTag::SemiHomogeneous:
        cands.push_back(EuclideanElement{K2.x - K1.x, identity2()});
        break;
      case SymTag::SphericallySymmetric: {
        const double h1 = K1.x.norm(), h2 = K2.x.norm();
        if (h1 <= kGeomTol && h2 <= kGeomTol) {
          rots.push_back(from_frames(K1.n, K1.r.normalized(), K2.n, K2.r.normalized()));
        } else if (h1 > kGeomTol && h2 > kGeomTol) {
          const double al1 = K1.x.normalized().dot(K1.n);
          if (std::abs(al1) >= 1.0 - kGeomTol) {
            const GroupElement2 sig = rotation_between(K1.x, K2.x);
            const double dphi = -phase_in(K2, adjoint(sig, K1.r));
            rots.push_back(mul(exp2((dphi / 2.0) * K2.n), sig));
          } else {
            const Vec3 m1 = (K1.n - al1 * K1.x.normalized()).normalized();
            const Vec3 m2 = (K2.n - K2.x.normalized().dot(K2.n) * K2.x.normalized());
            if (m2.norm() > kGeomTol)
              rots.push_back(from_frames(K1.x.normalized(), m1, K2.x.normalized(),
                                         m2.normalized()));
          }
        }
        for (const auto& sig : rots) cands.push_back(EuclideanElement{Vec3::Zero(), sig});
        break;
      }
      case SymTag::HomogeneousIsotropic: {
        const GroupElement2 sig =
            from_frames(K1.n, K1.r.normalized(), K2.n, K2.r.normalized());
        cands.push_back(EuclideanElement{K2.x - adjoint(sig, K1.x), sig});
        break;
      }
    }
  } else {
    // two helical generator curves: anchor frames on the screw axis
    const auto &H1 = std::get<LieAlgGenCurve>(r1), &H2 = std::get<LieAlgGenCurve>(r2);
    const Vec3 s1 = H1.s.normalized(), s2 = H2.s.normalized();
    const Vec3 q1 = H1.s.cross(H1.v) / (2.0 * H1.s.squaredNorm());
    const Vec3 q2 = H2.s.cross(H2.v) / (2.0 * H2.s.squaredNorm());
    const Vec3 e1 = (H1.x - q1) - (H1.x - q1).dot(s1) * s1;
    const Vec3 e2 = (H2.x - q2) - (H2.x - q2).dot(s2) * s2;
    GroupElement2 sig;
    if (e1.norm() > kGeomTol && e2.norm() > kGeomTol)
      sig = from_frames(s1, e1.normalized(), s2, e2.normalized());
    else
      sig = rotation_between(s1, s2);
    switch (sym.tag) {
      case SymTag::Homogeneous:
      case SymTag::SemiHomogeneous:
        cands.push_back(EuclideanElement{H2.x - H1.x, identity2()});
        break;
      case SymTag::SphericallySymmetric:
        cands.push_back(EuclideanElement{Vec3::Zero(), sig});
        break;
      case SymTag::HomogeneousIsotropic:
        cands.push_back(EuclideanElement{H2.x - adjoint(sig, H1.x), sig});
        break;
    }
  }
  for (const auto& g : cands)
    if (check(g)) return g;
  return std::nullopt;
}

namespace {

void push_breakpoint(std::vector<double>& bps, double t) {
  for (double b : bps)
    if (std::abs(b - t) <= 1e-10) return;
  bps.push_back(t);
}

}  // namespace

Decomposition free_decompose(const Symmetry& sym, const Curve& gamma, const Curve& delta) {
  if (sym.tag == SymTag::HomogeneousIsotropic)
    throw UnsupportedPair("free_decompose: unsupported symmetry type");
  const auto lg = as_line(gamma), ld = as_line(delta);
  if (!lg || !ld) throw UnsupportedPair("free_decompose: both curves must reduce to lines");
  const double L = lg->l, D = ld->l;
  const Vec3 u = ld->v;
  const double align = lg->v.dot(u);

  Decomposition dec;
  std::vector<double>& bps = dec.breakpoints;
  bps.push_back(0.0);
  bps.push_back(L);

  if (sym.tag == SymTag::SphericallySymmetric) {
    // both segments must lie on closed rays through the origin
    auto ray_of = [](const LineSeg& s) {
      const Vec3 foot = s.x - s.x.dot(s.v) * s.v;
      if (foot.norm() > kGeomTol)
        throw UnsupportedPair("free_decompose: segment is not radial");
      const double z0 = s.x.dot(s.v), z1 = z0 + s.l;
      if (z0 >= -kGeomTol && z1 >= -kGeomTol)
        return std::tuple<Vec3, double, double>{s.v, std::max(z0, 0.0), 1.0};
      if (z1 <= kGeomTol && z0 <= kGeomTol)
        return std::tuple<Vec3, double, double>{-s.v, std::max(-z0, 0.0), -1.0};
      throw UnsupportedPair("free_decompose: segment straddles the origin");
    };
    const auto [ug, rg0, eg] = ray_of(*lg);
    const auto [ud, rd0, ed] = ray_of(*ld);
    // radial intervals
    const double g_lo = eg > 0 ? rg0 : rg0 - L;
    const double g_hi = g_lo + L;
    const double d_lo = ed > 0 ? rd0 : rd0 - D;
    const double d_hi = d_lo + D;
    const double m_lo = std::max(g_lo, d_lo), m_hi = std::min(g_hi, d_hi);
    auto t_of_r = [&](double r) { return (r - rg0) / eg; };
    if (m_hi - m_lo > 1e-10) {
      push_breakpoint(bps, std::min(t_of_r(m_lo), t_of_r(m_hi)));
      push_breakpoint(bps, std::max(t_of_r(m_lo), t_of_r(m_hi)));
    }
    std::sort(bps.begin(), bps.end());
    const GroupElement2 rot = rotation_between(ud, ug);
    for (size_t i = 0; i + 1 < bps.size(); ++i) {
      if (bps[i + 1] - bps[i] <= 1e-10) continue;
      DecompSegment seg;
      seg.t0 = bps[i];
      seg.t1 = bps[i + 1];
      const double rmid = rg0 + eg * 0.5 * (seg.t0 + seg.t1);
      seg.matched = (m_hi - m_lo > 1e-10) && rmid > m_lo - 1e-10 && rmid < m_hi + 1e-10;
      if (seg.matched) {
        const double r_at_t0 = rg0 + eg * seg.t0, r_at_t1 = rg0 + eg * seg.t1;
        const double s_at_t0 = ed > 0 ? r_at_t0 - d_lo : d_hi - r_at_t0;
        const double s_at_t1 = ed > 0 ? r_at_t1 - d_lo : d_hi - r_at_t1;
        seg.s0 = std::min(s_at_t0, s_at_t1);
        seg.s1 = std::max(s_at_t0, s_at_t1);
        seg.inverted = (eg * ed) < 0;
        seg.g = EuclideanElement{Vec3::Zero(), rot};
      }
      dec.segments.push_back(seg);
    }
    return dec;
  }

  // translational symmetries: gamma must be parallel to delta
  if (std::abs(align) < 1.0 - kGeomTol)
    throw UnsupportedPair("free_decompose: segments are not parallel");
  const double eps = align > 0.0 ? 1.0 : -1.0;
  const double z0 = (lg->x - ld->x).dot(u);
  const Vec3 offset = (lg->x - ld->x) - z0 * u;  // perpendicular line offset

  bool sliding = true;  // translations may slide delta along its direction
  Vec3 w_fixed = Vec3::Zero();
  double fixed_shift = 0.0;  // coordinate shift of the unique translate
  if (sym.tag == SymTag::SemiHomogeneous) {
    const Vec3 nW = sym.plane_normal();
    if (std::abs(u.dot(nW)) <= kGeomTol) {
      if (std::abs(offset.dot(nW)) > kGeomTol) {
        // gamma is out of reach of every translate of delta: fully unmatched
        dec.segments.push_back(DecompSegment{0.0, L, false, {}, false, 0.0, 0.0});
        return dec;
      }
    } else {
      sliding = false;
      const double lam = -offset.dot(nW) / u.dot(nW);
      w_fixed = offset + lam * u;
      fixed_shift = lam;
      if (std::abs(w_fixed.dot(nW)) > kGeomTol)
        throw UnsupportedPair("free_decompose: no admissible translation exists");
    }
  }

  auto coord = [&](double t) { return z0 + eps * t; };
  if (sliding) {
    const double c_lo = std::min(coord(0.0), coord(L)), c_hi = std::max(coord(0.0), coord(L));
    const long k_lo = (long)std::floor(c_lo / D) - 1, k_hi = (long)std::ceil(c_hi / D) + 1;
    for (long k = k_lo; k <= k_hi; ++k) {
      const double t = (k * D - z0) / eps;
      if (t > 1e-10 && t < L - 1e-10) push_breakpoint(bps, t);
    }
    std::sort(bps.begin(), bps.end());
    for (size_t i = 0; i + 1 < bps.size(); ++i) {
      if (bps[i + 1] - bps[i] <= 1e-10) continue;
      DecompSegment seg;
      seg.t0 = bps[i];
      seg.t1 = bps[i + 1];
      seg.matched = true;
      const double cm = coord(0.5 * (seg.t0 + seg.t1));
      const long k = (long)std::floor(cm / D);
      const double lo = std::min(coord(seg.t0), coord(seg.t1));
      const double hi = std::max(coord(seg.t0), coord(seg.t1));
      seg.s0 = std::min(std::max(lo - k * D, 0.0), D);
      seg.s1 = std::min(std::max(hi - k * D, 0.0), D);
      seg.inverted = eps < 0.0;
      seg.g = EuclideanElement{offset + (double)k * D * u, identity2()};
      dec.segments.push_back(seg);
    }
    return dec;
  }

  // unique admissible translate: coordinates [fixed_shift, fixed_shift + D]
  const double m_lo = std::max(std::min(coord(0.0), coord(L)), fixed_shift);
  const double m_hi = std::min(std::max(coord(0.0), coord(L)), fixed_shift + D);
  if (m_hi - m_lo > 1e-10) {
    const double ta = (m_lo - z0) / eps, tb = (m_hi - z0) / eps;
    push_breakpoint(bps, std::min(ta, tb));
    push_breakpoint(bps, std::max(ta, tb));
  }
  std::sort(bps.begin(), bps.end());
  for (size_t i = 0; i + 1 < bps.size(); ++i) {
    if (bps[i + 1] - bps[i] <= 1e-10) continue;
    DecompSegment seg;
    seg.t0 = bps[i];
    seg.t1 = bps[i + 1];
    const double cm = coord(0.5 * (seg.t0 + seg.t1));
    seg.matched = (m_hi - m_lo > 1e-10) && cm > m_lo - 1e-10 && cm < m_hi + 1e-10;
    if (seg.matched) {
      const double lo = std::min(coord(seg.t0), coord(seg.t1));
      const double hi = std::max(coord(seg.t0), coord(seg.t1));
      seg.s0 = std::min(std::max(lo - fixed_shift, 0.0), D);
      seg.s1 = std::min(std::max(hi - fixed_shift, 0.0), D);
      seg.inverted = eps < 0.0;
      seg.g = EuclideanElement{w_fixed, identity2()};
    }
    dec.segments.push_back(seg);
  }
  return dec;
}

}  // namespace symred
