#include "symred/redhom.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "symred/errors.hpp"

namespace symred {

namespace {

constexpr double kGate = 1e-10;   // pass gate for the defining properties
constexpr double kZero = 1e-12;   // absolute: a generator component is absent
constexpr double kAlign = 1e-9;   // relative: alignment of directions

// equivalence that treats structurally incomparable pairs as distinct
bool curves_match(const Curve& a, const Curve& b) {
  try {
    return equivalent(a, b);
  } catch (const UnsupportedPair&) {
    return false;
  }
}

bool neutral_character(const BohrElement& psi) {
  for (const Cx& z : psi.vals)
    if (!(z.real() == 1.0 && z.imag() == 0.0)) return false;
  return true;
}

}  // namespace

CurveFamily make_family(const std::vector<Curve>& seeds,
                        const std::vector<SplitDecl>& split_decls) {
  CurveFamily fam;
  auto add = [&fam](const Curve& c) -> std::size_t {
    validate_curve(c);
    for (std::size_t i = 0; i < fam.curves.size(); ++i)
      if (curves_match(fam.curves[i], c)) return i;
    fam.curves.push_back(c);
    return fam.curves.size() - 1;
  };

  std::vector<std::size_t> seed_idx;
  seed_idx.reserve(seeds.size());
  for (const Curve& s : seeds) seed_idx.push_back(add(s));

  for (const SplitDecl& d : split_decls) {
    if (d.seed_index >= seeds.size())
      throw OutOfDomain("make_family: split declaration names a seed that does not exist");
    const auto pieces = split(seeds[d.seed_index], d.t);
    SplitRecord rec;
    rec.whole = seed_idx[d.seed_index];
    rec.first = add(pieces.first);
    rec.second = add(pieces.second);
    fam.splits.push_back(rec);
  }

  const std::size_t n0 = fam.curves.size();
  for (std::size_t i = 0; i < n0; ++i) {
    const std::size_t j = add(invert(fam.curves[i]));
    fam.inverses.push_back(InversePair{i, j});
  }
  return fam;
}

std::optional<std::size_t> find_curve(const CurveFamily& fam, const Curve& c) {
  for (std::size_t i = 0; i < fam.curves.size(); ++i)
    if (curves_match(fam.curves[i], c)) return i;
  return std::nullopt;
}

GenHom from_connection(const InvariantConnection& w, const Symmetry& sym,
                       const CurveFamily& fam) {
  GenHom h;
  h.sym = sym;
  h.fam = fam;
  h.table.reserve(fam.size());
  for (const Curve& c : fam.curves) h.table.push_back(transport_closed(w, sym, c).h);
  return h;
}

GenHom trivial_genhom(const Symmetry& sym, const CurveFamily& fam) {
  GenHom h;
  h.sym = sym;
  h.fam = fam;
  h.table.assign(fam.size(), identity2());
  return h;
}

HomReport check_invariants(const GenHom& h) {
  HomReport rep;
  for (const SplitRecord& r : h.fam.splits) {
    const GroupElement2 composed = mul(h.table[r.second], h.table[r.first]);
    rep.mult_residual = std::max(rep.mult_residual, dist(h.table[r.whole], composed));
  }
  for (const InversePair& p : h.fam.inverses)
    rep.inv_residual = std::max(rep.inv_residual, dist(h.table[p.bwd], inv(h.table[p.fwd])));
  for (std::size_t i = 0; i < h.fam.size(); ++i) {
    for (std::size_t j = 0; j < h.fam.size(); ++j) {
      if (i == j) continue;
      std::optional<EuclideanElement> g;
      try {
        g = transporter(h.sym, h.fam.curves[i], h.fam.curves[j]);
      } catch (const UnsupportedPair&) {
        continue;
      }
      if (!g) continue;
      const GroupElement2 expect = conj2(g->sigma, h.table[i]);
      rep.relation_residual = std::max(rep.relation_residual, dist(h.table[j], expect));
    }
  }
  rep.pass = rep.mult_residual <= kGate && rep.inv_residual <= kGate &&
             rep.relation_residual <= kGate;
  return rep;
}

bool torus_constraint(const GenHom& h, const LinearCurve& c) {
  if (h.sym.tag != SymTag::HomogeneousIsotropic)
    throw OutOfDomain("torus_constraint: the constraint applies to the fully symmetric case");
  const auto idx = find_curve(h.fam, Curve{c});
  if (!idx) throw OutOfDomain("torus_constraint: the segment is not in the family");
  const Vec3 vhat = c.v.normalized();
  const Vec3 b = h.table[*idx].b;
  return (b - b.dot(vhat) * vhat).norm() <= kGate;
}

TypeTag classify_type(const Symmetry& sym, const Vec3& x, const Vec3& v, const Vec3& s) {
  const double vn = v.norm(), sn = s.norm();
  switch (sym.tag) {
    case SymTag::Homogeneous:
    case SymTag::SemiHomogeneous: {
      if (sn > kZero)
        throw UnverifiedStability(
            "classify_type: only pure translation generators are covered for the "
            "translational symmetries");
      if (vn <= kZero) throw UnverifiedStability("classify_type: the generator vanishes");
      if (sym.tag == SymTag::SemiHomogeneous &&
          std::abs(v.dot(sym.plane_normal())) > kAlign * vn)
        throw UnverifiedStability(
            "classify_type: the translation direction leaves the invariant plane");
      return TypeTag{TypeKind::T4, Vec3::UnitX()};
    }
    case SymTag::SphericallySymmetric: {
      if (vn > kZero)
        throw UnverifiedStability(
            "classify_type: only pure rotation generators are covered for the rotational "
            "symmetry");
      if (sn <= kZero) throw UnverifiedStability("classify_type: the generator vanishes");
      const double xn = x.norm();
      if (!(x.x() > 0.0) || std::abs(x.y()) > kAlign * xn || std::abs(x.z()) > kAlign * xn)
        throw UnverifiedStability(
            "classify_type: the base point must lie on the positive first coordinate ray");
      const Vec3 e1 = Vec3::UnitX();
      const Vec3 sp = s - s.dot(e1) * e1;
      if (sp.norm() <= kAlign * sn)
        throw UnverifiedStability(
            "classify_type: the rotation axis fixes the base ray, the orbit degenerates");
      if (std::abs(s.dot(e1)) <= kAlign * sn) return TypeTag{TypeKind::T3, e1};
      return TypeTag{TypeKind::T4, Vec3::UnitX()};
    }
    case SymTag::HomogeneousIsotropic: {
      if (x.norm() > kZero)
        throw UnverifiedStability("classify_type: orbits are anchored at the origin");
      if (vn <= kZero)
        throw UnverifiedStability(
            "classify_type: the translation part of the generator vanishes");
      const Vec3 vhat = v / vn;
      if (sn <= kZero) return TypeTag{TypeKind::T2, vhat};
      const Vec3 sp = s - s.dot(vhat) * vhat;
      if (sp.norm() <= kAlign * sn)
        throw UnverifiedStability(
            "classify_type: screw generators with axis-aligned rotation are not covered");
      return TypeTag{TypeKind::T3, v.cross(s).normalized()};
    }
  }
  throw OutOfDomain("classify_type: unknown symmetry tag");
}

GenHom modify_lag(const GenHom& h, const Vec3& x, const Vec3& v, const Vec3& s,
                  const Vec3& psi_slope) {
  const TypeTag tag = classify_type(h.sym, x, v, s);
  const double ptol = kAlign * std::max(1.0, psi_slope.norm());
  if (tag.kind == TypeKind::T2 && psi_slope.cross(tag.axis).norm() > ptol)
    throw EquivarianceViolation(
        "modify_lag: the slope must lie on the torus axis of the orbit direction");
  if (tag.kind == TypeKind::T3 && std::abs(psi_slope.dot(tag.axis)) > ptol)
    throw EquivarianceViolation("modify_lag: the slope must be orthogonal to the flip axis");

  const bool rotational = s.norm() > kZero;
  const Vec3 sg = rotational ? s : Vec3(Vec3::Zero());
  const double gscale = rotational ? s.norm() : v.norm();

  GenHom out = h;
  for (std::size_t i = 0; i < h.fam.size(); ++i) {
    LagData ld;
    try {
      ld = lag_data(h.fam.curves[i]);
    } catch (const Error&) {
      continue;
    }
    double cscale = 0.0;
    if (rotational) {
      if (ld.s.norm() <= kZero) continue;
      cscale = ld.s.norm();
    } else {
      if (ld.s.norm() > kZero) continue;
      cscale = ld.v.norm();
      if (cscale <= kZero) continue;
    }
    const double l = ld.l * cscale / gscale;
    for (const double sgn : {1.0, -1.0}) {
      std::optional<EuclideanElement> g;
      try {
        const LieAlgGenCurve orbit = make_lag(x, sgn * v, sgn * sg, l);
        g = transporter(h.sym, Curve{orbit}, h.fam.curves[i]);
      } catch (const Error&) {
        continue;
      }
      if (!g) continue;
      out.table[i] =
          conj2(g->sigma, mul(exp2(Vec3((sgn * l) * sg)), exp2(Vec3((sgn * l) * psi_slope))));
      break;
    }
  }
  return out;
}

GenHom modify_free(const GenHom& h, const Curve& delta, double t0, const Vec3& psi_slope) {
  validate_curve(delta);
  if (h.sym.tag == SymTag::HomogeneousIsotropic)
    throw UnsupportedPair(
        "modify_free: the free sector is empty under the fully homogeneous-isotropic "
        "symmetry");
  const CurveClass cls = classify(h.sym, delta);
  if (cls == CurveClass::Unsupported)
    throw UnsupportedPair("modify_free: the segment is outside the supported families");
  if (cls == CurveClass::FreeSym) {
    const LagData ld = lag_data(delta);
    const Vec3 u = ld.v.normalized();
    if (psi_slope.cross(u).norm() > kAlign * std::max(1.0, psi_slope.norm()))
      throw StabilizerViolation(
          "modify_free: the slope must lie on the torus axis fixed by the segment "
          "stabilizer");
  }
  const double dom = curve_domain(delta);
  if (!(t0 >= -kZero && t0 <= dom + kZero))
    throw OutOfDomain("modify_free: the anchor parameter lies outside the segment domain");

  // value of delta|[t0, sp] under the base table, oriented away from the anchor
  auto base_value = [&](double sp) -> GroupElement2 {
    if (std::abs(sp - t0) <= kZero) return identity2();
    const double a = std::min(sp, t0), b = std::max(sp, t0);
    const auto idx = find_curve(h.fam, subcurve(delta, a, b));
    if (!idx)
      throw UnsupportedPair(
          "modify_free: a piece of the segment between the anchor and a cut is not in the "
          "family");
    return sp > t0 ? h.table[*idx] : inv(h.table[*idx]);
  };

  GenHom out = h;
  for (std::size_t i = 0; i < h.fam.size(); ++i) {
    const Curve& c = h.fam.curves[i];
    std::optional<EuclideanElement> ov;
    try {
      ov = translate_overlap(h.sym, delta, c);
    } catch (const UnsupportedPair&) {
      ov.reset();
    }
    if (!ov) continue;
    const Decomposition dec = free_decompose(h.sym, c, delta);
    GroupElement2 total = identity2();
    for (const DecompSegment& seg : dec.segments) {
      GroupElement2 value;
      if (!seg.matched) {
        const auto idx = find_curve(h.fam, subcurve(c, seg.t0, seg.t1));
        if (!idx)
          throw UnsupportedPair(
              "modify_free: an unmatched piece of a family curve is not in the family");
        value = h.table[*idx];
      } else {
        const GroupElement2 w =
            mul(base_value(seg.s1),
                mul(exp2(Vec3((seg.s1 - seg.s0) * psi_slope)), inv(base_value(seg.s0))));
        value = conj2(seg.g.sigma, seg.inverted ? inv(w) : w);
      }
      total = mul(value, total);
    }
    out.table[i] = total;
  }
  return out;
}

XgpPoint canonical_xgp(const TypeTag& tag) {
  if (tag.kind != TypeKind::T1)
    throw OutOfDomain("canonical_xgp: this arity is reserved for the point type");
  XgpPoint p;
  p.tag = tag;
  p.zero_class = true;
  return p;
}

XgpPoint canonical_xgp(const TypeTag& tag, const BohrElement& psi) {
  if (tag.kind != TypeKind::T2)
    throw OutOfDomain("canonical_xgp: this arity is reserved for the torus type");
  XgpPoint p;
  p.tag = tag;
  p.psi = psi;
  p.zero_class = neutral_character(psi);
  return p;
}

XgpPoint canonical_xgp(const TypeTag& tag, const BohrElement& psi, Cx v) {
  if (tag.kind != TypeKind::T3)
    throw OutOfDomain("canonical_xgp: this arity is reserved for the circle-fibered type");
  if (std::abs(std::abs(v) - 1.0) > kAlign)
    throw OutOfDomain("canonical_xgp: the fiber coordinate must lie on the unit circle");
  XgpPoint p;
  p.tag = tag;
  if (neutral_character(psi)) {
    p.zero_class = true;
    p.psi = psi;
    return p;
  }
  const bool keep = v.real() > 0.0 || (v.real() == 0.0 && v.imag() > 0.0);
  p.psi = keep ? psi : bohr_inv(psi);
  p.v_circle = keep ? v : -v;
  return p;
}

XgpPoint canonical_xgp(const TypeTag& tag, const BohrElement& psi, const Vec3& v) {
  if (tag.kind != TypeKind::T4)
    throw OutOfDomain("canonical_xgp: this arity is reserved for the sphere-fibered type");
  if (std::abs(v.norm() - 1.0) > kAlign)
    throw OutOfDomain("canonical_xgp: the fiber direction must be a unit vector");
  XgpPoint p;
  p.tag = tag;
  if (neutral_character(psi)) {
    p.zero_class = true;
    p.psi = psi;
    return p;
  }
  const bool keep =
      v.x() > 0.0 || (v.x() == 0.0 && (v.y() > 0.0 || (v.y() == 0.0 && v.z() > 0.0)));
  p.psi = keep ? psi : bohr_inv(psi);
  p.v_sphere = keep ? v : Vec3(-v);
  return p;
}

}  // namespace symred
