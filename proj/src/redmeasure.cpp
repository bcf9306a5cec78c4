#include "symred/redmeasure.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>

#include "symred/errors.hpp"

namespace symred {

namespace {

constexpr double kTileTol = 1e-9;

std::optional<EuclideanElement> overlap_or_none(const Symmetry& sym, const Curve& a,
                                                const Curve& b) {
  try {
    return translate_overlap(sym, a, b);
  } catch (const UnsupportedPair&) {
    return std::nullopt;
  }
}

}  // namespace

void validate_index(const FreeIndex& idx) {
  if (idx.sym.tag == SymTag::HomogeneousIsotropic && !idx.segments.empty())
    throw InvalidIndex(
        "validate_index: the free sector is empty under the fully homogeneous-isotropic "
        "symmetry");
  for (const Curve& c : idx.segments) {
    validate_curve(c);
    if (classify(idx.sym, c) == CurveClass::Unsupported)
      throw InvalidIndex("validate_index: a segment is outside the supported families");
  }
  for (std::size_t i = 0; i < idx.segments.size(); ++i)
    for (std::size_t j = i + 1; j < idx.segments.size(); ++j)
      if (overlap_or_none(idx.sym, idx.segments[i], idx.segments[j]).has_value())
        throw InvalidIndex("validate_index: two segments are congruent on an open piece");
}

std::vector<GroupElement2> free_sample(const FreeIndex& idx, Rng& rng) {
  validate_index(idx);
  std::vector<GroupElement2> out;
  out.reserve(idx.segments.size());
  for (std::size_t i = 0; i < idx.segments.size(); ++i) out.push_back(haar2(rng));
  return out;
}

TransitionPlan transition_plan(const FreeIndex& coarse, const FreeIndex& fine) {
  validate_index(coarse);
  validate_index(fine);
  TransitionPlan plan;
  plan.rows.reserve(coarse.segments.size());
  for (const Curve& gamma : coarse.segments) {
    const double len = curve_domain(gamma);
    // matched pieces from every fine segment that reaches gamma
    struct Piece {
      double t0, t1;
      TransitionTerm term;
    };
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i < fine.segments.size(); ++i) {
      const Curve& delta = fine.segments[i];
      if (!overlap_or_none(fine.sym, delta, gamma).has_value()) continue;
      const Decomposition dec = free_decompose(fine.sym, gamma, delta);
      const double span = curve_domain(delta);
      for (const DecompSegment& seg : dec.segments) {
        if (!seg.matched) continue;
        if (seg.s0 > kTileTol || seg.s1 < span - kTileTol)
          throw UnsupportedPair(
              "transition_plan: a coarse segment uses a proper piece of a fine segment");
        pieces.push_back(Piece{seg.t0, seg.t1, TransitionTerm{i, seg.inverted, seg.g.sigma}});
      }
    }
    std::sort(pieces.begin(), pieces.end(),
              [](const Piece& a, const Piece& b) { return a.t0 < b.t0; });
    double cursor = 0.0;
    TransitionRow row;
    for (const Piece& p : pieces) {
      if (std::abs(p.t0 - cursor) > kTileTol)
        throw UnsupportedPair("transition_plan: the fine translates do not tile the segment");
      cursor = p.t1;
      row.push_back(p.term);
    }
    if (std::abs(cursor - len) > kTileTol)
      throw UnsupportedPair("transition_plan: the fine translates do not tile the segment");
    plan.rows.push_back(std::move(row));
  }
  return plan;
}

std::vector<GroupElement2> apply_transition(const TransitionPlan& plan,
                                            const std::vector<GroupElement2>& s) {
  std::vector<GroupElement2> out;
  out.reserve(plan.rows.size());
  for (const TransitionRow& row : plan.rows) {
    GroupElement2 total = identity2();
    for (const TransitionTerm& term : row) {
      if (term.fine >= s.size())
        throw OutOfDomain("apply_transition: coordinate tuple is shorter than the plan");
      GroupElement2 v = conj2(term.sigma, s[term.fine]);
      if (term.inverted) v = inv(v);
      total = mul(v, total);
    }
    out.push_back(total);
  }
  return out;
}

std::vector<GroupElement2> free_transition(const FreeIndex& coarse, const FreeIndex& fine,
                                           const std::vector<GroupElement2>& s) {
  if (s.size() != fine.segments.size())
    throw OutOfDomain("free_transition: one coordinate per fine segment is required");
  return apply_transition(transition_plan(coarse, fine), s);
}

LagFactorSpec make_lag_spec(const FreqModule& module, const Symmetry& sym, const Vec3& x,
                            const std::vector<std::pair<Vec3, Vec3>>& gens) {
  LagFactorSpec spec;
  spec.module = module;
  spec.factors.reserve(gens.size());
  for (const auto& g : gens) spec.factors.push_back(classify_type(sym, x, g.first, g.second));
  return spec;
}

std::vector<XgpPoint> lag_sample(const LagFactorSpec& spec, Rng& rng) {
  std::vector<XgpPoint> out;
  out.reserve(spec.factors.size());
  for (const TypeTag& tag : spec.factors) {
    switch (tag.kind) {
      case TypeKind::T1:
        out.push_back(canonical_xgp(tag));
        break;
      case TypeKind::T2:
        out.push_back(canonical_xgp(tag, haar_sample(spec.module, rng)));
        break;
      case TypeKind::T3: {
        const BohrElement psi = haar_sample(spec.module, rng);
        const Cx v = std::polar(1.0, uniform(rng, 0.0, 2.0 * M_PI));
        out.push_back(canonical_xgp(tag, psi, v));
        break;
      }
      case TypeKind::T4: {
        const BohrElement psi = haar_sample(spec.module, rng);
        Vec3 v = gaussian3(rng);
        while (v.norm() < 1e-8) v = gaussian3(rng);
        out.push_back(canonical_xgp(tag, psi, Vec3(v.normalized())));
        break;
      }
    }
  }
  return out;
}

namespace {

// fixed moment statistics per factor shape, used to compare two specs
void factor_moments(const XgpPoint& p, std::vector<double>& vals) {
  for (const Cx& z : p.psi.vals) {
    vals.push_back(z.real());
    vals.push_back(z.imag());
  }
  switch (p.tag.kind) {
    case TypeKind::T1:
    case TypeKind::T2:
      break;
    case TypeKind::T3:
      vals.push_back(p.v_circle.real());
      vals.push_back(p.v_circle.imag());
      vals.push_back(p.v_circle.real() * p.v_circle.real());
      break;
    case TypeKind::T4:
      vals.push_back(p.v_sphere.x());
      vals.push_back(p.v_sphere.x() * p.v_sphere.x());
      vals.push_back(std::abs(p.v_sphere.y()));
      break;
  }
}

struct RunningStats {
  double sum = 0.0, sumsq = 0.0;
  void add(double x) {
    sum += x;
    sumsq += x * x;
  }
  double mean(int n) const { return sum / n; }
  double var(int n) const {
    const double m = mean(n);
    return std::max(0.0, sumsq / n - m * m);
  }
};

}  // namespace

IndependenceReport choice_independence(const LagFactorSpec& a, const LagFactorSpec& b,
                                       Rng& rng, int n) {
  if (a.factors.size() != b.factors.size())
    throw IncompatibleSpecs("choice_independence: the factor counts differ");
  for (std::size_t k = 0; k < a.factors.size(); ++k)
    if (a.factors[k].kind != b.factors[k].kind)
      throw IncompatibleSpecs("choice_independence: the factor shapes differ");
  if (a.module.size() != b.module.size())
    throw IncompatibleSpecs("choice_independence: the frequency modules differ in size");
  if (n < 100) throw OutOfDomain("choice_independence: too few samples");

  std::vector<RunningStats> sa, sb;
  std::vector<double> va, vb;
  for (int it = 0; it < n; ++it) {
    va.clear();
    vb.clear();
    for (const XgpPoint& p : lag_sample(a, rng)) factor_moments(p, va);
    for (const XgpPoint& p : lag_sample(b, rng)) factor_moments(p, vb);
    if (sa.empty()) {
      sa.resize(va.size());
      sb.resize(vb.size());
    }
    for (std::size_t k = 0; k < va.size(); ++k) sa[k].add(va[k]);
    for (std::size_t k = 0; k < vb.size(); ++k) sb[k].add(vb[k]);
  }
  IndependenceReport rep;
  rep.pass = true;
  for (std::size_t k = 0; k < sa.size(); ++k) {
    const double diff = std::abs(sa[k].mean(n) - sb[k].mean(n));
    const double se = std::sqrt((sa[k].var(n) + sb[k].var(n)) / n);
    if (se == 0.0) {
      if (diff != 0.0) rep.pass = false;
      continue;
    }
    rep.max_sigma = std::max(rep.max_sigma, diff / se);
  }
  if (rep.max_sigma > 3.0) rep.pass = false;
  return rep;
}

FubiniReport fubini_check(const std::function<std::pair<double, double>(Rng&)>& joint,
                          Rng& rng, int n) {
  if (n < 2) throw OutOfDomain("fubini_check: too few samples");
  std::vector<double> f(n), g(n);
  double mf = 0.0, mg = 0.0, mfg = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto [fi, gi] = joint(rng);
    f[i] = fi;
    g[i] = gi;
    mf += fi;
    mg += gi;
    mfg += fi * gi;
  }
  mf /= n;
  mg /= n;
  mfg /= n;

  FubiniReport rep;
  rep.residual = std::abs(mfg - mf * mg);
  // delta-method standard error of the covariance estimate
  RunningStats w;
  for (int i = 0; i < n; ++i) w.add(f[i] * g[i] - mg * f[i] - mf * g[i]);
  rep.sigma = std::sqrt(w.var(n) / n);
  rep.pass = rep.sigma > 0.0 ? rep.residual <= 3.0 * rep.sigma : rep.residual == 0.0;
  return rep;
}

}  // namespace symred
