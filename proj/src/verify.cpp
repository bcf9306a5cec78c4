#include "symred/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "symred/bohr.hpp"
#include "symred/connection.hpp"
#include "symred/curve.hpp"
#include "symred/errors.hpp"
#include "symred/rbar.hpp"
#include "symred/redhom.hpp"
#include "symred/redmeasure.hpp"
#include "symred/rng.hpp"
#include "symred/su2.hpp"
#include "symred/transport.hpp"

namespace symred {
namespace {

template <typename... Args>
std::string sfmt(const char* fmt, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return std::string(buf);
}

// Residual bounds that are pure floating-point gates accept the override;
// statistical acceptance levels and structural counts keep their design value.
double tol_or(const VerifyOptions& opt, double def) { return opt.tol.value_or(def); }

double mat_gap(const GroupElement2& x, const GroupElement2& y) {
  return (to_matrix(x) - to_matrix(y)).cwiseAbs().maxCoeff();
}

long long rint_ll(Rng& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

bool bit_eq(const GroupElement2& x, const GroupElement2& y) {
  return x.a == y.a && x.b.x() == y.b.x() && x.b.y() == y.b.y() && x.b.z() == y.b.z();
}

Vec3 unit_orthogonal(Rng& rng, const Vec3& n) {
  while (true) {
    const Vec3 m = n.cross(random_unit3(rng));
    if (m.norm() > 1e-6) return m.normalized();
  }
}

// ---------------------------------------------------------------------------
// 1: circular holonomy closed form against the generic integrator, on a grid.

CriterionResult c1(const VerifyOptions& opt) {
  const auto t_start = std::chrono::steady_clock::now();
  const Symmetry iso = make_symmetry(SymTag::HomogeneousIsotropic);
  double worst = 0.0;
  int cases = 0;
  for (int ci = -2; ci <= 2; ++ci) {
    const InvariantConnection w = IsotropicConn{static_cast<double>(ci)};
    const GaugeField A = to_gauge_field(w);
    for (double r : {0.5, 1.0, 2.0}) {
      for (double tau : {M_PI / 3.0, M_PI, 1.5 * M_PI}) {
        const Curve circ =
            make_circular(Vec3::Zero(), Vec3::UnitZ(), r * Vec3::UnitX(), tau);
        const GroupElement2 closed = transport_closed(w, iso, circ).h;
        const GroupElement2 ode = transport_ode(A, circ, 4096).h;
        worst = std::max(worst, mat_gap(closed, ode));
        ++cases;
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  CriterionResult r;
  r.id = 1;
  r.measured = worst;
  r.bound = tol_or(opt, 1e-8);
  r.pass = worst <= r.bound && secs < 5.0;
  r.detail = sfmt(
      "closed circular holonomies vs 4096-step integration, %d grid cases in %.2fs",
      cases, secs);
  return r;
}

// ---------------------------------------------------------------------------
// 2: straight-segment closed form against the integrator and the explicit
//    exponential, on random draws.

CriterionResult c2(const VerifyOptions& opt) {
  Rng rng(opt.seed * 1000 + 2);
  const Symmetry iso = make_symmetry(SymTag::HomogeneousIsotropic);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double c = uniform(rng, -2.0, 2.0);
    const double l = uniform(rng, 0.1, 2.0);
    const Vec3 v = random_unit3(rng);
    const Curve line = make_linear(gaussian3(rng), v, l);
    const InvariantConnection w = IsotropicConn{c};
    const GroupElement2 closed = transport_closed(w, iso, line).h;
    const GroupElement2 ode = transport_ode(to_gauge_field(w), line, 4096).h;
    worst = std::max(worst, dist(closed, ode));
    worst = std::max(worst, dist(closed, exp2(-c * l * v)));
  }
  CriterionResult r;
  r.id = 2;
  r.measured = worst;
  r.bound = tol_or(opt, 1e-10);
  r.pass = worst <= r.bound;
  r.detail = "straight-segment holonomy vs integration and exponential, 100 random draws";
  return r;
}

// ---------------------------------------------------------------------------
// 3: conjugation equivariance of the holonomy under sampled symmetry elements
//    for the three connection families with closed transport.

CriterionResult c3(const VerifyOptions& opt) {
  Rng rng(opt.seed * 1000 + 3);
  double worst = 0.0;

  const Symmetry iso = make_symmetry(SymTag::HomogeneousIsotropic);
  for (int i = 0; i < 200; ++i) {
    const InvariantConnection w = IsotropicConn{uniform(rng, -2.0, 2.0)};
    Curve c;
    if (i % 2 == 0) {
      c = make_linear(gaussian3(rng), random_unit3(rng), uniform(rng, 0.3, 1.5));
    } else {
      const Vec3 n = random_unit3(rng);
      const Vec3 rad = uniform(rng, 0.5, 1.5) * unit_orthogonal(rng, n);
      c = make_circular(0.5 * gaussian3(rng), n, rad, uniform(rng, 0.5, 5.5));
    }
    worst = std::max(worst, equivariance_residual(w, iso, sample_sym(iso, rng), c));
  }

  const Symmetry sph = make_symmetry(SymTag::SphericallySymmetric);
  for (int i = 0; i < 200; ++i) {
    SphericalConn sc;
    sc.f.assign(5, 0.0);
    sc.g.assign(5, 0.0);
    sc.h.assign(5, 0.0);
    for (int k = 0; k < 5; ++k) {
      sc.f[k] = uniform(rng, -0.5, 0.5);
      sc.g[k] = uniform(rng, -0.5, 0.5);
      sc.h[k] = uniform(rng, -0.5, 0.5);
    }
    const Vec3 n = random_unit3(rng);
    const Curve ray =
        make_linear(uniform(rng, 0.3, 1.0) * n, n, uniform(rng, 0.3, 0.6));
    worst = std::max(
        worst, equivariance_residual(InvariantConnection{sc}, sph, sample_sym(sph, rng), ray));
  }

  const Symmetry hom = make_symmetry(SymTag::Homogeneous);
  for (int i = 0; i < 200; ++i) {
    HomogeneousConn hc;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) hc.psi(a, b) = uniform(rng, -1.0, 1.0);
    const Curve line =
        make_linear(gaussian3(rng), random_unit3(rng), uniform(rng, 0.3, 1.5));
    worst = std::max(
        worst, equivariance_residual(InvariantConnection{hc}, hom, sample_sym(hom, rng), line));
  }

  CriterionResult r;
  r.id = 3;
  r.measured = worst;
  r.bound = tol_or(opt, 1e-10);
  r.pass = worst <= r.bound;
  r.detail = "holonomy conjugation law, 200 sampled group elements per connection family";
  return r;
}

// ---------------------------------------------------------------------------
// 4: the reduced linear map of the one-symbol family, and the rotation
//    equivariance constraint system.

CriterionResult c4(const VerifyOptions& opt) {
  const Symmetry iso = make_symmetry(SymTag::HomogeneousIsotropic);
  double worst = 0.0;
  bool shape_ok = true;
  for (int ci = -2; ci <= 2; ++ci) {
    const double c = static_cast<double>(ci);
    const Eigen::MatrixXd m = wang_reduce(IsotropicConn{c}, iso);
    if (m.rows() != 3 || m.cols() != 6) {
      shape_ok = false;
      continue;
    }
    worst = std::max(worst,
                     (m.leftCols<3>() - c * Mat3::Identity()).cwiseAbs().maxCoeff());
    worst = std::max(worst,
                     (m.rightCols<3>() - Mat3::Identity()).cwiseAbs().maxCoeff());
  }
  const NullspaceReport ns = equiv_nullspace();
  const double sv1 = ns.singular_values.size() > 1 ? ns.singular_values(1) : 0.0;
  CriterionResult r;
  r.id = 4;
  r.measured = worst;
  r.bound = tol_or(opt, 1e-10);
  r.pass = shape_ok && worst <= r.bound && ns.dim == 1 && sv1 > 1e-3;
  r.detail = sfmt(
      "reduced map is the scaled-identity pair for five symbols; "
      "constraint nullspace dim=%d, second singular value=%.3g",
      ns.dim, sv1);
  return r;
}

// ---------------------------------------------------------------------------
// 5: torus flips invert, and the common axis of a commuting pair is recovered.

CriterionResult c5(const VerifyOptions& opt) {
  Rng rng(opt.seed * 1000 + 5);
  const double flip_bound = tol_or(opt, 1e-12);
  const double axis_bound = tol_or(opt, 1e-10);
  double worst_flip = 0.0, worst_axis = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 n = random_unit3(rng);
    const double th1 = uniform(rng, 0.05, M_PI - 0.05);
    const double th2 = uniform(rng, 0.05, M_PI - 0.05);
    const GroupElement2 s1 = exp2(th1 * n);
    const GroupElement2 s2 = exp2(th2 * n);
    const GroupElement2 flip = torus_flip(n, unit_orthogonal(rng, n));
    worst_flip = std::max(worst_flip, dist(conj2(flip, s1), inv(s1)));
    const Vec3 axis = torus_axis(s1, s2);
    worst_axis =
        std::max(worst_axis, std::min((axis - n).norm(), (axis + n).norm()));
  }
  // report the sub-check that sits closest to its bound
  const bool flip_binds = worst_flip / flip_bound >= worst_axis / axis_bound;
  CriterionResult r;
  r.id = 5;
  r.measured = flip_binds ? worst_flip : worst_axis;
  r.bound = flip_binds ? flip_bound : axis_bound;
  r.pass = worst_flip <= flip_bound && worst_axis <= axis_bound;
  r.detail = sfmt(
      "1000 random torus elements: flip residual max=%.3g (bound %.3g), "
      "axis recovery max=%.3g (bound %.3g)",
      worst_flip, flip_bound, worst_axis, axis_bound);
  return r;
}

// ---------------------------------------------------------------------------
// 6: the gap witness stays away from zero over a dense symbol scan.

CriterionResult c6(const VerifyOptions& opt) {
  (void)opt;
  const std::pair<double, double> cases[] = {
      {M_PI, 1.0}, {M_PI / 2.0, 2.0}, {1.5 * M_PI, 0.5}};
  double global_min = std::numeric_limits<double>::infinity();
  std::string per;
  for (const auto& [tau, rr] : cases) {
    double local = std::numeric_limits<double>::infinity();
    for (long long k = -100000; k <= 100000; ++k)
      local = std::min(local, std::abs(f_gap(1e-3 * static_cast<double>(k), tau, rr)));
    // refine near the candidate zeros of the cosine difference
    for (int n = -50; n <= 50; ++n) {
      const double c0 = M_PI * n / (rr * tau);
      for (int j = -4; j <= 4; ++j)
        local = std::min(local, std::abs(f_gap(c0 + 2.5e-7 * j, tau, rr)));
    }
    global_min = std::min(global_min, local);
    per += sfmt(" (tau=%.4g,r=%.4g): %.3g;", tau, rr, local);
  }
  CriterionResult r;
  r.id = 6;
  r.measured = global_min;
  r.bound = 0.0;
  r.exceed = true;
  r.pass = global_min > 0.0;
  r.detail = "minimum gap-witness modulus over the symbol scan:" + per;
  return r;
}

// ---------------------------------------------------------------------------
// 7: circle projections hit the center exactly at the special parameters, the
//    merge bound shrinks, and nothing else comes near the distinguished torus.

CriterionResult c7(const VerifyOptions& opt) {
  const double tau = M_PI, rr = 1.0;
  const FreqModule m = make_module({"c"}, {M_PI});
  const RhoHomeo rho = default_rho();

  const double center_bound = tol_or(opt, 1e-10);
  double worst_center = 0.0;
  for (int n = -20; n <= 20; ++n) {
    if (n == 0) continue;
    const GroupElement2 g = pi_circ(m, RealPoint{a_n(n, tau, rr)}, tau, rr);
    const GroupElement2 want((n % 2 == 0) ? 1.0 : -1.0, Vec3::Zero());
    worst_center = std::max(worst_center, dist(g, want));
  }

  double best_merge = std::numeric_limits<double>::infinity();
  int best_n = 0;
  for (int n : {10, 50, 100, 500, 1000, 5000, 10000}) {
    const double b = merge_bound(n, tau, rr);
    if (b < best_merge) {
      best_merge = b;
      best_n = n;
    }
  }
  const double merge_gate = 0.05;

  // scan of the real branch: points close to the distinguished torus must be
  // central, and the special parameters must actually appear in the near set
  const double near_gate = 1e-9;
  const double central_bound = tol_or(opt, 1e-8);
  double worst_central = 0.0;
  int near_points = 0;
  auto probe = [&](double x) {
    const GroupElement2 g = pi_circ(m, RealPoint{x}, tau, rr);
    if (dist_to_Htau2(g) < near_gate) {
      ++near_points;
      worst_central = std::max(worst_central, dist_to_center(g));
    }
  };
  for (int k = 0; k < 10000; ++k) probe(rho.forward((k + 0.5) / 10000.0));
  for (int n = -20; n <= 20; ++n)
    if (n != 0) probe(a_n(n, tau, rr));

  const double ratio_a = worst_center / center_bound;
  const double ratio_b = best_merge / merge_gate;
  const double ratio_c = worst_central / central_bound;
  CriterionResult r;
  r.id = 7;
  if (ratio_a >= ratio_b && ratio_a >= ratio_c) {
    r.measured = worst_center;
    r.bound = center_bound;
  } else if (ratio_b >= ratio_c) {
    r.measured = best_merge;
    r.bound = merge_gate;
  } else {
    r.measured = worst_central;
    r.bound = central_bound;
  }
  r.pass = worst_center <= center_bound && best_merge <= merge_gate &&
           near_points > 0 && worst_central <= central_bound;
  r.detail = sfmt(
      "special parameters central to %.3g; merge bound %.3g at n=%d; "
      "%d near-torus scan points, worst center distance %.3g",
      worst_center, best_merge, best_n, near_points, worst_central);
  return r;
}

// ---------------------------------------------------------------------------
// 8: exact coordinate transitions, Haar pushforward moments, and embedding
//    compatibility on the compactified line.

CriterionResult c8(const VerifyOptions& opt) {
  Rng rng(opt.seed * 1000 + 8);
  const FreqModule m3 = make_module({"u", "v", "w"});

  const double exact_bound = tol_or(opt, 1e-12);
  double worst_exact = 0.0;
  bool integer_ok = true;
  for (int iter = 0; iter < 1000; ++iter) {
    const BohrElement psi = haar_sample(m3, rng);
    std::vector<Freq> base(3, Freq(3));
    do {
      for (auto& row : base)
        for (auto& e : row) e = rint_ll(rng, -2, 2);
    } while (!z_independent(base));
    const FreqTuple L2 = make_freq_tuple(base);

    IntMat A(2, 3);
    std::vector<Freq> lrows(2, Freq(3));
    do {
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) A(i, j) = rint_ll(rng, -2, 2);
      for (int i = 0; i < 2; ++i)
        for (int c = 0; c < 3; ++c) {
          long long acc = 0;
          for (int j = 0; j < 3; ++j) acc += A(i, j) * base[j][c];
          lrows[i][c] = acc;
        }
    } while (!z_independent(lrows));
    const FreqTuple L = make_freq_tuple(lrows);

    const auto N = leq_z(L, L2);
    if (!N.has_value() || N->rows() != 2 || N->cols() != 3) {
      integer_ok = false;
      continue;
    }
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j)
        if ((*N)(i, j) != A(i, j)) integer_ok = false;

    const std::vector<Cx> lhs = transition(*N, project(m3, psi, L2));
    const std::vector<Cx> rhs = project(m3, psi, L);
    for (std::size_t i = 0; i < lhs.size(); ++i)
      worst_exact = std::max(worst_exact, std::abs(lhs[i] - rhs[i]));
  }

  // Haar pushforward: every nontrivial monomial has mean zero
  const int n = std::max(opt.samples, 1000);
  const std::vector<Freq> monomials = {{1, 0, 0}, {0, 1, 0},  {0, 0, 1},
                                       {1, 1, 0}, {2, 0, -1}, {1, -1, 2}};
  std::vector<Cx> sums(monomials.size(), Cx(0.0, 0.0));
  for (int i = 0; i < n; ++i) {
    const BohrElement psi = haar_sample(m3, rng);
    for (std::size_t k = 0; k < monomials.size(); ++k)
      sums[k] += bohr_eval(m3, psi, monomials[k]);
  }
  double worst_mean = 0.0;
  for (const Cx& s : sums) worst_mean = std::max(worst_mean, std::abs(s) / n);
  const double mean_gate = 3.0 / std::sqrt(static_cast<double>(n));

  // embedding compatibility with declared generator values
  const FreqModule mv = make_module({"a", "b"}, {1.0, std::sqrt(2.0)});
  double worst_embed = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double x = uniform(rng, -5.0, 5.0);
    const BohrElement psi = embed(mv, x);
    for (const Freq& l : std::vector<Freq>{{1, 0}, {0, 1}, {2, 1}, {1, -3}}) {
      const double phase = (l[0] * 1.0 + l[1] * std::sqrt(2.0)) * x;
      worst_embed = std::max(
          std::abs(bohr_eval(mv, psi, l) - std::exp(Cx(0.0, phase))), worst_embed);
    }
  }

  const double det_worst = std::max(worst_exact, worst_embed);
  const double ratio_det = det_worst / exact_bound;
  const double ratio_mean = worst_mean / mean_gate;
  CriterionResult r;
  r.id = 8;
  if (ratio_det >= ratio_mean) {
    r.measured = det_worst;
    r.bound = exact_bound;
  } else {
    r.measured = worst_mean;
    r.bound = mean_gate;
  }
  r.pass = integer_ok && det_worst <= exact_bound && worst_mean <= mean_gate;
  r.detail = sfmt(
      "1000 coordinate transitions exact to %.3g; Haar monomial means %.3g "
      "(gate %.3g, n=%d); embedding residual %.3g",
      worst_exact, worst_mean, mean_gate, n, worst_embed);
  return r;
}

// ---------------------------------------------------------------------------
// 9: translation invariance of the endpoint measure, and failure of
//    invariance for the interpolating measure via a shift test.

CriterionResult c9(const VerifyOptions& opt) {
  Rng rng(opt.seed * 1000 + 9);
  const FreqModule mv = make_module({"a", "b"}, {1.0, std::sqrt(2.0)});
  const RhoHomeo rho = default_rho();
  const int n = std::max(opt.samples, 1000);
  const double mean_gate = 3.0 / std::sqrt(static_cast<double>(n));
  const std::vector<Freq> monomials = {{1, 0}, {0, 1}, {1, -1}, {2, 1}};
  const std::vector<double> shifts = {0.1, 1.0, 10.0};

  // t = 0: the character measure is translation invariant, so every
  // nontrivial monomial keeps mean zero before and after each shift
  const RBarMeasure mu0 = make_measure(0.0, rho, mv);
  std::vector<Cx> sums(monomials.size() * (shifts.size() + 1), Cx(0.0, 0.0));
  for (int i = 0; i < n; ++i) {
    const RBarPoint p = sample(mu0, rng);
    const BohrElement& psi = std::get<BohrPoint>(p).psi;
    for (std::size_t k = 0; k < monomials.size(); ++k)
      sums[k] += bohr_eval(mv, psi, monomials[k]);
    for (std::size_t sidx = 0; sidx < shifts.size(); ++sidx) {
      const RBarPoint q = translate(mv, shifts[sidx], p);
      const BohrElement& chi = std::get<BohrPoint>(q).psi;
      for (std::size_t k = 0; k < monomials.size(); ++k)
        sums[(sidx + 1) * monomials.size() + k] += bohr_eval(mv, chi, monomials[k]);
    }
  }
  double worst_mean = 0.0;
  for (const Cx& s : sums) worst_mean = std::max(worst_mean, std::abs(s) / n);

  // t = 1/2: the real branch detects the shift at the 1% level
  const RBarMeasure mu_half = make_measure(0.5, rho, mv);
  std::vector<double> us_raw, us_shifted;
  for (int i = 0; i < n; ++i) {
    const RBarPoint p = sample(mu_half, rng);
    if (!std::holds_alternative<RealPoint>(p)) continue;
    const double x = std::get<RealPoint>(p).x;
    us_raw.push_back(rho.inverse(x));
    const RBarPoint q = translate(mv, 1.0, p);
    us_shifted.push_back(rho.inverse(std::get<RealPoint>(q).x));
  }
  const double crit = 1.628 / std::sqrt(static_cast<double>(us_raw.size()));
  const double d_raw = ks_uniform01(us_raw);
  const double d_shifted = ks_uniform01(us_shifted);

  CriterionResult r;
  r.id = 9;
  r.measured = d_shifted;
  r.bound = crit;
  r.exceed = true;
  r.pass = worst_mean <= mean_gate && d_raw < crit && d_shifted > crit;
  r.detail = sfmt(
      "endpoint monomial means %.3g (gate %.3g) across shifts 0.1/1/10; "
      "interpolating-measure shift statistic %.3g vs %.3g (unshifted %.3g, "
      "%zu line-branch draws)",
      worst_mean, mean_gate, d_shifted, crit, d_raw, us_raw.size());
  return r;
}

// ---------------------------------------------------------------------------
// 10: long modification sequences keep the defining properties, and values on
//     unrelated curves stay bit-identical.

struct ModOutcome {
  double residual = 0.0;
  std::size_t family_size = 0;
  std::size_t changed = 0;
  bool bystanders_ok = true;
  bool bystanders_found = true;
};

ModOutcome run_mod_sequence(const Symmetry& sym, const std::vector<Curve>& seeds,
                            const std::vector<SplitDecl>& decls,
                            const std::vector<Curve>& bystanders,
                            const std::function<GenHom(GenHom)>& mods) {
  ModOutcome out;
  const CurveFamily fam = make_family(seeds, decls);
  const GenHom start = trivial_genhom(sym, fam);
  const GenHom done = mods(start);

  const HomReport rep = check_invariants(done);
  out.residual =
      std::max({rep.mult_residual, rep.inv_residual, rep.relation_residual});
  out.family_size = done.fam.size();
  for (std::size_t i = 0; i < done.table.size(); ++i)
    if (!bit_eq(done.table[i], start.table[i])) ++out.changed;

  for (const Curve& b : bystanders) {
    for (const Curve& probe : {b, invert(b)}) {
      const auto idx = find_curve(fam, probe);
      if (!idx.has_value()) {
        out.bystanders_found = false;
        continue;
      }
      if (!bit_eq(done.table[*idx], start.table[*idx])) out.bystanders_ok = false;
    }
  }
  return out;
}

CriterionResult c10(const VerifyOptions& opt) {
  Rng rng(opt.seed * 1000 + 10);
  const Vec3 e1 = Vec3::UnitX(), e2 = Vec3::UnitY(), e3 = Vec3::UnitZ();
  const Vec3 diag = (e1 + e2).normalized();
  auto slope = [&rng]() { return Vec3(0.4 * gaussian3(rng)); };

  std::vector<ModOutcome> outs;

  {  // full translation symmetry: five orbit mods, then three free mods
    const Symmetry hom = make_symmetry(SymTag::Homogeneous);
    std::vector<Curve> seeds = {
        make_linear(Vec3::Zero(), e1, 1.0),    make_linear(Vec3(0, 1, 0), e1, 2.0),
        make_linear(Vec3(0, 0, 1), e1, 1.0),   make_linear(Vec3::Zero(), e2, 1.0),
        make_linear(Vec3(1, 0, 0), e2, 2.0),   make_linear(Vec3::Zero(), e3, 1.0),
        make_linear(Vec3(1, 0, 0), e3, 2.0),   make_linear(Vec3(0, 1, 0), e3, 1.0),
        make_linear(Vec3(1, 1, 0), e3, 1.0),
        make_circular(Vec3(5, 5, 5), e3, e1, M_PI / 2.0)};
    const std::vector<SplitDecl> decls = {{1, 1.0}, {4, 1.0}, {6, 1.0}, {0, 0.5}, {3, 0.5}};
    const Curve delta1 = seeds[5];
    const Curve delta2 = subcurve(seeds[6], 0.0, 1.0);
    const std::vector<Curve> bystanders = {seeds[9]};
    auto mods = [&](GenHom h) {
      h = modify_lag(h, Vec3::Zero(), e1, Vec3::Zero(), slope());
      h = modify_lag(h, Vec3(0, 1, 0), e1, Vec3::Zero(), slope());
      h = modify_lag(h, Vec3::Zero(), e2, Vec3::Zero(), slope());
      h = modify_lag(h, Vec3(1, 0, 0), e2, Vec3::Zero(), slope());
      h = modify_lag(h, Vec3::Zero(), e3, Vec3::Zero(), uniform(rng, 0.2, 0.9) * e3);
      h = modify_free(h, delta1, 0.0, uniform(rng, 0.2, 0.9) * e3);
      h = modify_free(h, delta2, 0.0, uniform(rng, 0.2, 0.9) * e3);
      h = modify_free(h, delta1, 0.0, uniform(rng, 0.2, 0.9) * e3);
      return h;
    };
    outs.push_back(run_mod_sequence(hom, seeds, decls, bystanders, mods));
  }

  {  // planar translation symmetry
    const Symmetry semi = make_semi_homogeneous(e1, e2);
    std::vector<Curve> seeds = {
        make_linear(Vec3::Zero(), e1, 1.0),   make_linear(Vec3(0, 1, 0), diag, 2.0),
        make_linear(Vec3::Zero(), e2, 1.0),   make_linear(Vec3(1, 0, 0), e2, 2.0),
        make_linear(Vec3::Zero(), e3, 1.0),   make_linear(Vec3(1, 0, 0), e3, 1.0),
        make_linear(Vec3(0, 1, 0), e3, 2.0),  make_linear(Vec3(2, 0, 0), e3, 1.0),
        make_linear(Vec3(0, 0, 5), e3, 1.0),
        make_circular(Vec3(3, 3, 0), e3, e1, M_PI / 3.0)};
    const std::vector<SplitDecl> decls = {{1, 1.0}, {3, 1.0}, {6, 1.0}, {0, 0.5}, {2, 0.5}};
    const Curve deltaA = seeds[4];
    const Curve deltaB = seeds[5];
    const std::vector<Curve> bystanders = {seeds[8], seeds[9],
                                           make_linear(Vec3(0, 1, 1), e3, 1.0)};
    auto mods = [&](GenHom h) {
      h = modify_lag(h, Vec3::Zero(), e1, Vec3::Zero(), slope());
      h = modify_lag(h, Vec3::Zero(), diag, Vec3::Zero(), slope());
      h = modify_lag(h, Vec3::Zero(), e2, Vec3::Zero(), slope());
      h = modify_lag(h, Vec3::Zero(), e1, Vec3::Zero(), slope());
      h = modify_lag(h, Vec3(1, 0, 0), e2, Vec3::Zero(), slope());
      h = modify_free(h, deltaA, 0.0, slope());
      h = modify_free(h, deltaB, 0.0, slope());
      h = modify_free(h, deltaA, 0.0, slope());
      return h;
    };
    outs.push_back(run_mod_sequence(semi, seeds, decls, bystanders, mods));
  }

  {  // rotation symmetry: orbit mods on two radii, free mods on radius lines
    const Symmetry sph = make_symmetry(SymTag::SphericallySymmetric);
    const Vec3 u = diag;
    std::vector<Curve> seeds = {
        make_linear(e1, e1, 1.0),
        make_linear(2.0 * e1, e1, 1.0),
        make_linear(e2, e2, 2.0),
        make_linear(e3, e3, 1.0),
        make_linear(u, u, 1.0),
        make_circular(Vec3::Zero(), e3, 2.0 * e1, M_PI / 2.0),
        make_circular(Vec3::Zero(), e2, 2.0 * e1, M_PI / 2.0),
        make_circular(Vec3::Zero(), e3, e1, M_PI / 3.0),
        make_circular(Vec3(0, 0, 3), e3, e1, M_PI / 4.0),
        make_linear(e1 + e2, e1, 1.0)};
    const std::vector<SplitDecl> decls = {
        {2, 1.0}, {5, M_PI / 4.0}, {0, 0.5}, {3, 0.5}, {7, M_PI / 6.0}};
    const Curve deltaR1 = seeds[0];
    const Curve deltaR2 = seeds[1];
    const std::vector<Curve> bystanders = {seeds[8], seeds[9]};
    auto pslope = [&rng]() {
      return Vec3(0.0, uniform(rng, -0.6, 0.6), uniform(rng, -0.6, 0.6));
    };
    const Vec3 mix = (e2 + e3).normalized();
    auto mods = [&](GenHom h) {
      h = modify_lag(h, 2.0 * e1, Vec3::Zero(), e3, pslope());
      h = modify_lag(h, 2.0 * e1, Vec3::Zero(), e2, pslope());
      h = modify_lag(h, e1, Vec3::Zero(), e3, pslope());
      h = modify_lag(h, e1, Vec3::Zero(), mix, pslope());
      h = modify_lag(h, 2.0 * e1, Vec3::Zero(), mix, pslope());
      h = modify_free(h, deltaR1, 0.0, uniform(rng, 0.2, 0.9) * e1);
      h = modify_free(h, deltaR2, 0.0, uniform(rng, 0.2, 0.9) * e1);
      h = modify_free(h, deltaR1, 0.0, uniform(rng, 0.2, 0.9) * e1);
      return h;
    };
    outs.push_back(run_mod_sequence(sph, seeds, decls, bystanders, mods));
  }

  {  // full euclidean symmetry: every supported curve is an orbit, so the
    // sequence uses eight orbit mods and no free mods
    const Symmetry iso = make_symmetry(SymTag::HomogeneousIsotropic);
    std::vector<Curve> seeds = {
        make_linear(Vec3::Zero(), e1, 1.0),
        make_linear(Vec3::Zero(), e2, 1.0),
        make_linear(Vec3(1, 1, 1), e3, 2.0),
        make_linear(Vec3::Zero(), diag, 1.0),
        make_linear(2.0 * e2, e1, 1.0),
        make_linear(Vec3::Zero(), e3, 1.0),
        make_lag(Vec3::Zero(), e1, e2, 1.0),
        make_circular(Vec3::Zero(), e3, e1, M_PI / 2.0),
        make_circular(Vec3(3, 0, 0), e2, 2.0 * e3, 2.0),
        make_circular(Vec3::Zero(), e1, 0.9 * e2, M_PI / 3.0)};
    const std::vector<SplitDecl> decls = {
        {2, 1.0}, {0, 0.5}, {1, 0.5}, {7, M_PI / 4.0}, {3, 0.5}};
    const std::vector<Curve> bystanders = {seeds[8], seeds[9]};
    auto mods = [&](GenHom h) {
      h = modify_lag(h, Vec3::Zero(), e1, Vec3::Zero(), uniform(rng, 0.2, 0.9) * e1);
      h = modify_lag(h, Vec3::Zero(), e2, Vec3::Zero(), uniform(rng, 0.2, 0.9) * e2);
      h = modify_lag(h, Vec3::Zero(), e3, Vec3::Zero(), uniform(rng, 0.2, 0.9) * e3);
      h = modify_lag(h, Vec3::Zero(), diag, Vec3::Zero(), uniform(rng, 0.2, 0.9) * diag);
      h = modify_lag(h, Vec3::Zero(), e1, e2,
                     Vec3(uniform(rng, -0.6, 0.6), uniform(rng, -0.6, 0.6), 0.0));
      h = modify_lag(h, Vec3::Zero(), e1, e3,
                     Vec3(uniform(rng, -0.6, 0.6), 0.0, uniform(rng, -0.6, 0.6)));
      h = modify_lag(h, Vec3::Zero(), 2.0 * e1, e2,
                     Vec3(uniform(rng, -0.6, 0.6), uniform(rng, -0.6, 0.6), 0.0));
      h = modify_lag(h, Vec3::Zero(), e1, Vec3::Zero(), uniform(rng, 0.2, 0.9) * e1);
      return h;
    };
    outs.push_back(run_mod_sequence(iso, seeds, decls, bystanders, mods));
  }

  double worst = 0.0;
  bool all_ok = true;
  std::size_t total_changed = 0;
  std::string sizes;
  for (const ModOutcome& o : outs) {
    worst = std::max(worst, o.residual);
    all_ok = all_ok && o.bystanders_ok && o.bystanders_found && o.family_size == 40;
    total_changed += o.changed;
    sizes += sfmt(" %zu", o.family_size);
  }
  CriterionResult r;
  r.id = 10;
  r.measured = worst;
  r.bound = tol_or(opt, 1e-10);
  r.pass = worst <= r.bound && all_ok && total_changed > 0;
  r.detail = sfmt(
      "modification sequences over four symmetries (family sizes%s): "
      "%zu table entries rewritten, unrelated entries bit-identical=%s",
      sizes.c_str(), total_changed, all_ok ? "yes" : "no");
  return r;
}

// ---------------------------------------------------------------------------
// 11: the shape tables of the equivariant-map spaces.

CriterionResult c11(const VerifyOptions& opt) {
  Rng rng(opt.seed * 1000 + 11);
  const Vec3 e1 = Vec3::UnitX(), e2 = Vec3::UnitY(), e3 = Vec3::UnitZ();
  int mismatches = 0, cases = 0;
  auto expect = [&](bool ok) {
    ++cases;
    if (!ok) ++mismatches;
  };

  const Symmetry hom = make_symmetry(SymTag::Homogeneous);
  for (int i = 0; i < 10; ++i) {
    const Vec3 x = gaussian3(rng);
    const Vec3 v = uniform(rng, 0.2, 2.0) * random_unit3(rng);
    const TypeTag tag = classify_type(hom, x, v, Vec3::Zero());
    expect(tag.kind == TypeKind::T4);
  }

  const Symmetry sph = make_symmetry(SymTag::SphericallySymmetric);
  for (double a : {0.5, 1.0, 2.0}) {
    for (double alpha : {0.15, 0.5, 1.0, 1.4}) {
      const Vec3 s = uniform(rng, 0.3, 1.5) *
                     (std::cos(alpha) * e1 + std::sin(alpha) * e2);
      const TypeTag tag = classify_type(sph, a * e1, Vec3::Zero(), s);
      expect(tag.kind == TypeKind::T4);
    }
    for (const Vec3& dir : {e2, e3, (e2 + e3).normalized()}) {
      const TypeTag tag =
          classify_type(sph, a * e1, Vec3::Zero(), uniform(rng, 0.3, 1.5) * dir);
      expect(tag.kind == TypeKind::T3 && (tag.axis - e1).norm() <= 1e-12);
    }
  }

  const Symmetry iso = make_symmetry(SymTag::HomogeneousIsotropic);
  for (const Vec3& dir : {e1, e2, e3, (e1 + e2).normalized()}) {
    const Vec3 v = uniform(rng, 0.2, 2.0) * dir;
    const TypeTag tag = classify_type(iso, Vec3::Zero(), v, Vec3::Zero());
    expect(tag.kind == TypeKind::T2 && tag.axis.cross(dir).norm() <= 1e-12 &&
           tag.axis.dot(dir) > 0.0);
  }
  const std::pair<Vec3, Vec3> screws[] = {
      {e1, e2}, {e1, e3}, {e2, e3}, {e1, (e2 + 0.5 * e1).normalized()}};
  for (const auto& [v, s] : screws) {
    const TypeTag tag = classify_type(iso, Vec3::Zero(), v, s);
    expect(tag.kind == TypeKind::T3 &&
           (tag.axis - v.cross(s).normalized()).norm() <= 1e-12);
  }

  // generators outside the verified tables must be rejected
  auto expect_reject = [&](auto&& call) {
    ++cases;
    try {
      call();
      ++mismatches;
    } catch (const UnverifiedStability&) {
    }
  };
  expect_reject([&] { classify_type(iso, Vec3::Zero(), e1, 2.0 * e1); });
  expect_reject([&] { classify_type(sph, 2.0 * e1, Vec3::Zero(), e1); });
  expect_reject([&] { classify_type(sph, -e1, Vec3::Zero(), e2); });
  expect_reject([&] { classify_type(hom, Vec3::Zero(), e1, e2); });

  CriterionResult r;
  r.id = 11;
  r.measured = static_cast<double>(mismatches);
  r.bound = 0.0;
  r.pass = mismatches == 0;
  r.detail = sfmt("shape tables across %d generator cases, %d mismatches", cases,
                  mismatches);
  return r;
}

// ---------------------------------------------------------------------------
// 12: the factorized orbit-sector law does not depend on the generator choice.

CriterionResult c12(const VerifyOptions& opt) {
  Rng rng(opt.seed * 1000 + 12);
  const Vec3 e1 = Vec3::UnitX(), e2 = Vec3::UnitY(), e3 = Vec3::UnitZ();
  const FreqModule m = make_module({"q1", "q2"});
  const int n = std::max(opt.samples, 1000);

  std::vector<std::pair<LagFactorSpec, LagFactorSpec>> pairs;
  const Symmetry iso = make_symmetry(SymTag::HomogeneousIsotropic);
  pairs.emplace_back(
      make_lag_spec(m, iso, Vec3::Zero(), {{e1, Vec3::Zero()}, {e1, e2}}),
      make_lag_spec(m, iso, Vec3::Zero(), {{e2, Vec3::Zero()}, {e2, e3}}));
  const Symmetry hom = make_symmetry(SymTag::Homogeneous);
  pairs.emplace_back(
      make_lag_spec(m, hom, Vec3::Zero(), {{e1, Vec3::Zero()}, {e3, Vec3::Zero()}}),
      make_lag_spec(m, hom, Vec3(1, 2, 3),
                    {{(e1 + e2).normalized(), Vec3::Zero()}, {e2, Vec3::Zero()}}));
  const Symmetry sph = make_symmetry(SymTag::SphericallySymmetric);
  pairs.emplace_back(
      make_lag_spec(m, sph, 2.0 * e1,
                    {{Vec3::Zero(), e2}, {Vec3::Zero(), (e1 + e2).normalized()}}),
      make_lag_spec(m, sph, 5.0 * e1,
                    {{Vec3::Zero(), e3}, {Vec3::Zero(), (e1 + e3).normalized()}}));
  const Symmetry semi = make_semi_homogeneous(e1, e2);
  pairs.emplace_back(
      make_lag_spec(m, semi, Vec3::Zero(), {{e1, Vec3::Zero()}, {e2, Vec3::Zero()}}),
      make_lag_spec(m, semi, Vec3(0.5, 0.5, 0.0),
                    {{(e1 + e2).normalized(), Vec3::Zero()},
                     {(e1 - e2).normalized(), Vec3::Zero()}}));

  double worst = 0.0;
  bool all_pass = true;
  for (const auto& [a, b] : pairs) {
    const IndependenceReport rep = choice_independence(a, b, rng, n);
    worst = std::max(worst, rep.max_sigma);
    all_pass = all_pass && rep.pass;
  }
  CriterionResult r;
  r.id = 12;
  r.measured = worst;
  r.bound = 3.0;
  r.pass = all_pass && worst <= 3.0;
  r.detail = sfmt(
      "orbit-sector laws for two generator choices per symmetry, n=%d, "
      "worst moment discrepancy in standard errors",
      n);
  return r;
}

// ---------------------------------------------------------------------------
// 13: holonomy tables of the one-symbol family realize the exponential law of
//     the compactified line at declared frequencies.

CriterionResult c13(const VerifyOptions& opt) {
  const Symmetry iso = make_symmetry(SymTag::HomogeneousIsotropic);
  const double c = 1.37;
  std::vector<std::string> labels;
  std::vector<std::optional<double>> values;
  std::vector<Curve> seeds;
  for (int k = 1; k <= 10; ++k) {
    labels.push_back(sfmt("f%d", k));
    values.emplace_back(0.21 * k);
    seeds.push_back(make_linear(Vec3(k, 0, 0), Vec3::UnitZ(), 0.21 * k));
  }
  const FreqModule m = make_module(labels, values);
  const CurveFamily fam = make_family(seeds);
  const GenHom h = from_connection(IsotropicConn{c}, iso, fam);
  const BohrElement chi = embed(m, c);

  double worst = 0.0;
  bool found = true;
  for (int k = 0; k < 10; ++k) {
    const auto idx = find_curve(fam, seeds[static_cast<std::size_t>(k)]);
    if (!idx.has_value()) {
      found = false;
      continue;
    }
    const GroupElement2& g = h.table[*idx];
    const Cx z(g.a, -g.b.dot(Vec3::UnitZ()));
    worst = std::max(worst, std::abs(z - chi.vals[static_cast<std::size_t>(k)]));
  }
  CriterionResult r;
  r.id = 13;
  r.measured = worst;
  r.bound = tol_or(opt, 1e-12);
  r.pass = found && worst <= r.bound;
  r.detail = "holonomy table vs embedded character at ten declared frequencies";
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, const VerifyOptions& opt) {
  switch (id) {
    case 1: return c1(opt);
    case 2: return c2(opt);
    case 3: return c3(opt);
    case 4: return c4(opt);
    case 5: return c5(opt);
    case 6: return c6(opt);
    case 7: return c7(opt);
    case 8: return c8(opt);
    case 9: return c9(opt);
    case 10: return c10(opt);
    case 11: return c11(opt);
    case 12: return c12(opt);
    case 13: return c13(opt);
    default: throw OutOfDomain("run_criterion: id must lie in 1..13");
  }
}

std::vector<CriterionResult> run_all(const VerifyOptions& opt) {
  std::vector<CriterionResult> res;
  res.reserve(13);
  for (int id = 1; id <= 13; ++id) res.push_back(run_criterion(id, opt));
  return res;
}

std::string format_result(const CriterionResult& r) {
  return sfmt("criterion %d: %s — ", r.id, r.pass ? "PASS" : "FAIL") + r.detail +
         sfmt("; measured=%.17g, bound=%.17g", r.measured, r.bound);
}

}  // namespace symred
