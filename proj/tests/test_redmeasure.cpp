#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "symred/redmeasure.hpp"

using namespace symred;

namespace {

FreeIndex axes_index() {
  FreeIndex idx;
  idx.sym = make_symmetry(SymTag::Homogeneous);
  idx.segments = {make_linear(Vec3::Zero(), Vec3::UnitX(), 1.0),
                  make_linear(Vec3::Zero(), Vec3::UnitY(), 2.0)};
  return idx;
}

bool on_canonical_half(const Cx& v) {
  return v.real() > 0.0 || (v.real() == 0.0 && v.imag() > 0.0);
}

}  // namespace

TEST_CASE("index validity") {
  SUBCASE("independent directions are accepted") {
    CHECK_NOTHROW(validate_index(axes_index()));
  }

  SUBCASE("congruent segments are rejected") {
    FreeIndex idx;
    idx.sym = make_symmetry(SymTag::Homogeneous);
    idx.segments = {make_linear(Vec3::Zero(), Vec3::UnitX(), 1.0),
                    make_linear(Vec3(0.0, 2.0, 0.0), Vec3::UnitX(), 1.5)};
    CHECK_THROWS_AS(validate_index(idx), InvalidIndex);
  }

  SUBCASE("rotation congruences are rejected too") {
    FreeIndex idx;
    idx.sym = make_symmetry(SymTag::SphericallySymmetric);
    idx.segments = {make_linear(Vec3::UnitX(), Vec3::UnitX(), 1.0),
                    make_linear(1.5 * Vec3::UnitY(), Vec3::UnitY(), 1.0)};
    CHECK_THROWS_AS(validate_index(idx), InvalidIndex);
    // radially disjoint pieces of two rays are fine
    idx.segments[1] = make_linear(2.0 * Vec3::UnitY(), Vec3::UnitY(), 1.0);
    CHECK_NOTHROW(validate_index(idx));
  }

  SUBCASE("the fully symmetric group leaves no room") {
    FreeIndex idx;
    idx.sym = make_symmetry(SymTag::HomogeneousIsotropic);
    idx.segments = {make_linear(Vec3::Zero(), Vec3::UnitX(), 1.0)};
    CHECK_THROWS_AS(validate_index(idx), InvalidIndex);
  }

  SUBCASE("unsupported segments are rejected") {
    FreeIndex idx;
    idx.sym = make_symmetry(SymTag::Homogeneous);
    idx.segments = {Curve{make_lag(Vec3::Zero(), Vec3::UnitZ(), Vec3::UnitZ(), 1.0)}};
    CHECK_THROWS_AS(validate_index(idx), InvalidIndex);
  }
}

TEST_CASE("sampling the free sector") {
  SUBCASE("an empty index yields an empty tuple") {
    FreeIndex idx;
    idx.sym = make_symmetry(SymTag::Homogeneous);
    Rng rng(1);
    CHECK(free_sample(idx, rng).empty());
  }

  SUBCASE("draws are unit group elements") {
    Rng rng(5);
    const FreeIndex idx = axes_index();
    for (int k = 0; k < 200; ++k)
      for (const GroupElement2& g : free_sample(idx, rng))
        CHECK(std::abs(g.a * g.a + g.b.squaredNorm() - 1.0) < 1e-12);
  }

  SUBCASE("trace moments vanish and segments are independent") {
    Rng rng(9);
    const FreeIndex idx = axes_index();
    const int n = 20000;
    double m1 = 0.0, m2 = 0.0, cross = 0.0;
    for (int k = 0; k < n; ++k) {
      const auto s = free_sample(idx, rng);
      const double t1 = 2.0 * s[0].a, t2 = 2.0 * s[1].a;
      m1 += t1;
      m2 += t2;
      cross += t1 * t2;
    }
    m1 /= n;
    m2 /= n;
    cross /= n;
    // tr has unit variance under the Haar measure
    const double bound = 3.0 / std::sqrt((double)n);
    CHECK(std::abs(m1) < bound);
    CHECK(std::abs(m2) < bound);
    CHECK(std::abs(cross - m1 * m2) < 3.0 * bound);
  }

  SUBCASE("fixed seed reproduces the stored draw") {
    Rng rng(7);
    const auto s = free_sample(axes_index(), rng);
    REQUIRE(s.size() == 2);
    CHECK(s[0].a == doctest::Approx(0.27328676348356606).epsilon(1e-15));
    CHECK(s[0].b.x() == doctest::Approx(0.61728654479947709).epsilon(1e-15));
    CHECK(s[0].b.y() == doctest::Approx(0.71329996256395078).epsilon(1e-15));
    CHECK(s[0].b.z() == doctest::Approx(0.18834763051460729).epsilon(1e-15));
    CHECK(s[1].a == doctest::Approx(-0.37680450668207355).epsilon(1e-15));
  }
}

TEST_CASE("coordinate transitions") {
  const Symmetry hom = make_symmetry(SymTag::Homogeneous);
  const Curve unit = make_linear(Vec3::Zero(), Vec3::UnitX(), 1.0);
  FreeIndex fine;
  fine.sym = hom;
  fine.segments = {unit};
  Rng rng(23);
  const GroupElement2 s0 = haar2(rng);

  SUBCASE("the identity refinement changes nothing") {
    const TransitionPlan plan = transition_plan(fine, fine);
    REQUIRE(plan.rows.size() == 1);
    REQUIRE(plan.rows[0].size() == 1);
    CHECK(plan.rows[0][0].fine == 0);
    CHECK(!plan.rows[0][0].inverted);
    const auto out = free_transition(fine, fine, {s0});
    CHECK(dist(out[0], s0) < 1e-15);
  }

  SUBCASE("a collinear double segment composes the draw with itself") {
    FreeIndex coarse;
    coarse.sym = hom;
    coarse.segments = {make_linear(Vec3::Zero(), Vec3::UnitX(), 2.0)};
    const TransitionPlan plan = transition_plan(coarse, fine);
    REQUIRE(plan.rows.size() == 1);
    REQUIRE(plan.rows[0].size() == 2);
    for (const TransitionTerm& t : plan.rows[0]) {
      CHECK(t.fine == 0);
      CHECK(!t.inverted);
      CHECK(dist(t.sigma, identity2()) < 1e-15);
    }
    const auto out = free_transition(coarse, fine, {s0});
    CHECK(dist(out[0], mul(s0, s0)) < 1e-14);
  }

  SUBCASE("translated and inverted congruences") {
    // an index may not hold both at once: a segment and a reversed translate
    // of it are congruent as images, so they are checked one at a time
    FreeIndex shifted, reversed;
    shifted.sym = reversed.sym = hom;
    shifted.segments = {make_linear(Vec3(0.0, 1.0, 0.0), Vec3::UnitX(), 1.0)};
    reversed.segments = {invert(unit)};
    const auto out_s = free_transition(shifted, fine, {s0});
    CHECK(dist(out_s[0], s0) < 1e-14);
    const auto out_r = free_transition(reversed, fine, {s0});
    CHECK(dist(out_r[0], inv(s0)) < 1e-14);
  }

  SUBCASE("rotated congruences conjugate by the rotation") {
    FreeIndex rfine, rcoarse;
    rfine.sym = rcoarse.sym = make_symmetry(SymTag::SphericallySymmetric);
    rfine.segments = {make_linear(Vec3::UnitX(), Vec3::UnitX(), 1.0)};
    rcoarse.segments = {make_linear(Vec3::UnitY(), Vec3::UnitY(), 1.0)};
    const TransitionPlan plan = transition_plan(rcoarse, rfine);
    REQUIRE(plan.rows[0].size() == 1);
    const GroupElement2 sigma = plan.rows[0][0].sigma;
    CHECK((adjoint(sigma, Vec3::UnitX()) - Vec3::UnitY()).norm() < 1e-12);
    const auto out = free_transition(rcoarse, rfine, {s0});
    CHECK(dist(out[0], conj2(sigma, s0)) < 1e-15);
  }

  SUBCASE("a coarse ray can stitch several fine rays") {
    FreeIndex rfine, rcoarse;
    rfine.sym = rcoarse.sym = make_symmetry(SymTag::SphericallySymmetric);
    rfine.segments = {make_linear(Vec3::UnitX(), Vec3::UnitX(), 1.0),
                      make_linear(2.0 * Vec3::UnitY(), Vec3::UnitY(), 1.0)};
    rcoarse.segments = {make_linear(Vec3::UnitZ(), Vec3::UnitZ(), 2.0)};
    Rng r2(29);
    const GroupElement2 s1 = haar2(r2);
    const TransitionPlan plan = transition_plan(rcoarse, rfine);
    REQUIRE(plan.rows[0].size() == 2);
    CHECK(plan.rows[0][0].fine == 0);
    CHECK(plan.rows[0][1].fine == 1);
    const auto out = free_transition(rcoarse, rfine, {s0, s1});
    const GroupElement2 expect = mul(conj2(plan.rows[0][1].sigma, s1),
                                     conj2(plan.rows[0][0].sigma, s0));
    CHECK(dist(out[0], expect) < 1e-15);
  }

  SUBCASE("partial covers are refused") {
    FreeIndex coarse;
    coarse.sym = hom;
    coarse.segments = {make_linear(Vec3::Zero(), Vec3::UnitX(), 1.5)};
    CHECK_THROWS_AS((void)transition_plan(coarse, fine), UnsupportedPair);
    FreeIndex gap;
    gap.sym = hom;
    gap.segments = {make_linear(Vec3::Zero(), Vec3::UnitZ(), 1.0)};
    CHECK_THROWS_AS((void)transition_plan(gap, fine), UnsupportedPair);
  }

  SUBCASE("single-occurrence transitions push the Haar draw to a Haar draw") {
    FreeIndex rfine, rcoarse;
    rfine.sym = rcoarse.sym = make_symmetry(SymTag::SphericallySymmetric);
    rfine.segments = {make_linear(Vec3::UnitX(), Vec3::UnitX(), 1.0)};
    rcoarse.segments = {invert(make_linear(Vec3::UnitY(), Vec3::UnitY(), 1.0))};
    const TransitionPlan plan = transition_plan(rcoarse, rfine);
    // symbolically a single power of a single coordinate
    REQUIRE(plan.rows.size() == 1);
    REQUIRE(plan.rows[0].size() == 1);
    CHECK(plan.rows[0][0].inverted);

    Rng r3(31);
    const int n = 20000;
    double ma = 0.0, mx = 0.0, my = 0.0, mz = 0.0;
    for (int k = 0; k < n; ++k) {
      const auto out = apply_transition(plan, {haar2(r3)});
      ma += out[0].a;
      mx += out[0].b.x();
      my += out[0].b.y();
      mz += out[0].b.z();
    }
    // each coordinate has variance 1/4 under the Haar measure
    const double bound = 3.0 * 0.5 / std::sqrt((double)n);
    CHECK(std::abs(ma / n) < bound);
    CHECK(std::abs(mx / n) < bound);
    CHECK(std::abs(my / n) < bound);
    CHECK(std::abs(mz / n) < bound);
  }
}

TEST_CASE("orbit-sector sampling") {
  const FreqModule mod = make_module({"a", "b"}, {1.0, std::sqrt(2.0)});
  const Symmetry iso = make_symmetry(SymTag::HomogeneousIsotropic);
  const LagFactorSpec spec = make_lag_spec(
      mod, iso, Vec3::Zero(),
      {{Vec3::UnitX(), Vec3::Zero()}, {Vec3::UnitX(), Vec3::UnitY()}});

  SUBCASE("factory tags come from the stability tables") {
    REQUIRE(spec.factors.size() == 2);
    CHECK(spec.factors[0].kind == TypeKind::T2);
    CHECK(spec.factors[1].kind == TypeKind::T3);
  }

  SUBCASE("draws land on the canonical representatives") {
    Rng rng(41);
    for (int k = 0; k < 500; ++k) {
      const auto pts = lag_sample(spec, rng);
      REQUIRE(pts.size() == 2);
      for (const Cx& z : pts[0].psi.vals) CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
      if (!pts[1].zero_class) {
        CHECK(on_canonical_half(pts[1].v_circle));
        // re-applying the pairing relation reproduces the representative
        const XgpPoint again =
            canonical_xgp(pts[1].tag, bohr_inv(pts[1].psi), -pts[1].v_circle);
        CHECK(again.psi.vals[0].real() == pts[1].psi.vals[0].real());
        CHECK(again.psi.vals[0].imag() == pts[1].psi.vals[0].imag());
        CHECK(again.v_circle.real() == pts[1].v_circle.real());
        CHECK(again.v_circle.imag() == pts[1].v_circle.imag());
      }
    }
  }

  SUBCASE("point factors collapse to the zero class") {
    LagFactorSpec point;
    point.module = mod;
    point.factors = {TypeTag{TypeKind::T1, Vec3::UnitX()}};
    Rng rng(43);
    for (int k = 0; k < 10; ++k) {
      const auto pts = lag_sample(point, rng);
      CHECK(pts[0].zero_class);
      CHECK(pts[0].v_circle.real() == 1.0);
      CHECK(pts[0].v_circle.imag() == 0.0);
    }
  }

  SUBCASE("sphere factors are unit and canonical") {
    const Symmetry hom = make_symmetry(SymTag::Homogeneous);
    const LagFactorSpec s4 =
        make_lag_spec(mod, hom, Vec3::Zero(), {{Vec3::UnitZ(), Vec3::Zero()}});
    Rng rng(47);
    for (int k = 0; k < 500; ++k) {
      const auto pts = lag_sample(s4, rng);
      CHECK(std::abs(pts[0].v_sphere.norm() - 1.0) < 1e-12);
      if (!pts[0].zero_class)
        CHECK((pts[0].v_sphere.x() > 0.0 ||
               (pts[0].v_sphere.x() == 0.0 && pts[0].v_sphere.y() >= 0.0)));
    }
  }

  SUBCASE("the canonical circle coordinate is uniform on its half") {
    Rng rng(53);
    const int n = 20000, bins = 10;
    std::vector<int> count(bins, 0);
    for (int k = 0; k < n; ++k) {
      const auto pts = lag_sample(spec, rng);
      const double ang = std::arg(pts[1].v_circle);  // in (-pi/2, pi/2] on the half
      int b = (int)std::floor((ang + M_PI / 2.0) / (M_PI / bins));
      if (b == bins) b = bins - 1;
      REQUIRE(b >= 0);
      REQUIRE(b < bins);
      ++count[b];
    }
    double chi2 = 0.0;
    const double expect = (double)n / bins;
    for (int b = 0; b < bins; ++b)
      chi2 += (count[b] - expect) * (count[b] - expect) / expect;
    // 1% critical value of the chi-square distribution with 9 degrees of freedom
    CHECK(chi2 < 21.666);
  }

  SUBCASE("fixed seed reproduces the stored draw") {
    Rng rng(11);
    const auto pts = lag_sample(spec, rng);
    CHECK(pts[0].psi.vals[0].real() == doctest::Approx(0.5051796621506276).epsilon(1e-15));
    CHECK(pts[0].psi.vals[0].imag() == doctest::Approx(0.86301419973797522).epsilon(1e-15));
    CHECK(pts[1].v_circle.real() == doctest::Approx(0.93273220500106802).epsilon(1e-15));
    CHECK(pts[1].v_circle.imag() == doctest::Approx(0.36056987360821713).epsilon(1e-15));
  }
}

TEST_CASE("independence from the construction choices") {
  const FreqModule mod = make_module({"a", "b"}, {1.0, std::sqrt(2.0)});
  const Symmetry iso = make_symmetry(SymTag::HomogeneousIsotropic);
  const int n = 20000;

  SUBCASE("rotated generators give the same factor measures") {
    const LagFactorSpec a = make_lag_spec(
        mod, iso, Vec3::Zero(),
        {{Vec3::UnitX(), Vec3::Zero()}, {Vec3::UnitX(), Vec3::UnitY()}});
    const LagFactorSpec b = make_lag_spec(
        mod, iso, Vec3::Zero(),
        {{Vec3::UnitY(), Vec3::Zero()}, {Vec3::UnitZ(), Vec3::UnitX()}});
    Rng rng(61);
    const IndependenceReport rep = choice_independence(a, b, rng, n);
    CHECK(rep.pass);
    CHECK(rep.max_sigma <= 3.0);
  }

  SUBCASE("the three symmetry tables agree under re-choices") {
    // translational shape
    const Symmetry hom = make_symmetry(SymTag::Homogeneous);
    const LagFactorSpec ta = make_lag_spec(
        mod, hom, Vec3::Zero(), {{Vec3::UnitX(), Vec3::Zero()}, {Vec3::UnitY(), Vec3::Zero()}});
    const LagFactorSpec tb = make_lag_spec(
        mod, hom, Vec3(2.0, -1.0, 0.5),
        {{Vec3(1.0, 1.0, 0.0).normalized(), Vec3::Zero()}, {Vec3::UnitZ(), Vec3::Zero()}});
    // rotational shape
    const Symmetry sph = make_symmetry(SymTag::SphericallySymmetric);
    const LagFactorSpec ra = make_lag_spec(
        mod, sph, 2.0 * Vec3::UnitX(),
        {{Vec3::Zero(), Vec3::UnitY()}, {Vec3::Zero(), Vec3(1.0, 1.0, 0.0).normalized()}});
    const LagFactorSpec rb = make_lag_spec(
        mod, sph, 5.0 * Vec3::UnitX(),
        {{Vec3::Zero(), Vec3::UnitZ()}, {Vec3::Zero(), Vec3(1.0, 0.0, 1.0).normalized()}});
    // fully symmetric shape
    const LagFactorSpec ia = make_lag_spec(
        mod, iso, Vec3::Zero(),
        {{Vec3::UnitX(), Vec3::Zero()}, {Vec3::UnitX(), Vec3::UnitY()}});
    const LagFactorSpec ib = make_lag_spec(
        mod, iso, Vec3::Zero(),
        {{Vec3(0.6, 0.8, 0.0), Vec3::Zero()}, {Vec3::UnitY(), Vec3::UnitZ()}});
    Rng rng(67);
    CHECK(choice_independence(ta, tb, rng, n).pass);
    CHECK(choice_independence(ra, rb, rng, n).pass);
    CHECK(choice_independence(ia, ib, rng, n).pass);
  }

  SUBCASE("identical specs agree trivially") {
    const LagFactorSpec a = make_lag_spec(
        mod, iso, Vec3::Zero(), {{Vec3::UnitX(), Vec3::Zero()}});
    Rng rng(71);
    CHECK(choice_independence(a, a, rng, n).pass);
  }

  SUBCASE("mismatched shapes are refused") {
    const LagFactorSpec a = make_lag_spec(
        mod, iso, Vec3::Zero(), {{Vec3::UnitX(), Vec3::Zero()}});
    const LagFactorSpec b = make_lag_spec(
        mod, iso, Vec3::Zero(), {{Vec3::UnitX(), Vec3::UnitY()}});
    const LagFactorSpec c = make_lag_spec(
        mod, iso, Vec3::Zero(),
        {{Vec3::UnitX(), Vec3::Zero()}, {Vec3::UnitY(), Vec3::Zero()}});
    Rng rng(73);
    CHECK_THROWS_AS((void)choice_independence(a, b, rng, 1000), IncompatibleSpecs);
    CHECK_THROWS_AS((void)choice_independence(a, c, rng, 1000), IncompatibleSpecs);
  }
}

TEST_CASE("product structure of paired samplers") {
  SUBCASE("constant functions factor exactly") {
    Rng rng(81);
    const FubiniReport rep = fubini_check(
        [](Rng&) { return std::pair<double, double>{1.0, 1.0}; }, rng, 5000);
    CHECK(rep.residual == 0.0);
    CHECK(rep.pass);
  }

  SUBCASE("independent circle characters factor within noise") {
    Rng rng(83);
    const FubiniReport rep = fubini_check(
        [](Rng& r) {
          const double u = uniform(r, 0.0, 2.0 * M_PI);
          const double v = uniform(r, 0.0, 2.0 * M_PI);
          return std::pair<double, double>{std::cos(u), std::cos(v)};
        },
        rng, 100000);
    CHECK(rep.sigma > 0.0);
    CHECK(rep.residual <= 3.0 * rep.sigma);
    CHECK(rep.pass);
  }

  SUBCASE("a correlated mutation is detected") {
    Rng rng(89);
    const FubiniReport rep = fubini_check(
        [](Rng& r) {
          const double u = uniform(r, 0.0, 2.0 * M_PI);
          return std::pair<double, double>{std::cos(u), std::cos(u)};
        },
        rng, 100000);
    CHECK(rep.residual > 3.0 * rep.sigma);
    CHECK(!rep.pass);
  }
}
