#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "symred/bohr.hpp"
#include "symred/su2.hpp"

namespace symred {

// Strictly monotone smooth bijection (0,1) <-> R with an explicit inverse.
struct RhoHomeo {
  std::string name = "tan";
  std::function<double(double)> forward;
  std::function<double(double)> inverse;
};

RhoHomeo default_rho();
// monotonicity sampled at 1e3 interior points, inverse residual < 1e-10
void validate_rho(const RhoHomeo& rho);

// Point of the disjoint union: a real number or a character.
struct RealPoint {
  double x = 0.0;
};
struct BohrPoint {
  BohrElement psi;
};
using RBarPoint = std::variant<RealPoint, BohrPoint>;

// Interpolating measure: weight t on the line (pushed through rho), weight
// 1-t on the uniform character measure of the module.
struct RBarMeasure {
  double t = 0.0;
  RhoHomeo rho;
  FreqModule module;
};
RBarMeasure make_measure(double t, RhoHomeo rho, FreqModule module);

// 1 + exp(i 2 pi (rho^-1(x) - 1/2)): injective on R, misses 0, vanishes at
// the ends of the line.
Cx f_shifted(const RhoHomeo& rho, double x);

// Projection value: the real branch lands on the shifted circle, the
// character branch on the torus of the tuple.
struct PiLValue {
  std::optional<Cx> real_value;
  std::vector<Cx> circle_tuple;
};
PiLValue pi_L(const FreqModule& m, const RBarPoint& p, const FreqTuple& L,
              const RhoHomeo& rho);

RBarPoint translate(const FreqModule& m, double v, const RBarPoint& p);
RBarPoint sample(const RBarMeasure& mu, Rng& rng);

// Projection induced by a circle of circumference parameters (tau, r). The
// real branch is the closed two-parameter matrix family; the character branch
// evaluates the frequency r*tau (a declared generator value up to sign,
// within 1e-9) and lands on the e2 torus.
GroupElement2 pi_circ(const FreqModule& m, const RBarPoint& p, double tau, double r);

// (sign(n)/r) sqrt(n^2 pi^2 / tau^2 - 1/4): the parameters sent to the center
double a_n(int n, double tau, double r);

// cos(beta_c tau) + (i / (2 beta_c)) sin(beta_c tau) - cos(c r tau) with
// beta_c = sqrt(c^2 r^2 + 1/4); nonvanishing witness for the generator gap
Cx f_gap(double c, double tau, double r);

// distance to the nearest element of the e2 torus: sqrt(2 - 2 sqrt(a^2+b2^2))
double dist_to_Htau2(const GroupElement2& g);

// sup over a sampled grid of the interval between consecutive center hits
double merge_bound(int n, double tau, double r, int samples = 2000);

// Kolmogorov-Smirnov statistic against the uniform law on (0,1).
double ks_uniform01(std::vector<double> xs);

}  // namespace symred
