#include "symred/rbar.hpp"

#include <algorithm>
#include <cmath>

#include "symred/errors.hpp"

namespace symred {

RhoHomeo default_rho() {
  RhoHomeo rho;
  rho.name = "tan";
  rho.forward = [](double t) { return std::tan(M_PI * (t - 0.5)); };
  rho.inverse = [](double x) { return std::atan(x) / M_PI + 0.5; };
  return rho;
}

void validate_rho(const RhoHomeo& rho) {
  if (!rho.forward || !rho.inverse) throw OutOfDomain("validate_rho: missing evaluators");
  double prev = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 1000; ++i) {
    const double t = (i + 0.5) / 1000.0;
    const double x = rho.forward(t);
    if (!(x > prev)) throw OutOfDomain("validate_rho: not strictly increasing");
    if (std::abs(rho.inverse(x) - t) >= 1e-10)
      throw OutOfDomain("validate_rho: inverse residual too large");
    prev = x;
  }
}

RBarMeasure make_measure(double t, RhoHomeo rho, FreqModule module) {
  if (!(t >= 0.0 && t <= 1.0)) throw OutOfDomain("make_measure: weight outside [0,1]");
  validate_rho(rho);
  return RBarMeasure{t, std::move(rho), std::move(module)};
}

Cx f_shifted(const RhoHomeo& rho, double x) {
  return 1.0 + std::polar(1.0, 2.0 * M_PI * (rho.inverse(x) - 0.5));
}

PiLValue pi_L(const FreqModule& m, const RBarPoint& p, const FreqTuple& L,
              const RhoHomeo& rho) {
  PiLValue out;
  if (const auto* rp = std::get_if<RealPoint>(&p)) {
    out.real_value = f_shifted(rho, rp->x);
  } else {
    out.circle_tuple = project(m, std::get<BohrPoint>(p).psi, L);
  }
  return out;
}

RBarPoint translate(const FreqModule& m, double v, const RBarPoint& p) {
  if (const auto* rp = std::get_if<RealPoint>(&p)) return RealPoint{v + rp->x};
  return BohrPoint{bohr_add(embed(m, v), std::get<BohrPoint>(p).psi)};
}

RBarPoint sample(const RBarMeasure& mu, Rng& rng) {
  if (uniform01(rng) < mu.t) {
    double u = uniform01(rng);
    while (u == 0.0) u = uniform01(rng);
    return RealPoint{mu.rho.forward(u)};
  }
  return BohrPoint{haar_sample(mu.module, rng)};
}

GroupElement2 pi_circ(const FreqModule& m, const RBarPoint& p, double tau, double r) {
  if (!(tau > 0.0 && tau < 2.0 * M_PI)) throw OutOfDomain("pi_circ: tau outside (0, 2 pi)");
  if (!(r > 0.0)) throw OutOfDomain("pi_circ: radius must be positive");
  if (const auto* rp = std::get_if<RealPoint>(&p))
    return exp2(-(tau / 2.0) * Vec3(0.0, 2.0 * r * rp->x, 1.0));

  const auto& psi = std::get<BohrPoint>(p).psi;
  if (psi.vals.size() != m.size()) throw OutOfDomain("pi_circ: element/module mismatch");
  const double target = r * tau;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m.values[i]) continue;
    Cx z;
    if (std::abs(*m.values[i] - target) <= 1e-9)
      z = psi.vals[i];
    else if (std::abs(*m.values[i] + target) <= 1e-9)
      z = std::conj(psi.vals[i]);
    else
      continue;
    return GroupElement2(z.real(), Vec3(0.0, -z.imag(), 0.0));
  }
  throw OutOfSpan("pi_circ: no generator carries the frequency r*tau");
}

double a_n(int n, double tau, double r) {
  if (n == 0) throw OutOfDomain("a_n: index must be nonzero");
  if (!(tau > 0.0 && tau < 2.0 * M_PI) || !(r > 0.0))
    throw OutOfDomain("a_n: parameters outside the chart");
  const double mag = std::sqrt(double(n) * double(n) * M_PI * M_PI / (tau * tau) - 0.25);
  return (n > 0 ? 1.0 : -1.0) * mag / r;
}

Cx f_gap(double c, double tau, double r) {
  const double beta = std::sqrt(c * c * r * r + 0.25);
  return Cx{std::cos(beta * tau) - std::cos(c * r * tau),
            std::sin(beta * tau) / (2.0 * beta)};
}

double dist_to_Htau2(const GroupElement2& g) {
  const double proj = std::sqrt(g.a * g.a + g.b.y() * g.b.y());
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * proj));
}

double merge_bound(int n, double tau, double r, int samples) {
  if (n == 0) throw OutOfDomain("merge_bound: index must be nonzero");
  if (samples < 2) throw OutOfDomain("merge_bound: needs at least two samples");
  const int lo = n > 0 ? n : n - 1;
  const double c0 = a_n(lo, tau, r);
  const double c1 = a_n(lo + 1 == 0 ? 1 : lo + 1, tau, r);
  const FreqModule dummy = make_module({"_"});
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double c = c0 + (c1 - c0) * (double(k) + 0.5) / double(samples);
    worst = std::max(worst, dist_to_Htau2(pi_circ(dummy, RealPoint{c}, tau, r)));
  }
  return worst;
}

double ks_uniform01(std::vector<double> xs) {
  if (xs.empty()) throw OutOfDomain("ks_uniform01: empty sample");
  std::sort(xs.begin(), xs.end());
  const double n = double(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double u = std::min(1.0, std::max(0.0, xs[i]));
    d = std::max(d, std::max(double(i + 1) / n - u, u - double(i) / n));
  }
  return d;
}

}  // namespace symred
