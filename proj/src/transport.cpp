#include "symred/transport.hpp"

#include <cmath>

#include "symred/errors.hpp"

namespace symred {

namespace {

// does the connection family admit the orbit-curve formula under this group?
bool family_matches(const InvariantConnection& w, const Symmetry& sym) {
  return std::visit(
      [&sym](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, IsotropicConn>) {
          return true;  // invariant under the full euclidean group
        } else if constexpr (std::is_same_v<T, SphericalConn>) {
          return sym.tag == SymTag::SphericallySymmetric;
        } else if constexpr (std::is_same_v<T, HomogeneousConn>) {
          return sym.tag == SymTag::Homogeneous;
        } else {
          if (sym.tag != SymTag::SemiHomogeneous) return false;
          const Vec3 n_conn = c.w1.normalized().cross(
              (c.w2 - c.w2.dot(c.w1.normalized()) * c.w1.normalized()).normalized());
          return n_conn.cross(sym.plane_normal()).norm() < 1e-9;
        }
      },
      w);
}

// endpoint of the orbit lift: exp(l s) exp(-l omega(generator at the start))
GroupElement2 orbit_formula(const InvariantConnection& w, const LagData& d) {
  const Vec3 a0 =
      eval_conn(w, d.x, identity2(), 2.0 * d.s.cross(d.x) + d.v, d.s);
  return mul(exp2(d.l * d.s), exp2(-d.l * a0));
}

// radius line x(t) = (x0n + t) vhat: the integrand stays on the span of vhat,
// so the path-ordered product collapses to a plain integral of the head
// coefficient polynomial
GroupElement2 radial_line_formula(const SphericalConn& w, const LinearCurve& line) {
  const double x0n = line.x.dot(line.v);
  auto antideriv = [&w](double t) {
    double acc = 0.0;
    double p = t;  // t^(2k+1)
    for (size_t k = 0; k < w.f.size(); ++k) {
      acc += w.f[k] * p / double(2 * k + 1);
      p *= t * t;
    }
    return acc;
  };
  const double integral = antideriv(x0n + line.l) - antideriv(x0n);
  return exp2(-integral * line.v);
}

const LinearCurve* reduce_to_line(const Curve& c, std::optional<Curve>& storage) {
  if (const auto* line = std::get_if<LinearCurve>(&c)) return line;
  if (const auto* gen = std::get_if<LieAlgGenCurve>(&c)) {
    storage = lag_reduce(*gen);
    if (storage) return std::get_if<LinearCurve>(&*storage);
  }
  return nullptr;
}

}  // namespace

TransportResult transport_closed(const InvariantConnection& w, const Symmetry& sym,
                                 const Curve& c) {
  validate_connection(w);
  validate_curve(c);

  if (std::holds_alternative<IsotropicConn>(w)) {
    // every line, circle, and generator flow is an orbit of the full group
    if (!std::holds_alternative<LieAlgGenCurve>(c)) return {orbit_formula(w, lag_data(c))};
    const auto& gen = std::get<LieAlgGenCurve>(c);
    if (auto reduced = lag_reduce(gen)) return {orbit_formula(w, lag_data(*reduced))};
    if (sym.tag == SymTag::HomogeneousIsotropic) return {orbit_formula(w, lag_data(c))};
    throw NotLAG("transport_closed: helical curve needs the full symmetry group");
  }

  if (!family_matches(w, sym))
    throw NotLAG("transport_closed: connection is not invariant under this symmetry");

  if (const auto* sc = std::get_if<SphericalConn>(&w)) {
    std::optional<Curve> storage;
    if (const LinearCurve* line = reduce_to_line(c, storage)) {
      if (line->x.cross(line->v).norm() < 1e-9) return {radial_line_formula(*sc, *line)};
      throw NotLAG("transport_closed: line misses the origin");
    }
  }

  if (classify(sym, c) != CurveClass::LAG)
    throw NotLAG("transport_closed: curve is not an orbit of the symmetry group");
  return {orbit_formula(w, lag_data(c))};
}

TransportResult transport_ode(const GaugeField& A, const Curve& c, int steps) {
  if (steps < 16) throw OutOfDomain("transport_ode: needs at least 16 steps");
  const double l = curve_domain(c);
  const double dt = l / double(steps);

  // right-hand side of the horizontality condition on quaternion coordinates:
  // q' = -(0, w) q with w = A(c(t)) c'(t)
  auto rhs = [&A, &c](double t, const Eigen::Vector4d& q) -> Eigen::Vector4d {
    const Vec3 w = eval_field(A, evaluate(c, t), tangent(c, t));
    const double a = q(0);
    const Vec3 b = q.tail<3>();
    Eigen::Vector4d out;
    out(0) = w.dot(b);
    out.tail<3>() = -(a * w + w.cross(b));
    return out;
  };

  Eigen::Vector4d q(1.0, 0.0, 0.0, 0.0);
  for (int k = 0; k < steps; ++k) {
    const double t = k * dt;
    const Eigen::Vector4d k1 = rhs(t, q);
    const Eigen::Vector4d k2 = rhs(t + 0.5 * dt, q + 0.5 * dt * k1);
    const Eigen::Vector4d k3 = rhs(t + 0.5 * dt, q + 0.5 * dt * k2);
    const Eigen::Vector4d k4 = rhs(t + dt, q + dt * k3);
    q += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    q.normalize();
  }
  return {GroupElement2(q(0), q.tail<3>())};
}

double equivariance_residual(const InvariantConnection& w, const Symmetry& sym,
                             const EuclideanElement& g, const Curve& c) {
  GroupElement2 h1, h2;
  try {
    h1 = transport_closed(w, sym, c).h;
    h2 = transport_closed(w, sym, transform_curve(g, c)).h;
  } catch (const NotLAG& e) {
    throw UnsupportedPair(std::string("equivariance_residual: ") + e.what());
  }
  return dist(h2, conj2(g.sigma, h1));
}

}  // namespace symred
