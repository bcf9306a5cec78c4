#pragma once

#include "symred/connection.hpp"
#include "symred/curve.hpp"
#include "symred/su2.hpp"

namespace symred {

// Holonomy in the trivialization that attaches the identity over every base
// point; group-valued, unit by construction.
struct TransportResult {
  GroupElement2 h;
};

// Closed-form transport. Supported combinations: a one-parameter orbit curve
// of the symmetry the connection is invariant under (the generator formula),
// plus two special families — any line or circle for the one-symbol isotropic
// connection, and radius lines through the origin for the radial family,
// where the integrand commutes pointwise. Otherwise NotLAG.
TransportResult transport_closed(const InvariantConnection& w, const Symmetry& sym,
                                 const Curve& c);

// Fourth-order fixed-step integration of the horizontality condition
// s' = -A(c(t))(c'(t)) s with unit renormalization after every step.
TransportResult transport_ode(const GaugeField& A, const Curve& c, int steps);

// || transport(g . c) - sigma transport(c) sigma^-1 ||, the conjugation law
// for an invariant connection; UnsupportedPair when either side has no
// closed form.
double equivariance_residual(const InvariantConnection& w, const Symmetry& sym,
                             const EuclideanElement& g, const Curve& c);

}  // namespace symred
