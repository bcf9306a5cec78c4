#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "symred/bohr.hpp"
#include "symred/connection.hpp"
#include "symred/curve.hpp"
#include "symred/transport.hpp"

namespace symred {

// A finite set of supported curves closed under the declared decompositions
// and under inversion. Curves are stored up to reparametrization; splits and
// inverse pairs are recorded as index relations into `curves`.
struct SplitDecl {
  std::size_t seed_index = 0;
  double t = 0.5;  // interior split parameter of the seed curve
};

struct SplitRecord {
  std::size_t whole = 0, first = 0, second = 0;
};

struct InversePair {
  std::size_t fwd = 0, bwd = 0;
};

struct CurveFamily {
  std::vector<Curve> curves;
  std::vector<SplitRecord> splits;
  std::vector<InversePair> inverses;
  std::size_t size() const { return curves.size(); }
};

CurveFamily make_family(const std::vector<Curve>& seeds,
                        const std::vector<SplitDecl>& split_decls = {});

// Index of the stored curve equivalent to c, if any.
std::optional<std::size_t> find_curve(const CurveFamily& fam, const Curve& c);

// A finite invariant generalized homomorphism: one structure-group value per
// stored curve, in the trivialization that anchors every fiber at (x, 1).
struct GenHom {
  Symmetry sym;
  CurveFamily fam;
  std::vector<GroupElement2> table;
};

// Residuals of the three defining properties; `pass` applies the 1e-10 gate.
struct HomReport {
  double mult_residual = 0.0;
  double inv_residual = 0.0;
  double relation_residual = 0.0;
  bool pass = false;
};

// Holonomy table of an invariant connection over the family.
GenHom from_connection(const InvariantConnection& w, const Symmetry& sym,
                       const CurveFamily& fam);

// All values equal to the identity; the neutral starting point for modifications.
GenHom trivial_genhom(const Symmetry& sym, const CurveFamily& fam);

HomReport check_invariants(const GenHom& h);

// For the full Euclidean symmetry the value on a straight segment must lie on
// the torus of its direction: b-part parallel to v within 1e-10.
bool torus_constraint(const GenHom& h, const LinearCurve& c);

// The four shapes of the equivariant-map space attached to a generator.
enum class TypeKind { T1, T2, T3, T4 };

struct TypeTag {
  TypeKind kind = TypeKind::T4;
  Vec3 axis = Vec3::UnitX();  // T2: torus axis; T3: normal of the allowed plane
};

// Decide the shape for a verified (symmetry, base point, generator) triple;
// generators outside the verified tables raise UnverifiedStability.
TypeTag classify_type(const Symmetry& sym, const Vec3& x, const Vec3& v, const Vec3& s);

// Replace the values on every family curve that is a symmetry translate of an
// orbit segment of the generator (v, s) through x. The replacement composes
// the fiber part of the lifted orbit with exp2 of the chosen algebra slope;
// the slope must respect the equivariance constraint of the generator's type.
GenHom modify_lag(const GenHom& h, const Vec3& x, const Vec3& v, const Vec3& s,
                  const Vec3& psi_slope);

// Replace the values on every family curve that decomposes into symmetry
// translates of pieces of the free segment delta; t0 is the anchor parameter
// of delta and psi_slope the algebra slope of the invariant map.
GenHom modify_free(const GenHom& h, const Curve& delta, double t0, const Vec3& psi_slope);

// A point of the projection space attached to a type tag: nothing for T1, a
// character for T2, and a character fibered over a circle or sphere direction
// (modulo the simultaneous flip of both components) for T3/T4. The canonical
// representative is stored; the neutral character collapses to the zero class.
struct XgpPoint {
  TypeTag tag;
  bool zero_class = false;
  BohrElement psi;
  Cx v_circle{1.0, 0.0};
  Vec3 v_sphere = Vec3::UnitX();
};

XgpPoint canonical_xgp(const TypeTag& tag);                                   // T1
XgpPoint canonical_xgp(const TypeTag& tag, const BohrElement& psi);           // T2
XgpPoint canonical_xgp(const TypeTag& tag, const BohrElement& psi, Cx v);     // T3
XgpPoint canonical_xgp(const TypeTag& tag, const BohrElement& psi, const Vec3& v);  // T4

}  // namespace symred
