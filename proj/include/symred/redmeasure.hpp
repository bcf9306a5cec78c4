#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "symred/bohr.hpp"
#include "symred/curve.hpp"
#include "symred/redhom.hpp"
#include "symred/rng.hpp"
#include "symred/su2.hpp"

namespace symred {

// A finite index of the discretely generated sector: segments no two of which
// are congruent on an open piece under the symmetry group. Coordinates over
// an index carry one independent Haar draw per segment.
struct FreeIndex {
  Symmetry sym;
  std::vector<Curve> segments;
};

void validate_index(const FreeIndex& idx);

// One independent Haar draw per segment.
std::vector<GroupElement2> free_sample(const FreeIndex& idx, Rng& rng);

// One factor of a coarse coordinate: the fine coordinate `fine`, conjugated by
// the group part of the congruence and optionally inverted.
struct TransitionTerm {
  std::size_t fine = 0;
  bool inverted = false;
  GroupElement2 sigma;
};

using TransitionRow = std::vector<TransitionTerm>;

// Symbolic form of the coordinate transition between two indices: one row per
// coarse segment, factors ordered along the segment parameter.
struct TransitionPlan {
  std::vector<TransitionRow> rows;
};

TransitionPlan transition_plan(const FreeIndex& coarse, const FreeIndex& fine);

std::vector<GroupElement2> apply_transition(const TransitionPlan& plan,
                                            const std::vector<GroupElement2>& s);

// Coordinates on the coarse index induced by fine coordinates s.
std::vector<GroupElement2> free_transition(const FreeIndex& coarse, const FreeIndex& fine,
                                           const std::vector<GroupElement2>& s);

// Factorized description of the orbit-sector configuration space at a chosen
// base point: one projection-space factor per generator, all sharing one
// frequency module for the character components.
struct LagFactorSpec {
  FreqModule module;
  std::vector<TypeTag> factors;
};

LagFactorSpec make_lag_spec(const FreqModule& module, const Symmetry& sym, const Vec3& x,
                            const std::vector<std::pair<Vec3, Vec3>>& gens);

// Independent draw per factor: characters from the Haar measure of the
// compactified line, fiber directions uniform on the circle or sphere (the
// latter via a normalized Gaussian triple), both pushed through the quotient.
std::vector<XgpPoint> lag_sample(const LagFactorSpec& spec, Rng& rng);

struct IndependenceReport {
  double max_sigma = 0.0;  // worst moment discrepancy in standard errors
  bool pass = false;
};

// Compare factorwise sampled moments of two specs describing the same space.
IndependenceReport choice_independence(const LagFactorSpec& a, const LagFactorSpec& b,
                                       Rng& rng, int n);

struct FubiniReport {
  double residual = 0.0;  // |mean(f*g) - mean(f)*mean(g)|
  double sigma = 0.0;     // standard error of the residual
  bool pass = false;
};

// Product-measure check: the joint sampler yields one (f, g) evaluation pair
// per draw; for a genuine product the covariance vanishes.
FubiniReport fubini_check(const std::function<std::pair<double, double>(Rng&)>& joint,
                          Rng& rng, int n);

}  // namespace symred
