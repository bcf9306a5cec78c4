#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symred/rng.hpp"

namespace symred {

using Cx = std::complex<double>;

// Integer exponent vector over the generators of a FreqModule.
using Freq = std::vector<long long>;
using IntMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

// Finitely generated frequency lattice: ordered distinct generator labels,
// each optionally carrying a nonzero real value used by the embedding of the
// real line. Declared values are taken to be rationally independent; that is
// the caller's responsibility, the artifact cannot decide it for arbitrary
// reals.
struct FreqModule {
  std::vector<std::string> labels;
  std::vector<std::optional<double>> values;

  std::size_t size() const { return labels.size(); }
  int index(const std::string& label) const;  // UnknownLabel
  bool has_values() const;
};

FreqModule make_module(std::vector<std::string> labels,
                       std::vector<std::optional<double>> values = {});

// Character on the lattice: one unit complex value per generator.
struct BohrElement {
  std::vector<Cx> vals;
};

// Ordered, exactly Z-independent list of frequencies.
struct FreqTuple {
  std::vector<Freq> freqs;
  std::size_t size() const { return freqs.size(); }
};
FreqTuple make_freq_tuple(std::vector<Freq> freqs);

// Exact integer-rank test (fraction-free elimination): rank equals count.
bool z_independent(const std::vector<Freq>& freqs);

// Integer matrix N with L_i = sum_j N_ij L2_j when every member of L lies in
// the integer span of L2; empty otherwise. Unique since L2 is independent.
std::optional<IntMat> leq_z(const FreqTuple& L, const FreqTuple& L2);

Cx bohr_eval(const FreqModule& m, const BohrElement& psi, const Freq& l);
BohrElement embed(const FreqModule& m, double x);
BohrElement bohr_add(const BohrElement& a, const BohrElement& b);
BohrElement bohr_inv(const BohrElement& a);
BohrElement bohr_zero(const FreqModule& m);

std::vector<Cx> project(const FreqModule& m, const BohrElement& psi, const FreqTuple& L);
std::vector<Cx> transition(const IntMat& N, const std::vector<Cx>& s);

BohrElement modify(const FreqModule& m, const BohrElement& psi,
                   const std::map<std::string, Cx>& assignments);

// Replace generator `label` by its q-th part; the element value on the new
// generator is the supplied q-th root of the old value (the choice of root is
// free and therefore explicit). All old evaluations are preserved.
std::pair<FreqModule, BohrElement> refine(const FreqModule& m, const BohrElement& psi,
                                          const std::string& label, long long q, Cx root);

BohrElement haar_sample(const FreqModule& m, Rng& rng);

}  // namespace symred
