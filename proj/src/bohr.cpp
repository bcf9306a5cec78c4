#include "symred/bohr.hpp"

#include <boost/rational.hpp>
#include <cmath>
#include <set>

#include "symred/errors.hpp"

namespace symred {

namespace {

constexpr double kUnitTol = 1e-12;

using Rat = boost::rational<long long>;

// integer power of a unit complex number, renormalized to stay on the circle
Cx ipow(Cx z, long long n) {
  if (n < 0) {
    z = std::conj(z);
    n = -n;
  }
  Cx r{1.0, 0.0};
  while (n > 0) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  const double mag = std::abs(r);
  return mag > 0.0 ? r / mag : Cx{1.0, 0.0};
}

void require_unit(const Cx& v, const char* what) {
  if (std::abs(std::abs(v) - 1.0) > kUnitTol)
    throw OutOfDomain(std::string(what) + ": value is off the unit circle");
}

void require_aligned(const FreqModule& m, const BohrElement& psi) {
  if (psi.vals.size() != m.size())
    throw OutOfDomain("element does not match the module size");
}

}  // namespace

int FreqModule::index(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return int(i);
  throw UnknownLabel(label);
}

bool FreqModule::has_values() const {
  if (values.size() != labels.size()) return false;
  for (const auto& v : values)
    if (!v) return false;
  return true;
}

FreqModule make_module(std::vector<std::string> labels,
                       std::vector<std::optional<double>> values) {
  if (labels.empty()) throw OutOfDomain("make_module: needs at least one generator");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) throw OutOfDomain("make_module: duplicate labels");
  if (values.empty()) values.assign(labels.size(), std::nullopt);
  if (values.size() != labels.size())
    throw OutOfDomain("make_module: one value slot per label");
  for (const auto& v : values)
    if (v && (*v == 0.0 || !std::isfinite(*v)))
      throw OutOfDomain("make_module: declared values must be nonzero finite");
  return FreqModule{std::move(labels), std::move(values)};
}

bool z_independent(const std::vector<Freq>& freqs) {
  if (freqs.empty()) return true;
  const std::size_t rows = freqs.size();
  const std::size_t cols = freqs[0].size();
  for (const auto& f : freqs)
    if (f.size() != cols) throw OutOfDomain("z_independent: mixed lengths");
  if (rows > cols) return false;

  // fraction-free (Bareiss) elimination keeps every entry an exact integer
  std::vector<std::vector<__int128>> a(rows, std::vector<__int128>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = freqs[i][j];

  __int128 prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r == rows;
}

FreqTuple make_freq_tuple(std::vector<Freq> freqs) {
  if (freqs.empty()) throw OutOfDomain("make_freq_tuple: needs at least one frequency");
  if (!z_independent(freqs))
    throw OutOfDomain("make_freq_tuple: frequencies are integer dependent");
  return FreqTuple{std::move(freqs)};
}

std::optional<IntMat> leq_z(const FreqTuple& L, const FreqTuple& L2) {
  if (L.freqs.empty() || L2.freqs.empty()) throw OutOfDomain("leq_z: empty tuple");
  const std::size_t dim = L2.freqs[0].size();
  for (const auto& f : L.freqs)
    if (f.size() != dim) throw OutOfDomain("leq_z: tuples over different modules");

  const std::size_t k = L2.size();
  // augmented rational system: columns of A are the members of L2, one
  // right-hand side per member of L
  std::vector<std::vector<Rat>> a(dim, std::vector<Rat>(k + L.size()));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = Rat(L2.freqs[j][i]);
    for (std::size_t j = 0; j < L.size(); ++j) a[i][k + j] = Rat(L.freqs[j][i]);
  }

  std::vector<int> pivot_row_of_col(k, -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < dim; ++c) {
    std::size_t piv = r;
    while (piv < dim && a[piv][c] == Rat(0)) ++piv;
    if (piv == dim) continue;  // cannot happen for an independent L2
    std::swap(a[piv], a[r]);
    const Rat inv = Rat(1) / a[r][c];
    for (auto& e : a[r]) e *= inv;
    for (std::size_t i = 0; i < dim; ++i) {
      if (i == r || a[i][c] == Rat(0)) continue;
      const Rat f = a[i][c];
      for (std::size_t j = c; j < a[i].size(); ++j) a[i][j] -= f * a[r][j];
    }
    pivot_row_of_col[c] = int(r);
    ++r;
  }

  // consistency: rows past the pivots must have vanishing right-hand sides
  for (std::size_t i = r; i < dim; ++i)
    for (std::size_t j = 0; j < L.size(); ++j)
      if (a[i][k + j] != Rat(0)) return std::nullopt;

  IntMat N(L.size(), k);
  for (std::size_t j = 0; j < L.size(); ++j) {
    for (std::size_t c = 0; c < k; ++c) {
      const int pr = pivot_row_of_col[c];
      const Rat x = pr >= 0 ? a[pr][k + j] : Rat(0);
      if (x.denominator() != 1) return std::nullopt;  // not an integer combination
      N(j, c) = x.numerator();
    }
  }
  return N;
}

Cx bohr_eval(const FreqModule& m, const BohrElement& psi, const Freq& l) {
  require_aligned(m, psi);
  if (l.size() != m.size())
    throw OutOfSpan("bohr_eval: frequency is not over this module");
  Cx out{1.0, 0.0};
  for (std::size_t j = 0; j < l.size(); ++j)
    if (l[j] != 0) out *= ipow(psi.vals[j], l[j]);
  const double mag = std::abs(out);
  return mag > 0.0 ? out / mag : Cx{1.0, 0.0};
}

BohrElement embed(const FreqModule& m, double x) {
  if (!m.has_values()) throw NoValues("embed: module lacks declared generator values");
  BohrElement psi;
  psi.vals.reserve(m.size());
  for (const auto& v : m.values) psi.vals.push_back(std::polar(1.0, *v * x));
  return psi;
}

BohrElement bohr_add(const BohrElement& a, const BohrElement& b) {
  if (a.vals.size() != b.vals.size()) throw OutOfDomain("bohr_add: size mismatch");
  BohrElement out;
  out.vals.reserve(a.vals.size());
  for (std::size_t i = 0; i < a.vals.size(); ++i) {
    Cx v = a.vals[i] * b.vals[i];
    out.vals.push_back(v / std::abs(v));
  }
  return out;
}

BohrElement bohr_inv(const BohrElement& a) {
  BohrElement out = a;
  for (auto& v : out.vals) v = std::conj(v);
  return out;
}

BohrElement bohr_zero(const FreqModule& m) {
  BohrElement out;
  out.vals.assign(m.size(), Cx{1.0, 0.0});
  return out;
}

std::vector<Cx> project(const FreqModule& m, const BohrElement& psi, const FreqTuple& L) {
  std::vector<Cx> out;
  out.reserve(L.size());
  for (const auto& l : L.freqs) out.push_back(bohr_eval(m, psi, l));
  return out;
}

std::vector<Cx> transition(const IntMat& N, const std::vector<Cx>& s) {
  if (std::size_t(N.cols()) != s.size())
    throw OutOfDomain("transition: matrix width must match the tuple");
  std::vector<Cx> out(N.rows(), Cx{1.0, 0.0});
  for (Eigen::Index r = 0; r < N.rows(); ++r) {
    for (Eigen::Index c = 0; c < N.cols(); ++c)
      if (N(r, c) != 0) out[r] *= ipow(s[c], N(r, c));
    out[r] /= std::abs(out[r]);
  }
  return out;
}

BohrElement modify(const FreqModule& m, const BohrElement& psi,
                   const std::map<std::string, Cx>& assignments) {
  require_aligned(m, psi);
  BohrElement out = psi;
  for (const auto& [label, value] : assignments) {
    require_unit(value, "modify");
    out.vals[m.index(label)] = value;
  }
  return out;
}

std::pair<FreqModule, BohrElement> refine(const FreqModule& m, const BohrElement& psi,
                                          const std::string& label, long long q, Cx root) {
  require_aligned(m, psi);
  if (q < 1) throw OutOfDomain("refine: the divisor must be positive");
  const int i = m.index(label);
  if (std::abs(std::abs(root) - 1.0) > kUnitTol ||
      std::abs(ipow(root, q) - psi.vals[i]) > kUnitTol)
    throw BadRoot("refine: supplied value is not a matching root");

  FreqModule m2 = m;
  BohrElement p2 = psi;
  if (q > 1) {
    m2.labels[i] = label + "/" + std::to_string(q);
    if (m2.values[i]) m2.values[i] = *m2.values[i] / double(q);
    p2.vals[i] = root;
  }
  return {std::move(m2), std::move(p2)};
}

BohrElement haar_sample(const FreqModule& m, Rng& rng) {
  BohrElement out;
  out.vals.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    out.vals.push_back(std::polar(1.0, 2.0 * M_PI * uniform01(rng)));
  return out;
}

}  // namespace symred
