#pragma once

// Pure-state entanglement measures: the two-qubit concurrence, its
// conjugation-based generalization built from the antisymmetrizer, the
// G-concurrence and the elementary-symmetric-polynomial monotone family, and
// F-quantities attached to CP maps.
//
// Bipartite states live on dims (d, d).  n clones are stored interleaved,
// (H1,K1,H2,K2,...); operators of the form X (x) Y with X on the H clones
// and Y on the K clones act in grouped order (H1..Hn,K1..Kn).  The fixed
// maps interleaved_to_grouped / grouped_to_interleaved convert between the
// layouts.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "conjcomb/antisym.hpp"
#include "conjcomb/channel.hpp"
#include "conjcomb/tensor.hpp"

namespace conjcomb {

namespace detail {

inline void check_bipartite(const StateVector& psi, const char* who,
                            bool equalDims) {
  if (psi.dims.size() != 2)
    throw std::invalid_argument(std::string(who) + ": state is not bipartite");
  if (equalDims && psi.dims[0] != psi.dims[1])
    throw std::invalid_argument(std::string(who) + ": unequal local dimensions");
}

// Grouped m-clone vector (H1..Hm,K1..Km) of a bipartite state.
inline CVec grouped_clones(const StateVector& psi, int m) {
  if (m == 1) return psi.amps;
  const std::vector<Index> interDims(2 * m, psi.dims[0]);
  CVec v = kron_pow(psi.amps, m);
  return permute_vector(v, interDims, interleaved_to_grouped(m));
}

}  // namespace detail

inline RVec schmidt_coefficients(const StateVector& psi) {
  detail::check_bipartite(psi, "schmidt_coefficients", false);
  return schmidt_decompose(psi, {0}, {1}).coefficients;
}

// k-th elementary symmetric polynomial of the entries.
inline double elementary_symmetric(const RVec& vals, int k) {
  if (k < 0 || k > vals.size()) return 0.0;
  std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
  e[0] = 1.0;
  for (Index i = 0; i < vals.size(); ++i)
    for (int j = std::min<int>(k, static_cast<int>(i) + 1); j >= 1; --j)
      e[j] += vals[i] * e[j - 1];
  return e[k];
}

// C(psi) = |<psi| sigma_y (x) sigma_y |psi*>| on two qubits; equals
// 2 sqrt(lambda_1 lambda_2).
inline double concurrence_2qubit(const StateVector& psi) {
  detail::check_bipartite(psi, "concurrence_2qubit", true);
  if (psi.dims[0] != 2)
    throw std::invalid_argument("concurrence_2qubit: local dimensions must be 2");
  CMat sy(2, 2);
  sy << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  const CMat syy = kron(sy, sy);
  return std::abs(psi.amps.dot(syy * psi.amps.conjugate()));
}

// C^g(psi) = |<psi|^{•(d-1)} (A (x) A) |psi*>|, the conjugation-based
// generalization; equals d sqrt(prod lambda_i).
inline double concurrence_g(const StateVector& psi) {
  detail::check_bipartite(psi, "concurrence_g", true);
  const int d = static_cast<int>(psi.dims[0]);
  if (d < 2) throw std::invalid_argument("concurrence_g: require d >= 2");
  const CMat a = antisymmetrizer(d, 1).matrix;
  // (A (x) A)|psi*> as a matrix: A C A^T with C the coefficient matrix.
  CMat coeff(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) coeff(i, j) = std::conj(psi.amps[i * d + j]);
  const CMat phi = a * coeff * a.transpose();
  const CVec bra = detail::grouped_clones(psi, d - 1);
  Complex overlap = 0.0;
  const Index block = phi.rows();
  for (Index r = 0; r < block; ++r)
    overlap += bra.segment(r * block, block).dot(phi.row(r).transpose());
  return std::abs(overlap);
}

// |<psi|^{•(d-N)} (A^{N;d-N} (x) A^{N;d-N}) |psi*>^{•N}|; proportional to
// C^g with an N-independent ratio fixed by the A^{n;m} scaling.
inline double concurrence_g_alt(const StateVector& psi, int N) {
  detail::check_bipartite(psi, "concurrence_g_alt", true);
  const int d = static_cast<int>(psi.dims[0]);
  if (N < 1 || N > d - 1)
    throw std::invalid_argument("concurrence_g_alt: require 1 <= N <= d-1");
  const CMat a = indexed_antisymmetrizer(d, N, d - N, WedgeIndex::full(d));
  const CVec ket = detail::grouped_clones(psi, N).conjugate();
  const Index dn = a.cols();
  CMat coeff(dn, dn);
  for (Index i = 0; i < dn; ++i)
    for (Index j = 0; j < dn; ++j) coeff(i, j) = ket[i * dn + j];
  const CMat phi = a * coeff * a.transpose();
  const CVec bra = detail::grouped_clones(psi, d - N);
  Complex overlap = 0.0;
  const Index block = phi.rows();
  for (Index r = 0; r < block; ++r)
    overlap += bra.segment(r * block, block).dot(phi.row(r).transpose());
  return std::abs(overlap);
}

// C^G(psi) = d (lambda_1 ... lambda_d)^{1/d}; 1 on maximally entangled
// states, zero iff the Schmidt rank is below d.
inline double g_concurrence(const StateVector& psi) {
  detail::check_bipartite(psi, "g_concurrence", false);
  const RVec lam = schmidt_coefficients(psi);
  const int d = static_cast<int>(lam.size());
  double prod = 1.0;
  for (Index i = 0; i < lam.size(); ++i) prod *= std::max(lam[i], 0.0);
  return d * std::pow(prod, 1.0 / d);
}

// C_k(psi) = alpha_k S_k(lambda)^{1/k} with alpha_k = d / C(d,k)^{1/k}, so
// the maximally entangled state scores 1; k = d reproduces the
// G-concurrence.
inline double concurrence_monotone_k(const StateVector& psi, int k) {
  detail::check_bipartite(psi, "concurrence_monotone_k", false);
  const RVec lam = schmidt_coefficients(psi);
  const int d = static_cast<int>(lam.size());
  if (k < 2 || k > d)
    throw std::invalid_argument("concurrence_monotone_k: require 2 <= k <= d");
  const double sk = std::max(elementary_symmetric(lam, k), 0.0);
  const double alpha = d / std::pow(binomial(d, k), 1.0 / k);
  return alpha * std::pow(sk, 1.0 / k);
}

// sqrt((d/(d-1)) (1 - tr[rho_H^2])) from the reduced density matrix.
inline double rungta_concurrence(const StateVector& psi) {
  detail::check_bipartite(psi, "rungta_concurrence", false);
  const RVec lam = schmidt_coefficients(psi);
  const int d = static_cast<int>(lam.size());
  if (d < 2) throw std::invalid_argument("rungta_concurrence: require local dims >= 2");
  const double purity = lam.array().square().sum();
  return std::sqrt(std::max(0.0, (d / (d - 1.0)) * (1.0 - purity)));
}

// C_F^{n;m}(psi) = tr[psi^{•m} F((psi*)^{•n})] for a CP map F whose Kraus
// operators act on the grouped layout, d^n per side in and d^m per side out.
inline double f_quantity(const StateVector& psi, const KrausChannel& f, int n,
                         int m) {
  detail::check_bipartite(psi, "f_quantity", true);
  const Index d = psi.dims[0];
  Index din = 1, dout = 1;
  for (int t = 0; t < n; ++t) din *= d * d;
  for (int t = 0; t < m; ++t) dout *= d * d;
  if (f.dimIn != din || f.dimOut != dout)
    throw std::invalid_argument("f_quantity: channel dimensions do not match (n, m)");
  const CVec ket = detail::grouped_clones(psi, n).conjugate();
  const CVec bra = detail::grouped_clones(psi, m);
  double value = 0.0;
  for (const CMat& k : f.kraus) {
    const Complex amp = bra.dot(k * ket);
    value += std::norm(amp);
  }
  return value;
}

// Trace-non-increasing bound of the raw wedge-operator sum
// sum_w U[A^{n;m}_w]: the sum of A_w^dag A_w equals
// n! m! / (n+m)! * C(d-n, m) times the antisymmetric projector.
inline double wedge_sum_weight(int d, int n, int m) {
  return factorial(n) * factorial(m) / factorial(n + m) * binomial(d - n, m);
}

// E^{n;m} = sum over wedge index sets of U[A^{n;m}_w], subnormalized by the
// weight above where it exceeds 1 so the Kraus family stays trace
// non-increasing.  The F-quantity built from it is proportional to
// S_{n+m}(lambda); the subnormalization is part of the recorded constant.
inline KrausChannel wedge_sum_channel(int d, int n, int m) {
  if (n < 1 || m < 1 || n + m > d)
    throw std::invalid_argument("wedge_sum_channel: require n, m >= 1 and n+m <= d");
  const double s = std::max(1.0, wedge_sum_weight(d, n, m));
  std::vector<CMat> ks;
  for (const WedgeIndex& w : all_wedge_indices(d, n + m))
    ks.push_back(indexed_antisymmetrizer(d, n, m, w) / std::sqrt(s));
  Index din = 1, dout = 1;
  for (int t = 0; t < n; ++t) din *= d;
  for (int t = 0; t < m; ++t) dout *= d;
  return KrausChannel(din, dout, std::move(ks));
}

// Two-sided product map F = F_side (x) F_side on the grouped bipartite
// layout.
inline KrausChannel two_sided(const KrausChannel& side) {
  return tensor(side, side);
}

enum class Method { sigmaY, wedgeOverlap, schmidtFormula, fQuantity };

struct MeasureResult {
  double value;
  Method method;
  int d;
  int n;
  int m;
  int k;
};

}  // namespace conjcomb
