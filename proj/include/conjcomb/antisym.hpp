#pragma once

// Wedge basis vectors, the antisymmetrizer isometries A_n and their indexed
// variants A^{n;m}_w, and symmetric/antisymmetric subspace projectors.
//
// A_n maps n copies of C^d to d-n copies,
//
//   A_n = 1/sqrt((d-n)! n!) sum_{pi in S_d} sgn(pi)
//         |pi_{n+1},...,pi_d><pi_1,...,pi_n| ,
//
// enumerated over permutations in lexicographic order with the sign computed
// by inversion count.  Basis labels are 0-based (the conventional 1-based
// labels |1>..|d> shift down by one).

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "conjcomb/tensor.hpp"

namespace conjcomb {

inline int permutation_sign(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return (inversions % 2 == 0) ? 1 : -1;
}

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

// Strictly increasing basis labels i_1 < ... < i_m within [0, d).
struct WedgeIndex {
  int d;
  std::vector<int> indices;

  WedgeIndex(int d_, std::vector<int> indices_)
      : d(d_), indices(std::move(indices_)) {
    if (d < 1) throw std::invalid_argument("WedgeIndex: d must be >= 1");
    if (indices.empty()) throw std::invalid_argument("WedgeIndex: empty index list");
    for (std::size_t t = 0; t < indices.size(); ++t) {
      if (indices[t] < 0 || indices[t] >= d)
        throw std::invalid_argument("WedgeIndex: label out of range");
      if (t > 0 && indices[t] <= indices[t - 1])
        throw std::invalid_argument("WedgeIndex: labels must be strictly increasing");
    }
  }

  static WedgeIndex full(int d) {
    std::vector<int> idx(d);
    std::iota(idx.begin(), idx.end(), 0);
    return WedgeIndex(d, std::move(idx));
  }

  int size() const { return static_cast<int>(indices.size()); }
};

// All C(d, m) wedge index sets, lexicographic.
inline std::vector<WedgeIndex> all_wedge_indices(int d, int m) {
  std::vector<WedgeIndex> out;
  if (m < 1 || m > d) return out;
  std::vector<int> cur(m);
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.emplace_back(d, cur);
    int t = m - 1;
    while (t >= 0 && cur[t] == d - m + t) --t;
    if (t < 0) break;
    ++cur[t];
    for (int s = t + 1; s < m; ++s) cur[s] = cur[s - 1] + 1;
  }
  return out;
}

// |wedge_{i_1..i_m}> = 1/sqrt(m!) sum_tau sgn(tau) |i_tau(1),...,i_tau(m)>,
// normalized and totally antisymmetric under factor transpositions.
inline StateVector wedge_vector(const WedgeIndex& w) {
  const int m = w.size();
  const std::vector<Index> dims(static_cast<std::size_t>(m), w.d);
  CVec amps = CVec::Zero(dims_product(dims));
  std::vector<int> pos(m);
  std::iota(pos.begin(), pos.end(), 0);
  const double c = 1.0 / std::sqrt(factorial(m));
  std::vector<Index> tuple(m);
  do {
    for (int t = 0; t < m; ++t) tuple[t] = w.indices[pos[t]];
    amps[detail::encode_index(tuple, dims)] += permutation_sign(pos) * c;
  } while (std::next_permutation(pos.begin(), pos.end()));
  return StateVector(dims, std::move(amps));
}

// Isometry from n-copy to (d-n)-copy space.  A_n^dag A_n equals the
// projector onto the antisymmetric subspace of the n-copy space, and A_n
// restricted there is unitary onto the (d-n)-copy antisymmetric subspace.
struct Antisymmetrizer {
  int d;
  int n;
  CMat matrix;  // d^{d-n} x d^n
};

inline Antisymmetrizer antisymmetrizer(int d, int n) {
  if (d < 2 || d > 6)
    throw std::invalid_argument("antisymmetrizer: dense representation supports 2 <= d <= 6");
  if (n < 1 || n > d - 1)
    throw std::invalid_argument("antisymmetrizer: require 1 <= n <= d-1");
  const std::vector<Index> rowDims(static_cast<std::size_t>(d - n), d);
  const std::vector<Index> colDims(static_cast<std::size_t>(n), d);
  CMat a = CMat::Zero(dims_product(rowDims), dims_product(colDims));
  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  const double c = 1.0 / std::sqrt(factorial(d - n) * factorial(n));
  std::vector<Index> row(d - n), col(n);
  do {
    for (int t = 0; t < n; ++t) col[t] = perm[t];
    for (int t = 0; t < d - n; ++t) row[t] = perm[n + t];
    a(detail::encode_index(row, rowDims), detail::encode_index(col, colDims)) +=
        permutation_sign(perm) * c;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Antisymmetrizer{d, n, std::move(a)};
}

// A^{n;m}_w for a wedge index w of length n+m <= d: maps d^n -> d^m with
// matrix elements sgn(pi)/sqrt((n+m)!) over arrangements of w.  When
// n+m = d and w = (0..d-1) this equals sqrt(n! m! / d!) A_n.
inline CMat indexed_antisymmetrizer(int d, int n, int m, const WedgeIndex& w) {
  if (n < 1 || m < 1 || n + m > d)
    throw std::invalid_argument("indexed_antisymmetrizer: require n, m >= 1 and n+m <= d");
  if (w.d != d || w.size() != n + m)
    throw std::invalid_argument("indexed_antisymmetrizer: index list length mismatch");
  const std::vector<Index> rowDims(static_cast<std::size_t>(m), d);
  const std::vector<Index> colDims(static_cast<std::size_t>(n), d);
  CMat a = CMat::Zero(dims_product(rowDims), dims_product(colDims));
  std::vector<int> pos(n + m);
  std::iota(pos.begin(), pos.end(), 0);
  const double c = 1.0 / std::sqrt(factorial(n + m));
  std::vector<Index> row(m), col(n);
  do {
    for (int t = 0; t < n; ++t) col[t] = w.indices[pos[t]];
    for (int t = 0; t < m; ++t) row[t] = w.indices[pos[n + t]];
    a(detail::encode_index(row, rowDims), detail::encode_index(col, colDims)) +=
        permutation_sign(pos) * c;
  } while (std::next_permutation(pos.begin(), pos.end()));
  return a;
}

// Factor-permutation operator on (C^d)^{tensor m}: output factor t carries
// input factor perm[t].
inline CMat perm_operator(int d, const std::vector<int>& perm) {
  const std::vector<Index> dims(perm.size(), d);
  const std::vector<Index> map = detail::permutation_index_map(dims, perm);
  const Index total = dims_product(dims);
  CMat p = CMat::Zero(total, total);
  for (Index x = 0; x < total; ++x) p(map[x], x) = 1.0;
  return p;
}

// Projector onto the antisymmetric subspace of (C^d)^{tensor m}; rank
// C(d, m).  For m > d the subspace is empty and the zero matrix is returned.
inline CMat antisym_projector(int d, int m) {
  if (d < 1 || m < 1) throw std::invalid_argument("antisym_projector: bad arguments");
  const Index total = dims_product(std::vector<Index>(m, d));
  CMat p = CMat::Zero(total, total);
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  const double c = 1.0 / factorial(m);
  do {
    p += (permutation_sign(perm) * c) * perm_operator(d, perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return p;
}

// Projector onto the symmetric subspace of (C^d)^{tensor m}; rank C(d+m-1, m).
inline CMat sym_projector(int d, int m) {
  if (d < 1 || m < 1) throw std::invalid_argument("sym_projector: bad arguments");
  const Index total = dims_product(std::vector<Index>(m, d));
  CMat p = CMat::Zero(total, total);
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  const double c = 1.0 / factorial(m);
  do {
    p += c * perm_operator(d, perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return p;
}

}  // namespace conjcomb
