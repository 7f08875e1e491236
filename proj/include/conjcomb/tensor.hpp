#pragma once

// Dense complex linear algebra for multi-factor Hilbert spaces: Kronecker
// products, subsystem permutation, partial trace, Haar-random unitaries,
// Schmidt decomposition, Uhlmann fidelity.
//
// Conventions used throughout the library:
//   - basis labels are 0-based, |0>..|d-1>
//   - a composite index over factors (d_0,...,d_{k-1}) is row-major with
//     factor 0 most significant, so kron(A, B) acts on [A-factor, B-factor]
//   - all values are immutable after construction and every operation is a
//     pure function; RNG state is per-call and seeded explicitly

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace conjcomb {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kStructuralTol = 1e-10;

inline double max_norm(const CMat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_norm(const CVec& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

inline bool is_unitary(const CMat& u, double tol = kStructuralTol) {
  if (u.rows() != u.cols()) return false;
  CMat delta = u.adjoint() * u - CMat::Identity(u.cols(), u.cols());
  return max_norm(delta) <= tol;
}

// tr[A B] without forming the product.
inline Complex trace_product(const CMat& a, const CMat& b) {
  return (a.transpose().cwiseProduct(b)).sum();
}

inline Index dims_product(const std::vector<Index>& dims) {
  Index p = 1;
  for (Index d : dims) p *= d;
  return p;
}

template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return Eigen::kroneckerProduct(a.derived(), b.derived()).eval();
}

inline CMat kron_pow(const CMat& a, int k) {
  if (k < 1) throw std::invalid_argument("kron_pow: k must be >= 1");
  CMat out = a;
  for (int i = 1; i < k; ++i) out = kron(out, a);
  return out;
}

inline CVec kron_pow(const CVec& a, int k) {
  if (k < 1) throw std::invalid_argument("kron_pow: k must be >= 1");
  CVec out = a;
  for (int i = 1; i < k; ++i) out = kron(out, a);
  return out;
}

namespace detail {

inline void decode_index(Index x, const std::vector<Index>& dims,
                         std::vector<Index>& tuple) {
  const std::size_t k = dims.size();
  tuple.resize(k);
  for (std::size_t t = k; t-- > 0;) {
    tuple[t] = x % dims[t];
    x /= dims[t];
  }
}

inline Index encode_index(const std::vector<Index>& tuple,
                          const std::vector<Index>& dims) {
  Index x = 0;
  for (std::size_t t = 0; t < dims.size(); ++t) x = x * dims[t] + tuple[t];
  return x;
}

// Linear-index map of a factor permutation in gather form: output factor t
// is input factor perm[t].  map[x] is the output index of input index x.
inline std::vector<Index> permutation_index_map(const std::vector<Index>& dims,
                                                const std::vector<int>& perm) {
  const std::size_t k = dims.size();
  if (perm.size() != k)
    throw std::invalid_argument("permutation length does not match factor count");
  std::vector<bool> seen(k, false);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= k || seen[p])
      throw std::invalid_argument("not a permutation of factor indices");
    seen[p] = true;
  }
  std::vector<Index> outDims(k);
  for (std::size_t t = 0; t < k; ++t) outDims[t] = dims[perm[t]];
  const Index total = dims_product(dims);
  std::vector<Index> map(total);
  std::vector<Index> tuple, outTuple(k);
  for (Index x = 0; x < total; ++x) {
    decode_index(x, dims, tuple);
    for (std::size_t t = 0; t < k; ++t) outTuple[t] = tuple[perm[t]];
    map[x] = encode_index(outTuple, outDims);
  }
  return map;
}

}  // namespace detail

inline std::vector<int> inverse_permutation(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t t = 0; t < perm.size(); ++t) inv[perm[t]] = static_cast<int>(t);
  return inv;
}

// Reindex a vector over the given factors; output factor t is input factor
// perm[t].  Norm preserved exactly.
inline CVec permute_vector(const CVec& v, const std::vector<Index>& dims,
                           const std::vector<int>& perm) {
  if (v.size() != dims_product(dims))
    throw std::invalid_argument("permute_vector: dims do not match vector size");
  const std::vector<Index> map = detail::permutation_index_map(dims, perm);
  CVec out(v.size());
  for (Index x = 0; x < v.size(); ++x) out[map[x]] = v[x];
  return out;
}

// Same reindexing applied to rows and columns of a square operator.
inline CMat permute_operator(const CMat& m, const std::vector<Index>& dims,
                             const std::vector<int>& perm) {
  if (m.rows() != m.cols() || m.rows() != dims_product(dims))
    throw std::invalid_argument("permute_operator: dims do not match matrix size");
  const std::vector<Index> map = detail::permutation_index_map(dims, perm);
  CMat out(m.rows(), m.cols());
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) out(map[r], map[c]) = m(r, c);
  return out;
}

// Permutation taking n interleaved bipartite copies (H1,K1,H2,K2,...) to
// grouped order (H1..Hn,K1..Kn), and its inverse.
inline std::vector<int> interleaved_to_grouped(int n) {
  std::vector<int> perm(2 * n);
  for (int t = 0; t < n; ++t) {
    perm[t] = 2 * t;
    perm[n + t] = 2 * t + 1;
  }
  return perm;
}

inline std::vector<int> grouped_to_interleaved(int n) {
  return inverse_permutation(interleaved_to_grouped(n));
}

// Pure state over a declared tensor factorization, unit norm within 1e-12.
struct StateVector {
  std::vector<Index> dims;
  CVec amps;

  StateVector(std::vector<Index> dims_, CVec amps_)
      : dims(std::move(dims_)), amps(std::move(amps_)) {
    if (dims.empty()) throw std::invalid_argument("StateVector: empty dims");
    for (Index d : dims)
      if (d < 1) throw std::invalid_argument("StateVector: nonpositive factor dim");
    if (amps.size() != dims_product(dims))
      throw std::invalid_argument("StateVector: amplitude count does not match dims");
    if (!amps.allFinite())
      throw std::invalid_argument("StateVector: non-finite amplitudes");
    if (std::abs(amps.norm() - 1.0) > 1e-12)
      throw std::invalid_argument("StateVector: norm deviates from 1 by more than 1e-12");
  }

  Index total_dim() const { return amps.size(); }
};

inline StateVector normalized_state(std::vector<Index> dims, CVec amps) {
  const double n = amps.norm();
  if (n <= 0.0) throw std::invalid_argument("normalized_state: zero vector");
  return StateVector(std::move(dims), amps / n);
}

inline StateVector basis_state(std::vector<Index> dims, Index label) {
  CVec v = CVec::Zero(dims_product(dims));
  v[label] = 1.0;
  return StateVector(std::move(dims), std::move(v));
}

inline StateVector permute_subsystems(const StateVector& v,
                                      const std::vector<int>& perm) {
  if (perm.size() != v.dims.size())
    throw std::invalid_argument("permute_subsystems: perm length mismatch");
  const CVec out = permute_vector(v.amps, v.dims, perm);
  std::vector<Index> outDims(v.dims.size());
  for (std::size_t t = 0; t < perm.size(); ++t) outDims[t] = v.dims[perm[t]];
  return StateVector(outDims, out);
}

// Positive unit-trace operator over a declared tensor factorization.
// Hermiticity and trace are enforced at 1e-12, the spectrum at -1e-10.
struct DensityOperator {
  std::vector<Index> dims;
  CMat matrix;

  DensityOperator(std::vector<Index> dims_, CMat matrix_)
      : dims(std::move(dims_)), matrix(std::move(matrix_)) {
    const Index n = dims_product(dims);
    if (matrix.rows() != n || matrix.cols() != n)
      throw std::invalid_argument("DensityOperator: matrix side does not match dims");
    if (!matrix.allFinite())
      throw std::invalid_argument("DensityOperator: non-finite entries");
    if (max_norm(CMat(matrix - matrix.adjoint())) > 1e-12)
      throw std::invalid_argument("DensityOperator: not Hermitian within 1e-12");
    if (std::abs(matrix.trace() - Complex(1.0, 0.0)) > 1e-12)
      throw std::invalid_argument("DensityOperator: trace deviates from 1");
    Eigen::SelfAdjointEigenSolver<CMat> es(matrix, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
      throw std::invalid_argument("DensityOperator: negative eigenvalue below -1e-10");
  }

  static DensityOperator pure(const StateVector& psi) {
    return DensityOperator(psi.dims, psi.amps * psi.amps.adjoint());
  }

  static DensityOperator maximally_mixed(std::vector<Index> dims) {
    const Index n = dims_product(dims);
    return DensityOperator(std::move(dims), CMat::Identity(n, n) / double(n));
  }
};

inline CMat partial_trace(const CMat& m, const std::vector<Index>& dims,
                          const std::vector<int>& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  const std::size_t k = dims.size();
  std::vector<bool> kept(k, false);
  for (int t : keep) {
    if (t < 0 || static_cast<std::size_t>(t) >= k || kept[t])
      throw std::invalid_argument("partial_trace: bad keep index");
    kept[t] = true;
  }
  if (m.rows() != m.cols() || m.rows() != dims_product(dims))
    throw std::invalid_argument("partial_trace: dims do not match matrix");

  std::vector<int> keepSorted(keep.begin(), keep.end());
  std::sort(keepSorted.begin(), keepSorted.end());
  std::vector<int> traced;
  for (std::size_t t = 0; t < k; ++t)
    if (!kept[t]) traced.push_back(static_cast<int>(t));

  std::vector<Index> keepDims, tracedDims;
  for (int t : keepSorted) keepDims.push_back(dims[t]);
  for (int t : traced) tracedDims.push_back(dims[t]);
  const Index nKeep = dims_product(keepDims);
  const Index nTraced = dims_product(tracedDims);

  // Row/col index as (kept tuple, traced tuple) after a virtual reorder.
  std::vector<Index> tuple(k);
  auto full_index = [&](Index a, Index b) {
    std::vector<Index> ka, tb;
    detail::decode_index(a, keepDims, ka);
    detail::decode_index(b, tracedDims, tb);
    for (std::size_t t = 0; t < keepSorted.size(); ++t) tuple[keepSorted[t]] = ka[t];
    for (std::size_t t = 0; t < traced.size(); ++t) tuple[traced[t]] = tb[t];
    return detail::encode_index(tuple, dims);
  };

  CMat out = CMat::Zero(nKeep, nKeep);
  for (Index a = 0; a < nKeep; ++a)
    for (Index c = 0; c < nKeep; ++c)
      for (Index b = 0; b < nTraced; ++b)
        out(a, c) += m(full_index(a, b), full_index(c, b));
  return out;
}

inline DensityOperator partial_trace(const DensityOperator& rho,
                                     const std::vector<int>& keep) {
  std::vector<int> keepSorted(keep.begin(), keep.end());
  std::sort(keepSorted.begin(), keepSorted.end());
  std::vector<Index> keepDims;
  for (int t : keepSorted) keepDims.push_back(rho.dims[t]);
  return DensityOperator(keepDims, partial_trace(rho.matrix, rho.dims, keep));
}

// Embed an operator acting on the listed factors (in the order given) into
// the full space, identity elsewhere.
inline CMat embed_operator(const CMat& op, const std::vector<Index>& fullDims,
                           const std::vector<int>& targets) {
  const std::size_t k = fullDims.size();
  std::vector<bool> used(k, false);
  std::vector<int> perm;
  Index opDim = 1;
  for (int t : targets) {
    if (t < 0 || static_cast<std::size_t>(t) >= k || used[t])
      throw std::invalid_argument("embed_operator: bad target index");
    used[t] = true;
    perm.push_back(t);
    opDim *= fullDims[t];
  }
  if (op.rows() != opDim || op.cols() != opDim)
    throw std::invalid_argument("embed_operator: operator does not match target dims");
  Index restDim = 1;
  for (std::size_t t = 0; t < k; ++t)
    if (!used[t]) {
      perm.push_back(static_cast<int>(t));
      restDim *= fullDims[t];
    }
  // In the reordered basis (targets first) the embedding is op (x) I; undo
  // the reorder on both indices.
  CMat lifted = kron(op, CMat::Identity(restDim, restDim));
  std::vector<Index> permDims(k);
  for (std::size_t t = 0; t < k; ++t) permDims[t] = fullDims[perm[t]];
  return permute_operator(lifted, permDims, inverse_permutation(perm));
}

// Haar-random unitary via QR of a complex Gaussian matrix with the R diagonal
// phase correction.  Deterministic for a given seed.
inline CMat haar_random_unitary(Index d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("haar_random_unitary: d must be >= 1");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  CMat z(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) z(i, j) = Complex(dist(gen), dist(gen));
  Eigen::HouseholderQR<CMat> qr(z);
  CMat q = qr.householderQ();
  CVec diag = qr.matrixQR().diagonal();
  for (Index i = 0; i < d; ++i) {
    const double a = std::abs(diag[i]);
    q.col(i) *= (a > 0.0) ? diag[i] / a : Complex(1.0, 0.0);
  }
  return q;
}

// Rescale a unitary to determinant 1 (divide by a d-th root of det).
inline CMat special_unitarize(const CMat& u) {
  const Complex det = u.determinant();
  const double d = static_cast<double>(u.rows());
  return u / std::pow(det, 1.0 / d);
}

inline StateVector random_state(std::vector<Index> dims, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  CVec v(dims_product(dims));
  for (Index i = 0; i < v.size(); ++i) v[i] = Complex(dist(gen), dist(gen));
  return normalized_state(std::move(dims), std::move(v));
}

// Schmidt data of a bipartition: coefficients lambda_i (nonincreasing,
// summing to 1) with orthonormal left/right basis columns so that
// sum_i sqrt(lambda_i) |L_i>|R_i> reconstructs the state.
struct SchmidtData {
  RVec coefficients;
  CMat leftBasis;
  CMat rightBasis;
};

inline SchmidtData schmidt_decompose(const StateVector& v,
                                     const std::vector<int>& left,
                                     const std::vector<int>& right) {
  const std::size_t k = v.dims.size();
  std::vector<bool> seen(k, false);
  if (left.empty() || right.empty())
    throw std::invalid_argument("schmidt_decompose: bipartition side is empty");
  for (int t : left) {
    if (t < 0 || static_cast<std::size_t>(t) >= k || seen[t])
      throw std::invalid_argument("schmidt_decompose: bad factor index");
    seen[t] = true;
  }
  for (int t : right) {
    if (t < 0 || static_cast<std::size_t>(t) >= k || seen[t])
      throw std::invalid_argument("schmidt_decompose: split does not cover all factors");
    seen[t] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw std::invalid_argument("schmidt_decompose: split does not cover all factors");

  std::vector<int> perm(left.begin(), left.end());
  perm.insert(perm.end(), right.begin(), right.end());
  const CVec vp = permute_vector(v.amps, v.dims, perm);

  Index dimL = 1, dimR = 1;
  for (int t : left) dimL *= v.dims[t];
  for (int t : right) dimR *= v.dims[t];
  CMat m(dimL, dimR);
  for (Index a = 0; a < dimL; ++a)
    for (Index b = 0; b < dimR; ++b) m(a, b) = vp[a * dimR + b];

  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtData out;
  out.coefficients = svd.singularValues().array().square();
  out.leftBasis = svd.matrixU();
  out.rightBasis = svd.matrixV().conjugate();
  return out;
}

// Hermitian square root with eigenvalues clamped to 0 below the threshold.
inline CMat hermitian_sqrt(const CMat& m, double clampTol = 1e-12) {
  Eigen::SelfAdjointEigenSolver<CMat> es(m);
  RVec vals = es.eigenvalues();
  for (Index i = 0; i < vals.size(); ++i)
    vals[i] = (vals[i] > clampTol) ? std::sqrt(vals[i]) : 0.0;
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

// Uhlmann fidelity F(rho, sigma) = tr sqrt(sqrt(sigma) rho sqrt(sigma)).
inline double uhlmann_fidelity(const DensityOperator& rho,
                               const DensityOperator& sigma) {
  if (rho.dims != sigma.dims)
    throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
  const CMat s = hermitian_sqrt(sigma.matrix);
  Eigen::SelfAdjointEigenSolver<CMat> es(CMat(s * rho.matrix * s),
                                         Eigen::EigenvaluesOnly);
  double f = 0.0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = es.eigenvalues()[i];
    if (v > 1e-12) f += std::sqrt(v);  // same clamp as hermitian_sqrt
  }
  return f;
}

// min over a global phase of ||x - e^{i phi} y||_max; the minimizing phase is
// the argument of tr[y^dag x].
inline double phase_aligned_distance(const CMat& x, const CMat& y) {
  const Complex t = (y.conjugate().cwiseProduct(x)).sum();
  const double a = std::abs(t);
  const Complex z = (a > 0.0) ? t / a : Complex(1.0, 0.0);
  return max_norm(CMat(x - z * y));
}

}  // namespace conjcomb
