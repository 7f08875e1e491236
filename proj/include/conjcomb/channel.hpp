#pragma once

// Completely positive maps as Kraus collections, Choi operators,
// trace-preserving completions, and Haar twirls over collective unitary
// pairs (exact via the symmetric/antisymmetric projector resolution, and
// Monte-Carlo sampled for validation).
//
// Choi convention: for F mapping dimIn -> dimOut,
//   Choi(F) = sum_ij |i><j| (x) F(|i><j|),
// a matrix of side dimIn*dimOut with the input factor most significant.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "conjcomb/antisym.hpp"
#include "conjcomb/parallel.hpp"
#include "conjcomb/tensor.hpp"

namespace conjcomb {

// CP trace-non-increasing map as a finite Kraus list (dimOut x dimIn each).
// sum K^dag K <= I is enforced at 1e-10; isTP flags saturation.
struct KrausChannel {
  Index dimIn;
  Index dimOut;
  std::vector<CMat> kraus;
  bool isTP = false;

  KrausChannel(Index dimIn_, Index dimOut_, std::vector<CMat> kraus_)
      : dimIn(dimIn_), dimOut(dimOut_), kraus(std::move(kraus_)) {
    if (dimIn < 1 || dimOut < 1)
      throw std::invalid_argument("KrausChannel: nonpositive dimension");
    CMat total = CMat::Zero(dimIn, dimIn);
    for (const CMat& k : kraus) {
      if (k.rows() != dimOut || k.cols() != dimIn)
        throw std::invalid_argument("KrausChannel: Kraus operator shape mismatch");
      if (!k.allFinite())
        throw std::invalid_argument("KrausChannel: non-finite Kraus entries");
      total += k.adjoint() * k;
    }
    Eigen::SelfAdjointEigenSolver<CMat> es(total, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().maxCoeff() > 1.0 + 1e-10)
      throw std::invalid_argument("KrausChannel: trace increasing beyond 1e-10");
    isTP = max_norm(CMat(total - CMat::Identity(dimIn, dimIn))) <= 1e-10;
  }

  static KrausChannel identity(Index d) {
    return KrausChannel(d, d, {CMat::Identity(d, d)});
  }

  // U[O](rho) = O rho O^dag for a single (not necessarily square) operator.
  static KrausChannel conjugation_by(const CMat& op) {
    return KrausChannel(op.cols(), op.rows(), {op});
  }

  static KrausChannel completely_depolarizing(Index d) {
    std::vector<CMat> ks;
    const double c = 1.0 / std::sqrt(static_cast<double>(d));
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) {
        CMat k = CMat::Zero(d, d);
        k(i, j) = c;
        ks.push_back(std::move(k));
      }
    return KrausChannel(d, d, std::move(ks));
  }
};

// second after first; Kraus products over all pairs.
inline KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  if (first.dimOut != second.dimIn)
    throw std::invalid_argument("compose: intermediate dimension mismatch");
  std::vector<CMat> ks;
  ks.reserve(first.kraus.size() * second.kraus.size());
  for (const CMat& k2 : second.kraus)
    for (const CMat& k1 : first.kraus) ks.push_back(k2 * k1);
  return KrausChannel(first.dimIn, second.dimOut, std::move(ks));
}

inline KrausChannel tensor(const KrausChannel& a, const KrausChannel& b) {
  std::vector<CMat> ks;
  ks.reserve(a.kraus.size() * b.kraus.size());
  for (const CMat& ka : a.kraus)
    for (const CMat& kb : b.kraus) ks.push_back(kron(ka, kb));
  return KrausChannel(a.dimIn * b.dimIn, a.dimOut * b.dimOut, std::move(ks));
}

// p-scaled channel: every Kraus multiplied by sqrt(p).
inline KrausChannel scaled(const KrausChannel& ch, double p) {
  if (p < 0.0) throw std::invalid_argument("scaled: negative weight");
  std::vector<CMat> ks = ch.kraus;
  for (CMat& k : ks) k *= std::sqrt(p);
  return KrausChannel(ch.dimIn, ch.dimOut, std::move(ks));
}

// Kraus-list concatenation (sum of CP maps).
inline KrausChannel add(const KrausChannel& a, const KrausChannel& b) {
  if (a.dimIn != b.dimIn || a.dimOut != b.dimOut)
    throw std::invalid_argument("add: dimension mismatch");
  std::vector<CMat> ks = a.kraus;
  ks.insert(ks.end(), b.kraus.begin(), b.kraus.end());
  return KrausChannel(a.dimIn, a.dimOut, std::move(ks));
}

struct ApplyResult {
  CMat state;     // sum_K K rho K^dag, trace = weight
  double weight;  // success weight for trace non-increasing maps
};

inline ApplyResult apply_channel(const KrausChannel& ch, const CMat& rho) {
  if (rho.rows() != ch.dimIn || rho.cols() != ch.dimIn)
    throw std::invalid_argument("apply: state dimension mismatch");
  CMat out = CMat::Zero(ch.dimOut, ch.dimOut);
  for (const CMat& k : ch.kraus) out += k * rho * k.adjoint();
  const double weight = out.trace().real();
  return {std::move(out), weight};
}

inline ApplyResult apply_channel(const KrausChannel& ch, const DensityOperator& rho) {
  return apply_channel(ch, rho.matrix);
}

// Bipartite matrix representing a CP map via the unnormalized maximally
// entangled vector convention.
struct ChoiOperator {
  Index dimIn;
  Index dimOut;
  CMat matrix;  // side dimIn * dimOut
};

// Choi vector of a single Kraus operator: sum_i |i> (x) K|i>.
inline CVec choi_vector(const CMat& k) {
  CVec v(k.rows() * k.cols());
  for (Index i = 0; i < k.cols(); ++i) v.segment(i * k.rows(), k.rows()) = k.col(i);
  return v;
}

inline ChoiOperator choi_of(const KrausChannel& ch) {
  const Index side = ch.dimIn * ch.dimOut;
  CMat m = CMat::Zero(side, side);
  for (const CMat& k : ch.kraus) {
    const CVec v = choi_vector(k);
    m += v * v.adjoint();
  }
  return ChoiOperator{ch.dimIn, ch.dimOut, std::move(m)};
}

inline CMat choi_output_trace(const ChoiOperator& c) {
  return partial_trace(c.matrix, {c.dimIn, c.dimOut}, {0});
}

// Extends an isometry-on-a-domain channel U[A] to a trace-preserving map
// U[A] + E'.  E' sends the orthocomplement of the domain projector onto the
// fixed output basis state |0...0>; behaviour there is otherwise
// unconstrained.
inline KrausChannel complete_to_tp(const KrausChannel& iso,
                                   const CMat& domainProjector,
                                   double tol = kStructuralTol) {
  if (iso.kraus.size() != 1)
    throw std::invalid_argument("complete_to_tp: expected a single Kraus operator");
  const CMat& a = iso.kraus[0];
  if (max_norm(CMat(a.adjoint() * a - domainProjector)) > tol)
    throw std::invalid_argument("complete_to_tp: input is not an isometry on its domain");
  std::vector<CMat> ks{a};
  const CMat q =
      CMat::Identity(iso.dimIn, iso.dimIn) - domainProjector;
  Eigen::SelfAdjointEigenSolver<CMat> es(q);
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()[i] > 0.5) {
      CMat b = CMat::Zero(iso.dimOut, iso.dimIn);
      b.row(0) = es.eigenvectors().col(i).adjoint();
      ks.push_back(std::move(b));
    }
  }
  return KrausChannel(iso.dimIn, iso.dimOut, std::move(ks));
}

// Coefficients p_ij of a twirled operator in the {P_S, P_A} (x) {P_S, P_A}
// basis, p_ij = tr[(P_i (x) P_j) X] / (rank P_i * rank P_j), plus the
// Frobenius distance of the input to the reconstruction.  Inputs that are
// not twirl-invariant report a nonzero residual rather than being silently
// projected.
struct TwirlDecomposition {
  double pSS;
  double pSA;
  double pAS;
  double pAA;
  double residualNorm;
};

using FactorPair = std::array<int, 2>;

namespace detail {

inline std::vector<int> twirl_grouping(const FactorPair& vPair,
                                       const FactorPair& wPair) {
  std::vector<int> perm{vPair[0], vPair[1], wPair[0], wPair[1]};
  std::vector<bool> seen(4, false);
  for (int t : perm) {
    if (t < 0 || t > 3 || seen[t])
      throw std::invalid_argument("twirl: factor pairs must partition {0,1,2,3}");
    seen[t] = true;
  }
  return perm;
}

inline void check_twirl_shape(const CMat& x, int d) {
  const Index side = static_cast<Index>(d) * d * d * d;
  if (d < 2 || x.rows() != x.cols() || x.rows() != side)
    throw std::invalid_argument("twirl: operator is not a 4-factor square operator");
}

}  // namespace detail

// Exact Haar twirl over conjugations by V (x) V (x) W (x) W, evaluated
// algebraically through Schur's two-projector resolution.  The V pair and W
// pair name the factors (each C^d) the collective unitaries act on; the
// default matches the Choi ordering (in, in', out, out') of a supermap.
inline TwirlDecomposition exact_twirl(const CMat& x, int d,
                                      const FactorPair& vPair = {0, 2},
                                      const FactorPair& wPair = {1, 3}) {
  detail::check_twirl_shape(x, d);
  const std::vector<int> perm = detail::twirl_grouping(vPair, wPair);
  const std::vector<Index> dims(4, d);
  const CMat xg = permute_operator(x, dims, perm);

  const CMat ps = sym_projector(d, 2);
  const CMat pa = antisym_projector(d, 2);
  const double rs = d * (d + 1) / 2.0;
  const double ra = d * (d - 1) / 2.0;

  auto coeff = [&](const CMat& pi, const CMat& pj, double ri, double rj) {
    return trace_product(kron(pi, pj), xg).real() / (ri * rj);
  };
  TwirlDecomposition dec{};
  dec.pSS = coeff(ps, ps, rs, rs);
  dec.pSA = coeff(ps, pa, rs, ra);
  dec.pAS = coeff(pa, ps, ra, rs);
  dec.pAA = coeff(pa, pa, ra, ra);

  CMat recon = dec.pSS * kron(ps, ps) + dec.pSA * kron(ps, pa) +
               dec.pAS * kron(pa, ps) + dec.pAA * kron(pa, pa);
  dec.residualNorm = (xg - recon).norm();
  return dec;
}

inline TwirlDecomposition exact_twirl(const ChoiOperator& x, int d,
                                      const FactorPair& vPair = {0, 2},
                                      const FactorPair& wPair = {1, 3}) {
  const Index dd = static_cast<Index>(d) * d;
  if (x.dimIn != dd || x.dimOut != dd)
    throw std::invalid_argument("exact_twirl: Choi sides must each be d^2");
  return exact_twirl(x.matrix, d, vPair, wPair);
}

// The twirl of the input reconstructed in its original factor ordering.
inline CMat twirl_reconstruction(const TwirlDecomposition& dec, int d,
                                 const FactorPair& vPair = {0, 2},
                                 const FactorPair& wPair = {1, 3}) {
  const std::vector<int> perm = detail::twirl_grouping(vPair, wPair);
  const CMat ps = sym_projector(d, 2);
  const CMat pa = antisym_projector(d, 2);
  CMat recon = dec.pSS * kron(ps, ps) + dec.pSA * kron(ps, pa) +
               dec.pAS * kron(pa, ps) + dec.pAA * kron(pa, pa);
  const std::vector<Index> dims(4, d);
  return permute_operator(recon, dims, inverse_permutation(perm));
}

namespace detail {

// (Y (x) Z) X (Y (x) Z)^dag for blocks Y, Z of side s, X of side s^2,
// without forming the s^2 Kronecker factor.
inline CMat conjugate_by_kron_pair(const CMat& y, const CMat& z, const CMat& x) {
  const Index s = y.rows();
  const Index n = s * s;
  CMat t(n, n);
  for (Index a = 0; a < s; ++a) t.middleRows(a * s, s) = z * x.middleRows(a * s, s);
  CMat left = CMat::Zero(n, n);
  for (Index a = 0; a < s; ++a)
    for (Index b = 0; b < s; ++b) left.middleRows(a * s, s) += y(a, b) * t.middleRows(b * s, s);
  // Right side: X M^dag = (M X^dag)^dag with the same left-multiplier.
  CMat xa = left.adjoint();
  for (Index a = 0; a < s; ++a) t.middleRows(a * s, s) = z * xa.middleRows(a * s, s);
  CMat out = CMat::Zero(n, n);
  for (Index a = 0; a < s; ++a)
    for (Index b = 0; b < s; ++b) out.middleRows(a * s, s) += y(a, b) * t.middleRows(b * s, s);
  return out.adjoint();
}

}  // namespace detail

// Empirical mean of U[V (x) V (x) W (x) W] conjugations over Haar pairs
// (V, W).  Per-sample seeds are derived from (seed, sample index) and the
// summation runs over fixed 512-sample blocks combined in block order, so
// the result is deterministic for a given (seed, samples) at any thread
// count.
inline CMat monte_carlo_twirl(const CMat& x, int d, int samples,
                              std::uint64_t seed,
                              const FactorPair& vPair = {0, 2},
                              const FactorPair& wPair = {1, 3},
                              int threads = 1) {
  detail::check_twirl_shape(x, d);
  if (samples < 1) throw std::invalid_argument("monte_carlo_twirl: samples must be >= 1");
  const std::vector<int> perm = detail::twirl_grouping(vPair, wPair);
  const std::vector<Index> dims(4, d);
  const CMat xg = permute_operator(x, dims, perm);

  constexpr std::int64_t kBlock = 512;
  const std::int64_t blocks = (samples + kBlock - 1) / kBlock;
  std::vector<CMat> blockSum(static_cast<std::size_t>(blocks));
  run_chunked(blocks, threads, [&](std::int64_t begin, std::int64_t end, int) {
    for (std::int64_t b = begin; b < end; ++b) {
      CMat acc = CMat::Zero(xg.rows(), xg.cols());
      const std::int64_t lo = b * kBlock;
      const std::int64_t hi = std::min<std::int64_t>(lo + kBlock, samples);
      for (std::int64_t i = lo; i < hi; ++i) {
        const CMat v = haar_random_unitary(d, derive_seed(seed, 2 * i));
        const CMat w = haar_random_unitary(d, derive_seed(seed, 2 * i + 1));
        acc += detail::conjugate_by_kron_pair(kron(v, v), kron(w, w), xg);
      }
      blockSum[static_cast<std::size_t>(b)] = std::move(acc);
    }
  });
  CMat mean = CMat::Zero(xg.rows(), xg.cols());
  for (const CMat& acc : blockSum) mean += acc;
  mean /= static_cast<double>(samples);
  return permute_operator(mean, dims, inverse_permutation(perm));
}

inline CMat monte_carlo_twirl(const ChoiOperator& x, int d, int samples,
                              std::uint64_t seed, int threads = 1) {
  return monte_carlo_twirl(x.matrix, d, samples, seed, {0, 2}, {1, 3}, threads);
}

}  // namespace conjcomb
