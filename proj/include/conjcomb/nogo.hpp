#pragma once

// Probabilistic-implementation framework behind the state-conjugation no-go:
// heralded instruments, the repeat-until-success amplification channel, the
// closed-form success law, the fidelity-scaling constant, and the crossing
// against the universal-NOT optimal fidelity 1 - (n+2)^{-1}.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "conjcomb/channel.hpp"
#include "conjcomb/tensor.hpp"

namespace conjcomb {

// Heralded two-outcome operation {E, E'}; success + failure must be trace
// preserving within 1e-10.
struct Instrument {
  KrausChannel success;
  KrausChannel failure;

  Instrument(KrausChannel success_, KrausChannel failure_)
      : success(std::move(success_)), failure(std::move(failure_)) {
    if (success.dimIn != failure.dimIn || success.dimOut != failure.dimOut)
      throw std::invalid_argument("Instrument: branch dimension mismatch");
    if (!add(success, failure).isTP)
      throw std::invalid_argument("Instrument: success + failure is not trace preserving");
  }
};

struct AmplificationReport {
  double epsilon;  // measured per-block success probability
  int l;           // blocks
  int m;           // clones per block
  DensityOperator outputState;
  double successWeight;      // total weight of success branches
  double closedFormDistance; // max-norm gap to (1-(1-p)^l) T(psi) + (1-p)^l |0><0|
};

namespace detail {

inline int clone_count(Index dimIn, Index d) {
  Index x = dimIn;
  int m = 0;
  while (x > 1 && x % d == 0) {
    x /= d;
    ++m;
  }
  if (x != 1 || m < 1)
    throw std::invalid_argument("amplify: instrument input is not a clone power of d");
  return m;
}

}  // namespace detail

// Runs the l-block repeat-until-success protocol by stochastic-branch
// expansion: every success/failure outcome path is tracked with its weight
// and the ancilla ends in the last successful block's output (reset state
// |0><0| if all blocks fail).  Branches are aggregated in bitstring order.
inline AmplificationReport amplify(const Instrument& inst,
                                   const KrausChannel& targetMap,
                                   const StateVector& psi, int l) {
  if (psi.dims.size() != 1)
    throw std::invalid_argument("amplify: input state must be a single system");
  const Index d = psi.dims[0];
  if (inst.success.dimOut != d)
    throw std::invalid_argument("amplify: instrument output dimension mismatch");
  if (targetMap.dimIn != d || targetMap.dimOut != d)
    throw std::invalid_argument("amplify: target map dimension mismatch");
  if (l < 1) throw std::invalid_argument("amplify: require l >= 1");
  if (l > 20) throw std::invalid_argument("amplify: dimension overflow (l > 20)");
  const int m = detail::clone_count(inst.success.dimIn, d);

  const CVec clones = kron_pow(psi.amps, m);
  const CMat blockInput = clones * clones.adjoint();
  const ApplyResult succ = apply_channel(inst.success, blockInput);
  const double p = succ.weight;

  CMat reset = CMat::Zero(d, d);
  reset(0, 0) = 1.0;

  CMat out = CMat::Zero(d, d);
  double successWeight = 0.0;
  const std::uint64_t branches = std::uint64_t{1} << l;
  for (std::uint64_t mask = 0; mask < branches; ++mask) {
    int s = 0;
    for (int i = 0; i < l; ++i) s += static_cast<int>((mask >> i) & 1u);
    const double weight = std::pow(p, s) * std::pow(1.0 - p, l - s);
    if (mask == 0) {
      out += weight * reset;
    } else if (p > 1e-15) {
      out += (weight / p) * succ.state;
      successWeight += weight;
    }
  }

  const double closedWeight = 1.0 - std::pow(1.0 - p, l);
  const CMat target = apply_channel(targetMap, CMat(psi.amps * psi.amps.adjoint())).state;
  const CMat closedForm =
      closedWeight * target + (1.0 - closedWeight) * reset;

  AmplificationReport rep{p,
                          l,
                          m,
                          DensityOperator({d}, out),
                          successWeight,
                          max_norm(CMat(out - closedForm))};
  return rep;
}

// Conditional swap on (register, ancilla, system): identity for register
// |0>, swap for |1>.
inline CMat conditional_swap(Index d) {
  CMat swap = CMat::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) swap(j * d + i, i * d + j) = 1.0;
  CMat p0 = CMat::Zero(2, 2), p1 = CMat::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  return kron(p0, CMat::Identity(d * d, d * d)) + kron(p1, swap);
}

// Full-tensor realization of the amplification channel for cross-checking
// the branch expansion: materializes ancilla + blocks + outcome registers,
// applies the heralding channels and conditional swaps, then traces down to
// the ancilla.  Single-clone blocks only; total dimension is capped.
inline DensityOperator amplify_full_tensor(const Instrument& inst,
                                           const StateVector& psi, int l) {
  if (psi.dims.size() != 1)
    throw std::invalid_argument("amplify_full_tensor: input state must be a single system");
  const Index d = psi.dims[0];
  if (inst.success.dimIn != d || inst.success.dimOut != d)
    throw std::invalid_argument("amplify_full_tensor: single-clone blocks required");
  if (l < 1) throw std::invalid_argument("amplify_full_tensor: require l >= 1");

  // Factor layout: [ancilla, block_1..block_l, reg_1..reg_l].
  std::vector<Index> dims(1 + 2 * static_cast<std::size_t>(l));
  dims[0] = d;
  for (int i = 0; i < l; ++i) {
    dims[1 + i] = d;
    dims[1 + l + i] = 2;
  }
  if (dims_product(dims) > 4096)
    throw std::invalid_argument("amplify_full_tensor: dimension overflow");

  CVec init = CVec::Zero(d);
  init[0] = 1.0;
  CVec vec = init;
  for (int i = 0; i < l; ++i) vec = kron(vec, psi.amps);
  CVec reg0 = CVec::Zero(2);
  reg0[0] = 1.0;
  for (int i = 0; i < l; ++i) vec = kron(vec, reg0);
  CMat rho = vec * vec.adjoint();

  // Heralding: block i through E or E', outcome written to register i.
  CMat flag0 = CMat::Zero(2, 2), flag1 = CMat::Zero(2, 2);
  flag0(0, 0) = 1.0;  // register stays |0> on failure
  flag1(1, 0) = 1.0;  // register flips to |1> on success
  for (int i = 0; i < l; ++i) {
    std::vector<CMat> lifted;
    for (const CMat& k : inst.success.kraus)
      lifted.push_back(embed_operator(kron(k, flag1), dims, {1 + i, 1 + l + i}));
    for (const CMat& k : inst.failure.kraus)
      lifted.push_back(embed_operator(kron(k, flag0), dims, {1 + i, 1 + l + i}));
    CMat next = CMat::Zero(rho.rows(), rho.cols());
    for (const CMat& g : lifted) next += g * rho * g.adjoint();
    rho = std::move(next);
  }

  // Conditional swaps ancilla <-> block_i, controlled on register i.
  const CMat cswap = conditional_swap(d);
  for (int i = 0; i < l; ++i) {
    const CMat u = embed_operator(cswap, dims, {1 + l + i, 0, 1 + i});
    rho = u * rho * u.adjoint();
  }

  return DensityOperator({d}, partial_trace(rho, dims, {0}));
}

// c = max{sqrt(1-eps), (1 - d^{-1/2})^{1/m}}, the fidelity-scaling constant;
// strictly below 1 for eps in (0, 1].
inline double scaling_constant(double epsilon, int m, Index d) {
  if (!(epsilon > 0.0) || epsilon > 1.0)
    throw std::invalid_argument("scaling_constant: epsilon must lie in (0, 1]");
  if (m < 1) throw std::invalid_argument("scaling_constant: require m >= 1");
  if (d < 2) throw std::invalid_argument("scaling_constant: require d >= 2");
  const double a = std::sqrt(1.0 - epsilon);
  const double b = std::pow(1.0 - 1.0 / std::sqrt(static_cast<double>(d)), 1.0 / m);
  return std::max(a, b);
}

// Lower bound 1 - c^n on the optimal n-clone approximation fidelity of a
// map that is probabilistically implementable from m clones.
inline double fidelity_lower_bound(double epsilon, int m, int n, Index d) {
  if (n < 1) throw std::invalid_argument("fidelity_lower_bound: require n >= 1");
  return 1.0 - std::pow(scaling_constant(epsilon, m, d), n);
}

// Known optimal universal-NOT fidelity from n clones.
inline double unot_optimal_fidelity(int n) {
  if (n < 1) throw std::invalid_argument("unot_optimal_fidelity: require n >= 1");
  return 1.0 - 1.0 / (n + 2.0);
}

// Smallest n with c^n < 1/(n+2): from there on the amplified bound exceeds
// the universal-NOT optimum.  Existence is guaranteed for any c < 1.
inline int contradiction_crossing(double epsilon, int m, Index d) {
  const double c = scaling_constant(epsilon, m, d);
  double cn = c;
  for (int n = 1; n <= 1000000; ++n) {
    if (cn < 1.0 / (n + 2.0)) return n;
    cn *= c;
  }
  throw std::runtime_error("contradiction_crossing: search bound exceeded");
}

}  // namespace conjcomb
