#pragma once

// The constructive unitary-conjugation circuit: encoder U[A_n], d-n parallel
// uses of the input gate, decoder U[A_n^dag], both completed to
// trace-preserving channels.  On antisymmetric-subspace inputs the composite
// acts as U[(u*)^{(x)n}]; at n = 1 the effective single-copy operator is
// A^dag u^{(x)d-1} A = u* up to a global phase.  Also the single-use
// impossibility witness from the symmetric/antisymmetric projector ranks.

#include <array>
#include <stdexcept>
#include <vector>

#include "conjcomb/antisym.hpp"
#include "conjcomb/channel.hpp"
#include "conjcomb/tensor.hpp"

namespace conjcomb {

struct ConjugationCircuit {
  int d;
  int n;
  int uses;  // = d - n
  CMat a;    // the antisymmetrizer isometry
  KrausChannel encoder;
  KrausChannel decoder;
};

inline ConjugationCircuit make_conjugation_circuit(int d, int n = 1) {
  const Antisymmetrizer an = antisymmetrizer(d, n);
  KrausChannel enc = complete_to_tp(KrausChannel::conjugation_by(an.matrix),
                                    antisym_projector(d, n));
  KrausChannel dec = complete_to_tp(KrausChannel::conjugation_by(CMat(an.matrix.adjoint())),
                                    antisym_projector(d, d - n));
  return ConjugationCircuit{d, n, d - n, an.matrix, std::move(enc), std::move(dec)};
}

namespace detail {

inline void check_gate(const ConjugationCircuit& c, const CMat& u,
                       const char* who) {
  if (u.rows() != c.d || u.cols() != c.d)
    throw std::invalid_argument(std::string(who) + ": gate dimension mismatch");
  if (!is_unitary(u))
    throw std::invalid_argument(std::string(who) + ": input is not unitary within 1e-10");
}

}  // namespace detail

// Effective single-copy operator A^dag u^{(x)(d-1)} A; equals the entrywise
// conjugate u* up to a global phase.
inline CMat conjugate_unitary(const ConjugationCircuit& c, const CMat& u) {
  if (c.n != 1)
    throw std::invalid_argument("conjugate_unitary: single-copy extraction requires n = 1");
  detail::check_gate(c, u, "conjugate_unitary");
  return c.a.adjoint() * kron_pow(u, c.uses) * c.a;
}

// The full composite channel D o U[u]^{(x)uses} o E; the independent
// cross-check route for the operator extraction above.
inline KrausChannel conjugate_channel(const ConjugationCircuit& c, const CMat& u) {
  detail::check_gate(c, u, "conjugate_channel");
  const KrausChannel mid = KrausChannel::conjugation_by(kron_pow(u, c.uses));
  return compose(c.decoder, compose(mid, c.encoder));
}

// Runs the circuit on a state supported in the antisymmetric subspace of the
// n-copy space; the output equals (u*)^{(x)n} rho (u^T)^{(x)n} with trace
// preserved.  States leaking outside the subspace by more than 1e-8 are
// rejected rather than silently projected.
inline DensityOperator conjugate_channel_on_state(const ConjugationCircuit& c,
                                                  const CMat& u,
                                                  const DensityOperator& rho) {
  detail::check_gate(c, u, "conjugate_channel_on_state");
  if (rho.matrix.rows() != c.encoder.dimIn)
    throw std::invalid_argument("conjugate_channel_on_state: state dimension mismatch");
  const CMat p = antisym_projector(c.d, c.n);
  const double leakage = 1.0 - trace_product(p, rho.matrix).real();
  if (leakage > 1e-8)
    throw std::invalid_argument(
        "conjugate_channel_on_state: state leaks outside the antisymmetric subspace "
        "(leakage weight " + std::to_string(leakage) + ")");
  const ApplyResult out = apply_channel(conjugate_channel(c, u), rho.matrix);
  return DensityOperator(rho.dims, out.state);
}

// v u* v^dag realized by the modified pair (encoder U[A v^dag], decoder
// U[v A^dag]); any antiunitary K = V C acts on gates this way.
inline CMat antiunitary_transform(const CMat& v, const CMat& u,
                                  const ConjugationCircuit& c) {
  if (c.n != 1)
    throw std::invalid_argument("antiunitary_transform: requires an n = 1 circuit");
  detail::check_gate(c, u, "antiunitary_transform");
  detail::check_gate(c, v, "antiunitary_transform");
  const CMat encode = c.a * v.adjoint();
  const CMat decode = v * c.a.adjoint();
  return decode * kron_pow(u, c.uses) * encode;
}

// One symmetric/antisymmetric component pair of the twirled supermap; a
// component can carry a unitary-conjugation Choi pair only if both its
// projector ranks are 1.
struct WitnessComponent {
  char encoderBlock;  // 'S' or 'A'
  char decoderBlock;
  int encoderRank;
  int decoderRank;
  bool feasible;
};

struct NogoWitness {
  int d;
  int rankSym;   // d(d+1)/2
  int rankAnti;  // d(d-1)/2
  std::array<WitnessComponent, 4> components;
  bool feasible;  // true iff some component pair is (rank 1, rank 1)
};

inline NogoWitness single_use_nogo_witness(int d) {
  if (d < 2) throw std::invalid_argument("single_use_nogo_witness: require d >= 2");
  const int rs = static_cast<int>(std::lround(sym_projector(d, 2).trace().real()));
  const int ra = static_cast<int>(std::lround(antisym_projector(d, 2).trace().real()));
  NogoWitness w{};
  w.d = d;
  w.rankSym = rs;
  w.rankAnti = ra;
  const std::array<std::pair<char, int>, 2> blocks{{{'S', rs}, {'A', ra}}};
  int t = 0;
  bool any = false;
  for (const auto& [bi, ri] : blocks)
    for (const auto& [bj, rj] : blocks) {
      const bool ok = (ri == 1 && rj == 1);
      w.components[t++] = WitnessComponent{bi, bj, ri, rj, ok};
      any = any || ok;
    }
  w.feasible = any;
  return w;
}

}  // namespace conjcomb
