#include <catch2/catch_amalgamated.hpp>

#include "conjcomb/conjugation.hpp"

using namespace conjcomb;

namespace {

CMat fourier_matrix(int d) {
  CMat f(d, d);
  const double w = 2.0 * M_PI / d;
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) f(j, k) = std::polar(1.0 / std::sqrt(double(d)), w * j * k);
  return f;
}

CMat cycle_matrix(int d) {
  CMat p = CMat::Zero(d, d);
  for (int j = 0; j < d; ++j) p((j + 1) % d, j) = 1.0;
  return p;
}

CMat random_diagonal_phases(int d, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unif(0.0, 2.0 * M_PI);
  CMat u = CMat::Zero(d, d);
  for (int j = 0; j < d; ++j) u(j, j) = std::polar(1.0, unif(gen));
  return u;
}

}  // namespace

TEST_CASE("conjugate_unitary basics") {
  SECTION("identity maps to identity") {
    for (int d = 2; d <= 4; ++d) {
      const ConjugationCircuit c = make_conjugation_circuit(d);
      CHECK(c.uses == d - 1);
      CHECK(phase_aligned_distance(conjugate_unitary(c, CMat::Identity(d, d)),
                                   CMat::Identity(d, d)) < 1e-12);
    }
  }
  SECTION("qubit diagonal phase is conjugated") {
    const ConjugationCircuit c = make_conjugation_circuit(2);
    CMat u = CMat::Zero(2, 2);
    u(0, 0) = 1.0;
    u(1, 1) = std::polar(1.0, M_PI / 3.0);
    CHECK(phase_aligned_distance(conjugate_unitary(c, u), CMat(u.conjugate())) <
          1e-12);
  }
  SECTION("non-unitary input rejected") {
    const ConjugationCircuit c = make_conjugation_circuit(2);
    CHECK_THROWS_AS(conjugate_unitary(c, CMat(0.5 * CMat::Identity(2, 2))),
                    std::invalid_argument);
    CHECK_THROWS_AS(conjugate_unitary(c, CMat::Identity(3, 3)),
                    std::invalid_argument);
  }
}

TEST_CASE("universality over gate families") {
  for (int d = 2; d <= 5; ++d) {
    const ConjugationCircuit c = make_conjugation_circuit(d);
    std::vector<CMat> gates{fourier_matrix(d), cycle_matrix(d),
                            random_diagonal_phases(d, 40 + d)};
    for (int t = 0; t < 10; ++t) gates.push_back(haar_random_unitary(d, 900 + 10 * d + t));
    for (const CMat& u : gates) {
      CHECK(phase_aligned_distance(conjugate_unitary(c, u), CMat(u.conjugate())) <
            1e-10);
    }
  }
}

TEST_CASE("channel route matches the operator route") {
  for (int d = 2; d <= 3; ++d) {
    const ConjugationCircuit c = make_conjugation_circuit(d);
    for (int t = 0; t < 10; ++t) {
      const CMat u = haar_random_unitary(d, 1700 + 10 * d + t);
      const CMat choiCircuit = choi_of(conjugate_channel(c, u)).matrix;
      const CMat choiDirect =
          choi_of(KrausChannel::conjugation_by(CMat(u.conjugate()))).matrix;
      CHECK(max_norm(CMat(choiCircuit - choiDirect)) < 1e-10);
    }
  }
}

TEST_CASE("composition covariance") {
  const int d = 3;
  const ConjugationCircuit c = make_conjugation_circuit(d);
  for (int t = 0; t < 5; ++t) {
    const CMat u1 = haar_random_unitary(d, 2100 + t);
    const CMat u2 = haar_random_unitary(d, 2200 + t);
    const CMat lhs = conjugate_unitary(c, CMat(u1 * u2));
    const CMat rhs = conjugate_unitary(c, u1) * conjugate_unitary(c, u2);
    CHECK(phase_aligned_distance(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("conjugate_channel_on_state") {
  SECTION("n=1: any qutrit state maps to u* rho u^T") {
    const ConjugationCircuit c = make_conjugation_circuit(3);
    for (int t = 0; t < 5; ++t) {
      const DensityOperator rho = DensityOperator::pure(random_state({3}, 2300 + t));
      const CMat u = haar_random_unitary(3, 2400 + t);
      const DensityOperator out = conjugate_channel_on_state(c, u, rho);
      const CMat expected = u.conjugate() * rho.matrix * u.transpose();
      CHECK(max_norm(CMat(out.matrix - expected)) < 1e-10);
      CHECK(std::abs(out.matrix.trace() - Complex(1.0)) < 1e-12);
    }
  }
  SECTION("n=2, d=3 on a wedge state") {
    const ConjugationCircuit c = make_conjugation_circuit(3, 2);
    CHECK(c.uses == 1);
    const StateVector w = wedge_vector(WedgeIndex(3, {0, 1}));
    const DensityOperator rho = DensityOperator::pure(w);
    SECTION("identity gate leaves it unchanged") {
      const DensityOperator out =
          conjugate_channel_on_state(c, CMat::Identity(3, 3), rho);
      CHECK(max_norm(CMat(out.matrix - rho.matrix)) < 1e-10);
    }
    SECTION("random gate acts as (u*)^{(x)2}") {
      const CMat u = haar_random_unitary(3, 2500);
      const DensityOperator out = conjugate_channel_on_state(c, u, rho);
      const CMat uc2 = kron_pow(CMat(u.conjugate()), 2);
      CHECK(max_norm(CMat(out.matrix - uc2 * rho.matrix * uc2.adjoint())) < 1e-10);
      CHECK(std::abs(out.matrix.trace() - Complex(1.0)) < 1e-12);
    }
  }
  SECTION("leakage outside the antisymmetric subspace is rejected") {
    const ConjugationCircuit c = make_conjugation_circuit(3, 2);
    const DensityOperator rho = DensityOperator::pure(basis_state({3, 3}, 0));
    try {
      conjugate_channel_on_state(c, CMat::Identity(3, 3), rho);
      FAIL("expected rejection");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find("leakage weight") != std::string::npos);
    }
  }
}

TEST_CASE("antiunitary_transform") {
  const ConjugationCircuit c2 = make_conjugation_circuit(2);
  SECTION("v = I reduces to plain conjugation") {
    const CMat u = haar_random_unitary(2, 2600);
    CHECK(phase_aligned_distance(antiunitary_transform(CMat::Identity(2, 2), u, c2),
                                 CMat(u.conjugate())) < 1e-10);
  }
  SECTION("qubit universal-NOT composite") {
    CMat sy(2, 2);
    sy << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    const CMat u = haar_random_unitary(2, 2700);
    const CMat out = antiunitary_transform(sy, u, c2);
    CHECK(phase_aligned_distance(out, CMat(sy * u.conjugate() * sy.adjoint())) <
          1e-10);
  }
  SECTION("random pair at d=3") {
    const ConjugationCircuit c3 = make_conjugation_circuit(3);
    for (int t = 0; t < 5; ++t) {
      const CMat v = haar_random_unitary(3, 2800 + t);
      const CMat u = haar_random_unitary(3, 2900 + t);
      const CMat out = antiunitary_transform(v, u, c3);
      CHECK(phase_aligned_distance(out, CMat(v * u.conjugate() * v.adjoint())) <
            1e-10);
    }
  }
}

TEST_CASE("single_use_nogo_witness") {
  SECTION("d=2 is feasible through the antisymmetric pair") {
    const NogoWitness w = single_use_nogo_witness(2);
    CHECK(w.rankSym == 3);
    CHECK(w.rankAnti == 1);
    CHECK(w.feasible);
    bool aaFeasible = false;
    for (const WitnessComponent& comp : w.components)
      if (comp.encoderBlock == 'A' && comp.decoderBlock == 'A')
        aaFeasible = comp.feasible;
    CHECK(aaFeasible);
  }
  SECTION("d=3 ranks 6 and 3, infeasible") {
    const NogoWitness w = single_use_nogo_witness(3);
    CHECK(w.rankSym == 6);
    CHECK(w.rankAnti == 3);
    CHECK_FALSE(w.feasible);
  }
  SECTION("d=4 ranks 10 and 6") {
    const NogoWitness w = single_use_nogo_witness(4);
    CHECK(w.rankSym == 10);
    CHECK(w.rankAnti == 6);
    CHECK_FALSE(w.feasible);
  }
  SECTION("feasible iff d = 2, up to d = 8") {
    for (int d = 2; d <= 8; ++d) {
      const NogoWitness w = single_use_nogo_witness(d);
      CHECK(w.rankSym == d * (d + 1) / 2);
      CHECK(w.rankAnti == d * (d - 1) / 2);
      CHECK(w.feasible == (d == 2));
    }
  }
  SECTION("d < 2 rejected") {
    CHECK_THROWS_AS(single_use_nogo_witness(1), std::invalid_argument);
  }
}
