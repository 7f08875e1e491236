#include <catch2/catch_amalgamated.hpp>

#include "conjcomb/antisym.hpp"
#include "conjcomb/tensor.hpp"

using namespace conjcomb;

namespace {

// Wedge-basis form of A_n: sum over order-preserving splits nu of (0..d-1)
// into an n-set and its complement, with sign (-1)^{n(n+1)/2 + sum nu_k}
// in 1-based labels.  Independent of the permutation-sum construction.
CMat antisymmetrizer_wedge_form(int d, int n) {
  const Index rows = dims_product(std::vector<Index>(d - n, d));
  const Index cols = dims_product(std::vector<Index>(n, d));
  CMat a = CMat::Zero(rows, cols);
  for (const WedgeIndex& bra : all_wedge_indices(d, n)) {
    std::vector<int> comp;
    std::vector<bool> in(d, false);
    for (int t : bra.indices) in[t] = true;
    for (int t = 0; t < d; ++t)
      if (!in[t]) comp.push_back(t);
    int sum1based = 0;
    for (int t : bra.indices) sum1based += t + 1;
    const int exponent = n * (n + 1) / 2 + sum1based;
    const double sign = (exponent % 2 == 0) ? 1.0 : -1.0;
    const CVec ket = wedge_vector(WedgeIndex(d, comp)).amps;
    const CVec braVec = wedge_vector(bra).amps;
    a += sign * ket * braVec.transpose();
  }
  return a;
}

}  // namespace

TEST_CASE("wedge_vector") {
  SECTION("d=2 full wedge is the singlet") {
    const StateVector w = wedge_vector(WedgeIndex(2, {0, 1}));
    CVec expected = CVec::Zero(4);
    expected[1] = 1.0 / std::sqrt(2.0);
    expected[2] = -1.0 / std::sqrt(2.0);
    CHECK(max_norm(CVec(w.amps - expected)) < 1e-14);
  }
  SECTION("d=3 pair {0,2}") {
    const StateVector w = wedge_vector(WedgeIndex(3, {0, 2}));
    CVec expected = CVec::Zero(9);
    expected[0 * 3 + 2] = 1.0 / std::sqrt(2.0);
    expected[2 * 3 + 0] = -1.0 / std::sqrt(2.0);
    CHECK(max_norm(CVec(w.amps - expected)) < 1e-14);
  }
  SECTION("total antisymmetry under factor transposition") {
    const StateVector w = wedge_vector(WedgeIndex(3, {0, 1, 2}));
    const StateVector swapped = permute_subsystems(w, {1, 0, 2});
    CHECK(max_norm(CVec(swapped.amps + w.amps)) < 1e-14);
    CHECK(std::abs(w.amps.norm() - 1.0) < 1e-14);
  }
  SECTION("invalid index lists rejected") {
    CHECK_THROWS_AS(WedgeIndex(3, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(WedgeIndex(3, {1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(WedgeIndex(3, {2, 1}), std::invalid_argument);
  }
}

TEST_CASE("antisymmetrizer small cases") {
  SECTION("qubit antisymmetrizer is sigma_y up to global phase") {
    const CMat a = antisymmetrizer(2, 1).matrix;
    CMat expected(2, 2);
    expected << 0.0, -1.0, 1.0, 0.0;
    CHECK(max_norm(CMat(a - expected)) < 1e-14);
    CMat sy(2, 2);
    sy << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    CHECK(phase_aligned_distance(a, sy) < 1e-12);
  }
  SECTION("d=3: A|0> is the {1,2} wedge") {
    const CMat a = antisymmetrizer(3, 1).matrix;
    const CVec col0 = a.col(0);
    const CVec expected = wedge_vector(WedgeIndex(3, {1, 2})).amps;
    CHECK(max_norm(CVec(col0 - expected)) < 1e-14);
  }
  SECTION("d=4, n=2: A2^dag A2 is the rank-6 antisymmetric projector") {
    const CMat a = antisymmetrizer(4, 2).matrix;
    const CMat p = antisym_projector(4, 2);
    CHECK(max_norm(CMat(a.adjoint() * a - p)) < 1e-12);
    CHECK(std::lround(p.trace().real()) == 6);
  }
  SECTION("n out of range") {
    CHECK_THROWS_AS(antisymmetrizer(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(antisymmetrizer(3, 3), std::invalid_argument);
  }
}

TEST_CASE("antisymmetrizer isometry and wedge form, d <= 5") {
  for (int d = 2; d <= 5; ++d) {
    for (int n = 1; n <= d - 1; ++n) {
      const CMat a = antisymmetrizer(d, n).matrix;
      CHECK(max_norm(CMat(a.adjoint() * a - antisym_projector(d, n))) < 1e-12);
      CHECK(max_norm(CMat(a * a.adjoint() - antisym_projector(d, d - n))) < 1e-12);
      CHECK(max_norm(CMat(a - antisymmetrizer_wedge_form(d, n))) < 1e-12);
    }
  }
}

TEST_CASE("indexed_antisymmetrizer") {
  SECTION("d=2 pair operator") {
    const CMat a = indexed_antisymmetrizer(2, 1, 1, WedgeIndex(2, {0, 1}));
    CMat expected(2, 2);
    expected << 0.0, -1.0, 1.0, 0.0;
    expected /= std::sqrt(2.0);
    CHECK(max_norm(CMat(a - expected)) < 1e-14);
  }
  SECTION("support restricted to the index set") {
    const CMat a = indexed_antisymmetrizer(3, 1, 1, WedgeIndex(3, {0, 1}));
    CHECK(a.col(2).norm() == 0.0);
    CHECK(a.row(2).norm() == 0.0);
  }
  SECTION("full index set rescales the antisymmetrizer") {
    for (int d = 3; d <= 4; ++d) {
      for (int n = 1; n <= d - 1; ++n) {
        const CMat lhs = indexed_antisymmetrizer(d, n, d - n, WedgeIndex::full(d));
        const CMat rhs = std::sqrt(factorial(n) * factorial(d - n) / factorial(d)) *
                         antisymmetrizer(d, n).matrix;
        CHECK(max_norm(CMat(lhs - rhs)) < 1e-12);
      }
    }
  }
  SECTION("length mismatch rejected") {
    CHECK_THROWS_AS(indexed_antisymmetrizer(3, 1, 1, WedgeIndex(3, {0, 1, 2})),
                    std::invalid_argument);
  }
}

TEST_CASE("projectors") {
  SECTION("antisymmetric ranks are binomial(d, m)") {
    for (int d = 2; d <= 4; ++d)
      for (int m = 1; m <= d; ++m) {
        const CMat p = antisym_projector(d, m);
        CHECK(max_norm(CMat(p * p - p)) < 1e-12);
        CHECK(max_norm(CMat(p - p.adjoint())) < 1e-12);
        CHECK(std::lround(p.trace().real()) == std::lround(binomial(d, m)));
      }
  }
  SECTION("d=2, m=2 is the singlet projector") {
    const CMat p = antisym_projector(2, 2);
    const CVec s = wedge_vector(WedgeIndex(2, {0, 1})).amps;
    CHECK(max_norm(CMat(p - s * s.adjoint())) < 1e-14);
  }
  SECTION("top wedge power is rank 1") {
    const CMat p = antisym_projector(3, 3);
    const CVec w = wedge_vector(WedgeIndex(3, {0, 1, 2})).amps;
    CHECK(max_norm(CMat(p - w * w.adjoint())) < 1e-13);
  }
  SECTION("m > d gives the zero matrix") {
    CHECK(max_norm(antisym_projector(2, 3)) == 0.0);
  }
  SECTION("partial trace of the d=2 symmetric projector") {
    const CMat ps = sym_projector(2, 2);
    const CMat reduced = partial_trace(ps, {2, 2}, {0});
    CHECK(max_norm(CMat(reduced - 1.5 * CMat::Identity(2, 2))) < 1e-12);
  }
  SECTION("symmetric ranks are d(d+1)/2 at m=2") {
    for (int d = 2; d <= 5; ++d) {
      const CMat p = sym_projector(d, 2);
      CHECK(std::lround(p.trace().real()) == d * (d + 1) / 2);
      CHECK(max_norm(CMat(p + antisym_projector(d, 2) -
                          CMat::Identity(d * d, d * d))) < 1e-12);
    }
  }
}

TEST_CASE("intertwining identity") {
  // A^{N;d-N} U^{(x)N} = (U*)^{(x)d-N} A^{N;d-N} for det-1 unitaries.
  for (int d = 2; d <= 4; ++d) {
    for (int N = 1; N <= d - 1; ++N) {
      const CMat a = indexed_antisymmetrizer(d, N, d - N, WedgeIndex::full(d));
      for (int trial = 0; trial < 20; ++trial) {
        const CMat u = special_unitarize(
            haar_random_unitary(d, 9000 + 100 * d + 10 * N + trial));
        const CMat lhs = a * kron_pow(u, N);
        const CMat rhs = kron_pow(CMat(u.conjugate()), d - N) * a;
        CHECK(max_norm(CMat(lhs - rhs)) < 1e-10);
      }
    }
  }
}

TEST_CASE("top wedge state invariance") {
  for (int d = 2; d <= 4; ++d) {
    const CVec w = wedge_vector(WedgeIndex::full(d)).amps;
    const CMat u = haar_random_unitary(d, 77 + d);
    const CVec moved = kron_pow(u, d) * w;
    const Complex det = u.determinant();
    CHECK(max_norm(CVec(moved - det * w)) < 1e-10);
    const CMat su = special_unitarize(u);
    CHECK(max_norm(CVec(kron_pow(su, d) * w - w)) < 1e-10);
  }
}

TEST_CASE("antisymmetric subspace dimensions match across the split") {
  for (int d = 2; d <= 5; ++d)
    for (int m = 1; m <= d - 1; ++m)
      CHECK(std::lround(binomial(d, m)) == std::lround(binomial(d, d - m)));
}
