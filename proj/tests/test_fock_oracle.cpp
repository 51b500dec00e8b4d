#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "coboson/chi.hpp"
#include "coboson/fock_oracle.hpp"
#include "oracle_helpers.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace coboson;

// Why the paired-subspace operator matrix needs no fermionic signs: the full
// two-species Fock space on M modes has dimension 4^M, and a_p^dag, b_p^dag
// individually pick up Jordan-Wigner string signs when they hop over occupied
// modes. The composite operator c^dag only ever creates the two fermions as a
// pair a_p^dag b_p^dag, so every reachable state is a product of whole pairs.
// Reordering one pair past another costs an even number of transpositions
// (each of the two operators crosses each of the other two), so every sign
// cancels: with the convention that mode-0 operators stand leftmost,
//   (a_p^dag b_p^dag)(a_q^dag b_q^dag) = (a_q^dag b_q^dag)(a_p^dag b_p^dag),
// and applying a_p^dag b_p^dag to an ordered pair product simply inserts the
// new pair at its slot with coefficient +1. Restricted to the 2^M
// pair-occupation states, c^dag therefore acts as the non-negative matrix
// built in PairFockSpace, and nilpotency (a_p^dag b_p^dag)^2 = 0 is the bit
// test. The chi agreement checks below confirm this against enumeration,
// which never touches operators at all.

namespace {
SchmidtSpectrum skewed() { return SchmidtSpectrum::from_raw({0.5, 0.3, 0.2}); }
}  // namespace

TEST_CASE("chi by enumeration pins the hand values") {
  const auto s = skewed();
  REQUIRE_THAT(fock::chi_by_enumeration(s, 2), WithinRel(0.62, 1e-13));
  REQUIRE(fock::chi_by_enumeration(s, 0) == 1.0);
  REQUIRE_THAT(fock::chi_by_enumeration(SchmidtSpectrum::uniform(4), 4),
               WithinRel(0.09375, 1e-13));
  // 4!/4^4, also exact in rationals.
  REQUIRE(oracle::chi_exact(std::vector<oracle::Rational>(4, oracle::frac(1, 4)), 4) ==
          oracle::frac(24, 256));
}

TEST_CASE("enumeration rejects oversized spectra, vanishes past the mode count") {
  REQUIRE_THROWS_AS(fock::chi_by_enumeration(SchmidtSpectrum::uniform(13), 2),
                    std::invalid_argument);
  REQUIRE(fock::chi_by_enumeration(SchmidtSpectrum::uniform(3), 4) == 0.0);
  REQUIRE_THROWS_AS(fock::chi_by_enumeration(SchmidtSpectrum::uniform(3), -1),
                    std::invalid_argument);
}

TEST_CASE("chi from the operator matrix matches enumeration") {
  const auto s = skewed();
  REQUIRE_THAT(fock::chi_by_fock(s, 3), WithinRel(0.18, 1e-12));
  REQUIRE_THAT(fock::chi_by_fock(SchmidtSpectrum::uniform(4), 2), WithinRel(0.75, 1e-12));
  // Pair-mode Pauli blocking: (a_1^dag b_1^dag)^2 = 0.
  REQUIRE(fock::chi_by_fock(SchmidtSpectrum::from_raw({1.0}), 2) == 0.0);
  REQUIRE_THROWS_AS(fock::chi_by_fock(SchmidtSpectrum::uniform(7), 2),
                    std::invalid_argument);
}

TEST_CASE("epsilon norm from explicit vectors") {
  const auto s = skewed();
  REQUIRE_THAT(fock::epsilon_by_fock(s, 1), WithinAbs(0.0, 1e-12));
  REQUIRE_THAT(fock::epsilon_by_fock(SchmidtSpectrum::uniform(4), 2),
               WithinAbs(0.0, 1e-12));

  const ChiTable t = chi_table(s, 3);
  REQUIRE_THAT(fock::epsilon_by_fock(s, 2), WithinAbs(epsilon_norm(t, 2), 1e-10));
  REQUIRE_THAT(fock::epsilon_by_fock(s, 2),
               WithinAbs(oracle::to_double(oracle::epsilon_exact(
                             {oracle::frac(1, 2), oracle::frac(3, 10), oracle::frac(1, 5)}, 2)),
                         1e-10));

  REQUIRE_THROWS_AS(fock::epsilon_by_fock(SchmidtSpectrum::from_raw({1.0}), 2),
                    UndefinedStateError);
}

TEST_CASE("three chi routes agree on random spectra") {
  std::mt19937_64 seeds(31);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 1 + static_cast<int>(seeds() % 6);
    const auto s = SchmidtSpectrum::random_dirichlet(m, 1.0, seeds());
    const ChiTable t = chi_table(s, m + 1);
    for (int n = 0; n <= m; ++n) {
      const double dp = t.chi(n);
      const double enumerated = fock::chi_by_enumeration(s, n);
      const double operator_based = fock::chi_by_fock(s, n);
      if (dp == 0.0) {
        REQUIRE(enumerated == 0.0);
        REQUIRE(operator_based == 0.0);
      } else {
        REQUIRE_THAT(enumerated, WithinRel(dp, 1e-12));
        REQUIRE_THAT(operator_based, WithinRel(dp, 1e-12));
        REQUIRE_THAT(operator_based, WithinRel(enumerated, 1e-12));
      }
    }
  }
}

TEST_CASE("recurrence matches enumeration up to eight modes") {
  std::mt19937_64 seeds(83);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 7 + static_cast<int>(seeds() % 2);
    const auto s = SchmidtSpectrum::random_dirichlet(m, 0.9, seeds());
    const ChiTable t = chi_table(s, m);
    for (int n = 0; n <= m; ++n) {
      REQUIRE_THAT(fock::chi_by_enumeration(s, n), WithinRel(t.chi(n), 1e-12));
    }
  }
}

TEST_CASE("commutator expectation from matrices equals 2 ratio - 1") {
  std::mt19937_64 seeds(47);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 1 + static_cast<int>(seeds() % 6);
    const auto s = SchmidtSpectrum::random_dirichlet(m, 1.5, seeds());
    const ChiTable t = chi_table(s, m + 1);
    for (int n = 0; n <= m; ++n) {
      REQUIRE_THAT(fock::commutator_by_fock(s, n),
                   WithinAbs(commutator_expectation(t, n), 1e-12));
    }
  }
}

TEST_CASE("raising from |N> lands on alpha_{N+1} sqrt(N+1) |N+1>") {
  std::mt19937_64 seeds(53);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 2 + static_cast<int>(seeds() % 5);
    const auto s = SchmidtSpectrum::random_dirichlet(m, 1.0, seeds());
    const ChiTable t = chi_table(s, m + 1);
    const fock::PairFockSpace space(s);
    for (int n = 0; n < m; ++n) {
      const Eigen::VectorXd raised = space.creation_matrix() * space.n_pair_state(n);
      const double coef = alpha(t, n + 1) * std::sqrt(n + 1.0);
      REQUIRE((raised - coef * space.n_pair_state(n + 1)).norm() <= 1e-12);
    }
  }
}
