#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "coboson/chi.hpp"
#include "coboson/schmidt_spectrum.hpp"

// Brute-force checks of the chi algebra, independent of the recurrence in
// chi.hpp: direct enumeration over distinct mode subsets, and an explicit
// matrix representation of the pair creation operator on a small Fock space.
namespace coboson::fock {

inline constexpr int max_enumeration_modes = 12;
inline constexpr int max_operator_modes = 6;

// chi_N as the literal sum of lambda products over ordered tuples of distinct
// modes, evaluated as N! times the sum over unordered subsets.
inline double chi_by_enumeration(const SchmidtSpectrum& spectrum, int n) {
  const int m = spectrum.mode_count();
  if (m > max_enumeration_modes) {
    throw std::invalid_argument("chi_by_enumeration: spectrum has " + std::to_string(m) +
                                " modes, enumeration capped at " +
                                std::to_string(max_enumeration_modes));
  }
  if (n < 0) {
    throw std::invalid_argument("chi_by_enumeration: N must be >= 0");
  }
  if (n > m) return 0.0;

  const auto lambdas = spectrum.effective_lambdas();
  double sum = 0.0;
  // Depth-first walk over size-n subsets of {0..m-1}.
  std::vector<int> stack(static_cast<std::size_t>(n));
  auto recurse = [&](auto&& self, int next, int depth, double product) -> void {
    if (depth == n) {
      sum += product;
      return;
    }
    for (int p = next; p <= m - (n - depth); ++p) {
      self(self, p + 1, depth + 1, product * lambdas[static_cast<std::size_t>(p)]);
    }
  };
  recurse(recurse, 0, 0, 1.0);

  double factorial = 1.0;
  for (int k = 2; k <= n; ++k) factorial *= k;
  return factorial * sum;
}

// The paired-occupation Fock space: each Schmidt mode is either empty or
// holds one A-B pair, so basis states are the 2^M subsets of modes. The pair
// creation operator never leaves this subspace, and pair-by-pair exchange
// picks up an even number of fermionic transpositions, so its matrix has
// non-negative entries.
class PairFockSpace {
 public:
  explicit PairFockSpace(const SchmidtSpectrum& spectrum)
      : mode_count_(spectrum.mode_count()) {
    if (mode_count_ > max_operator_modes) {
      throw std::invalid_argument("PairFockSpace: spectrum has " +
                                  std::to_string(mode_count_) +
                                  " modes, operator construction capped at " +
                                  std::to_string(max_operator_modes));
    }
    const auto lambdas = spectrum.effective_lambdas();
    const int dim = 1 << mode_count_;
    creation_ = Eigen::MatrixXd::Zero(dim, dim);
    for (int basis = 0; basis < dim; ++basis) {
      for (int p = 0; p < mode_count_; ++p) {
        if (basis & (1 << p)) continue;
        creation_(basis | (1 << p), basis) += std::sqrt(lambdas[static_cast<std::size_t>(p)]);
      }
    }
  }

  int mode_count() const { return mode_count_; }
  int dimension() const { return creation_.rows(); }

  // Matrix of c^dag = sum_p sqrt(lambda_p) a_p^dag b_p^dag on the paired subspace.
  const Eigen::MatrixXd& creation_matrix() const { return creation_; }

  Eigen::VectorXd vacuum() const {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dimension());
    v(0) = 1.0;
    return v;
  }

  // (c^dag)^N |0>, unnormalized; its squared norm is N! chi_N.
  Eigen::VectorXd raw_n_pair_state(int n) const {
    if (n < 0) {
      throw std::invalid_argument("raw_n_pair_state: N must be >= 0");
    }
    Eigen::VectorXd v = vacuum();
    for (int k = 0; k < n; ++k) v = creation_ * v;
    return v;
  }

  // Normalized |N>; throws if chi_N = 0.
  Eigen::VectorXd n_pair_state(int n) const {
    Eigen::VectorXd v = raw_n_pair_state(n);
    const double norm = v.norm();
    if (norm == 0.0) {
      throw UndefinedStateError(n, mode_count_);
    }
    return v / norm;
  }

 private:
  int mode_count_;
  Eigen::MatrixXd creation_;
};

inline double chi_by_fock(const SchmidtSpectrum& spectrum, int n) {
  PairFockSpace space(spectrum);
  const Eigen::VectorXd v = space.raw_n_pair_state(n);
  double factorial = 1.0;
  for (int k = 2; k <= n; ++k) factorial *= k;
  return v.squaredNorm() / factorial;
}

// <eps_N|eps_N> from explicit vectors: apply the annihilator to |N>, project
// out the |N-1> component, return the residual's squared norm.
inline double epsilon_by_fock(const SchmidtSpectrum& spectrum, int n) {
  if (n < 1) {
    throw std::invalid_argument("epsilon_by_fock: N must be >= 1");
  }
  PairFockSpace space(spectrum);
  const Eigen::VectorXd state_n = space.n_pair_state(n);
  const Eigen::VectorXd state_prev = space.n_pair_state(n - 1);
  const Eigen::VectorXd lowered = space.creation_matrix().transpose() * state_n;
  const Eigen::VectorXd residual = lowered - state_prev.dot(lowered) * state_prev;
  return residual.squaredNorm();
}

// <N|[c, c^dag]|N> from the explicit matrices.
inline double commutator_by_fock(const SchmidtSpectrum& spectrum, int n) {
  PairFockSpace space(spectrum);
  const Eigen::VectorXd state_n = space.n_pair_state(n);
  const Eigen::VectorXd raised = space.creation_matrix() * state_n;
  const Eigen::VectorXd lowered = space.creation_matrix().transpose() * state_n;
  return raised.squaredNorm() - lowered.squaredNorm();
}

}  // namespace coboson::fock
