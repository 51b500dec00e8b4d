#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coboson/scaled_double.hpp"
#include "coboson/schmidt_spectrum.hpp"

namespace coboson {

// N pairs can only share a state when at least N Schmidt modes carry weight;
// past that point chi_N vanishes and the N-pair state does not exist.
class UndefinedStateError : public std::domain_error {
 public:
  UndefinedStateError(int n, int mode_count)
      : std::domain_error("state with N = " + std::to_string(n) +
                          " pairs is undefined: chi_N = 0 (only " +
                          std::to_string(mode_count) + " nonzero Schmidt modes)") {}
};

// chi_N = N! e_N(lambda), the squared norm of the N-pair state built by
// applying the pair creation operator N times to the vacuum. Values are held
// as ln(chi_N) plus the underlying elementary symmetric values e_N in
// extended-range form, so tables stay exact-to-rounding for thousands of
// modes where chi_N itself is far below the double underflow threshold.
class ChiTable {
 public:
  int n_max() const { return static_cast<int>(log_chi_.size()) - 1; }
  int mode_count() const { return mode_count_; }
  double purity() const { return purity_; }

  // ln(chi_N); -inf encodes chi_N = 0.
  double log_chi(int n) const {
    check_index(n);
    return log_chi_[static_cast<std::size_t>(n)];
  }

  // chi_N as a plain double (underflows to 0 for very deep tables).
  double chi(int n) const { return std::exp(log_chi(n)); }

  bool is_zero(int n) const {
    check_index(n);
    return esym_[static_cast<std::size_t>(n)].is_zero();
  }

  const std::vector<double>& log_values() const { return log_chi_; }

  // e_N in extended range; chi ratios are formed from these directly rather
  // than from exp of log differences, which keeps them exact to rounding.
  const ScaledDouble& esym(int n) const {
    check_index(n);
    return esym_[static_cast<std::size_t>(n)];
  }

  // Verification hook: returns a copy with chi_N multiplied by
  // exp(log_factor). Used to prove that the consistency checks can fail.
  ChiTable with_perturbation(int n, double log_factor) const {
    check_index(n);
    ChiTable t(*this);
    auto i = static_cast<std::size_t>(n);
    if (!t.esym_[i].is_zero()) {
      t.esym_[i] *= ScaledDouble(std::exp(log_factor));
      t.log_chi_[i] += log_factor;
    }
    return t;
  }

  friend ChiTable chi_table(const SchmidtSpectrum& spectrum, int n_max);

 private:
  ChiTable() = default;

  void check_index(int n) const {
    if (n < 0 || n > n_max()) {
      throw std::invalid_argument("ChiTable: index N = " + std::to_string(n) +
                                  " outside table range [0, " +
                                  std::to_string(n_max()) + "]");
    }
  }

  std::vector<double> log_chi_;
  std::vector<ScaledDouble> esym_;
  int mode_count_ = 0;
  double purity_ = 0.0;
};

// Builds chi_0..chi_n_max by the elementary-symmetric-polynomial recurrence
// e_k <- e_k + lambda e_{k-1}, k descending, over the effective modes.
// All terms are non-negative, so the recurrence accumulates no cancellation;
// cost is O(M n_max).
inline ChiTable chi_table(const SchmidtSpectrum& spectrum, int n_max) {
  if (n_max < 0) {
    throw std::invalid_argument("chi_table: n_max must be >= 0");
  }
  const auto lambdas = spectrum.effective_lambdas();
  const int m = spectrum.mode_count();
  const int k_top = std::min(n_max, m);

  std::vector<ScaledDouble> e(static_cast<std::size_t>(k_top) + 1);
  e[0] = ScaledDouble::one();
  for (int i = 0; i < m; ++i) {
    const ScaledDouble lam(lambdas[static_cast<std::size_t>(i)]);
    const int hi = std::min(i + 1, k_top);
    for (int k = hi; k >= 1; --k) {
      e[static_cast<std::size_t>(k)] += lam * e[static_cast<std::size_t>(k - 1)];
    }
  }

  ChiTable table;
  table.mode_count_ = m;
  table.purity_ = purity(spectrum);
  table.esym_.assign(static_cast<std::size_t>(n_max) + 1, ScaledDouble::zero());
  table.log_chi_.assign(static_cast<std::size_t>(n_max) + 1,
                        -std::numeric_limits<double>::infinity());
  for (int n = 0; n <= k_top; ++n) {
    table.esym_[static_cast<std::size_t>(n)] = e[static_cast<std::size_t>(n)];
    table.log_chi_[static_cast<std::size_t>(n)] =
        std::lgamma(static_cast<double>(n) + 1.0) + e[static_cast<std::size_t>(n)].log();
  }
  return table;
}

// chi_{N+1}/chi_N, the bosonic-quality indicator; 1 for an ideal boson,
// 0 at the Pauli-blocking edge. Requires chi_N > 0.
inline double chi_ratio(const ChiTable& table, int n) {
  if (n < 1) {
    throw std::invalid_argument("chi_ratio: N must be >= 1");
  }
  if (n + 1 > table.n_max()) {
    throw std::invalid_argument("chi_ratio: table too short, need entry N+1 = " +
                                std::to_string(n + 1));
  }
  if (table.is_zero(n)) {
    throw UndefinedStateError(n, table.mode_count());
  }
  // chi_{N+1}/chi_N = (N+1) e_{N+1}/e_N.
  return static_cast<double>(n + 1) * ratio(table.esym(n + 1), table.esym(n));
}

// alpha_N = sqrt(chi_N / chi_{N-1}), the ladder coefficient in
// c^dag |N-1> = alpha_N sqrt(N) |N>. Requires chi_{N-1} > 0.
inline double alpha(const ChiTable& table, int n) {
  if (n < 1) {
    throw std::invalid_argument("alpha: N must be >= 1");
  }
  if (n > table.n_max()) {
    throw std::invalid_argument("alpha: table too short, need entry N = " +
                                std::to_string(n));
  }
  if (table.is_zero(n - 1)) {
    throw UndefinedStateError(n - 1, table.mode_count());
  }
  return std::sqrt(static_cast<double>(n) * ratio(table.esym(n), table.esym(n - 1)));
}

namespace detail {
inline double clamp_provably_nonnegative(double value, double tolerance,
                                         const char* what) {
  if (value >= 0.0) return value;
  if (value >= -tolerance) return 0.0;
  throw std::runtime_error(std::string(what) +
                           ": provably non-negative quantity came out " +
                           std::to_string(value));
}
}  // namespace detail

// Squared norm of the non-bosonic residual in c|N> = alpha_N sqrt(N)|N-1> + |eps_N>:
//   1 - chi_{N+1}/chi_N - N (chi_N/chi_{N-1} - chi_{N+1}/chi_N).
// Zero for an ideal boson; tiny negatives from rounding are clamped to 0.
inline double epsilon_norm(const ChiTable& table, int n) {
  if (n < 1) {
    throw std::invalid_argument("epsilon_norm: N must be >= 1");
  }
  if (n + 1 > table.n_max()) {
    throw std::invalid_argument("epsilon_norm: table too short, need entry N+1 = " +
                                std::to_string(n + 1));
  }
  if (table.is_zero(n)) {
    throw UndefinedStateError(n, table.mode_count());
  }
  const double r = chi_ratio(table, n);
  const double s = static_cast<double>(n) * ratio(table.esym(n), table.esym(n - 1));
  const double value = 1.0 - r - static_cast<double>(n) * (s - r);
  return detail::clamp_provably_nonnegative(value, 1e-12, "epsilon_norm");
}

// <N|[c, c^dag]|N> = 2 chi_{N+1}/chi_N - 1; equals 1 for an ideal boson and
// -1 at the fermionic extreme.
inline double commutator_expectation(const ChiTable& table, int n) {
  if (n < 0) {
    throw std::invalid_argument("commutator_expectation: N must be >= 0");
  }
  if (n + 1 > table.n_max()) {
    throw std::invalid_argument("commutator_expectation: table too short, need entry N+1 = " +
                                std::to_string(n + 1));
  }
  if (table.is_zero(n)) {
    throw UndefinedStateError(n, table.mode_count());
  }
  const double r = static_cast<double>(n + 1) * ratio(table.esym(n + 1), table.esym(n));
  return 2.0 * r - 1.0;
}

// Purity sandwich on the chi ratio: 1 - N P <= chi_{N+1}/chi_N <= 1 - P.
// The lower bound may be negative; it is still valid since the ratio is >= 0.
inline std::pair<double, double> bounds(const SchmidtSpectrum& spectrum, int n) {
  if (n < 1) {
    throw std::invalid_argument("bounds: N must be >= 1");
  }
  const double p = purity(spectrum);
  return {1.0 - static_cast<double>(n) * p, 1.0 - p};
}

// Relative margins 1 - (chi_{N+1} chi_{N-1})/chi_N^2 for N = 1..n_max-1,
// i.e. the certificate values divided by chi_N^2. Non-negative up to
// rounding; equivalently certifies that the chi ratio never increases in N.
// Entries with chi_N = 0 carry margin 1 (the certificate value is 0 - 0).
inline std::vector<double> log_concavity_margins(const ChiTable& table) {
  if (table.n_max() < 2) {
    throw std::invalid_argument("log_concavity_margins: table must extend to N_max >= 2");
  }
  std::vector<double> margins;
  margins.reserve(static_cast<std::size_t>(table.n_max() - 1));
  for (int n = 1; n <= table.n_max() - 1; ++n) {
    if (table.is_zero(n)) {
      margins.push_back(1.0);
      continue;
    }
    // (chi_{N+1} chi_{N-1})/chi_N^2 = ((N+1)/N) e_{N+1} e_{N-1} / e_N^2.
    const ScaledDouble num = table.esym(n + 1) * table.esym(n - 1);
    const ScaledDouble den = table.esym(n) * table.esym(n);
    const double q = ratio(num, den) * (static_cast<double>(n + 1) / static_cast<double>(n));
    margins.push_back(detail::clamp_provably_nonnegative(1.0 - q, 1e-12,
                                                         "log_concavity_margins"));
  }
  return margins;
}

// chi_N^2 - chi_{N+1} chi_{N-1} for N = 1..n_max-1. Values may underflow to
// zero in plain doubles for very deep tables; the relative margins above are
// the scale-free certificate.
inline std::vector<double> log_concavity_certificate(const ChiTable& table) {
  const std::vector<double> margins = log_concavity_margins(table);
  std::vector<double> values(margins.size());
  for (int n = 1; n <= table.n_max() - 1; ++n) {
    const double chi_n_sq = std::exp(2.0 * table.log_chi(n));
    values[static_cast<std::size_t>(n - 1)] =
        chi_n_sq * margins[static_cast<std::size_t>(n - 1)];
  }
  return values;
}

// Largest N whose chi ratio stays within delta of the ideal value 1, reported
// two ways: from the purity lower bound (floor(delta/P)) and from the
// computed ratios themselves. The exact answer is never below the bound.
// Ties within 1e-12 relative count as satisfying the threshold.
struct OccupancyEstimate {
  int via_bound;
  int via_ratio;
};

inline OccupancyEstimate max_occupancy(const SchmidtSpectrum& spectrum, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("max_occupancy: delta must be in (0, 1)");
  }
  const double p = purity(spectrum);

  int via_bound = static_cast<int>(std::floor(delta / p));
  if (static_cast<double>(via_bound + 1) * p <= delta * (1.0 + 1e-12)) {
    ++via_bound;
  }

  const double threshold = (1.0 - delta) * (1.0 - 1e-12);
  const int m = spectrum.mode_count();
  int via_ratio = 0;
  int built = 0;
  ChiTable table = chi_table(spectrum, std::min(m, 16) + 1);
  built = std::min(m, 16);
  for (int n = 1; n <= m; ++n) {
    if (n > built) {
      built = std::min(m, built * 2);
      table = chi_table(spectrum, built + 1);
    }
    if (chi_ratio(table, n) < threshold) break;
    via_ratio = n;
  }
  return {via_bound, via_ratio};
}

// One row of the per-N bosonic-quality record. `alpha` is the ladder
// coefficient alpha_{N+1} of the state reached by adding a pair to |N>,
// so alpha^2 == chi_ratio within the row.
struct BosonicMetrics {
  int n = 0;
  double chi_ratio = 0.0;
  double alpha = 0.0;
  double epsilon_norm = 0.0;
  double commutator = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
};

inline BosonicMetrics metrics_row(const ChiTable& table, int n) {
  BosonicMetrics row;
  row.n = n;
  row.chi_ratio = chi_ratio(table, n);
  row.alpha = alpha(table, n + 1);
  row.epsilon_norm = epsilon_norm(table, n);
  row.commutator = commutator_expectation(table, n);
  row.lower_bound = 1.0 - static_cast<double>(n) * table.purity();
  row.upper_bound = 1.0 - table.purity();
  return row;
}

}  // namespace coboson
