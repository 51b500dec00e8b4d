#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "coboson/chi.hpp"
#include "coboson/fock_oracle.hpp"
#include "coboson/schmidt_spectrum.hpp"

// Cross-checks the chi recurrence against the brute-force oracles and runs
// the inequality property suite on random spectra. Drives the CLI `verify`
// subcommand; the acceptance tests run the same checks at pinned sizes.
namespace coboson::verify {

struct Options {
  int m_max = 6;       // largest mode count for the oracle comparisons
  int trials = 200;    // random spectra per check
  std::uint64_t seed = 42;
  bool corrupt_chi = false;  // test hook: perturb chi_2 to prove checks can fail
};

struct CheckResult {
  std::string name;
  int passed = 0;
  int total = 0;
  bool ok() const { return passed == total; }
};

struct Summary {
  std::vector<CheckResult> checks;
  bool ok = true;
  std::string first_failure_check;
  nlohmann::json first_failure_spectrum;
};

namespace detail {

inline bool rel_close(double a, double b, double tol) {
  if (a == b) return true;
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

inline bool close_unit_scale(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

class Runner {
 public:
  explicit Runner(const Options& options) : options_(options), rng_(options.seed) {}

  Summary run() {
    oracle_chi_agreement();
    if (std::min(options_.m_max, fock::max_enumeration_modes) > fock::max_operator_modes) {
      enumeration_agreement_wide();
    }
    epsilon_against_operator();
    commutator_against_operator();
    ladder_action();
    sandwich_bounds();
    ratio_monotonicity();
    n1_equality();
    epsilon_nonnegative();
    uniform_achievability();
    return std::move(summary_);
  }

 private:
  SchmidtSpectrum draw(int m_lo, int m_hi) {
    std::uniform_int_distribution<int> pick_m(m_lo, m_hi);
    // Concentration 0.5 produces both flat and very skewed spectra.
    std::uniform_real_distribution<double> pick_conc(0.3, 3.0);
    const int m = pick_m(rng_);
    return SchmidtSpectrum::random_dirichlet(m, pick_conc(rng_), rng_());
  }

  ChiTable table_for(const SchmidtSpectrum& s, int n_max) {
    ChiTable t = chi_table(s, n_max);
    if (options_.corrupt_chi && t.n_max() >= 2 && s.mode_count() >= 2) {
      t = t.with_perturbation(2, 0.18);
    }
    return t;
  }

  void record(const std::string& name, int passed, int total,
              const SchmidtSpectrum* first_bad) {
    summary_.checks.push_back({name, passed, total});
    if (passed != total) {
      summary_.ok = false;
      if (summary_.first_failure_check.empty() && first_bad != nullptr) {
        summary_.first_failure_check = name;
        summary_.first_failure_spectrum = {{"lambdas", first_bad->lambdas()}};
      }
    }
  }

  template <typename PerSpectrum>
  void run_per_spectrum(const std::string& name, int m_lo, int m_hi, int trials,
                        PerSpectrum&& check) {
    int passed = 0;
    bool have_bad = false;
    SchmidtSpectrum bad = SchmidtSpectrum::uniform(1);
    for (int t = 0; t < trials; ++t) {
      SchmidtSpectrum s = draw(m_lo, m_hi);
      bool good = false;
      try {
        good = check(s);
      } catch (const std::exception&) {
        good = false;  // a throwing check is a failing check
      }
      if (good) {
        ++passed;
      } else if (!have_bad) {
        have_bad = true;
        bad = s;
      }
    }
    record(name, passed, trials, have_bad ? &bad : nullptr);
  }

  void oracle_chi_agreement() {
    run_per_spectrum(
        "chi agreement: recurrence vs enumeration vs operator matrix", 1,
        std::min(options_.m_max, fock::max_operator_modes), options_.trials,
        [&](const SchmidtSpectrum& s) {
          const int m = s.mode_count();
          const ChiTable t = table_for(s, m + 1);
          for (int n = 0; n <= m; ++n) {
            const double dp = std::exp(t.log_chi(n));
            const double enumerated = fock::chi_by_enumeration(s, n);
            const double operator_based = fock::chi_by_fock(s, n);
            if (!detail::rel_close(dp, enumerated, 1e-12)) return false;
            if (!detail::rel_close(enumerated, operator_based, 1e-12)) return false;
            if (!detail::rel_close(dp, operator_based, 1e-12)) return false;
          }
          return true;
        });
  }

  void enumeration_agreement_wide() {
    run_per_spectrum(
        "chi agreement: recurrence vs enumeration (wide)", fock::max_operator_modes + 1,
        std::min(options_.m_max, fock::max_enumeration_modes),
        std::max(options_.trials / 4, 1), [&](const SchmidtSpectrum& s) {
          const int m = s.mode_count();
          const ChiTable t = table_for(s, m + 1);
          for (int n = 0; n <= m; ++n) {
            if (!detail::rel_close(std::exp(t.log_chi(n)), fock::chi_by_enumeration(s, n),
                                   1e-12)) {
              return false;
            }
          }
          return true;
        });
  }

  void epsilon_against_operator() {
    run_per_spectrum("epsilon norm: operator residual vs ratio formula", 1,
                     std::min(options_.m_max, fock::max_operator_modes), options_.trials,
                     [&](const SchmidtSpectrum& s) {
                       const int m = s.mode_count();
                       const ChiTable t = table_for(s, m + 1);
                       for (int n = 1; n <= m; ++n) {
                         if (!detail::close_unit_scale(epsilon_norm(t, n),
                                                       fock::epsilon_by_fock(s, n), 1e-10)) {
                           return false;
                         }
                       }
                       return true;
                     });
  }

  void commutator_against_operator() {
    run_per_spectrum("commutator expectation: operator vs 2 ratio - 1", 1,
                     std::min(options_.m_max, fock::max_operator_modes), options_.trials,
                     [&](const SchmidtSpectrum& s) {
                       const int m = s.mode_count();
                       const ChiTable t = table_for(s, m + 1);
                       for (int n = 0; n <= m; ++n) {
                         if (!detail::close_unit_scale(commutator_expectation(t, n),
                                                       fock::commutator_by_fock(s, n), 1e-12)) {
                           return false;
                         }
                       }
                       return true;
                     });
  }

  void ladder_action() {
    run_per_spectrum(
        "ladder action: c^dag |N> = alpha_{N+1} sqrt(N+1) |N+1>", 1,
        std::min(options_.m_max, fock::max_operator_modes), options_.trials,
        [&](const SchmidtSpectrum& s) {
          const int m = s.mode_count();
          const ChiTable t = chi_table(s, m + 1);
          const fock::PairFockSpace space(s);
          for (int n = 0; n < m; ++n) {
            const Eigen::VectorXd raised = space.creation_matrix() * space.n_pair_state(n);
            const double coef = alpha(t, n + 1) * std::sqrt(static_cast<double>(n + 1));
            const Eigen::VectorXd expected = coef * space.n_pair_state(n + 1);
            if ((raised - expected).norm() > 1e-12 * std::max(1.0, coef)) return false;
          }
          return true;
        });
  }

  void sandwich_bounds() {
    run_per_spectrum("sandwich: 1 - N P <= ratio <= 1 - P", 2, 50, options_.trials,
                     [&](const SchmidtSpectrum& s) {
                       const int m = s.mode_count();
                       const double p = purity(s);
                       const ChiTable t = table_for(s, m);
                       for (int n = 1; n <= m - 1; ++n) {
                         const double r = chi_ratio(t, n);
                         const double lo = 1.0 - n * p;
                         const double hi = 1.0 - p;
                         if (r - lo < -1e-10 * std::max(1.0, std::abs(lo))) return false;
                         if (hi - r < -1e-10 * std::max(1.0, hi)) return false;
                       }
                       return true;
                     });
  }

  void ratio_monotonicity() {
    run_per_spectrum("chi ratio non-increasing in N", 2, 50, options_.trials,
                     [&](const SchmidtSpectrum& s) {
                       const int m = s.mode_count();
                       const ChiTable t = table_for(s, m);
                       double previous = 2.0;
                       for (int n = 1; n <= m - 1; ++n) {
                         const double r = chi_ratio(t, n);
                         if (r > previous * (1.0 + 1e-12) + 1e-15) return false;
                         previous = r;
                       }
                       return true;
                     });
  }

  void n1_equality() {
    run_per_spectrum("N = 1 identity: chi_2/chi_1 = 1 - P", 2, 50, options_.trials,
                     [&](const SchmidtSpectrum& s) {
                       const ChiTable t = table_for(s, 2);
                       return detail::rel_close(chi_ratio(t, 1), 1.0 - purity(s), 1e-12);
                     });
  }

  void epsilon_nonnegative() {
    run_per_spectrum("epsilon norm non-negative", 2, 50, options_.trials,
                     [&](const SchmidtSpectrum& s) {
                       const int m = s.mode_count();
                       const ChiTable t = table_for(s, m + 1);
                       for (int n = 1; n <= m; ++n) {
                         if (epsilon_norm(t, n) < 0.0) return false;
                       }
                       return true;
                     });
  }

  void uniform_achievability() {
    int passed = 0;
    int total = 0;
    bool have_bad = false;
    SchmidtSpectrum bad = SchmidtSpectrum::uniform(1);
    for (int m : {2, 4, 10, 100}) {
      ++total;
      const SchmidtSpectrum s = SchmidtSpectrum::uniform(m);
      bool good = true;
      try {
        const ChiTable t = table_for(s, m);
        for (int n = 1; n < m; ++n) {
          const double expected = 1.0 - static_cast<double>(n) / m;
          if (!detail::close_unit_scale(chi_ratio(t, n), expected, 1e-12)) {
            good = false;
            break;
          }
        }
      } catch (const std::exception&) {
        good = false;
      }
      if (good) {
        ++passed;
      } else if (!have_bad) {
        have_bad = true;
        bad = s;
      }
    }
    record("uniform spectrum attains ratio = 1 - N/M", passed, total,
           have_bad ? &bad : nullptr);
  }

  Options options_;
  std::mt19937_64 rng_;
  Summary summary_;
};

}  // namespace detail

inline Summary run_verification(const Options& options) {
  if (options.m_max < 1 || options.m_max > fock::max_enumeration_modes) {
    throw std::invalid_argument("verify: m_max must be in [1, " +
                                std::to_string(fock::max_enumeration_modes) + "]");
  }
  if (options.trials < 1) {
    throw std::invalid_argument("verify: trials must be >= 1");
  }
  return detail::Runner(options).run();
}

}  // namespace coboson::verify
