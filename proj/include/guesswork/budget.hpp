#pragma once

#include <vector>

#include "guesswork/source_stats.hpp"

namespace guesswork {

enum class Ordering { less, equal, greater };

inline Ordering order_of(double lhs, double rhs) {
  if (lhs < rhs) return Ordering::less;
  if (lhs > rhs) return Ordering::greater;
  return Ordering::equal;
}

inline const char* ordering_name(Ordering o) {
  switch (o) {
    case Ordering::less: return "lhs<rhs";
    case Ordering::greater: return "lhs>rhs";
    case Ordering::equal: return "lhs=rhs";
  }
  return "?";
}

/// A matched-budget comparison of two sources. lhs/rhs are per-character
/// exponents normalized to theta1's length scale (n1 = 1: the asymptotic
/// statements are about rates, so lengths scale both sides equally).
struct BudgetComparison {
  CategoricalSource theta1;
  CategoricalSource theta2;
  double eta;      // H(theta2)/H(theta1), in (0,1)
  double n1;       // reference length
  double n2_real;  // n1/eta, equalizing total entropy
  double lhs;      // theta1 exponent
  double rhs;      // theta2 exponent scaled by 1/eta
  Ordering verdict;
};

// H(theta2)/H(theta1); requires H(theta2) < H(theta1)
double entropy_ratio(const CategoricalSource& theta1,
                     const CategoricalSource& theta2);

// theta2 = tilt(theta1, alpha), alpha > 1: low-entropy family member.
// lhs = H_{1/(1+rho)}(theta1), rhs = H_{1/(1+rho)}(theta2)/eta.
// Verdict is lhs < rhs for every rho > 0 iff theta1 satisfies the SEC.
BudgetComparison compare_moment_exponents(const CategoricalSource& theta1,
                                          double alpha, double rho);

// lhs = log|X|, rhs = H_{1/(1+rho)}(theta)/eta with eta = H(theta)/log|X|
BudgetComparison compare_vs_uniform_moments(const CategoricalSource& theta,
                                            double rho);

// lhs = rate(theta1, g1), rhs = rate(theta2, eta g1)/eta, theta2 = tilt(alpha).
// Verdict is lhs > rhs for every g1 < H(theta1) iff theta1 satisfies the SEC.
BudgetComparison compare_rate_functions(const CategoricalSource& theta1,
                                        double alpha, double g1);

// lhs = log|X| - g, rhs = rate(theta, eta g)/eta
BudgetComparison compare_vs_uniform_rate(const CategoricalSource& theta,
                                         double g);

// free-form pair entry points: inputs auto-swapped so H(theta2) < H(theta1);
// exponents computed the same way but carry no theorem-verdict semantics
BudgetComparison compare_pair_moments(const CategoricalSource& a,
                                      const CategoricalSource& b, double rho);
BudgetComparison compare_pair_rates(const CategoricalSource& a,
                                    const CategoricalSource& b, double g1);

/// Binary sources (phi, 1-phi) with n H(phi) = total_entropy_nats for each
/// requested length, solved by bisection on the binary entropy.
std::vector<CategoricalSource> match_sources_to_budget(
    double total_entropy_nats, const std::vector<std::size_t>& lengths);

}  // namespace guesswork
