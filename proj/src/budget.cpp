#include "guesswork/budget.hpp"

#include <cmath>
#include <string>

#include "guesswork/errors.hpp"
#include "guesswork/tilt.hpp"

namespace guesswork {

namespace {

constexpr double entropy_tie_tol = 1e-12;

double renyi_guess_order(const CategoricalSource& s, double rho) {
  return renyi_entropy(s, 1.0 / (1.0 + rho));
}

void require_positive_rho(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho))
    fail(errc::out_of_range, "moment order rho must be positive and finite");
}

void require_tilt_exponent(double alpha) {
  if (!(alpha > 1.0) || !std::isfinite(alpha))
    fail(errc::out_of_range,
         "tilt exponent must exceed 1 to lower the entropy");
}

void require_non_uniform(const CategoricalSource& s) {
  if (s.is_uniform())
    fail(errc::uniform_input,
         "uniform source: both sides coincide, nothing to compare");
}

BudgetComparison assemble(CategoricalSource theta1, CategoricalSource theta2,
                          double lhs, double rhs_raw) {
  const double eta = entropy_ratio(theta1, theta2);
  const double rhs = rhs_raw / eta;
  return BudgetComparison{std::move(theta1), std::move(theta2), eta,      1.0,
                          1.0 / eta,         lhs,               rhs,
                          order_of(lhs, rhs)};
}

}  // namespace

double entropy_ratio(const CategoricalSource& theta1,
                     const CategoricalSource& theta2) {
  const double h1 = shannon_entropy(theta1);
  const double h2 = shannon_entropy(theta2);
  if (std::fabs(h1 - h2) <= entropy_tie_tol)
    fail(errc::equal_entropy,
         "entropy rates coincide; budget comparison is degenerate");
  if (h2 > h1)
    fail(errc::out_of_range,
         "entropy ratio requires H(theta2) < H(theta1)");
  return h2 / h1;
}

BudgetComparison compare_moment_exponents(const CategoricalSource& theta1,
                                          double alpha, double rho) {
  require_non_uniform(theta1);
  require_tilt_exponent(alpha);
  require_positive_rho(rho);
  CategoricalSource theta2 = tilt(theta1, alpha).dist;
  const double lhs = renyi_guess_order(theta1, rho);
  const double rhs = renyi_guess_order(theta2, rho);
  return assemble(theta1, std::move(theta2), lhs, rhs);
}

BudgetComparison compare_vs_uniform_moments(const CategoricalSource& theta,
                                            double rho) {
  require_non_uniform(theta);
  require_positive_rho(rho);
  CategoricalSource u = uniform_source(theta.alphabet_size());
  const double lhs = std::log(static_cast<double>(theta.alphabet_size()));
  const double rhs = renyi_guess_order(theta, rho);
  return assemble(std::move(u), theta, lhs, rhs);
}

BudgetComparison compare_rate_functions(const CategoricalSource& theta1,
                                        double alpha, double g1) {
  require_non_uniform(theta1);
  require_tilt_exponent(alpha);
  const double h1 = shannon_entropy(theta1);
  if (!(g1 > 0.0) || !std::isfinite(g1))
    fail(errc::out_of_range, "per-character budget g1 must be positive");
  if (g1 >= h1)
    fail(errc::out_of_regime,
         "g1 >= H(theta1): success probability no longer decays");
  CategoricalSource theta2 = tilt(theta1, alpha).dist;
  const double eta = entropy_ratio(theta1, theta2);
  const double lhs = rate_function(theta1, g1);
  const double rhs = rate_function(theta2, eta * g1);
  return assemble(theta1, std::move(theta2), lhs, rhs);
}

BudgetComparison compare_vs_uniform_rate(const CategoricalSource& theta,
                                         double g) {
  require_non_uniform(theta);
  const double logk = std::log(static_cast<double>(theta.alphabet_size()));
  if (!(g > 0.0) || !std::isfinite(g))
    fail(errc::out_of_range, "per-character budget g must be positive");
  if (g >= logk)
    fail(errc::out_of_regime,
         "g >= log|X|: the uniform success probability no longer decays");
  CategoricalSource u = uniform_source(theta.alphabet_size());
  const double eta = entropy_ratio(u, theta);
  const double lhs = logk - g;
  const double rhs = rate_function(theta, eta * g);
  return assemble(std::move(u), theta, lhs, rhs);
}

BudgetComparison compare_pair_moments(const CategoricalSource& a,
                                      const CategoricalSource& b, double rho) {
  require_positive_rho(rho);
  const bool swap = shannon_entropy(a) < shannon_entropy(b);
  const CategoricalSource& t1 = swap ? b : a;
  const CategoricalSource& t2 = swap ? a : b;
  return assemble(t1, t2, renyi_guess_order(t1, rho),
                  renyi_guess_order(t2, rho));
}

BudgetComparison compare_pair_rates(const CategoricalSource& a,
                                    const CategoricalSource& b, double g1) {
  const bool swap = shannon_entropy(a) < shannon_entropy(b);
  const CategoricalSource& t1 = swap ? b : a;
  const CategoricalSource& t2 = swap ? a : b;
  const double h1 = shannon_entropy(t1);
  if (!(g1 > 0.0) || !std::isfinite(g1))
    fail(errc::out_of_range, "per-character budget g1 must be positive");
  if (g1 >= h1)
    fail(errc::out_of_regime,
         "g1 >= H(theta1): success probability no longer decays");
  const double eta = entropy_ratio(t1, t2);
  return assemble(t1, t2, rate_function(t1, g1), rate_function(t2, eta * g1));
}

std::vector<CategoricalSource> match_sources_to_budget(
    double total_entropy_nats, const std::vector<std::size_t>& lengths) {
  if (!(total_entropy_nats > 0.0) || !std::isfinite(total_entropy_nats))
    fail(errc::out_of_range, "total entropy budget must be positive");
  if (lengths.empty())
    fail(errc::out_of_range, "no lengths requested");
  const double log2 = std::log(2.0);
  std::vector<CategoricalSource> out;
  out.reserve(lengths.size());
  for (std::size_t n : lengths) {
    if (n == 0) fail(errc::out_of_range, "length must be positive");
    const double target = total_entropy_nats / static_cast<double>(n);
    if (target > log2 * (1.0 + 1e-13))
      fail(errc::infeasible,
           "length " + std::to_string(n) +
               " needs per-character entropy above log 2");
    if (target >= log2 - 1e-13) {
      out.push_back(make_source({0.5, 0.5}));
      continue;
    }
    auto h = [](double phi) {
      return -phi * std::log(phi) - (1.0 - phi) * std::log1p(-phi);
    };
    double lo = min_prob, hi = 0.5;
    if (target < h(lo))
      fail(errc::infeasible,
           "length " + std::to_string(n) +
               " needs a bias below the representable floor");
    double phi = 0.25;
    for (int it = 0; it < 200; ++it) {
      phi = 0.5 * (lo + hi);
      const double v = h(phi);
      if (std::fabs(v - target) <= 1e-12) break;
      (v < target ? lo : hi) = phi;
    }
    out.push_back(make_source({phi, 1.0 - phi}));
  }
  return out;
}

}  // namespace guesswork
