#pragma once

#include <array>
#include <vector>

#include "guesswork/source_stats.hpp"

namespace guesswork {

/// One member tau(theta, alpha) of a tilted family, with its summary stats.
struct TiltPoint {
  double alpha;
  CategoricalSource dist;
  double entropy;     // H(tau), nats
  double kl_to_base;  // D(tau || theta), nats
  bool clamped;       // some entry hit the min_prob floor
};

// tau_i = theta_i^alpha / sum_j theta_j^alpha, computed in log domain
TiltPoint tilt(const CategoricalSource& base, double alpha);

double kl_divergence(const CategoricalSource& p, const CategoricalSource& q);

// H(tau(base, alpha)); strictly decreasing in alpha for non-uniform base
double family_entropy(const CategoricalSource& base, double alpha);

// inverse of family_entropy by bisection; g must lie strictly between
// log(multiplicity of maximal entries) and log|X|
double solve_alpha_for_entropy(const CategoricalSource& base, double g,
                               double tol = 1e-10);

// large-deviations rate D(tau(theta, alpha(g)) || theta);
// uniform base uses the closed form log|X| - g
double rate_function(const CategoricalSource& base, double g);

std::vector<TiltPoint> family_scan(const CategoricalSource& base,
                                   const std::vector<double>& alphas);

// cross-entropy H(p||q) = sum p_i log(1/q_i) and the variance of log(1/q_i)
// under p, the two helpers the mixed-derivative identities are stated with
double cross_entropy(const CategoricalSource& p, const CategoricalSource& q);
double cross_varentropy(const CategoricalSource& p, const CategoricalSource& q);

struct DerivativeCheck {
  const char* name;
  double estimate;  // finite-difference value
  double target;    // closed form in H, V, S
  double residual;  // |estimate - target|
  bool pass;        // residual <= max(1e-6, 1e-3 |target|)
};

/// Central finite differences (mixed partials via the 4-point cross stencil)
/// for the five derivative identities at alpha = beta = 1:
///   d/da H(tau)         = -V
///   d/db H_b            = -V/2
///   d2/dadb H_b(tau)    = -V + S/2
///   d/da V(tau||theta)  = -S
///   d2/dadb H(tau(ab))  = -2V + S
std::array<DerivativeCheck, 5> derivative_checks(const CategoricalSource& base,
                                                 double step = 1e-3);

}  // namespace guesswork
