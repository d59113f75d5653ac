#include "guesswork/tilt.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "guesswork/errors.hpp"
#include "guesswork/log_space.hpp"

namespace guesswork {

namespace {

// normalized tilted probabilities in log domain, no clamping
std::vector<double> tilt_log_probs(const CategoricalSource& base, double alpha) {
  const std::size_t k = base.alphabet_size();
  std::vector<double> lw(k);
  for (std::size_t i = 0; i < k; ++i) lw[i] = alpha * base.log_probs()[i];
  const double z = log_sum_exp(lw);
  for (std::size_t i = 0; i < k; ++i) lw[i] -= z;
  return lw;
}

double entropy_of_log_probs(const std::vector<double>& lp) {
  kahan_sum h;
  for (double l : lp) h.add(-std::exp(l) * l);
  return h.value();
}

double renyi_of_log_probs(const std::vector<double>& lp, double order) {
  if (std::fabs(order - 1.0) <= 1e-9) return entropy_of_log_probs(lp);
  std::vector<double> t(lp.size());
  for (std::size_t i = 0; i < lp.size(); ++i) t[i] = order * lp[i];
  return log_sum_exp(t) / (1.0 - order);
}

// multiplicity of the maximal entries (relative tie tolerance 1e-12)
std::size_t max_multiplicity(const CategoricalSource& base) {
  const double pmax = *std::max_element(base.probs().begin(), base.probs().end());
  std::size_t m = 0;
  for (double p : base.probs())
    if (pmax - p <= 1e-12 * pmax) ++m;
  return m;
}

}  // namespace

TiltPoint tilt(const CategoricalSource& base, double alpha) {
  if (!(alpha >= 0.0))
    fail(errc::out_of_range, "tilt order must be >= 0, got " + std::to_string(alpha));
  const std::vector<double> lp = tilt_log_probs(base, alpha);

  std::vector<double> w(lp.size());
  bool clamped = false;
  for (std::size_t i = 0; i < lp.size(); ++i) {
    w[i] = std::exp(lp[i]);
    if (w[i] < min_prob) {
      if (w[i] < min_prob * (1.0 - 1e-9)) clamped = true;
      w[i] = min_prob;
    }
  }

  // entropy and KL from the unclamped tilt: clamping only keeps the
  // stored distribution inside the open simplex
  double kl = 0.0;
  for (std::size_t i = 0; i < lp.size(); ++i)
    kl += std::exp(lp[i]) * (lp[i] - base.log_probs()[i]);
  kl = std::max(0.0, kl);

  return TiltPoint{alpha, CategoricalSource(w), entropy_of_log_probs(lp), kl,
                   clamped};
}

double kl_divergence(const CategoricalSource& p, const CategoricalSource& q) {
  if (p.alphabet_size() != q.alphabet_size())
    fail(errc::dimension_mismatch,
         std::to_string(p.alphabet_size()) + " vs " + std::to_string(q.alphabet_size()));
  double d = 0.0;
  for (std::size_t i = 0; i < p.alphabet_size(); ++i)
    d += p.probs()[i] * (p.log_probs()[i] - q.log_probs()[i]);
  return std::max(0.0, d);
}

double family_entropy(const CategoricalSource& base, double alpha) {
  if (base.is_uniform())
    fail(errc::uniform_base, "tilted family of the uniform source is constant");
  if (!(alpha >= 0.0))
    fail(errc::out_of_range, "tilt order must be >= 0, got " + std::to_string(alpha));
  return entropy_of_log_probs(tilt_log_probs(base, alpha));
}

double solve_alpha_for_entropy(const CategoricalSource& base, double g, double tol) {
  if (base.is_uniform())
    fail(errc::uniform_base, "tilted family of the uniform source is constant");
  const double lo_limit = std::log(static_cast<double>(max_multiplicity(base)));
  const double hi_limit = std::log(static_cast<double>(base.alphabet_size()));
  if (!(g > lo_limit && g < hi_limit))
    fail(errc::out_of_entropy_range,
         "target " + std::to_string(g) + " outside attainable (" +
             std::to_string(lo_limit) + ", " + std::to_string(hi_limit) + ")");

  // family_entropy is strictly decreasing; double hi until it drops below g
  double lo = 0.0;
  double hi = 1.0;
  while (family_entropy(base, hi) > g) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1.1e12)
      fail(errc::out_of_entropy_range,
           "entropy target unreachable within bracketing range");
  }

  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double h = family_entropy(base, mid);
    if (std::fabs(h - g) <= tol) return mid;
    if (h > g)
      lo = mid;
    else
      hi = mid;
  }
  return mid;
}

double rate_function(const CategoricalSource& base, double g) {
  if (base.is_uniform()) {
    const double logk = std::log(static_cast<double>(base.alphabet_size()));
    if (!(g > 0.0 && g <= logk))
      fail(errc::out_of_entropy_range,
           "budget " + std::to_string(g) + " outside (0, log|X|]");
    return logk - g;
  }
  const double alpha = solve_alpha_for_entropy(base, g);
  const std::vector<double> lp = tilt_log_probs(base, alpha);
  double d = 0.0;
  for (std::size_t i = 0; i < lp.size(); ++i)
    d += std::exp(lp[i]) * (lp[i] - base.log_probs()[i]);
  return std::max(0.0, d);
}

std::vector<TiltPoint> family_scan(const CategoricalSource& base,
                                   const std::vector<double>& alphas) {
  std::vector<TiltPoint> out;
  out.reserve(alphas.size());
  for (double a : alphas) out.push_back(tilt(base, a));
  return out;
}

double cross_entropy(const CategoricalSource& p, const CategoricalSource& q) {
  if (p.alphabet_size() != q.alphabet_size())
    fail(errc::dimension_mismatch,
         std::to_string(p.alphabet_size()) + " vs " + std::to_string(q.alphabet_size()));
  double h = 0.0;
  for (std::size_t i = 0; i < p.alphabet_size(); ++i)
    h -= p.probs()[i] * q.log_probs()[i];
  return h;
}

double cross_varentropy(const CategoricalSource& p, const CategoricalSource& q) {
  const double h = cross_entropy(p, q);
  double v = 0.0;
  for (std::size_t i = 0; i < p.alphabet_size(); ++i) {
    const double d = -q.log_probs()[i] - h;
    v += p.probs()[i] * d * d;
  }
  return v;
}

std::array<DerivativeCheck, 5> derivative_checks(const CategoricalSource& base,
                                                 double step) {
  for (double p : base.probs())
    if (p < 1e-6)
      fail(errc::ill_conditioned,
           "entries below 1e-6 make finite differences unreliable");
  if (base.is_uniform())
    fail(errc::uniform_base, "derivative targets vanish identically at uniform");

  const double h = step;
  const double v = varentropy(base);
  const double s = skewentropy(base);

  const auto ent_tilt = [&](double a) {
    return entropy_of_log_probs(tilt_log_probs(base, a));
  };
  const auto renyi_tilt = [&](double a, double b) {
    return renyi_of_log_probs(tilt_log_probs(base, a), b);
  };
  const auto cross_var_tilt = [&](double a) {
    const std::vector<double> lp = tilt_log_probs(base, a);
    // variance of log(1/theta_i) under tau(theta, a)
    double ch = 0.0;
    for (std::size_t i = 0; i < lp.size(); ++i)
      ch -= std::exp(lp[i]) * base.log_probs()[i];
    double cv = 0.0;
    for (std::size_t i = 0; i < lp.size(); ++i) {
      const double d = -base.log_probs()[i] - ch;
      cv += std::exp(lp[i]) * d * d;
    }
    return cv;
  };

  // Richardson-extrapolated stencils: cancelling the h^2 truncation term
  // keeps near-zero targets inside the absolute tolerance even for skewed
  // bases, where the higher tilt derivatives are large
  const auto central = [h](auto&& f) {
    const auto d = [&](double hh) {
      return (f(1.0 + hh) - f(1.0 - hh)) / (2.0 * hh);
    };
    return (4.0 * d(0.5 * h) - d(h)) / 3.0;
  };
  const auto cross_stencil = [h](auto&& f) {
    const auto d = [&](double hh) {
      return (f(1.0 + hh, 1.0 + hh) - f(1.0 + hh, 1.0 - hh) -
              f(1.0 - hh, 1.0 + hh) + f(1.0 - hh, 1.0 - hh)) /
             (4.0 * hh * hh);
    };
    return (4.0 * d(0.5 * h) - d(h)) / 3.0;
  };

  std::array<DerivativeCheck, 5> out{};
  const auto set = [](DerivativeCheck& c, const char* name, double est, double tgt) {
    c.name = name;
    c.estimate = est;
    c.target = tgt;
    c.residual = std::fabs(est - tgt);
    c.pass = c.residual <= std::max(1e-6, 1e-3 * std::fabs(tgt));
  };

  set(out[0], "d_alpha_family_entropy", central(ent_tilt), -v);
  set(out[1], "d_beta_renyi",
      central([&](double b) { return renyi_entropy(base, b); }), -0.5 * v);
  set(out[2], "d_alpha_beta_renyi_of_tilt", cross_stencil(renyi_tilt),
      -v + 0.5 * s);
  set(out[3], "d_alpha_cross_varentropy", central(cross_var_tilt), -s);
  set(out[4], "d_alpha_beta_entropy_of_product_tilt",
      cross_stencil([&](double a, double b) { return ent_tilt(a * b); }),
      -2.0 * v + s);
  return out;
}

}  // namespace guesswork
