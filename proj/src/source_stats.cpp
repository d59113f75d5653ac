#include "guesswork/source_stats.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "guesswork/errors.hpp"
#include "guesswork/log_space.hpp"

namespace guesswork {

namespace {

std::string entry_str(std::size_t i, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "entry %zu = %.6g", i, v);
  return buf;
}

}  // namespace

CategoricalSource::CategoricalSource(const std::vector<double>& weights) {
  if (weights.size() < 2)
    fail(errc::empty_or_singleton, "need at least 2 alphabet symbols, got " +
                                       std::to_string(weights.size()));
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i]))
      fail(errc::non_positive_entry, entry_str(i, weights[i]));
    total += weights[i];
  }
  if (!(total > 0.0)) fail(errc::non_positive_entry, "weights sum to zero");

  probs_.resize(weights.size());
  log_probs_.resize(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    probs_[i] = weights[i] / total;
    // relative slack keeps entries clamped exactly at the floor valid
    // after renormalization
    if (probs_[i] < min_prob * (1.0 - 1e-6))
      fail(errc::non_positive_entry,
           entry_str(i, probs_[i]) + " below construction floor 1e-12");
    log_probs_[i] = std::log(probs_[i]);
  }

  const double u = 1.0 / static_cast<double>(probs_.size());
  uniform_ = true;
  for (double p : probs_)
    if (std::fabs(p - u) > 1e-12) { uniform_ = false; break; }
}

CategoricalSource make_source(const std::vector<double>& weights) {
  return CategoricalSource(weights);
}

CategoricalSource uniform_source(std::size_t alphabet_size) {
  if (alphabet_size < 2)
    fail(errc::empty_or_singleton, "alphabet size " + std::to_string(alphabet_size));
  return CategoricalSource(std::vector<double>(alphabet_size, 1.0));
}

double shannon_entropy(const CategoricalSource& src) {
  kahan_sum h;
  for (std::size_t i = 0; i < src.alphabet_size(); ++i)
    h.add(-src.probs()[i] * src.log_probs()[i]);
  return h.value();
}

double renyi_entropy(const CategoricalSource& src, double order) {
  if (!(order >= 0.0))
    fail(errc::out_of_range, "Renyi order must be >= 0, got " + std::to_string(order));
  if (std::fabs(order - 1.0) <= 1e-9) return shannon_entropy(src);
  // log sum theta_i^order computed as log-sum-exp of order*log(theta_i)
  std::vector<double> terms(src.alphabet_size());
  for (std::size_t i = 0; i < src.alphabet_size(); ++i)
    terms[i] = order * src.log_probs()[i];
  return log_sum_exp(terms) / (1.0 - order);
}

double varentropy(const CategoricalSource& src) {
  const double h = shannon_entropy(src);
  kahan_sum v;
  for (std::size_t i = 0; i < src.alphabet_size(); ++i) {
    const double d = -src.log_probs()[i] - h;
    v.add(src.probs()[i] * d * d);
  }
  return v.value();
}

double skewentropy(const CategoricalSource& src) {
  const double h = shannon_entropy(src);
  double s = 0.0;
  for (std::size_t i = 0; i < src.alphabet_size(); ++i) {
    const double d = -src.log_probs()[i] - h;
    s += src.probs()[i] * d * d * d;
  }
  return s;
}

SecReport sec_report(const CategoricalSource& src) {
  if (src.is_uniform()) {
    // V = S = 0 identically; margin 0 fails the strict inequality
    const double h = shannon_entropy(src);
    return SecReport{h, 0.0, 0.0, 0.0, false};
  }
  SecReport r;
  r.shannon = shannon_entropy(src);
  r.varentropy = varentropy(src);
  r.skewentropy = skewentropy(src);
  r.margin = r.varentropy * r.varentropy +
             2.0 * r.shannon * r.varentropy - r.shannon * r.skewentropy;
  r.satisfies_sec = r.margin > 0.0;
  return r;
}

ClosedForms binary_closed_forms(double phi) {
  if (!(phi > 0.0 && phi < 0.5))
    fail(errc::out_of_range, "phi must lie in (0, 0.5), got " + std::to_string(phi));
  const double q = 1.0 - phi;
  const double l = std::log(q / phi);
  ClosedForms f;
  f.shannon = phi * std::log(1.0 / phi) + q * std::log(1.0 / q);
  f.varentropy = phi * q * l * l;
  f.skewentropy = phi * q * (1.0 - 2.0 * phi) * l * l * l;
  return f;
}

ClosedForms construction_closed_forms(std::size_t alphabet_size, double eps) {
  if (alphabet_size < 3)
    fail(errc::out_of_range, "alphabet size must be >= 3, got " +
                                 std::to_string(alphabet_size));
  const double k = static_cast<double>(alphabet_size);
  if (!(eps > 0.0 && eps < 1.0 / k))
    fail(errc::out_of_range, "eps must lie in (0, 1/|X|), got " + std::to_string(eps));
  const double q = 1.0 - eps;
  const double logk1 = std::log(k - 1.0);
  // h(eps) = binary entropy; L = log((1-eps)/eps) - log(|X|-1)
  const double h_eps = eps * std::log(1.0 / eps) + q * std::log(1.0 / q);
  const double l = std::log(q / eps) - logk1;
  ClosedForms f;
  f.shannon = q * logk1 + h_eps;
  f.varentropy = eps * q * l * l;
  f.skewentropy = eps * q * (1.0 - 2.0 * eps) * l * l * l;
  return f;
}

CategoricalSource construction_source(std::size_t alphabet_size, double eps) {
  if (alphabet_size < 3)
    fail(errc::out_of_range, "alphabet size must be >= 3, got " +
                                 std::to_string(alphabet_size));
  const double k = static_cast<double>(alphabet_size);
  if (!(eps > 0.0 && eps < 1.0 / k))
    fail(errc::out_of_range, "eps must lie in (0, 1/|X|), got " + std::to_string(eps));
  std::vector<double> w(alphabet_size, (1.0 - eps) / (k - 1.0));
  w.back() = eps;
  return CategoricalSource(w);
}

}  // namespace guesswork
