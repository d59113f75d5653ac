#pragma once

#include <cstddef>
#include <vector>

namespace guesswork {

inline constexpr double min_prob = 1e-12;

/// Validated probability vector on a finite alphabet, renormalized exactly
/// at construction. Entries below min_prob (after normalization) are
/// rejected: the open simplex keeps every log(1/theta_i) finite.
class CategoricalSource {
 public:
  explicit CategoricalSource(const std::vector<double>& weights);

  const std::vector<double>& probs() const { return probs_; }
  const std::vector<double>& log_probs() const { return log_probs_; }
  std::size_t alphabet_size() const { return probs_.size(); }
  bool is_uniform() const { return uniform_; }

 private:
  std::vector<double> probs_;
  std::vector<double> log_probs_;
  bool uniform_;
};

struct SecReport {
  double shannon;      // nats
  double varentropy;   // nats^2
  double skewentropy;  // nats^3
  double margin;       // nats^4, V^2 + 2HV - HS
  bool satisfies_sec;  // margin > 0
};

struct ClosedForms {
  double shannon;
  double varentropy;
  double skewentropy;
};

CategoricalSource make_source(const std::vector<double>& weights);
CategoricalSource uniform_source(std::size_t alphabet_size);

double shannon_entropy(const CategoricalSource& src);

// (1/(1-order)) log sum theta_i^order; orders within 1e-9 of 1 route to Shannon
double renyi_entropy(const CategoricalSource& src, double order);

double varentropy(const CategoricalSource& src);
double skewentropy(const CategoricalSource& src);

SecReport sec_report(const CategoricalSource& src);

// binary source (phi, 1-phi), phi in (0, 0.5)
ClosedForms binary_closed_forms(double phi);

// ((1-eps)/(k-1), ..., (1-eps)/(k-1), eps) with k = alphabet_size >= 3
ClosedForms construction_closed_forms(std::size_t alphabet_size, double eps);
CategoricalSource construction_source(std::size_t alphabet_size, double eps);

}  // namespace guesswork
