#pragma once

#include <cstdint>
#include <vector>

#include "guesswork/source_stats.hpp"

namespace guesswork {

inline constexpr double composition_guard_default = 1e7;

struct GuessClass {
  double log_prob;      // per-string log probability (nats, <= 0)
  double log_count;     // log of class multiplicity
  std::uint64_t count;  // exact multiplicity, valid when count_exact
  bool count_exact;
};

/// Type-class decomposition of an i.i.d. source at length n: one entry per
/// distinct per-string probability, sorted descending, with multiplicities.
/// Probabilities equal within 1e-12 (in log) are merged into one class.
class GuessProfile {
 public:
  GuessProfile(CategoricalSource base, std::size_t length,
               std::vector<GuessClass> classes, double log_total,
               std::uint64_t total, bool total_exact)
      : base_(std::move(base)),
        length_(length),
        classes_(std::move(classes)),
        log_total_(log_total),
        total_(total),
        total_exact_(total_exact) {}

  const CategoricalSource& base() const { return base_; }
  std::size_t length() const { return length_; }
  const std::vector<GuessClass>& classes() const { return classes_; }
  double log_total_strings() const { return log_total_; }
  std::uint64_t total_strings() const { return total_; }      // when exact
  bool total_strings_exact() const { return total_exact_; }

 private:
  CategoricalSource base_;
  std::size_t length_;
  std::vector<GuessClass> classes_;
  double log_total_;
  std::uint64_t total_;
  bool total_exact_;
};

GuessProfile build_profile(const CategoricalSource& base, std::size_t length,
                           double composition_guard = composition_guard_default);

enum class MomentMode { exact_enumerated, exact_integer, integral_approx, automatic };

const char* moment_mode_name(MomentMode m);

struct MomentResult {
  double log_moment;  // log E[G^rho], nats of log-count
  MomentMode mode_used;
};

/// E[G^rho] = sum over classes of p_class * sum_{j=s+1}^{s+m} j^rho.
/// exact_enumerated: per-rank summation, needs total strings <= 2^26.
/// exact_integer: Faulhaber closed forms, rho in {1,2,3}, any size.
/// integral_approx: ranks <= 4096 summed exactly, midpoint integral beyond.
/// automatic routes to the tightest available mode.
MomentResult guesswork_moment(const GuessProfile& profile, double rho,
                              MomentMode mode = MomentMode::automatic);

/// log P[G <= N] with N = floor(e^log_budget), N >= 1. Full classes plus a
/// partial (N - s) * p term at the budget boundary. For log_budget >= 63 log 2
/// the floor is a relative 2^-63 perturbation and arithmetic stays in logs.
double log_success_probability(const GuessProfile& profile, double log_budget);
double success_probability(const GuessProfile& profile, double log_budget);

struct ExponentRow {
  double parameter;  // rho or g
  double raw;        // log E[G^rho] or P[G <= e^{gn}]
  double exponent;   // (1/(rho n)) log E[G^rho] or -(1/n) log P
};

struct EmpiricalExponents {
  std::size_t length;
  std::vector<ExponentRow> moments;
  std::vector<ExponentRow> success;
};

// finite-n counterparts of the Renyi-entropy and rate-function exponents
EmpiricalExponents empirical_exponents(const CategoricalSource& base,
                                       std::size_t length,
                                       const std::vector<double>& rho_grid,
                                       const std::vector<double>& g_grid);

/// Validation oracle: explicit enumeration of all |X|^n strings, sorted by
/// probability descending (ties broken lexicographically, direction
/// selectable to demonstrate tie invariance).
class BruteForceOracle {
 public:
  BruteForceOracle(const CategoricalSource& base, std::size_t length,
                   bool reverse_tie_order = false);

  double log_moment(double rho) const;
  double success(std::uint64_t budget) const;
  std::uint64_t total_strings() const { return sorted_log_probs_.size(); }

 private:
  std::vector<double> sorted_log_probs_;
};

BruteForceOracle brute_force_oracle(const CategoricalSource& base,
                                    std::size_t length,
                                    bool reverse_tie_order = false);

}  // namespace guesswork
