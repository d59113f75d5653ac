#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace guesswork {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// log(e^a + e^b), tolerant of -inf
inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == neg_inf) return a;
  return a + std::log1p(std::exp(b - a));
}

// log(e^a - e^b) for a >= b; returns -inf when equal
inline double log_sub(double a, double b) {
  if (b == neg_inf) return a;
  if (b >= a) return neg_inf;
  return a + std::log(-std::expm1(b - a));
}

inline double log_sum_exp(const std::vector<double>& xs) {
  double m = neg_inf;
  for (double x : xs) m = std::max(m, x);
  if (m == neg_inf) return neg_inf;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

// streaming compensated accumulator for sums of nonnegative terms
class kahan_sum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

}  // namespace guesswork
