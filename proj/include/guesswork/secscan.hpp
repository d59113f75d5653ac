#pragma once

#include <cstddef>
#include <vector>

#include "guesswork/source_stats.hpp"

namespace guesswork {

enum class SecLabel { pass, fail_margin, fail_degenerate };

const char* sec_label_name(SecLabel label);

struct SimplexPoint {
  CategoricalSource theta;
  SecReport report;
  SecLabel label;
};

struct SimplexScan {
  std::size_t resolution;
  std::size_t dimension;
  std::vector<SimplexPoint> points;
  std::size_t failures;  // fail_margin count
};

/// Evaluates the SEC on the interior lattice {(i,j,l)/m : i,j,l >= 1,
/// i+j+l = m} of the ternary simplex, m = resolution. Points are ordered
/// lexicographically by (i, j).
SimplexScan scan_simplex(std::size_t resolution, std::size_t dimension = 3,
                         double point_guard = 1e7);

struct Certificate {
  bool certified;  // max_info_deviation < 2
  double max_info_deviation;
  bool box_ok;  // every theta_i in (e^{-1}/|X|, e/|X|)
};

/// max_i |log(1/theta_i) - H(theta)| < 2 guarantees the SEC regardless of
/// alphabet size; the box condition is the easier-to-check sufficient bound.
Certificate near_uniform_certificate(const CategoricalSource& theta);

struct Witness {
  CategoricalSource theta;
  double eps;
  SecReport report;
};

/// Searches eps in {1e-2, ..., 1e-9} (decreasing) for the first
/// ((1-eps)/(k-1), ..., eps) construction with SEC margin <= 0.
Witness sec_failure_witness(std::size_t alphabet_size);

}  // namespace guesswork
