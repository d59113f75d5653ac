#include "guesswork/secscan.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "guesswork/errors.hpp"
#include "guesswork/parallel.hpp"

namespace guesswork {

const char* sec_label_name(SecLabel label) {
  switch (label) {
    case SecLabel::pass: return "pass";
    case SecLabel::fail_margin: return "fail_margin";
    case SecLabel::fail_degenerate: return "fail_degenerate";
  }
  return "?";
}

SimplexScan scan_simplex(std::size_t resolution, std::size_t dimension,
                         double point_guard) {
  if (dimension != 3)
    fail(errc::out_of_range, "full simplex scans cover dimension 3 only");
  if (resolution < 10)
    fail(errc::out_of_range, "resolution must be at least 10");
  const std::size_t m = resolution;
  const double points_d =
      0.5 * static_cast<double>(m - 1) * static_cast<double>(m - 2);
  if (points_d > point_guard)
    fail(errc::resource_guard,
         "lattice has " + std::to_string(static_cast<std::size_t>(points_d)) +
             " points; raise the guard to proceed");

  std::vector<std::pair<std::size_t, std::size_t>> coords;
  coords.reserve(static_cast<std::size_t>(points_d));
  for (std::size_t i = 1; i + 2 <= m; ++i)
    for (std::size_t j = 1; i + j + 1 <= m; ++j) coords.emplace_back(i, j);

  std::vector<std::optional<SimplexPoint>> slots(coords.size());
  parallel_for(coords.size(), [&](std::size_t idx) {
    const auto [i, j] = coords[idx];
    const std::size_t l = m - i - j;
    const double md = static_cast<double>(m);
    CategoricalSource theta = make_source(
        {static_cast<double>(i) / md, static_cast<double>(j) / md,
         static_cast<double>(l) / md});
    SecReport rep = sec_report(theta);
    SecLabel label = theta.is_uniform() ? SecLabel::fail_degenerate
                     : rep.margin > 0.0 ? SecLabel::pass
                                        : SecLabel::fail_margin;
    slots[idx].emplace(SimplexPoint{std::move(theta), rep, label});
  });

  SimplexScan scan;
  scan.resolution = resolution;
  scan.dimension = dimension;
  scan.points.reserve(slots.size());
  scan.failures = 0;
  for (auto& s : slots) {
    if (s->label == SecLabel::fail_margin) ++scan.failures;
    scan.points.push_back(std::move(*s));
  }
  return scan;
}

Certificate near_uniform_certificate(const CategoricalSource& theta) {
  const double h = shannon_entropy(theta);
  const std::size_t k = theta.alphabet_size();
  double max_dev = 0.0;
  bool box_ok = true;
  const double lo = std::exp(-1.0) / static_cast<double>(k);
  const double hi = std::exp(1.0) / static_cast<double>(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double info = -theta.log_probs()[i];
    max_dev = std::max(max_dev, std::fabs(info - h));
    if (!(theta.probs()[i] > lo && theta.probs()[i] < hi)) box_ok = false;
  }
  return Certificate{max_dev < 2.0, max_dev, box_ok};
}

Witness sec_failure_witness(std::size_t alphabet_size) {
  if (alphabet_size < 3)
    fail(errc::out_of_range,
         "binary sources always satisfy the SEC; need |X| >= 3");
  for (double eps = 1e-2; eps >= 0.5e-9; eps *= 0.1) {
    CategoricalSource theta = construction_source(alphabet_size, eps);
    SecReport rep = sec_report(theta);
    if (rep.margin <= 0.0) return Witness{std::move(theta), eps, rep};
  }
  fail(errc::not_found,
       "no SEC failure on the eps grid for |X| = " +
           std::to_string(alphabet_size));
}

}  // namespace guesswork
