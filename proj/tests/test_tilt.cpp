#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <vector>

#include "guesswork/errors.hpp"
#include "guesswork/source_stats.hpp"
#include "guesswork/tilt.hpp"

using namespace guesswork;

namespace {

errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  return errc::not_found;
}

// direct long-double tilt for cross-checking
std::vector<double> ld_tilt(const std::vector<double>& probs, double alpha) {
  long double z = 0;
  for (double p : probs) z += std::pow(static_cast<long double>(p), alpha);
  std::vector<double> out;
  for (double p : probs)
    out.push_back(static_cast<double>(
        std::pow(static_cast<long double>(p), alpha) / z));
  return out;
}

}  // namespace

TEST_CASE("tilt at alpha = 1 is the identity") {
  const CategoricalSource src = make_source({0.1, 0.2, 0.7});
  const TiltPoint pt = tilt(src, 1.0);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(pt.dist.probs()[i] == doctest::Approx(src.probs()[i]).epsilon(1e-14));
  CHECK(pt.entropy == doctest::Approx(shannon_entropy(src)).epsilon(1e-13));
  CHECK(pt.kl_to_base == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(!pt.clamped);
}

TEST_CASE("tilt values against references") {
  const CategoricalSource src = make_source({0.1, 0.2, 0.7});
  const TiltPoint pt = tilt(src, 2.0);
  CHECK(pt.dist.probs()[0] ==
        doctest::Approx(0.018518518518518518519).epsilon(1e-13));
  CHECK(pt.dist.probs()[1] ==
        doctest::Approx(0.074074074074074074074).epsilon(1e-13));
  CHECK(pt.dist.probs()[2] ==
        doctest::Approx(0.90740740740740740741).epsilon(1e-13));

  CHECK(family_entropy(src, 10.0) ==
        doctest::Approx(4.9111217597542653631e-5).epsilon(1e-10));

  for (double alpha : {0.3, 0.8, 1.7, 4.0}) {
    const auto ref = ld_tilt(src.probs(), alpha);
    const TiltPoint p = tilt(src, alpha);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(p.dist.probs()[i] == doctest::Approx(ref[i]).epsilon(1e-13));
  }
}

TEST_CASE("tilt composition semigroup") {
  const CategoricalSource src = make_source({0.1, 0.2, 0.7});
  for (double a : {0.5, 1.0, 2.0, 3.0})
    for (double b : {0.5, 1.0, 2.0, 3.0}) {
      const CategoricalSource lhs = tilt(src, a * b).dist;
      const CategoricalSource rhs = tilt(tilt(src, b).dist, a).dist;
      for (std::size_t i = 0; i < 3; ++i)
        CHECK(lhs.probs()[i] == doctest::Approx(rhs.probs()[i]).epsilon(1e-12));
    }
}

TEST_CASE("tilt edge cases") {
  const CategoricalSource src = make_source({0.3, 0.7});
  const TiltPoint zero = tilt(src, 0.0);
  CHECK(zero.dist.is_uniform());
  CHECK(zero.entropy == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  const CategoricalSource u = uniform_source(4);
  CHECK(tilt(u, 3.0).dist.is_uniform());
  CHECK(code_of([&] { tilt(src, -1.0); }) == errc::out_of_range);

  // extreme alpha clamps the small entry but still returns a valid source
  const TiltPoint far = tilt(src, 40.0);
  CHECK(far.clamped);
  CHECK(far.dist.probs()[0] >= min_prob * 0.999);
}

TEST_CASE("family entropy is strictly decreasing for a non-uniform base") {
  const CategoricalSource src = make_source({0.1, 0.2, 0.7});
  double prev = family_entropy(src, 0.1);
  for (double a = 0.3; a <= 5.01; a += 0.2) {
    const double cur = family_entropy(src, a);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK(code_of([] { family_entropy(uniform_source(3), 2.0); }) ==
        errc::uniform_base);
}

TEST_CASE("entropy inversion round-trips") {
  const CategoricalSource src = make_source({0.3, 0.7});
  for (double alpha : {0.25, 0.5, 1.5, 3.0}) {
    const double g = family_entropy(src, alpha);
    CHECK(solve_alpha_for_entropy(src, g) ==
          doctest::Approx(alpha).epsilon(1e-7));
  }
  CHECK(solve_alpha_for_entropy(src, 0.5) ==
        doctest::Approx(1.6382768354528029596).epsilon(1e-8));

  // attainable range is the open interval (log multiplicity, log |X|)
  CHECK(code_of([&] { solve_alpha_for_entropy(src, std::log(2.0)); }) ==
        errc::out_of_entropy_range);
  CHECK(code_of([&] { solve_alpha_for_entropy(src, 0.0); }) ==
        errc::out_of_entropy_range);
  const CategoricalSource tied = make_source({0.4, 0.4, 0.2});
  CHECK(code_of([&] { solve_alpha_for_entropy(tied, 0.5); }) ==
        errc::out_of_entropy_range);
  CHECK(solve_alpha_for_entropy(tied, 0.8) > 1.0);
}

TEST_CASE("rate function values and shape") {
  const CategoricalSource src = make_source({0.3, 0.7});
  CHECK(rate_function(src, 0.3) ==
        doctest::Approx(0.13200503582644904418).epsilon(1e-8));
  CHECK(rate_function(src, 0.4) ==
        doctest::Approx(0.072994297322760954165).epsilon(1e-8));
  CHECK(rate_function(src, 0.5) ==
        doctest::Approx(0.025888717070854186337).epsilon(1e-8));

  // zero at the entropy, positive elsewhere, convex on a grid
  CHECK(rate_function(src, shannon_entropy(src)) ==
        doctest::Approx(0.0).epsilon(1e-9));
  CHECK(rate_function(src, 0.68) > 0.0);

  std::vector<double> vals;
  for (double g = 0.10; g <= 0.651; g += 0.05) vals.push_back(rate_function(src, g));
  for (std::size_t i = 2; i < vals.size(); ++i)
    CHECK(vals[i] - 2 * vals[i - 1] + vals[i - 2] >= -1e-9);

  // uniform closed form
  const CategoricalSource u = uniform_source(3);
  for (double g : {0.2, 0.5, 1.0})
    CHECK(rate_function(u, g) ==
          doctest::Approx(std::log(3.0) - g).epsilon(1e-13));
  CHECK(code_of([&] { rate_function(u, 0.0); }) == errc::out_of_entropy_range);
  CHECK(code_of([&] { rate_function(u, 1.2); }) == errc::out_of_entropy_range);
}

TEST_CASE("kl divergence") {
  const CategoricalSource u = uniform_source(2);
  const CategoricalSource q = make_source({0.25, 0.75});
  CHECK(kl_divergence(u, q) ==
        doctest::Approx(0.14384103622589046372).epsilon(1e-13));
  CHECK(kl_divergence(q, u) ==
        doctest::Approx(0.13081203594113695913).epsilon(1e-13));
  CHECK(kl_divergence(q, q) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(code_of([&] { kl_divergence(u, uniform_source(3)); }) ==
        errc::dimension_mismatch);
}

TEST_CASE("cross entropy and cross varentropy") {
  const CategoricalSource p = make_source({0.2, 0.3, 0.5});
  const CategoricalSource q = make_source({0.5, 0.25, 0.25});
  CHECK(cross_entropy(p, p) == doctest::Approx(shannon_entropy(p)).epsilon(1e-13));
  CHECK(cross_varentropy(p, p) == doctest::Approx(varentropy(p)).epsilon(1e-12));
  CHECK(cross_entropy(p, q) >= shannon_entropy(p));
  CHECK(cross_entropy(p, q) == doctest::Approx(shannon_entropy(p) +
                                               kl_divergence(p, q))
                                   .epsilon(1e-12));

  // direct long-double recomputation
  long double h = 0, v = 0;
  for (std::size_t i = 0; i < 3; ++i)
    h += static_cast<long double>(p.probs()[i]) * -std::log(static_cast<long double>(q.probs()[i]));
  for (std::size_t i = 0; i < 3; ++i) {
    const long double d = -std::log(static_cast<long double>(q.probs()[i])) - h;
    v += static_cast<long double>(p.probs()[i]) * d * d;
  }
  CHECK(cross_entropy(p, q) ==
        doctest::Approx(static_cast<double>(h)).epsilon(1e-13));
  CHECK(cross_varentropy(p, q) ==
        doctest::Approx(static_cast<double>(v)).epsilon(1e-12));
}

TEST_CASE("derivative identities pass on representative sources") {
  for (const auto& probs : std::vector<std::vector<double>>{
           {0.3, 0.7}, {0.1, 0.2, 0.7}, {0.05, 0.15, 0.3, 0.5}}) {
    const CategoricalSource src = make_source(probs);
    const auto checks = derivative_checks(src);
    const double v = varentropy(src);
    const double s = skewentropy(src);
    CHECK(checks[0].target == doctest::Approx(-v).epsilon(1e-14));
    CHECK(checks[1].target == doctest::Approx(-v / 2).epsilon(1e-14));
    CHECK(checks[2].target == doctest::Approx(-v + s / 2).epsilon(1e-14));
    CHECK(checks[3].target == doctest::Approx(-s).epsilon(1e-14));
    CHECK(checks[4].target == doctest::Approx(-2 * v + s).epsilon(1e-14));
    for (const auto& c : checks) {
      INFO(c.name);
      CHECK(c.pass);
      CHECK(c.residual <= std::max(1e-6, 1e-3 * std::fabs(c.target)));
    }
  }
  CHECK(code_of([] { derivative_checks(uniform_source(3)); }) ==
        errc::uniform_base);
  CHECK(code_of([] { derivative_checks(make_source({1e-7, 1.0})); }) ==
        errc::ill_conditioned);
}

TEST_CASE("family scan fills one point per alpha") {
  const CategoricalSource src = make_source({0.3, 0.7});
  const std::vector<double> alphas{0.5, 1.0, 2.0};
  const auto pts = family_scan(src, alphas);
  REQUIRE(pts.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(pts[i].alpha == alphas[i]);
    CHECK(pts[i].entropy ==
          doctest::Approx(family_entropy(src, alphas[i])).epsilon(1e-13));
  }
}
