#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "guesswork/errors.hpp"
#include "guesswork/profile.hpp"
#include "guesswork/source_stats.hpp"

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

double rel_gap_log(double la, double lb) { return std::fabs(std::expm1(la - lb)); }

}  // namespace

TEST_CASE("profile of a small binary extension") {
  const CategoricalSource src = make_source({0.8, 0.2});
  const GuessProfile p = build_profile(src, 2);
  REQUIRE(p.classes().size() == 3);
  CHECK(p.length() == 2);
  CHECK(p.total_strings_exact());
  CHECK(p.total_strings() == 4);
  CHECK(p.classes()[0].log_prob == doctest::Approx(std::log(0.64)).epsilon(1e-14));
  CHECK(p.classes()[0].count == 1);
  CHECK(p.classes()[1].log_prob == doctest::Approx(std::log(0.16)).epsilon(1e-14));
  CHECK(p.classes()[1].count == 2);
  CHECK(p.classes()[2].count == 1);

  // classes sorted descending and carrying unit mass
  double mass = 0.0;
  for (const auto& c : p.classes()) {
    mass += std::exp(c.log_prob + c.log_count);
    CHECK(c.count_exact);
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("binomial multiplicities at length 3") {
  const GuessProfile p = build_profile(make_source({0.8, 0.2}), 3);
  REQUIRE(p.classes().size() == 4);
  CHECK(p.classes()[0].count == 1);
  CHECK(p.classes()[1].count == 3);
  CHECK(p.classes()[2].count == 3);
  CHECK(p.classes()[3].count == 1);
}

TEST_CASE("uniform source collapses to a single class") {
  const GuessProfile p = build_profile(make_source({0.5, 0.5}), 5);
  REQUIRE(p.classes().size() == 1);
  CHECK(p.classes()[0].count == 32);
  CHECK(p.classes()[0].log_prob == doctest::Approx(-5 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("cross-composition probability ties are merged") {
  // 0.45 * 0.2 == 0.09 == 0.3^2, so two compositions share one class
  const CategoricalSource src = make_source({0.45, 0.2, 0.3, 0.05});
  const GuessProfile p = build_profile(src, 2);
  bool found = false;
  for (const auto& c : p.classes())
    if (c.count == 3 && std::fabs(c.log_prob - std::log(0.09)) < 1e-9)
      found = true;
  CHECK(found);

  // ternary with matching pair products
  const GuessProfile q = build_profile(make_source({0.5, 0.25, 0.25}), 2);
  REQUIRE(q.classes().size() == 3);
  CHECK(q.classes()[0].count == 1);
  CHECK(q.classes()[1].count == 4);
  CHECK(q.classes()[2].count == 4);
}

TEST_CASE("named moment values") {
  const GuessProfile p = build_profile(make_source({0.8, 0.2}), 2);
  for (MomentMode mode : {MomentMode::exact_enumerated, MomentMode::exact_integer,
                          MomentMode::integral_approx}) {
    const MomentResult m = guesswork_moment(p, 1.0, mode);
    CHECK(m.log_moment == doctest::Approx(std::log(1.6)).epsilon(1e-13));
  }

  const GuessProfile u2 = build_profile(make_source({0.5, 0.5}), 2);
  CHECK(guesswork_moment(u2, 1.0).log_moment ==
        doctest::Approx(std::log(2.5)).epsilon(1e-13));

  const GuessProfile u3 = build_profile(uniform_source(3), 1);
  CHECK(guesswork_moment(u3, 2.0).log_moment ==
        doctest::Approx(std::log(14.0 / 3.0)).epsilon(1e-13));
}

TEST_CASE("exact integer mode on huge uniform extensions") {
  // single class of 2^40 equiprobable strings: E[G] = (2^40 + 1)/2
  const GuessProfile p = build_profile(make_source({0.5, 0.5}), 40);
  const MomentResult m = guesswork_moment(p, 1.0, MomentMode::exact_integer);
  const long double expect = (std::pow(2.0L, 40) + 1.0L) / 2.0L;
  CHECK(m.log_moment ==
        doctest::Approx(static_cast<double>(std::log(expect))).epsilon(1e-14));

  // E[G^3] over 2^21 strings has the Faulhaber square closed form
  const GuessProfile q = build_profile(make_source({0.5, 0.5}), 21);
  const long double n = std::pow(2.0L, 21);
  const long double s3 = n * (n + 1) / 2;
  CHECK(guesswork_moment(q, 3.0, MomentMode::exact_integer).log_moment ==
        doctest::Approx(static_cast<double>(2 * std::log(s3) - std::log(n)))
            .epsilon(1e-14));
}

TEST_CASE("moment modes agree where they are all exact") {
  const CategoricalSource src = make_source({0.3, 0.7});
  const GuessProfile p = build_profile(src, 12);  // 4096 strings
  for (double rho : {0.5, 1.0, 2.0, 3.0}) {
    const double le =
        guesswork_moment(p, rho, MomentMode::exact_enumerated).log_moment;
    const double li =
        guesswork_moment(p, rho, MomentMode::integral_approx).log_moment;
    CHECK(rel_gap_log(li, le) <= 1e-12);
    if (rho >= 1.0) {
      const double lf =
          guesswork_moment(p, rho, MomentMode::exact_integer).log_moment;
      CHECK(rel_gap_log(lf, le) <= 1e-12);
    }
  }
}

TEST_CASE("integral approximation stays within 1e-6 of exact") {
  const CategoricalSource src = make_source({0.3, 0.7});
  const GuessProfile p = build_profile(src, 22);  // 4.2M strings, still enumerable
  for (double rho : {0.5, 1.0, 1.7, 2.0, 3.0}) {
    const double le =
        guesswork_moment(p, rho, MomentMode::exact_enumerated).log_moment;
    const double li =
        guesswork_moment(p, rho, MomentMode::integral_approx).log_moment;
    CHECK(rel_gap_log(li, le) <= 1e-6);
  }
}

TEST_CASE("automatic mode routing") {
  const CategoricalSource src = make_source({0.3, 0.7});
  const GuessProfile small = build_profile(src, 10);
  CHECK(guesswork_moment(small, 1.0).mode_used == MomentMode::exact_integer);
  CHECK(guesswork_moment(small, 0.5).mode_used == MomentMode::exact_enumerated);

  const GuessProfile big = build_profile(src, 30);
  CHECK(guesswork_moment(big, 2.0).mode_used == MomentMode::exact_integer);
  CHECK(guesswork_moment(big, 0.5).mode_used == MomentMode::integral_approx);

  const GuessProfile huge = build_profile(src, 200);
  CHECK(guesswork_moment(huge, 1.5).mode_used == MomentMode::integral_approx);
}

TEST_CASE("mode availability errors") {
  const CategoricalSource src = make_source({0.3, 0.7});
  const GuessProfile big = build_profile(src, 30);  // 2^30 strings
  CHECK(code_of([&] {
          guesswork_moment(big, 1.0, MomentMode::exact_enumerated);
        }) == errc::mode_unavailable);
  CHECK(code_of([&] {
          guesswork_moment(big, 0.5, MomentMode::exact_integer);
        }) == errc::mode_unavailable);

  CHECK(code_of([&] { guesswork_moment(big, 0.0); }) == errc::out_of_range);
  CHECK(code_of([&] { guesswork_moment(big, -1.0); }) == errc::out_of_range);
}

TEST_CASE("log-space Faulhaber fallback beyond the integer caps") {
  // 2^80 ranks force the closed forms into log arithmetic; they must stay
  // consistent with the integral approximation and with each other
  const GuessProfile huge = build_profile(make_source({0.3, 0.7}), 80);
  for (double rho : {1.0, 2.0, 3.0}) {
    const double lf =
        guesswork_moment(huge, rho, MomentMode::exact_integer).log_moment;
    const double li =
        guesswork_moment(huge, rho, MomentMode::integral_approx).log_moment;
    CHECK(std::fabs(std::expm1(lf - li)) <= 1e-6);
  }

  // uniform single class: log Faulhaber against the long-double closed form
  const GuessProfile u = build_profile(make_source({0.5, 0.5}), 100);
  const long double total = std::pow(2.0L, 100);
  const long double eg = (total + 1) / 2;  // E[G] for a uniform order
  CHECK(guesswork_moment(u, 1.0, MomentMode::exact_integer).log_moment ==
        doctest::Approx(static_cast<double>(std::log(eg))).epsilon(1e-13));
}

TEST_CASE("composition guard") {
  const CategoricalSource wide = make_source({0.3, 0.25, 0.2, 0.15, 0.1});
  CHECK(code_of([&] { build_profile(wide, 150); }) == errc::too_many_classes);
  CHECK(code_of([&] { build_profile(wide, 0); }) == errc::out_of_range);

  // the guard is a caller-tunable parameter, not a hard cap
  const CategoricalSource b = make_source({0.3, 0.7});
  CHECK(code_of([&] { build_profile(b, 100, 10.0); }) ==
        errc::too_many_classes);
  CHECK(build_profile(b, 100, 1e18).classes().size() == 101);
}

TEST_CASE("moments are strictly increasing in rho") {
  const GuessProfile p = build_profile(make_source({0.3, 0.7}), 10);
  double prev = guesswork_moment(p, 0.5).log_moment;
  for (double rho : {1.0, 1.5, 2.0, 3.0}) {
    const double cur = guesswork_moment(p, rho).log_moment;
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("engine matches the explicit oracle") {
  for (const auto& probs : std::vector<std::vector<double>>{
           {0.1, 0.9}, {0.45, 0.2, 0.3, 0.05}, {0.5, 0.25, 0.25}}) {
    const CategoricalSource src = make_source(probs);
    const std::size_t n = probs.size() == 2 ? 10 : 6;
    const GuessProfile p = build_profile(src, n);
    const BruteForceOracle oracle(src, n);
    for (double rho : {0.7, 1.0, 2.0}) {
      const double le =
          guesswork_moment(p, rho, MomentMode::exact_enumerated).log_moment;
      CHECK(rel_gap_log(le, oracle.log_moment(rho)) <= 1e-13);
    }
    for (std::uint64_t budget : {std::uint64_t{1}, std::uint64_t{7},
                                 std::uint64_t{100}}) {
      const double pe = success_probability(p, std::log(static_cast<double>(budget) + 0.5));
      CHECK(pe == doctest::Approx(oracle.success(budget)).epsilon(1e-13));
    }
  }
}

TEST_CASE("tie order does not change the oracle") {
  for (const auto& probs : std::vector<std::vector<double>>{
           {0.5, 0.25, 0.25}, {0.45, 0.2, 0.3, 0.05}}) {
    const CategoricalSource src = make_source(probs);
    const BruteForceOracle fwd(src, 4, false);
    const BruteForceOracle rev(src, 4, true);
    for (double rho : {0.5, 1.0, 2.0})
      CHECK(fwd.log_moment(rho) == doctest::Approx(rev.log_moment(rho)).epsilon(1e-14));
    for (std::uint64_t b = 1; b <= fwd.total_strings(); b += 13)
      CHECK(fwd.success(b) == doctest::Approx(rev.success(b)).epsilon(1e-14));
  }
}

TEST_CASE("oracle size cap") {
  CHECK(code_of([] { BruteForceOracle(make_source({0.5, 0.5}), 21); }) ==
        errc::too_large);
  CHECK(code_of([] { BruteForceOracle(make_source({0.5, 0.5}), 0); }) ==
        errc::out_of_range);
}

TEST_CASE("success probability boundary behaviour") {
  const GuessProfile p = build_profile(make_source({0.8, 0.2}), 2);
  CHECK(success_probability(p, 0.0) == doctest::Approx(0.64).epsilon(1e-14));
  CHECK(success_probability(p, std::log(2.0)) == doctest::Approx(0.80).epsilon(1e-13));
  CHECK(success_probability(p, std::log(3.0)) == doctest::Approx(0.96).epsilon(1e-13));
  CHECK(success_probability(p, std::log(4.0)) == 1.0);
  CHECK(success_probability(p, 50.0) == 1.0);

  // monotone in the budget, bounded by [0, 1]
  const GuessProfile q = build_profile(make_source({0.3, 0.7}), 16);
  double prev = -1.0;
  for (double lb = 0.0; lb <= q.log_total_strings() + 0.1; lb += 0.5) {
    const double cur = success_probability(q, lb);
    CHECK(cur >= prev);
    CHECK(cur >= 0.0);
    CHECK(cur <= 1.0);
    prev = cur;
  }
}

TEST_CASE("log success agrees with the linear path") {
  const GuessProfile p = build_profile(make_source({0.3, 0.7}), 16);
  for (double lb : {0.0, 2.0, 5.0, 9.0}) {
    CHECK(log_success_probability(p, lb) ==
          doctest::Approx(std::log(success_probability(p, lb))).epsilon(1e-12));
  }
}

TEST_CASE("large-length success probability in pure log space") {
  const GuessProfile p = build_profile(make_source({0.3, 0.7}), 200);
  double prev = -1e300;
  for (double g = 0.25; g <= 0.65; g += 0.05) {
    const double lp = log_success_probability(p, g * 200);
    CHECK(lp <= 0.0);
    CHECK(lp >= prev);
    prev = lp;
  }
  // past the entropy the probability is essentially one
  CHECK(log_success_probability(p, 0.69 * 200) >
        std::log(0.99));
}

TEST_CASE("empirical exponents approach their limits") {
  const CategoricalSource src = make_source({0.3, 0.7});
  const EmpiricalExponents e =
      empirical_exponents(src, 400, {0.5, 1.0, 2.0}, {0.4, 0.5});
  REQUIRE(e.moments.size() == 3);
  REQUIRE(e.success.size() == 2);
  for (const auto& row : e.moments) {
    const double limit = renyi_entropy(src, 1.0 / (1.0 + row.parameter));
    CHECK(std::fabs(row.exponent - limit) <= 5.0 / 400);
  }
  // moment exponents increase with rho toward higher Renyi levels
  CHECK(e.moments[0].exponent < e.moments[1].exponent);
  CHECK(e.moments[1].exponent < e.moments[2].exponent);
  for (const auto& row : e.success) {
    CHECK(row.exponent >= 0.0);
    CHECK(row.raw > 0.0);
    CHECK(row.raw <= 1.0);
  }
}

TEST_CASE("length-one profile enumerates the alphabet") {
  const GuessProfile p = build_profile(make_source({0.2, 0.3, 0.5}), 1);
  REQUIRE(p.classes().size() == 3);
  CHECK(p.classes()[0].log_prob == doctest::Approx(std::log(0.5)).epsilon(1e-14));
  CHECK(guesswork_moment(p, 1.0).log_moment ==
        doctest::Approx(std::log(0.5 + 2 * 0.3 + 3 * 0.2)).epsilon(1e-13));
}
