#include "guesswork/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "guesswork/errors.hpp"
#include "guesswork/log_space.hpp"

namespace guesswork {

namespace {

constexpr std::uint64_t exact_enumerated_cap = std::uint64_t(1) << 26;
constexpr std::uint64_t automatic_enumerated_cap = std::uint64_t(1) << 20;
constexpr std::uint64_t oracle_cap = std::uint64_t(1) << 20;
constexpr std::uint64_t exact_head_ranks = 4096;
constexpr unsigned __int128 u128_max = ~static_cast<unsigned __int128>(0);
constexpr std::uint64_t u64_max = ~std::uint64_t(0);

double log_of_u64(std::uint64_t v) { return std::log(static_cast<double>(v)); }

long double u128_to_ld(unsigned __int128 v) {
  const std::uint64_t hi = static_cast<std::uint64_t>(v >> 64);
  const std::uint64_t lo = static_cast<std::uint64_t>(v);
  return std::ldexp(static_cast<long double>(hi), 64) + static_cast<long double>(lo);
}

// n! / prod ks[i]!, exact in 64 bits; false on overflow
bool exact_multinomial(const std::vector<std::uint32_t>& ks, std::uint64_t n,
                       std::uint64_t* out) {
  unsigned __int128 acc = 1;
  std::uint64_t rem = n;
  for (std::uint32_t k : ks) {
    unsigned __int128 c = 1;
    for (std::uint64_t j = 1; j <= k; ++j) {
      const std::uint64_t num = rem - k + j;
      if (num != 0 && c > u128_max / num) return false;
      c = c * num / j;  // running product is C(rem - k + j, j), always integral
    }
    if (c != 0 && acc > u128_max / c) return false;
    acc *= c;
    rem -= k;
  }
  if (acc > u64_max) return false;
  *out = static_cast<std::uint64_t>(acc);
  return true;
}

struct RawClass {
  double log_prob;
  double log_count;
  std::uint64_t count;
  bool count_exact;
};

// Faulhaber prefix sums in exact 128-bit arithmetic
unsigned __int128 prefix_pow_sum(std::uint64_t x, int rho) {
  const unsigned __int128 xx = x;
  switch (rho) {
    case 1: return xx * (xx + 1) / 2;
    case 2: return xx * (xx + 1) * (2 * xx + 1) / 6;
    default: {
      const unsigned __int128 t = xx * (xx + 1) / 2;
      return t * t;
    }
  }
}

// log of sum_{j=s+1}^{s+m} j^rho for rho in {1,2,3} via factored closed
// forms whose terms are all positive (no cancellation in log space)
double log_faulhaber_range(double log_s, double log_m, int rho) {
  const double la = log_s;                 // a = s
  const double lb = log_add(log_s, log_m); // b = s + m
  const double ln2 = std::log(2.0);
  const double ln3 = std::log(3.0);
  switch (rho) {
    case 1:
      // m (2s + m + 1) / 2
      return log_m + log_sum_exp({ln2 + la, log_m, 0.0}) - ln2;
    case 2:
      // m (2b^2 + 2ab + 2a^2 + 3b + 3a + 1) / 6
      return log_m +
             log_sum_exp({ln2 + 2 * lb, ln2 + la + lb, ln2 + 2 * la,
                          ln3 + lb, ln3 + la, 0.0}) -
             std::log(6.0);
    default:
      // m (a + b + 1) (b(b+1) + a(a+1)) / 4
      return log_m + log_sum_exp({la, lb, 0.0}) +
             log_add(log_add(2 * lb, lb), log_add(2 * la, la)) -
             std::log(4.0);
  }
}

// log of the midpoint-rule tail ((b+1/2)^c - (a-1/2)^c)/c over a width-w
// block ending at b, written via log1p/expm1 so thin slivers stay finite
double log_midpoint_tail(double log_b, double log_w, double rho) {
  const double c = rho + 1.0;
  const double lbh = log_add(log_b, std::log(0.5));
  double r = std::exp(log_w - lbh);
  if (r < 1e-10) return rho * lbh + log_w;  // w * (b+1/2)^rho
  r = std::min(r, 1.0 - 1e-16);
  return c * lbh + std::log(-std::expm1(c * std::log1p(-r))) - std::log(c);
}

// exact sum of j^rho over (lo, hi], both small
double enumerated_pow_sum(std::uint64_t lo, std::uint64_t hi, double rho) {
  kahan_sum s;
  for (std::uint64_t j = lo + 1; j <= hi; ++j)
    s.add(std::pow(static_cast<double>(j), rho));
  return s.value();
}

// running cumulative count in both exact and log form
struct Cumulative {
  std::uint64_t exact = 0;
  bool exact_valid = true;
  double log = neg_inf;

  void advance(const GuessClass& cls) {
    log = log_add(log, cls.log_count);
    if (exact_valid && cls.count_exact && exact <= u64_max - cls.count)
      exact += cls.count;
    else
      exact_valid = false;
  }
};

}  // namespace

GuessProfile build_profile(const CategoricalSource& base, std::size_t length,
                           double composition_guard) {
  if (length < 1) fail(errc::out_of_range, "length must be >= 1");
  const std::size_t k = base.alphabet_size();
  const double n = static_cast<double>(length);

  // number of compositions C(n + k - 1, k - 1)
  const double log_comps = std::lgamma(n + k) - std::lgamma(n + 1.0) -
                           std::lgamma(static_cast<double>(k));
  if (log_comps > std::log(composition_guard) + 1e-9) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.3g compositions exceed guard %.3g",
                  std::exp(log_comps), composition_guard);
    fail(errc::too_many_classes, buf);
  }

  const double lg_n1 = std::lgamma(n + 1.0);
  std::vector<RawClass> raw;
  raw.reserve(static_cast<std::size_t>(std::exp(log_comps) + 1.5));

  std::vector<std::uint32_t> ks(k, 0);
  std::uint64_t head_sum = 0;  // sum of ks[0..k-2]
  while (true) {
    ks[k - 1] = static_cast<std::uint32_t>(length - head_sum);

    RawClass rc;
    rc.log_prob = 0.0;
    double lg_den = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      rc.log_prob += ks[i] * base.log_probs()[i];
      lg_den += std::lgamma(static_cast<double>(ks[i]) + 1.0);
    }
    rc.count_exact = exact_multinomial(ks, length, &rc.count);
    rc.log_count = rc.count_exact ? log_of_u64(rc.count) : lg_n1 - lg_den;
    raw.push_back(rc);

    // bounded odometer over the first k-1 coordinates
    bool advanced = false;
    for (std::size_t i = k - 1; i-- > 0;) {
      if (head_sum < length) {
        ++ks[i];
        ++head_sum;
        advanced = true;
        break;
      }
      head_sum -= ks[i];
      ks[i] = 0;
    }
    if (!advanced) break;
  }

  std::stable_sort(raw.begin(), raw.end(),
                   [](const RawClass& a, const RawClass& b) {
                     return a.log_prob > b.log_prob;
                   });

  // merge classes whose log-probabilities agree within 1e-12 of the group head
  std::vector<GuessClass> classes;
  classes.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    GuessClass g{raw[i].log_prob, raw[i].log_count, raw[i].count,
                 raw[i].count_exact};
    std::size_t j = i + 1;
    while (j < raw.size() && raw[i].log_prob - raw[j].log_prob <= 1e-12) {
      g.log_count = log_add(g.log_count, raw[j].log_count);
      if (g.count_exact && raw[j].count_exact &&
          g.count <= u64_max - raw[j].count)
        g.count += raw[j].count;
      else
        g.count_exact = false;
      ++j;
    }
    classes.push_back(g);
    i = j;
  }

  const double log_total = n * std::log(static_cast<double>(k));
  std::uint64_t total = 1;
  bool total_exact = true;
  for (std::size_t t = 0; t < length; ++t) {
    if (total > u64_max / k) {
      total_exact = false;
      total = 0;
      break;
    }
    total *= k;
  }

  return GuessProfile(base, length, std::move(classes), log_total, total,
                      total_exact);
}

const char* moment_mode_name(MomentMode m) {
  switch (m) {
    case MomentMode::exact_enumerated: return "exact_enumerated";
    case MomentMode::exact_integer: return "exact_integer";
    case MomentMode::integral_approx: return "integral_approx";
    case MomentMode::automatic: return "auto";
  }
  return "unknown";
}

MomentResult guesswork_moment(const GuessProfile& profile, double rho,
                              MomentMode mode) {
  if (!(rho > 0.0))
    fail(errc::out_of_range, "rho must be > 0, got " + std::to_string(rho));

  const bool rho_integral = (rho == 1.0 || rho == 2.0 || rho == 3.0);
  const bool enumerable = profile.total_strings_exact() &&
                          profile.total_strings() <= exact_enumerated_cap;

  if (mode == MomentMode::automatic) {
    if (rho_integral)
      mode = MomentMode::exact_integer;
    else if (profile.total_strings_exact() &&
             profile.total_strings() <= automatic_enumerated_cap)
      mode = MomentMode::exact_enumerated;
    else
      mode = MomentMode::integral_approx;
  } else if (mode == MomentMode::exact_integer && !rho_integral) {
    fail(errc::mode_unavailable, "exact_integer requires rho in {1,2,3}");
  } else if (mode == MomentMode::exact_enumerated && !enumerable) {
    fail(errc::mode_unavailable,
         "exact_enumerated requires at most 2^26 strings");
  }

  const int irho = static_cast<int>(rho);
  const std::uint64_t exact_b_cap =
      irho == 1 ? (std::uint64_t(1) << 62)
                : irho == 2 ? (std::uint64_t(1) << 40) : (std::uint64_t(1) << 30);

  double acc = neg_inf;
  Cumulative cum;
  for (const GuessClass& cls : profile.classes()) {
    double contribution;
    switch (mode) {
      case MomentMode::exact_enumerated: {
        // counts are exact whenever the total fits (checked above)
        contribution =
            cls.log_prob +
            std::log(enumerated_pow_sum(cum.exact, cum.exact + cls.count, rho));
        break;
      }
      case MomentMode::exact_integer: {
        if (cum.exact_valid && cls.count_exact &&
            cum.exact <= u64_max - cls.count &&
            cum.exact + cls.count <= exact_b_cap) {
          const unsigned __int128 v =
              prefix_pow_sum(cum.exact + cls.count, irho) -
              prefix_pow_sum(cum.exact, irho);
          contribution =
              cls.log_prob + static_cast<double>(std::log(u128_to_ld(v)));
        } else {
          contribution =
              cls.log_prob + log_faulhaber_range(cum.log, cls.log_count, irho);
        }
        break;
      }
      default: {  // integral_approx
        const bool head_possible = cum.exact_valid && cum.exact < exact_head_ranks;
        if (head_possible && cls.count_exact &&
            cls.count <= exact_head_ranks - cum.exact) {
          contribution =
              cls.log_prob +
              std::log(enumerated_pow_sum(cum.exact, cum.exact + cls.count, rho));
        } else {
          const double lb = log_add(cum.log, cls.log_count);
          double head = neg_inf;
          double lw = cls.log_count;
          if (head_possible) {
            head = std::log(enumerated_pow_sum(cum.exact, exact_head_ranks, rho));
            lw = log_sub(lb, log_of_u64(exact_head_ranks));
          }
          contribution =
              cls.log_prob + log_add(head, log_midpoint_tail(lb, lw, rho));
        }
        break;
      }
    }
    acc = log_add(acc, contribution);
    cum.advance(cls);
  }
  return MomentResult{acc, mode};
}

namespace {

// shared class walk for the two success-probability accumulators
template <class Full, class Partial>
void walk_budget(const GuessProfile& profile, double log_budget, Full&& full,
                 Partial&& partial) {
  const bool small_budget = log_budget < 63.0 * std::log(2.0);
  const std::uint64_t budget =
      small_budget
          ? std::max<std::uint64_t>(
                1, static_cast<std::uint64_t>(std::floor(std::exp(log_budget))))
          : 0;

  Cumulative cum;
  for (const GuessClass& cls : profile.classes()) {
    bool fits;
    if (small_budget) {
      fits = cum.exact_valid && cls.count_exact &&
             cls.count <= budget - cum.exact;
    } else {
      fits = log_add(cum.log, cls.log_count) <= log_budget;
    }
    if (fits) {
      full(cls);
      cum.advance(cls);
      continue;
    }
    if (small_budget) {
      const std::uint64_t take = budget - cum.exact;  // cum.exact <= budget here
      if (take > 0) partial(cls, log_of_u64(take));
    } else {
      const double lpart = log_sub(log_budget, cum.log);
      if (lpart != neg_inf) partial(cls, lpart);
    }
    return;
  }
}

}  // namespace

double success_probability(const GuessProfile& profile, double log_budget) {
  if (!(log_budget >= 0.0))
    fail(errc::out_of_range, "log budget must be >= 0");
  if (log_budget >= profile.log_total_strings()) return 1.0;

  kahan_sum acc;
  walk_budget(
      profile, log_budget,
      [&](const GuessClass& cls) { acc.add(std::exp(cls.log_prob + cls.log_count)); },
      [&](const GuessClass& cls, double lpart) {
        acc.add(std::exp(cls.log_prob + lpart));
      });
  return std::min(acc.value(), 1.0);
}

double log_success_probability(const GuessProfile& profile, double log_budget) {
  if (!(log_budget >= 0.0))
    fail(errc::out_of_range, "log budget must be >= 0");
  if (log_budget >= profile.log_total_strings()) return 0.0;

  double acc = neg_inf;
  walk_budget(
      profile, log_budget,
      [&](const GuessClass& cls) { acc = log_add(acc, cls.log_prob + cls.log_count); },
      [&](const GuessClass& cls, double lpart) {
        acc = log_add(acc, cls.log_prob + lpart);
      });
  return std::min(acc, 0.0);
}

EmpiricalExponents empirical_exponents(const CategoricalSource& base,
                                       std::size_t length,
                                       const std::vector<double>& rho_grid,
                                       const std::vector<double>& g_grid) {
  const GuessProfile profile = build_profile(base, length);
  const double n = static_cast<double>(length);

  EmpiricalExponents out;
  out.length = length;
  out.moments.reserve(rho_grid.size());
  for (double rho : rho_grid) {
    const MomentResult m = guesswork_moment(profile, rho);
    out.moments.push_back({rho, m.log_moment, m.log_moment / (rho * n)});
  }
  out.success.reserve(g_grid.size());
  for (double g : g_grid) {
    const double lp = log_success_probability(profile, g * n);
    out.success.push_back({g, std::exp(lp), -lp / n});
  }
  return out;
}

BruteForceOracle::BruteForceOracle(const CategoricalSource& base,
                                   std::size_t length, bool reverse_tie_order) {
  if (length < 1) fail(errc::out_of_range, "length must be >= 1");
  const std::size_t k = base.alphabet_size();
  double total_d = 1.0;
  for (std::size_t i = 0; i < length; ++i) total_d *= static_cast<double>(k);
  if (total_d > static_cast<double>(oracle_cap))
    fail(errc::too_large, "oracle requires at most 2^20 strings");
  const std::uint64_t total = static_cast<std::uint64_t>(total_d + 0.5);

  sorted_log_probs_.reserve(total);
  std::vector<std::uint8_t> digits(length, 0);
  std::vector<std::uint32_t> counts(k, 0);
  counts[0] = static_cast<std::uint32_t>(length);
  for (std::uint64_t idx = 0;; ++idx) {
    // per-string probability from the symbol counts, in canonical order,
    // so strings of one type class get bitwise-identical values
    double lp = 0.0;
    for (std::size_t i = 0; i < k; ++i) lp += counts[i] * base.log_probs()[i];
    sorted_log_probs_.push_back(lp);

    // lexicographic successor
    std::size_t pos = length;
    while (pos-- > 0) {
      --counts[digits[pos]];
      if (digits[pos] + 1u < k) {
        ++digits[pos];
        ++counts[digits[pos]];
        break;
      }
      digits[pos] = 0;
      ++counts[0];
    }
    if (pos == static_cast<std::size_t>(-1)) break;
  }

  if (reverse_tie_order) std::reverse(sorted_log_probs_.begin(), sorted_log_probs_.end());
  std::stable_sort(sorted_log_probs_.begin(), sorted_log_probs_.end(),
                   [](double a, double b) { return a > b; });
}

double BruteForceOracle::log_moment(double rho) const {
  if (!(rho > 0.0)) fail(errc::out_of_range, "rho must be > 0");
  long double acc = 0.0L;
  long double comp = 0.0L;
  for (std::size_t j = 0; j < sorted_log_probs_.size(); ++j) {
    const long double term =
        std::exp(static_cast<long double>(sorted_log_probs_[j])) *
        std::pow(static_cast<long double>(j + 1), static_cast<long double>(rho));
    const long double y = term - comp;
    const long double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
  }
  return static_cast<double>(std::log(acc));
}

double BruteForceOracle::success(std::uint64_t budget) const {
  long double acc = 0.0L;
  const std::uint64_t n = std::min<std::uint64_t>(budget, sorted_log_probs_.size());
  for (std::uint64_t j = 0; j < n; ++j)
    acc += std::exp(static_cast<long double>(sorted_log_probs_[j]));
  return static_cast<double>(std::min(acc, 1.0L));
}

BruteForceOracle brute_force_oracle(const CategoricalSource& base,
                                    std::size_t length, bool reverse_tie_order) {
  return BruteForceOracle(base, length, reverse_tie_order);
}

}  // namespace guesswork
