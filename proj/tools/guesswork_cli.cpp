#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "guesswork/budget.hpp"
#include "guesswork/emit.hpp"
#include "guesswork/errors.hpp"
#include "guesswork/profile.hpp"
#include "guesswork/secscan.hpp"
#include "guesswork/source_stats.hpp"
#include "guesswork/tilt.hpp"
#include "guesswork/verify.hpp"

namespace {

using namespace guesswork;

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  const char* p = text.c_str();
  while (*p) {
    if (*p == ',' || std::isspace(static_cast<unsigned char>(*p))) {
      ++p;
      continue;
    }
    char* end = nullptr;
    const double v = std::strtod(p, &end);
    if (end == p)
      fail(errc::out_of_range,
           "cannot parse number near '" + std::string(p).substr(0, 12) + "'");
    out.push_back(v);
    p = end;
  }
  return out;
}

struct SourceArgs {
  std::string probs;
  std::string probs_file;

  CategoricalSource load() const {
    std::string text = probs;
    if (!probs_file.empty()) {
      std::ifstream f(probs_file);
      if (!f) fail(errc::out_of_range, "cannot read " + probs_file);
      std::ostringstream ss;
      ss << f.rdbuf();
      text = ss.str();
    }
    if (text.empty())
      fail(errc::out_of_range, "no source given; use --probs or --probs-file");
    return make_source(parse_numbers(text));
  }
};

void add_source_options(CLI::App* sub, SourceArgs& src) {
  sub->add_option("--probs", src.probs,
                  "source probabilities, comma separated (renormalized)");
  sub->add_option("--probs-file", src.probs_file,
                  "file with whitespace/comma separated probabilities");
}

void emit_text(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  write_file_atomic(output, text);
}

void warn_guard_off() {
  std::fprintf(stderr,
               "warning: resource guard disabled; large inputs may exhaust "
               "memory or run for a very long time\n");
}

constexpr double guard_off = 1e18;

int run_analyze(const SourceArgs& sa, const std::vector<double>& renyi_orders,
                bool bits, const std::string& output) {
  const CategoricalSource src = sa.load();
  const SecReport rep = sec_report(src);
  const double scale = bits ? std::log(2.0) : 1.0;

  CsvBuilder csv({"stat", "value"});
  csv.cell(std::string("alphabet_size")).cell(src.alphabet_size());
  csv.end_row();
  csv.cell(std::string("shannon")).cell(rep.shannon / scale);
  csv.end_row();
  for (double order : renyi_orders) {
    csv.cell("renyi_" + format_g12(order))
        .cell(renyi_entropy(src, order) / scale);
    csv.end_row();
  }
  csv.cell(std::string("varentropy")).cell(rep.varentropy / (scale * scale));
  csv.end_row();
  csv.cell(std::string("skewentropy"))
      .cell(rep.skewentropy / (scale * scale * scale));
  csv.end_row();
  csv.cell(std::string("sec_margin"))
      .cell(rep.margin / (scale * scale * scale * scale));
  csv.end_row();
  csv.cell(std::string("satisfies_sec"))
      .cell(std::string(rep.satisfies_sec ? "1" : "0"));
  csv.end_row();
  emit_text(csv.str(), output);
  return 0;
}

int run_tilt_scan(const SourceArgs& sa, std::vector<double> alphas, bool bits,
                  const std::string& output) {
  const CategoricalSource src = sa.load();
  if (alphas.empty())
    for (int i = 1; i <= 16; ++i) alphas.push_back(0.25 * i);
  const double scale = bits ? std::log(2.0) : 1.0;

  std::vector<std::string> header{"alpha", "entropy", "kl_to_base", "clamped"};
  for (std::size_t i = 0; i < src.alphabet_size(); ++i)
    header.push_back("tau" + std::to_string(i));
  CsvBuilder csv(header);
  for (const TiltPoint& pt : family_scan(src, alphas)) {
    csv.cell(pt.alpha)
        .cell(pt.entropy / scale)
        .cell(pt.kl_to_base / scale)
        .cell(std::string(pt.clamped ? "1" : "0"));
    for (double p : pt.dist.probs()) csv.cell(p);
    csv.end_row();
  }
  emit_text(csv.str(), output);
  return 0;
}

MomentMode mode_from_name(const std::string& name) {
  if (name == "auto") return MomentMode::automatic;
  if (name == "enumerated") return MomentMode::exact_enumerated;
  if (name == "integer") return MomentMode::exact_integer;
  if (name == "integral") return MomentMode::integral_approx;
  fail(errc::out_of_range, "unknown mode '" + name + "'");
}

int run_moments(const SourceArgs& sa, std::size_t length,
                const std::vector<double>& rhos, const std::string& mode,
                bool force_guard, bool bits, const std::string& output) {
  const CategoricalSource src = sa.load();
  if (force_guard) warn_guard_off();
  const GuessProfile profile = build_profile(
      src, length, force_guard ? guard_off : composition_guard_default);
  const double scale = bits ? std::log(2.0) : 1.0;
  const double n = static_cast<double>(length);

  CsvBuilder csv({"rho", "mode", "log_moment", "exponent"});
  for (double rho : rhos) {
    const MomentResult m = guesswork_moment(profile, rho, mode_from_name(mode));
    csv.cell(rho)
        .cell(std::string(moment_mode_name(m.mode_used)))
        .cell(m.log_moment / scale)
        .cell(m.log_moment / (rho * n * scale));
    csv.end_row();
  }
  emit_text(csv.str(), output);
  return 0;
}

int run_success(const SourceArgs& sa, std::size_t length,
                std::vector<double> log_budgets, std::size_t points,
                bool force_guard, bool bits, const std::string& output) {
  const CategoricalSource src = sa.load();
  if (force_guard) warn_guard_off();
  const GuessProfile profile = build_profile(
      src, length, force_guard ? guard_off : composition_guard_default);
  if (log_budgets.empty()) {
    if (points < 2) fail(errc::out_of_range, "need at least 2 budget points");
    const double full = profile.log_total_strings();
    for (std::size_t j = 0; j < points; ++j)
      log_budgets.push_back(full * static_cast<double>(j) /
                            static_cast<double>(points - 1));
  }
  const double scale = bits ? std::log(2.0) : 1.0;
  const double n = static_cast<double>(length);

  CsvBuilder csv({"log_budget", "probability", "exponent"});
  for (double lb : log_budgets) {
    const double lp = log_success_probability(profile, lb);
    csv.cell(lb / scale).cell(std::exp(lp)).cell(-lp / (n * scale));
    csv.end_row();
  }
  emit_text(csv.str(), output);
  return 0;
}

int run_rate(const SourceArgs& sa, const std::vector<double>& gs, bool bits,
             const std::string& output) {
  const CategoricalSource src = sa.load();
  const double scale = bits ? std::log(2.0) : 1.0;

  CsvBuilder csv({"g", "alpha", "rate"});
  for (double g : gs) {
    const double r = rate_function(src, g);
    const double alpha =
        src.is_uniform() ? std::nan("") : solve_alpha_for_entropy(src, g);
    csv.cell(g / scale).cell(alpha).cell(r / scale);
    csv.end_row();
  }
  emit_text(csv.str(), output);
  return 0;
}

int run_compare(const SourceArgs& sa, const std::string& probs2, double alpha,
                bool vs_uniform, const std::vector<double>& rhos,
                const std::vector<double>& gs, bool bits,
                const std::string& output) {
  const CategoricalSource src = sa.load();
  const int picked = (probs2.empty() ? 0 : 1) + (alpha > 0.0 ? 1 : 0) +
                     (vs_uniform ? 1 : 0);
  if (picked != 1)
    fail(errc::out_of_range,
         "pick exactly one of --alpha, --uniform, --probs2");
  if (rhos.empty() && gs.empty())
    fail(errc::out_of_range, "nothing to compare; give --rhos and/or --g");
  const double scale = bits ? std::log(2.0) : 1.0;

  CsvBuilder csv({"kind", "parameter", "eta", "n2", "lhs", "rhs", "verdict"});
  const auto row = [&](const char* kind, double param,
                       const BudgetComparison& c) {
    csv.cell(std::string(kind))
        .cell(param)
        .cell(c.eta)
        .cell(c.n2_real)
        .cell(c.lhs / scale)
        .cell(c.rhs / scale)
        .cell(std::string(ordering_name(c.verdict)));
    csv.end_row();
  };

  if (!probs2.empty()) {
    const CategoricalSource other = make_source(parse_numbers(probs2));
    for (double r : rhos) row("moment", r, compare_pair_moments(src, other, r));
    for (double g : gs) row("rate", g, compare_pair_rates(src, other, g));
  } else if (vs_uniform) {
    for (double r : rhos)
      row("moment", r, compare_vs_uniform_moments(src, r));
    for (double g : gs) row("rate", g, compare_vs_uniform_rate(src, g));
  } else {
    for (double r : rhos)
      row("moment", r, compare_moment_exponents(src, alpha, r));
    for (double g : gs) row("rate", g, compare_rate_functions(src, alpha, g));
  }
  emit_text(csv.str(), output);
  return 0;
}

int run_scan_simplex(std::size_t resolution, bool summary_only,
                     bool force_guard, bool bits, const std::string& output) {
  if (force_guard) warn_guard_off();
  const SimplexScan scan = scan_simplex(
      resolution, 3, force_guard ? guard_off : 1e7);
  const double scale = bits ? std::log(2.0) : 1.0;

  if (summary_only) {
    CsvBuilder csv({"resolution", "points", "failures"});
    csv.cell(scan.resolution).cell(scan.points.size()).cell(scan.failures);
    csv.end_row();
    emit_text(csv.str(), output);
    return 0;
  }
  CsvBuilder csv({"p0", "p1", "p2", "shannon", "varentropy", "skewentropy",
                  "margin", "label"});
  for (const SimplexPoint& pt : scan.points) {
    for (double p : pt.theta.probs()) csv.cell(p);
    csv.cell(pt.report.shannon / scale)
        .cell(pt.report.varentropy / (scale * scale))
        .cell(pt.report.skewentropy / (scale * scale * scale))
        .cell(pt.report.margin / (scale * scale * scale * scale))
        .cell(std::string(sec_label_name(pt.label)));
    csv.end_row();
  }
  emit_text(csv.str(), output);
  return 0;
}

int run_table1(double budget_bits, const std::vector<std::size_t>& lengths,
               bool bits, const std::string& output) {
  const double total = budget_bits * std::log(2.0);
  const std::vector<CategoricalSource> sources =
      match_sources_to_budget(total, lengths);
  const double scale = bits ? std::log(2.0) : 1.0;

  CsvBuilder csv({"n", "phi", "per_char_entropy", "total_entropy"});
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    const double h = shannon_entropy(sources[i]);
    const double phi = *std::min_element(sources[i].probs().begin(),
                                         sources[i].probs().end());
    csv.cell(lengths[i])
        .cell(phi)
        .cell(h / scale)
        .cell(h * static_cast<double>(lengths[i]) / scale);
    csv.end_row();
  }
  emit_text(csv.str(), output);
  return 0;
}

int run_verify(const std::string& suite, const std::string& output) {
  const std::vector<VerifyRow> rows = verify_suite(suite);
  emit_text(verify_rows_json(rows), output);
  std::size_t failed = 0;
  for (const VerifyRow& r : rows)
    if (!r.pass) ++failed;
  std::fprintf(stderr, "verify %s: %zu cases, %zu failed\n", suite.c_str(),
               rows.size(), failed);
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "guesswork statistics for i.i.d. sources: entropies, tilted families, "
      "exact finite-length moments and success probabilities, rate "
      "functions, and entropy-budget comparisons"};
  app.require_subcommand(1);

  SourceArgs sa;
  std::string output;
  bool bits = false;
  bool force_guard = false;
  const auto add_common = [&](CLI::App* sub, bool with_source) {
    if (with_source) add_source_options(sub, sa);
    sub->add_option("-o,--output", output,
                    "write to this file (atomic rename) instead of stdout");
    sub->add_flag("--bits", bits, "display entropies in bits (2^k scaling)");
  };

  auto* analyze = app.add_subcommand(
      "analyze", "entropy, varentropy, skewentropy and the SEC margin");
  std::vector<double> renyi_orders;
  add_common(analyze, true);
  analyze->add_option("--renyi", renyi_orders,
                      "additional Renyi orders to report")
      ->delimiter(',');

  auto* tilt_scan = app.add_subcommand(
      "tilt-scan", "tilted family members with entropy and KL to the base");
  std::vector<double> alphas;
  add_common(tilt_scan, true);
  tilt_scan->add_option("--alphas", alphas, "tilt exponents (default 0.25..4)")
      ->delimiter(',');

  auto* moments = app.add_subcommand(
      "moments", "E[G^rho] for the length-n extension, by type classes");
  std::size_t length = 0;
  std::vector<double> rhos;
  std::string mode = "auto";
  add_common(moments, true);
  moments->add_option("-n,--length", length, "string length")->required();
  moments->add_option("--rhos", rhos, "moment orders (default 0.5,1,2,3)")
      ->delimiter(',');
  moments->add_option("--mode", mode,
                      "auto|enumerated|integer|integral");
  moments->add_flag("--force-guard", force_guard,
                    "disable the composition-count resource guard");

  auto* success = app.add_subcommand(
      "success", "P[G <= e^b] against a guesswork budget");
  std::vector<double> log_budgets;
  std::size_t points = 20;
  add_common(success, true);
  success->add_option("-n,--length", length, "string length")->required();
  success->add_option("--log-budgets", log_budgets,
                      "log guess counts, nats (default: grid over the range)")
      ->delimiter(',');
  success->add_option("--points", points, "grid size when no list is given");
  success->add_flag("--force-guard", force_guard,
                    "disable the composition-count resource guard");

  auto* rate = app.add_subcommand(
      "rate", "large-deviations rate of P[G <= e^{gn}]");
  std::vector<double> gs;
  add_common(rate, true);
  rate->add_option("--g", gs, "per-character budgets, nats")
      ->delimiter(',')
      ->required();

  auto* compare = app.add_subcommand(
      "compare", "budget-matched exponent comparison of two sources");
  std::string probs2;
  double alpha = 0.0;
  bool vs_uniform = false;
  add_common(compare, true);
  compare->add_option("--alpha", alpha,
                      "compare against the tilted member tau(theta, alpha)");
  compare->add_flag("--uniform", vs_uniform,
                    "compare against the uniform source on the same alphabet");
  compare->add_option("--probs2", probs2, "compare against this source");
  compare->add_option("--rhos", rhos, "moment orders to compare")
      ->delimiter(',');
  compare->add_option("--g", gs, "per-character budgets to compare")
      ->delimiter(',');

  auto* scan = app.add_subcommand(
      "scan-simplex", "SEC margins on the interior ternary lattice");
  std::size_t resolution = 100;
  bool summary_only = false;
  add_common(scan, false);
  scan->add_option("-r,--resolution", resolution, "lattice denominator")
      ->required();
  scan->add_flag("--summary", summary_only, "emit counts only");
  scan->add_flag("--force-guard", force_guard,
                 "disable the lattice-size resource guard");

  auto* table1 = app.add_subcommand(
      "table1", "binary sources matched to a fixed total entropy budget");
  double budget_bits = 9.0;
  std::vector<std::size_t> lengths{9, 10, 12, 15, 18, 22};
  add_common(table1, false);
  table1->add_option("--budget-bits", budget_bits, "total entropy, bits");
  table1->add_option("--lengths", lengths, "string lengths")->delimiter(',');

  auto* verify = app.add_subcommand(
      "verify", "self-check suites, JSON report");
  std::string suite = "all";
  add_common(verify, false);
  verify->add_option("--suite", suite,
                     "all|derivatives|theorems|oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return run_analyze(sa, renyi_orders, bits, output);
    if (*tilt_scan) return run_tilt_scan(sa, alphas, bits, output);
    if (*moments)
      return run_moments(sa, length, rhos.empty()
                                         ? std::vector<double>{0.5, 1, 2, 3}
                                         : rhos,
                         mode, force_guard, bits, output);
    if (*success)
      return run_success(sa, length, log_budgets, points, force_guard, bits,
                         output);
    if (*rate) return run_rate(sa, gs, bits, output);
    if (*compare)
      return run_compare(sa, probs2, alpha, vs_uniform, rhos, gs, bits,
                         output);
    if (*scan)
      return run_scan_simplex(resolution, summary_only, force_guard, bits,
                              output);
    if (*table1) return run_table1(budget_bits, lengths, bits, output);
    if (*verify) return run_verify(suite, output);
  } catch (const error& e) {
    std::fprintf(stderr, "error: %s [%s]\n", e.what(), errc_name(e.code()));
    return is_resource_error(e.code()) ? 3 : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
