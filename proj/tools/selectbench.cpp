// Benchmark and validation CLI for the selection library.
//
//   selectbench run --family random --n 1000000 --k median --trials 20 \
//       --seed 1 --format table
//
// Exit codes: 0 success, 1 usage error, 2 oracle mismatch or runtime
// failure, 3 bound violation under --validate-bounds.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "selectlib/bench.hpp"

namespace {

int run_command(const std::string& family_s, long n, const std::string& k_s,
                long trials, std::uint64_t seed, const std::string& variant_s,
                const std::string& gap_s, double alpha, double beta, long r2,
                const std::string& eta_bar_s, long ncut, bool no_randomize,
                const std::string& format_s, bool trace, bool validate,
                bool no_time, const std::string& out_path) {
  using namespace selectlib;

  Family family;
  if (family_s == "random") family = Family::Random;
  else if (family_s == "onezero") family = Family::Onezero;
  else if (family_s == "sorted") family = Family::Sorted;
  else if (family_s == "organpipe") family = Family::Organpipe;
  else { std::cerr << "unknown family: " << family_s << "\n"; return 1; }

  Params params;
  params.alpha = alpha;
  params.beta = beta;
  params.r2 = r2;
  params.n_cut = ncut;
  params.randomized_sampling = !no_randomize;

  if (gap_s == "sqrt-n") params.gap_mode = GapMode::SqrtN;
  else if (gap_s == "sqrt-s") params.gap_mode = GapMode::SqrtS;
  else if (gap_s == "knuth") params.gap_mode = GapMode::Knuth;
  else { std::cerr << "unknown gap mode: " << gap_s << "\n"; return 1; }

  if (variant_s == "recursive") params.variant = Variant::Recursive;
  else if (variant_s == "nonrec-pick") params.variant = Variant::NonrecPick;
  else if (variant_s == "nonrec-sort") params.variant = Variant::NonrecSort;
  else if (variant_s == "quickselect") params.variant = Variant::Quickselect;
  else { std::cerr << "unknown variant: " << variant_s << "\n"; return 1; }

  if (eta_bar_s == "auto") {
    params.eta_bar = 2.0 / static_cast<double>(r2);
    if (!(params.eta_bar > 1.0 / static_cast<double>(r2)))
      params.eta_bar = 1.0;  // r2 < 2 is rejected later anyway
  } else {
    try {
      params.eta_bar = std::stod(eta_bar_s);
    } catch (const std::exception&) {
      std::cerr << "bad --eta-bar value: " << eta_bar_s << "\n";
      return 1;
    }
  }

  long k;
  if (k_s == "median") {
    k = median_rank(n);
  } else {
    try {
      k = std::stol(k_s);
    } catch (const std::exception&) {
      std::cerr << "bad --k value: " << k_s << "\n";
      return 1;
    }
  }
  if (n < 1 || k < 1 || k > n) {
    std::cerr << "need 1 <= k <= n\n";
    return 1;
  }

  const std::vector<std::string> violations = validate_params(params);
  if (!violations.empty()) {
    for (const std::string& v : violations) std::cerr << v << "\n";
    return 1;
  }

  TableFormat format;
  if (format_s == "csv") format = TableFormat::Csv;
  else if (format_s == "table") format = TableFormat::Table;
  else { std::cerr << "unknown format: " << format_s << "\n"; return 1; }

  std::string output;
  int rc = 0;
  try {
    std::vector<std::vector<IterationTrace>> traces;
    TrialReport report =
        run_experiment(family, n, k, params, trials, seed, threads_from_env(),
                       trace ? &traces : nullptr);
    output = emit_table({report}, format, !no_time);

    if (trace && format == TableFormat::Table) {
      char buf[256];
      for (std::size_t t = 0; t < traces.size(); ++t) {
        for (const IterationTrace& it : traces[t]) {
          std::snprintf(buf, sizeof buf,
                        "trace trial=%zu l=%d s=%ld s+=%ld g=%.3f i=(%ld,%ld) "
                        "i+=(%ld,%ld) j=(%ld,%ld) c=%llu shat=%ld sound=%d\n",
                        t, it.level, it.s_l, it.s_next, it.g, it.i_u, it.i_v,
                        it.i_u_plus, it.i_v_plus, it.j_u, it.j_v,
                        static_cast<unsigned long long>(it.c_l), it.s_hat,
                        it.zones_sound ? 1 : 0);
          output += buf;
        }
      }
    }

    if (validate) {
      const BoundReport bounds =
          validate_bounds(family, n, k, params, trials, seed);
      char buf[256];
      for (const LevelBounds& lb : bounds.levels) {
        for (const BoundCheck& c : lb.checks) {
          std::snprintf(buf, sizeof buf,
                        "bound l=%d s=%ld %-22s freq=%.5f bound=%.5f "
                        "applicable=%ld %s\n",
                        lb.level, lb.s_l, c.name.c_str(), c.frequency(),
                        c.bound, c.applicable, c.pass ? "ok" : "VIOLATED");
          output += buf;
        }
      }
      if (!bounds.all_pass()) rc = 3;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (out_path.empty()) {
    std::cout << output;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open " << out_path << "\n";
      return 1;
    }
    out << output;
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"selection benchmark and validation harness"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "run seeded selection trials");
  std::string family = "random";
  long n = 1000000;
  std::string k = "median";
  long trials = 20;
  std::uint64_t seed = 1;
  std::string variant = "recursive";
  std::string gap = "sqrt-s";
  double alpha = 0.5;
  double beta = 0.3;
  long r2 = 144;
  std::string eta_bar = "auto";
  long ncut = 600;
  bool no_randomize = false;
  std::string format = "table";
  bool trace = false;
  bool validate = false;
  bool no_time = false;
  std::string out_path;

  run->add_option("--family", family,
                  "input family: random|onezero|sorted|organpipe");
  run->add_option("--n", n, "input size");
  run->add_option("--k", k, "target rank (integer) or 'median'");
  run->add_option("--trials", trials, "number of seeded trials");
  run->add_option("--seed", seed, "master seed");
  run->add_option("--variant", variant,
                  "recursive|nonrec-pick|nonrec-sort|quickselect");
  run->add_option("--gap", gap, "gap rule: sqrt-n|sqrt-s|knuth");
  run->add_option("--alpha", alpha, "initial sample exponent, in (0, 1/2]");
  run->add_option("--beta", beta, "gap coefficient");
  run->add_option("--r2", r2, "sample growth factor r^2");
  run->add_option("--eta-bar", eta_bar,
                  "capped-schedule cap in (1/r2, 1], or 'auto' (= 2/r2)");
  run->add_option("--ncut", ncut, "small-file cutoff");
  run->add_flag("--no-randomize", no_randomize,
                "use prefix samples instead of random ones");
  run->add_option("--format", format, "output format: csv|table");
  run->add_flag("--trace", trace, "record per-iteration traces");
  run->add_flag("--validate-bounds", validate,
                "check traced event frequencies against their bounds");
  run->add_flag("--no-time", no_time, "zero the timing columns");
  run->add_option("--out", out_path, "write output to a file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  return run_command(family, n, k, trials, seed, variant, gap, alpha, beta, r2,
                     eta_bar, ncut, no_randomize, format, trace, validate,
                     no_time, out_path);
}
