// skexpand — command-line front end of libskexpand.
//
// Subcommands:
//   expand    compute the exact expansion coefficients c_1..c_k0
//   eval      evaluate the truncated expansion at given beta and N
//   verify    cross-check the expansion against the numerical oracles
//   selftest  fast invariant suite
//
// Exit codes: 0 success, 2 invalid input, 3 work budget exhausted,
// 4 verification failed, 1 other failure. Every flag can also be set by an
// SKX_*-prefixed environment variable (e.g. SKX_ORDER for --order).

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "skexpand.h"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;
constexpr int kExitVerifyFailed = 4;

int exit_code_for(skx_status status) {
  switch (status) {
    case SKX_OK: return kExitOk;
    case SKX_ERR_INVALID: return kExitInvalid;
    case SKX_ERR_BUDGET: return kExitBudget;
    default: return kExitFailure;
  }
}

int report_error(const char* where, skx_status status) {
  std::cerr << "skexpand: " << where << ": " << skx_status_name(status) << " ("
            << skx_last_error() << ")\n";
  return exit_code_for(status);
}

struct ExpansionHandle {
  skx_expansion* ptr = nullptr;
  ~ExpansionHandle() { skx_expansion_free(ptr); }
};

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { skx_string_free(ptr); }
};

// Output sink: stdout by default, --out redirects.
struct Sink {
  std::ofstream file;
  std::ostream* out = &std::cout;

  bool open(const std::string& path) {
    if (path.empty()) return true;
    file.open(path);
    if (!file) {
      std::cerr << "skexpand: cannot open output file " << path << "\n";
      return false;
    }
    out = &file;
    return true;
  }
  std::ostream& stream() { return *out; }
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct CommonOpts {
  int order = 2;
  std::vector<double> betas;
  std::vector<int> sites;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  std::uint64_t budget = 0;  // 0 = library default
  int workers = 0;           // 0 = hardware default
  int nodes = 30;
  double c_rem = 10.0;
  std::string format = "text";
  std::string out_path;
};

int resolved_workers(int workers) {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

int cmd_expand(const CommonOpts& opt) {
  Sink sink;
  if (!sink.open(opt.out_path)) return kExitFailure;

  ExpansionHandle exp;
  if (skx_status st = skx_expansion_compute(opt.order, opt.budget, &exp.ptr); st != SKX_OK)
    return report_error("expand", st);

  skx_expansion_stats stats{};
  skx_expansion_get_stats(exp.ptr, &stats);
  std::cerr << "skexpand: expand order " << opt.order << " took " << format_double(stats.wall_seconds)
            << " s, " << stats.budget_used << " budget units\n";
  if (!stats.pole_structure_ok)
    std::cerr << "skexpand: warning: some denominator is not a pure power of 1-beta^2\n";

  const int32_t fmt = opt.format == "latex" ? SKX_FORMAT_LATEX : SKX_FORMAT_PLAIN;
  if (opt.format == "records") {
    for (int j = 1; j <= opt.order; ++j) {
      OwnedString text;
      if (skx_status st = skx_expansion_coefficient(exp.ptr, j, SKX_FORMAT_PLAIN, &text.ptr);
          st != SKX_OK)
        return report_error("expand", st);
      ordered_json rec;
      rec["record"] = "coefficient";
      rec["order"] = opt.order;
      rec["j"] = j;
      rec["c"] = text.ptr;
      sink.stream() << rec.dump() << "\n";
    }
    ordered_json meta;
    meta["record"] = "expand-meta";
    meta["order"] = opt.order;
    meta["sequences_enumerated"] = stats.sequences_enumerated;
    meta["parity_survivors"] = stats.parity_survivors;
    meta["lambda_entries"] = stats.lambda_entries;
    meta["pole_structure_ok"] = stats.pole_structure_ok != 0;
    sink.stream() << meta.dump() << "\n";
  } else {
    sink.stream() << "order: " << opt.order << "\n"
                  << "sequences_enumerated: " << stats.sequences_enumerated << "\n"
                  << "parity_survivors: " << stats.parity_survivors << "\n"
                  << "lambda_entries: " << stats.lambda_entries << "\n"
                  << "pole_structure_ok: " << (stats.pole_structure_ok ? "yes" : "no") << "\n";
    for (int j = 1; j <= opt.order; ++j) {
      OwnedString text;
      if (skx_status st = skx_expansion_coefficient(exp.ptr, j, fmt, &text.ptr); st != SKX_OK)
        return report_error("expand", st);
      sink.stream() << "c_" << j << " = " << text.ptr << "\n";
    }
  }
  return kExitOk;
}

int cmd_eval(const CommonOpts& opt) {
  Sink sink;
  if (!sink.open(opt.out_path)) return kExitFailure;

  ExpansionHandle exp;
  if (skx_status st = skx_expansion_compute(opt.order, opt.budget, &exp.ptr); st != SKX_OK)
    return report_error("eval", st);

  for (double beta : opt.betas) {
    for (int n : opt.sites) {
      double value = 0;
      if (skx_status st = skx_expansion_evaluate(exp.ptr, beta, n, &value); st != SKX_OK)
        return report_error("eval", st);
      if (opt.format == "records") {
        ordered_json rec;
        rec["record"] = "eval";
        rec["order"] = opt.order;
        rec["beta"] = beta;
        rec["N"] = n;
        rec["value"] = value;
        sink.stream() << rec.dump() << "\n";
      } else {
        sink.stream() << "beta=" << format_double(beta) << " N=" << n << " order=" << opt.order
                      << " value=" << format_double(value) << "\n";
      }
    }
  }
  return kExitOk;
}

struct VerifyRow {
  std::string check;
  int n = 0;
  double beta = 0;
  double t = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string estimator;
  double value = 0;
  double std_error = 0;
  double reference = 0;
  double tolerance = 0;
  bool pass = false;
};

void print_verify_row(Sink& sink, const std::string& format, const VerifyRow& row) {
  const double deviation = std::abs(row.value - row.reference);
  if (format == "records") {
    ordered_json rec;
    rec["record"] = "verify";
    rec["check"] = row.check;
    rec["N"] = row.n;
    rec["beta"] = row.beta;
    rec["t"] = row.t;
    rec["samples"] = row.samples;
    rec["seed"] = row.seed;
    rec["estimator"] = row.estimator;
    rec["value"] = row.value;
    rec["std_error"] = row.std_error;
    rec["reference"] = row.reference;
    rec["tolerance"] = row.tolerance;
    rec["deviation"] = deviation;
    rec["pass"] = row.pass;
    sink.stream() << rec.dump() << "\n";
  } else {
    sink.stream() << (row.pass ? "PASS" : "FAIL") << " " << row.check << " N=" << row.n
                  << " beta=" << format_double(row.beta) << " t=" << format_double(row.t)
                  << " estimator=" << row.estimator << " value=" << format_double(row.value)
                  << " reference=" << format_double(row.reference)
                  << " deviation=" << format_double(deviation)
                  << " tolerance=" << format_double(row.tolerance)
                  << " std_error=" << format_double(row.std_error) << "\n";
  }
}

int cmd_verify(const CommonOpts& opt) {
  Sink sink;
  if (!sink.open(opt.out_path)) return kExitFailure;

  for (double beta : opt.betas) {
    if (!(beta >= 0.0 && beta < 1.0)) {
      std::cerr << "skexpand: verify: beta must lie in [0, 1), got " << beta << "\n";
      return kExitInvalid;
    }
  }

  ExpansionHandle exp;
  if (skx_status st = skx_expansion_compute(opt.order, opt.budget, &exp.ptr); st != SKX_OK)
    return report_error("verify", st);

  const int workers = resolved_workers(opt.workers);
  bool all_pass = true;
  auto emit = [&](VerifyRow row) {
    all_pass = all_pass && row.pass;
    print_verify_row(sink, opt.format, row);
  };

  // beta = 0: the estimator must hit 1/N exactly, with zero spread.
  for (int n : opt.sites) {
    skx_estimate est{};
    if (skx_status st = skx_mc_overlap_second_moment(n, 0.0, 1, opt.seed, 1, &est); st != SKX_OK)
      return report_error("verify", st);
    double eval0 = 0;
    if (skx_status st = skx_expansion_evaluate(exp.ptr, 0.0, n, &eval0); st != SKX_OK)
      return report_error("verify", st);
    VerifyRow row;
    row.check = "beta-zero-exact";
    row.n = n;
    row.t = 1;
    row.samples = 1;
    row.seed = opt.seed;
    row.estimator = "nu_r2_mc";
    row.value = est.value;
    row.std_error = est.std_error;
    row.reference = 1.0 / n;
    row.tolerance = 0;
    row.pass = est.value == 1.0 / n && est.std_error == 0.0 && eval0 == 1.0 / n;
    emit(row);
  }

  for (double beta : opt.betas) {
    if (beta == 0.0) continue;
    // Simulation vs truncated expansion.
    for (int n : opt.sites) {
      skx_estimate est{};
      if (skx_status st =
              skx_mc_overlap_second_moment(n, beta, opt.samples, opt.seed, workers, &est);
          st != SKX_OK)
        return report_error("verify", st);
      double predicted = 0;
      if (skx_status st = skx_expansion_evaluate(exp.ptr, beta, n, &predicted); st != SKX_OK)
        return report_error("verify", st);
      VerifyRow row;
      row.check = "expansion-vs-simulation";
      row.n = n;
      row.beta = beta;
      row.t = 1;
      row.samples = opt.samples;
      row.seed = opt.seed;
      row.estimator = "nu_r2_mc";
      row.value = est.value;
      row.std_error = est.std_error;
      row.reference = predicted;
      row.tolerance =
          3.0 * est.std_error + opt.c_rem * std::pow(n, -(opt.order + 0.5));
      row.pass = std::abs(est.value - predicted) <= row.tolerance;
      emit(row);
    }
    // Cavity base case nu_0((R^-)^2) ~ 1/(N(1-beta^2)).
    for (int n : opt.sites) {
      skx_estimate est{};
      if (skx_status st =
              skx_mc_cavity_second_moment(n, beta, opt.samples, opt.seed, workers, &est);
          st != SKX_OK)
        return report_error("verify", st);
      VerifyRow row;
      row.check = "cavity-base-case";
      row.n = n;
      row.beta = beta;
      row.t = 0;
      row.samples = opt.samples;
      row.seed = opt.seed;
      row.estimator = "nu0_r_minus_sq_mc";
      row.value = est.value;
      row.std_error = est.std_error;
      row.reference = 1.0 / (n * (1.0 - beta * beta));
      row.tolerance = 3.0 * est.std_error + opt.c_rem * std::pow(n, -1.5);
      row.pass = std::abs(est.value - row.reference) <= row.tolerance;
      emit(row);
    }
    // Cavity derivative identity at N = 3.
    for (double t : {0.0, 0.5}) {
      double lhs = 0, rhs = 0;
      if (skx_status st = skx_quad_derivative_check(3, beta, t, opt.nodes, &lhs, &rhs);
          st != SKX_OK)
        return report_error("verify", st);
      VerifyRow row;
      row.check = "cavity-derivative";
      row.n = 3;
      row.beta = beta;
      row.t = t;
      row.estimator = "nu_t_quadrature";
      row.value = lhs;
      row.reference = rhs;
      row.tolerance = 1e-6;
      row.pass = std::abs(lhs - rhs) <= row.tolerance;
      emit(row);
    }
    // Odd cavity monomials vanish at t = 0.
    for (int n : {2, 3}) {
      double worst = 0;
      if (skx_status st = skx_quad_parity_max_abs(n, beta, opt.nodes, &worst); st != SKX_OK)
        return report_error("verify", st);
      VerifyRow row;
      row.check = "parity-vanishing";
      row.n = n;
      row.beta = beta;
      row.t = 0;
      row.estimator = "nu_t_quadrature";
      row.value = worst;
      row.reference = 0;
      row.tolerance = 1e-8;
      row.pass = worst <= row.tolerance;
      emit(row);
    }
  }

  if (opt.format != "records")
    sink.stream() << (all_pass ? "verify: all checks passed" : "verify: FAILURES above") << "\n";
  return all_pass ? kExitOk : kExitVerifyFailed;
}

int cmd_selftest(const CommonOpts& opt, const std::string& fault) {
  int32_t fault_id = SKX_FAULT_NONE;
  if (fault == "rho-sign") fault_id = SKX_FAULT_RHO_SIGN;
  else if (!fault.empty()) {
    std::cerr << "skexpand: unknown fault '" << fault << "'\n";
    return kExitInvalid;
  }
  int32_t ok = 0;
  OwnedString report;
  if (skx_status st = skx_selftest(opt.budget, fault_id, &ok, &report.ptr); st != SKX_OK)
    return report_error("selftest", st);
  std::cout << report.ptr;
  std::cout << (ok ? "selftest: pass" : "selftest: FAIL") << "\n";
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact 1/N expansion of the SK overlap second moment"};
  app.require_subcommand(1);

  CommonOpts opt;
  std::string fault;

  auto add_common = [&](CLI::App* cmd, bool with_order) {
    if (with_order)
      cmd->add_option("--order", opt.order, "truncation order k0")
          ->envname("SKX_ORDER")
          ->check(CLI::PositiveNumber);
    cmd->add_option("--budget", opt.budget, "work budget (sequences visited; 0 = default)")
        ->envname("SKX_BUDGET");
    cmd->add_option("--format", opt.format, "output format: text, records or latex")
        ->envname("SKX_FORMAT")
        ->check(CLI::IsMember({"text", "records", "latex"}));
    cmd->add_option("--out", opt.out_path, "write output to this file")->envname("SKX_OUT");
  };

  CLI::App* expand = app.add_subcommand("expand", "compute exact expansion coefficients");
  add_common(expand, true);

  CLI::App* eval = app.add_subcommand("eval", "evaluate the truncated expansion");
  add_common(eval, true);
  eval->add_option("--beta", opt.betas, "inverse-temperature-like parameter in [0,1)")
      ->envname("SKX_BETA");
  eval->add_option("--n", opt.sites, "system size N")->envname("SKX_N");

  CLI::App* verify = app.add_subcommand("verify", "compare expansion against oracles");
  add_common(verify, true);
  verify->add_option("--beta", opt.betas, "beta values to check")->envname("SKX_BETA");
  verify->add_option("--n", opt.sites, "system sizes for the Monte Carlo checks")
      ->envname("SKX_N");
  verify->add_option("--samples", opt.samples, "disorder samples per estimate")
      ->envname("SKX_SAMPLES");
  verify->add_option("--seed", opt.seed, "base seed for disorder streams")->envname("SKX_SEED");
  verify->add_option("--workers", opt.workers, "worker threads (0 = hardware)")
      ->envname("SKX_WORKERS");
  verify->add_option("--nodes", opt.nodes, "Gauss-Hermite nodes per dimension")
      ->envname("SKX_NODES");
  verify->add_option("--c-rem", opt.c_rem, "remainder constant in tolerance bands")
      ->envname("SKX_C_REM");

  CLI::App* selftest = app.add_subcommand("selftest", "run the fast invariant suite");
  add_common(selftest, false);
  selftest->add_option("--inject-fault", fault, "negative control (rho-sign)")
      ->envname("SKX_INJECT_FAULT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  if (opt.betas.empty()) opt.betas = {0.3};
  if (opt.sites.empty()) opt.sites = {10, 12};

  if (expand->parsed()) return cmd_expand(opt);
  if (eval->parsed()) return cmd_eval(opt);
  if (verify->parsed()) return cmd_verify(opt);
  if (selftest->parsed()) return cmd_selftest(opt, fault);
  return kExitInvalid;
}
