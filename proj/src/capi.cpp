#include "skexpand.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "skx/errors.hpp"
#include "skx/lambda_engine.hpp"
#include "skx/selftest.hpp"
#include "skx/sk_oracle.hpp"

struct skx_expansion {
  skx::ExpansionResult result;
};

namespace {

thread_local std::string g_last_error;

constexpr uint64_t kDefaultBudget = 200'000'000;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

skx_status fail(skx_status code, const char* what) {
  g_last_error = what;
  return code;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
skx_status guarded(Fn&& fn) {
  try {
    fn();
    return SKX_OK;
  } catch (const skx::contract_violation& e) {
    return fail(SKX_ERR_INVALID, e.what());
  } catch (const skx::budget_exhausted& e) {
    return fail(SKX_ERR_BUDGET, e.what());
  } catch (const skx::pole_error& e) {
    return fail(SKX_ERR_POLE, e.what());
  } catch (const skx::resource_error& e) {
    return fail(SKX_ERR_RESOURCE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SKX_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(SKX_ERR_INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

const char* skx_version(void) { return "1.0.0"; }

const char* skx_status_name(skx_status status) {
  switch (status) {
    case SKX_OK: return "ok";
    case SKX_ERR_INVALID: return "invalid argument";
    case SKX_ERR_BUDGET: return "budget exhausted";
    case SKX_ERR_POLE: return "pole";
    case SKX_ERR_RESOURCE: return "resource cap exceeded";
    case SKX_ERR_INTERNAL: return "internal error";
    default: return "unknown status";
  }
}

const char* skx_last_error(void) { return g_last_error.c_str(); }

void skx_string_free(char* s) { std::free(s); }

skx_status skx_expansion_compute(int32_t order, uint64_t budget, skx_expansion** out) {
  if (!out) return fail(SKX_ERR_INVALID, "out pointer is null");
  *out = nullptr;
  return guarded([&] {
    skx::WorkBudget work(budget == 0 ? kDefaultBudget : budget);
    auto result = skx::expansion_coefficients(order, work);
    *out = new skx_expansion{std::move(result)};
  });
}

void skx_expansion_free(skx_expansion* e) { delete e; }

int32_t skx_expansion_order(const skx_expansion* e) { return e ? e->result.order : 0; }

skx_status skx_expansion_coefficient(const skx_expansion* e, int32_t j, int32_t format,
                                     char** out) {
  if (!e || !out) return fail(SKX_ERR_INVALID, "null argument");
  *out = nullptr;
  if (j < 1 || j > e->result.order) return fail(SKX_ERR_INVALID, "coefficient index out of range");
  return guarded([&] {
    const skx::RationalFunction& c = e->result.c(j);
    std::string text;
    switch (format) {
      case SKX_FORMAT_PLAIN: text = skx::to_plain_text(c); break;
      case SKX_FORMAT_LATEX: text = skx::to_latex(c); break;
      case SKX_FORMAT_PRETTY: text = skx::to_pretty(c); break;
      default: throw skx::contract_violation("unknown format");
    }
    *out = dup_string(text);
    if (!*out) throw std::bad_alloc();
  });
}

skx_status skx_expansion_evaluate(const skx_expansion* e, double beta, int32_t n_sites,
                                  double* out) {
  if (!e || !out) return fail(SKX_ERR_INVALID, "null argument");
  return guarded([&] { *out = skx::evaluate_truncated(e->result, beta, n_sites); });
}

skx_status skx_expansion_get_stats(const skx_expansion* e, skx_expansion_stats* out) {
  if (!e || !out) return fail(SKX_ERR_INVALID, "null argument");
  out->sequences_enumerated = e->result.stats.sequences_enumerated;
  out->parity_survivors = e->result.stats.parity_survivors;
  out->lambda_entries = e->result.stats.lambda_entries;
  out->budget_used = e->result.stats.budget_used;
  out->wall_seconds = e->result.stats.wall_seconds;
  out->pole_structure_ok = e->result.pole_check_failures.empty() ? 1 : 0;
  return SKX_OK;
}

skx_status skx_mc_overlap_second_moment(int32_t n_sites, double beta, uint64_t samples,
                                        uint64_t seed, int32_t workers, skx_estimate* out) {
  if (!out) return fail(SKX_ERR_INVALID, "null argument");
  return guarded([&] {
    auto est = skx::nu_r2_mc(n_sites, beta, samples, seed, workers);
    *out = skx_estimate{est.value, est.std_error, est.samples};
  });
}

skx_status skx_mc_cavity_second_moment(int32_t n_sites, double beta, uint64_t samples,
                                       uint64_t seed, int32_t workers, skx_estimate* out) {
  if (!out) return fail(SKX_ERR_INVALID, "null argument");
  return guarded([&] {
    auto est = skx::nu0_r_minus_sq_mc(n_sites, beta, samples, seed, workers);
    *out = skx_estimate{est.value, est.std_error, est.samples};
  });
}

skx_status skx_quad_derivative_check(int32_t n_sites, double beta, double t, int32_t nodes,
                                     double* lhs, double* rhs) {
  if (!lhs || !rhs) return fail(SKX_ERR_INVALID, "null argument");
  return guarded([&] {
    auto [l, r] = skx::derivative_check(n_sites, beta, t, nodes);
    *lhs = l;
    *rhs = r;
  });
}

skx_status skx_quad_parity_max_abs(int32_t n_sites, double beta, int32_t nodes, double* out) {
  if (!out) return fail(SKX_ERR_INVALID, "null argument");
  return guarded([&] { *out = skx::parity_vanishing_max_abs(n_sites, beta, nodes); });
}

skx_status skx_selftest(uint64_t budget, int32_t fault, int32_t* ok, char** report) {
  if (!ok) return fail(SKX_ERR_INVALID, "null argument");
  if (report) *report = nullptr;
  return guarded([&] {
    skx::SelftestFault f = skx::SelftestFault::kNone;
    if (fault == SKX_FAULT_RHO_SIGN) f = skx::SelftestFault::kRhoSign;
    else if (fault != SKX_FAULT_NONE) throw skx::contract_violation("unknown fault id");
    auto result = skx::run_selftest(budget == 0 ? 50'000'000 : budget, f);
    *ok = result.ok ? 1 : 0;
    if (report) {
      *report = dup_string(result.text);
      if (!*report) throw std::bad_alloc();
    }
  });
}

}  // extern "C"
