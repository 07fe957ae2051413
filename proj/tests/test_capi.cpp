#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "skexpand.h"

namespace {

struct Expansion {
  skx_expansion* ptr = nullptr;
  ~Expansion() { skx_expansion_free(ptr); }
};

std::string coefficient(const skx_expansion* e, int j, int format) {
  char* raw = nullptr;
  REQUIRE(skx_expansion_coefficient(e, j, format, &raw) == SKX_OK);
  std::string out = raw;
  skx_string_free(raw);
  return out;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(skx_version()) == "1.0.0");
  CHECK(std::string(skx_status_name(SKX_OK)) == "ok");
  CHECK(std::string(skx_status_name(SKX_ERR_BUDGET)) == "budget exhausted");
}

TEST_CASE("expansion handle lifecycle and known coefficients") {
  Expansion e;
  REQUIRE(skx_expansion_compute(2, 0, &e.ptr) == SKX_OK);
  CHECK(skx_expansion_order(e.ptr) == 2);
  CHECK(coefficient(e.ptr, 1, SKX_FORMAT_PLAIN) == "0/1 1/1 / 1/1 -1/1");
  CHECK(coefficient(e.ptr, 2, SKX_FORMAT_PLAIN) == "0/1 -1/1 -1/1 / 1/1 -4/1 6/1 -4/1 1/1");
  CHECK(coefficient(e.ptr, 1, SKX_FORMAT_LATEX) == "\\frac{\\beta^{2}}{1 - \\beta^{2}}");

  skx_expansion_stats stats{};
  REQUIRE(skx_expansion_get_stats(e.ptr, &stats) == SKX_OK);
  CHECK(stats.pole_structure_ok == 1);
  CHECK(stats.parity_survivors > 0);
  CHECK(stats.parity_survivors < stats.sequences_enumerated);

  double value = 0;
  REQUIRE(skx_expansion_evaluate(e.ptr, 0.0, 10, &value) == SKX_OK);
  CHECK(value == 0.1);
  REQUIRE(skx_expansion_evaluate(e.ptr, 0.3, 100, &value) == SKX_OK);
  CHECK(value == doctest::Approx(0.01 / 0.91 - 0.09 * 1.09 / std::pow(0.91, 4) / 1e4));
}

TEST_CASE("error codes: invalid input, budget, bad evaluate") {
  skx_expansion* raw = nullptr;
  CHECK(skx_expansion_compute(0, 0, &raw) == SKX_ERR_INVALID);
  CHECK(raw == nullptr);
  CHECK(std::string(skx_last_error()).size() > 0);
  CHECK(skx_expansion_compute(2, 10, &raw) == SKX_ERR_BUDGET);

  Expansion e;
  REQUIRE(skx_expansion_compute(1, 0, &e.ptr) == SKX_OK);
  double value = 0;
  CHECK(skx_expansion_evaluate(e.ptr, 1.0, 10, &value) == SKX_ERR_INVALID);
  CHECK(skx_expansion_evaluate(e.ptr, 0.3, 0, &value) == SKX_ERR_INVALID);
  char* text = nullptr;
  CHECK(skx_expansion_coefficient(e.ptr, 5, SKX_FORMAT_PLAIN, &text) == SKX_ERR_INVALID);
}

TEST_CASE("oracle calls through the C surface") {
  skx_estimate est{};
  REQUIRE(skx_mc_overlap_second_moment(8, 0.0, 1, 5, 1, &est) == SKX_OK);
  CHECK(est.value == 0.125);
  CHECK(est.std_error == 0.0);
  CHECK(est.samples == 1);

  REQUIRE(skx_mc_cavity_second_moment(8, 0.0, 2, 5, 1, &est) == SKX_OK);
  CHECK(est.value == 7.0 / 64.0);

  CHECK(skx_mc_overlap_second_moment(25, 0.3, 1, 5, 1, &est) == SKX_ERR_RESOURCE);

  double lhs = 0, rhs = 0;
  REQUIRE(skx_quad_derivative_check(3, 0.2, 0.5, 20, &lhs, &rhs) == SKX_OK);
  CHECK(std::abs(lhs - rhs) < 1e-5);

  double worst = 0;
  REQUIRE(skx_quad_parity_max_abs(2, 0.3, 12, &worst) == SKX_OK);
  CHECK(worst < 1e-9);
}

TEST_CASE("selftest pass and injected-fault failure") {
  int32_t ok = -1;
  char* report = nullptr;
  REQUIRE(skx_selftest(0, SKX_FAULT_NONE, &ok, &report) == SKX_OK);
  CHECK(ok == 1);
  CHECK(std::string(report).find("FAIL") == std::string::npos);
  skx_string_free(report);

  REQUIRE(skx_selftest(0, SKX_FAULT_RHO_SIGN, &ok, &report) == SKX_OK);
  CHECK(ok == 0);
  std::string text = report;
  skx_string_free(report);
  CHECK(text.find("FAIL") != std::string::npos);
  CHECK(text.find("path=") != std::string::npos);  // offending path is printed

  CHECK(skx_selftest(1, SKX_FAULT_NONE, &ok, nullptr) == SKX_ERR_BUDGET);
}
