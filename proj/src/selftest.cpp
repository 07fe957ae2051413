#include "skx/selftest.hpp"

#include <random>
#include <sstream>

#include "skx/errors.hpp"
#include "skx/lambda_engine.hpp"
#include "skx/sequences.hpp"

namespace skx {

namespace {

struct Runner {
  WorkBudget budget;
  std::ostringstream out;
  bool ok = true;

  explicit Runner(std::uint64_t cap) : budget(cap) {}

  void check(bool condition, const std::string& name, const std::string& detail = "") {
    out << (condition ? "ok   " : "FAIL ") << name;
    if (!condition && !detail.empty()) out << "  [" << detail << "]";
    out << '\n';
    ok = ok && condition;
  }
};

IndexSequence random_sequence(std::mt19937& rng, int len) {
  std::uniform_int_distribution<int> idx(1, 8);
  IndexSequence s;
  for (int i = 0; i < len; ++i) {
    int a = idx(rng), b = idx(rng);
    while (b == a) b = idx(rng);
    s.pairs.push_back(a < b ? ReplicaPair{a, b} : ReplicaPair{b, a});
  }
  return s;
}

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

SelftestReport run_selftest(std::uint64_t budget_cap, SelftestFault fault) {
  Runner r(budget_cap);
  const bool rho_fault = fault == SelftestFault::kRhoSign;
  std::mt19937 rng(20240915);

  // Rational algebra laws on a few random values.
  {
    bool laws = true;
    std::uniform_int_distribution<long> coef(-5, 5);
    for (int it = 0; it < 20 && laws; ++it) {
      auto rnd = [&] {
        std::vector<Rational> v(1 + it % 4);
        for (auto& c : v) c = make_rational(coef(rng), 1 + std::abs(coef(rng)));
        Polynomial num(std::move(v));
        return RationalFunction(num, Polynomial({1, -1}));
      };
      RationalFunction a = rnd(), b = rnd(), c = rnd();
      laws = ((a + b) + c == a + (b + c)) && (a * (b + c) == a * b + a * c);
      RationalFunction renorm(a.num(), a.den());
      laws = laws && renorm == a;
    }
    r.check(laws, "rational algebra: field laws, normalization idempotence");
  }

  // Parity and canonical form.
  {
    bool good = true;
    std::string detail;
    for (int it = 0; it < 200 && good; ++it) {
      IndexSequence s = random_sequence(rng, 1 + it % 6);
      IndexSequence c = canonicalize(s);
      good = canonicalize(c) == c && is_even_parity(c) == is_even_parity(s);
      if (!good) detail = dump_line({{}, s, 0, 0});
    }
    r.check(good, "canonicalize: idempotent, parity preserving", detail);
  }

  // Subsequence family sizes and the alternating cancellation.
  {
    bool good = true;
    for (int it = 0; it < 60 && good; ++it) {
      const int len = 1 + it % 6;
      IndexSequence s = random_sequence(rng, len);
      long long alternating = (len % 2 == 0) ? 1 : -1;
      for (int u = 1; u <= len; ++u) {
        auto fam = subsequence_family(s, u);
        good = good && static_cast<long long>(fam.size()) == binomial(len, u);
        alternating += ((len - u) % 2 == 0 ? 1 : -1) * static_cast<long long>(fam.size());
      }
      good = good && alternating == 0;
    }
    r.check(good, "subsequence families: binomial sizes, (1-1)^len cancellation");
  }

  // rho table for len <= 2 and the sign law along every path.
  {
    bool good = true;
    std::string offending;
    const int n = 2;
    WorkBudget& budget = r.budget;
    for (int len = 1; len <= 2 && good; ++len) {
      enumerate_c_sets(len, n, budget, [&](const CSetEntry& e) {
        if (!good) return;
        BigInt rho_checked = rho(e.path, n, rho_fault);
        int add1 = 0;
        for (Step s : e.path.steps) add1 += s == Step::Add1;
        const int expected_sign = (add1 % 2 == 0) ? 1 : -1;
        if (rho_checked != e.rho || sgn(rho_checked) != expected_sign) {
          good = false;
          offending = dump_line(e);
        }
      });
    }
    r.check(good, "rho: recursion matches streamed values, sign law (-1)^#add1", offending);
  }

  // Level-one table for n = 2 and level-two count.
  {
    std::vector<CSetEntry> level1;
    WorkBudget& budget = r.budget;
    enumerate_c_sets(1, 2, budget, [&](const CSetEntry& e) { level1.push_back(e); });
    bool good = level1.size() == 4 && level1[0].seq == IndexSequence{{{1, 2}}} &&
                level1[0].rho == 1 && level1[1].rho == -2 && level1[2].rho == -2 &&
                level1[3].rho == 3 && level1[3].replica_count == 4;
    std::size_t level2 = 0;
    enumerate_c_sets(2, 2, budget, [&](const CSetEntry&) { ++level2; });
    good = good && level2 == 29;
    r.check(good, "enumeration: level-one sets for n=2, level-two count 29");
  }

  // First expansion coefficient.
  {
    auto result = expansion_coefficients(1, r.budget);
    RationalFunction expected(Polynomial({0, 1}), Polynomial({1, -1}));
    r.check(result.c(1) == expected, "engine: c_1 = x/(1-x)",
            to_plain_text(result.c(1)));
  }

  SelftestReport report;
  report.ok = r.ok;
  report.text = r.out.str();
  return report;
}

}  // namespace skx
