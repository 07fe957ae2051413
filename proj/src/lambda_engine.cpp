// Coefficient extraction for the high-temperature 1/N expansion of the
// overlap second moment.
//
// The engine works with the recursive identity satisfied by
// nu_0(eps^l R_l^-) for an index sequence l of len pairs (all pair-ordered,
// even parity). Writing x = beta^2 and hat-l for l without its last pair,
// the identity expresses nu_0(eps^l R_l^-) as
//
//   (s1)  sum over u <= len-1 position-subsets l^u and v-subsets l^{u,v}
//         of (-1)^{len-u} N^{-(len-v)} nu_0(eps^{l^{u,v}} R^-_{l^{u,v}})
//   (s2)  + N^{-(len-1)} - N^{-len}
//         + sum over u <= len-2 subsets of hat-l of
//           N^{-(len-1-u)} nu_0(eps^{hat-l^u} R^-_{hat-l^u})
//   (s3)  + sum over u <= len-1 subsets hat-l^u, and derivative sequences
//         eta built on the configurations of hat-l^u, of
//           x^r rho(eta)/r! N^{-(len-1-u)} nu_0 of the joint sequence,
//         joint parity even
//   (s4)  - sum over derivative sequences eta on the configurations of l,
//         eta even, of x^r rho(eta)/r! N^{-len} nu_0(eps^eta R_eta^-)
//   (s5)  - the same eta sum crossed with position-subsets l^u,
//         joint parity even, weight x^r rho(eta)/r! N^{-(len-u)}.
//
// Reading off the coefficient of N^{-j} turns each term into a reference
// to lambda_{j-w} of a shorter or longer sequence. Two facts make this a
// finite, well-founded computation:
//   - lambda_j of a sequence of z pairs vanishes when 2j < z (the value is
//     O(N^{-z/2})), which caps every r-sum;
//   - the only reference at the same (j, sequence) is the term generated
//     at u = len-1, r = 1 by the last pair of l itself, with weight
//     exactly x. Moving it across the equals sign contributes the global
//     1/(1-x) factor.
// Dependencies then always point to smaller j, or to the same j with a
// strictly longer sequence, bounded by 2j.

#include "skx/lambda_engine.hpp"

#include <bit>
#include <chrono>

#include "skx/errors.hpp"

namespace skx {

namespace {

const RationalFunction kZeroFn{};

BigInt factorial(int r) {
  BigInt f = 1;
  for (int i = 2; i <= r; ++i) f *= i;
  return f;
}

std::string memo_key(const IndexSequence& seq, int j) {
  std::string key;
  key.reserve(2 * seq.pairs.size() + 1);
  key.push_back(static_cast<char>(j));
  for (const auto& p : seq.pairs) {
    key.push_back(static_cast<char>(p.lo));
    key.push_back(static_cast<char>(p.hi));
  }
  return key;
}

IndexSequence concat(const IndexSequence& a, const IndexSequence& b) {
  IndexSequence out = a;
  out.pairs.insert(out.pairs.end(), b.pairs.begin(), b.pairs.end());
  return out;
}

IndexSequence select(const IndexSequence& seq, std::uint32_t mask) {
  IndexSequence out;
  out.pairs.reserve(std::popcount(mask));
  for (int i = 0; i < seq.length(); ++i)
    if (mask & (1u << i)) out.pairs.push_back(seq.pairs[i]);
  return out;
}

void validate_pair_order(const IndexSequence& seq) {
  for (const auto& p : seq.pairs)
    if (!(0 < p.lo && p.lo < p.hi))
      throw contract_violation("index sequence pairs must satisfy 0 < lo < hi");
}

}  // namespace

RationalFunction lambda_base() {
  return RationalFunction(Polynomial::constant(1), Polynomial({1, -1}));
}

const RationalFunction& LambdaEngine::lambda(const LambdaKey& key) {
  validate_pair_order(key.seq);
  if (key.seq.length() < 1) throw contract_violation("lambda: empty sequence");
  if (key.k < 1 || key.j > key.k) throw contract_violation("lambda: need 1 <= j <= k");
  if (key.seq.length() > 2 * key.k) throw contract_violation("lambda: sequence longer than 2k");
  if (!is_even_parity(key.seq)) throw contract_violation("lambda: odd-parity sequence");
  if (key.j <= 0) return kZeroFn;
  return coefficient(canonicalize(key.seq), key.j);
}

std::vector<RationalFunction> LambdaEngine::nu0_symbolic_expansion(const IndexSequence& l, int k) {
  validate_pair_order(l);
  if (l.length() < 2) throw contract_violation("nu0_symbolic_expansion: need len >= 2");
  if (k < 1) throw contract_violation("nu0_symbolic_expansion: need k >= 1");
  if (!is_even_parity(l)) throw contract_violation("nu0_symbolic_expansion: odd-parity sequence");
  IndexSequence canon = canonicalize(l);
  std::vector<RationalFunction> out;
  out.reserve(k);
  for (int j = 1; j <= k; ++j) out.push_back(coefficient(canon, j));
  return out;
}

const RationalFunction& LambdaEngine::coefficient(const IndexSequence& seq, int j) {
  if (j <= 0 || 2 * j < seq.length()) return kZeroFn;
  const std::string key = memo_key(seq, j);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  if (!in_progress_.insert(key).second)
    throw error("internal: cyclic lambda dependency");  // ruled out by the ordering above

  Terms terms = gather_terms(seq, j);
  if (!(terms.self == Polynomial::variable()))
    throw error("internal: self-coupling of lambda is not exactly x");

  RationalFunction acc = RationalFunction::from_poly(terms.constant);
  for (const auto& [child, weight] : terms.groups) {
    const RationalFunction& lam = coefficient(child.first, child.second);
    if (!lam.is_zero()) acc += RationalFunction::from_poly(weight) * lam;
  }
  acc /= RationalFunction::from_poly(Polynomial({1, -1}));  // 1 - x

  in_progress_.erase(key);
  return memo_.emplace(key, std::move(acc)).first->second;
}

LambdaEngine::Terms LambdaEngine::gather_terms(const IndexSequence& l, int j) {
  Terms t;
  const int len = l.length();
  const std::uint32_t full = (1u << len) - 1;

  // Constant part: +1/N^{len-1} from reducing the last pair, and -1/N^len
  // left over from the (1-1)^len cancellation, whose u = len binomial term
  // is not present in the sum (it became the hat-l reduction). The printed
  // identity omits the second constant; the beta = 0 pairing counts pin it.
  if (j == len - 1) t.constant += Polynomial::constant(1);
  if (j == len) t.constant -= Polynomial::constant(1);

  // (s1): subsets of subsets, constant weights with alternating sign. The
  // whole-subset inner terms (v = u) of u = len-1 vanish by parity, but its
  // proper v-subsets can be even and must stay in range.
  for (std::uint32_t s = 1; s < full; ++s) {
    const int u = std::popcount(s);
    if (u > len - 1) continue;
    const Rational sign = ((len - u) % 2 == 0) ? 1 : -1;
    // v-subsets of s: iterate sub-masks.
    for (std::uint32_t m = s; m > 0; m = (m - 1) & s) {
      const int v = std::popcount(m);
      const int j2 = j - (len - v);
      if (j2 < 1 || 2 * j2 < v) continue;
      IndexSequence child = canonicalize(select(l, m));
      if (!is_even_parity(child)) continue;
      t.groups[{std::move(child), j2}] += Polynomial::constant(sign);
    }
  }

  IndexSequence lhat = l;
  lhat.pairs.pop_back();
  const std::uint32_t full_hat = (1u << lhat.length()) - 1;

  // (s2): subsets of hat-l with u <= len-2, plain 1/N^{len-1-u} weights.
  for (std::uint32_t s = 1; s <= full_hat && lhat.length() >= 1; ++s) {
    const int u = std::popcount(s);
    if (u > len - 2) continue;
    const int j2 = j - (len - 1 - u);
    if (j2 < 1 || 2 * j2 < u) continue;
    IndexSequence child = canonicalize(select(lhat, s));
    if (!is_even_parity(child)) continue;
    t.groups[{std::move(child), j2}] += Polynomial::constant(1);
  }

  // (s3): derivative sequences grown on subsets of hat-l. Equal canonical
  // bases share one enumeration; their multiplicity scales the weights.
  for (int u = 1; u <= len - 1 && lhat.length() >= 1; ++u) {
    const int j2 = j - (len - 1 - u);
    if (j2 < 1) continue;
    const int rmax = 2 * j2 - u;
    if (rmax < 1) continue;
    std::map<IndexSequence, long> bases;
    for (std::uint32_t s = 1; s <= full_hat; ++s) {
      if (std::popcount(s) != u) continue;
      ++bases[canonicalize(select(lhat, s))];
    }
    for (const auto& [base, multiplicity] : bases) {
      enumerate_c_sets_upto(rmax, base.max_index(), budget_, [&](const CSetEntry& e) {
        const int r = e.seq.length();
        IndexSequence joint = concat(base, e.seq);
        if (!is_even_parity(joint)) return;
        if (u + r > 2 * j2) return;
        Polynomial w = Polynomial::monomial(
            make_rational(e.rho * multiplicity, factorial(r)), r);
        IndexSequence child = canonicalize(joint);
        if (j2 == j && child == l)
          t.self += w;
        else
          t.groups[{std::move(child), j2}] += w;
      });
    }
  }

  // (s4) and (s5): one pass over derivative sequences on l's configurations.
  const int rmax_tail = 2 * j - len;
  if (rmax_tail >= 1) {
    enumerate_c_sets_upto(rmax_tail, l.max_index(), budget_, [&](const CSetEntry& e) {
      const int r = e.seq.length();
      const Rational coef = -make_rational(e.rho, factorial(r));
      const int j4 = j - len;
      if (j4 >= 1 && r <= 2 * j4 && is_even_parity(e.seq)) {
        t.groups[{canonicalize(e.seq), j4}] += Polynomial::monomial(coef, r);
      }
      for (std::uint32_t s = 1; s <= full; ++s) {
        const int u = std::popcount(s);
        const int j2 = j - (len - u);
        if (j2 < 1 || u + r > 2 * j2) continue;
        IndexSequence joint = concat(select(l, s), e.seq);
        if (!is_even_parity(joint)) continue;
        t.groups[{canonicalize(joint), j2}] += Polynomial::monomial(coef, r);
      }
    });
  }

  return t;
}

namespace {

// Composite sequences of the theorem always start with the observed pair.
const IndexSequence kRootPair{{{1, 2}}};

}  // namespace

ExpansionResult expansion_coefficients(int order, WorkBudget& budget) {
  if (order < 1) throw contract_violation("expansion order must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t budget_before = budget.used();

  ExpansionResult out;
  out.order = order;
  LambdaEngine engine(budget);

  // One pass over all derivative sequences of the two-replica base
  // function, grouped by the canonical composite (1,2,l).
  std::map<IndexSequence, Polynomial> groups;
  ExpansionStats& stats = out.stats;
  enumerate_c_sets_upto(2 * order - 1, 2, budget, [&](const CSetEntry& e) {
    ++stats.sequences_enumerated;
    IndexSequence composite = concat(kRootPair, e.seq);
    if (!is_even_parity(composite)) return;
    ++stats.parity_survivors;
    const int len = e.seq.length();
    groups[canonicalize(composite)] +=
        Polynomial::monomial(make_rational(e.rho, factorial(len)), len);
  });

  for (int j = 1; j <= order; ++j) {
    RationalFunction cj;
    for (const auto& [composite, weight] : groups) {
      if (2 * j < composite.length()) continue;
      const RationalFunction& lam = engine.coefficient(composite, j);
      if (!lam.is_zero()) cj += RationalFunction::from_poly(weight) * lam;
    }
    if (!has_pure_high_temperature_poles(cj)) out.pole_check_failures.push_back(j);
    out.coefficients.push_back(std::move(cj));
  }

  stats.lambda_entries = engine.table_size();
  stats.budget_used = budget.used() - budget_before;
  stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

double evaluate_truncated(const ExpansionResult& expansion, double beta, int n_sites) {
  if (!(beta >= 0.0 && beta < 1.0))
    throw contract_violation("evaluate_truncated: beta must lie in [0, 1)");
  if (n_sites < 1) throw contract_violation("evaluate_truncated: N must be >= 1");
  const Rational x0 = Rational(beta) * Rational(beta);
  const Rational inv_n = make_rational(1, n_sites);
  Rational total = inv_n;
  Rational power = 1;
  for (int j = 1; j <= expansion.order; ++j) {
    power *= inv_n;
    total += expansion.c(j).eval_at(x0) * power;
  }
  return total.get_d();
}

double evaluate_truncated(double beta, int order, int n_sites, WorkBudget& budget) {
  return evaluate_truncated(expansion_coefficients(order, budget), beta, n_sites);
}

bool has_pure_high_temperature_poles(const RationalFunction& f) {
  Polynomial p = f.den();
  const Polynomial one_minus_x({1, -1});
  while (p.degree() > 0) {
    auto [q, r] = divmod(p, one_minus_x);
    if (!r.is_zero()) return false;
    p = std::move(q);
  }
  return true;
}

}  // namespace skx
