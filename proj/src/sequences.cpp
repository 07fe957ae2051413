#include "skx/sequences.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include "skx/errors.hpp"

namespace skx {

int IndexSequence::max_index() const {
  int m = 0;
  for (const auto& p : pairs) m = std::max(m, p.hi);
  return m;
}

std::uint64_t BranchPath::m_index() const {
  std::uint64_t m = 0;
  for (Step s : steps) m = 3 * m + static_cast<std::uint64_t>(s);
  return m + 1;
}

bool is_even_parity(const IndexSequence& seq) {
  std::map<int, int> count;
  for (const auto& p : seq.pairs) {
    ++count[p.lo];
    ++count[p.hi];
  }
  for (const auto& [idx, c] : count)
    if (c % 2 != 0) return false;
  return true;
}

IndexSequence canonicalize(const IndexSequence& seq) {
  std::map<int, int> relabel;
  int next = 1;
  IndexSequence out;
  out.pairs.reserve(seq.pairs.size());
  for (const auto& p : seq.pairs) {
    for (int idx : {p.lo, p.hi})
      if (relabel.emplace(idx, next).second) ++next;
    int a = relabel[p.lo], b = relabel[p.hi];
    out.pairs.push_back(a < b ? ReplicaPair{a, b} : ReplicaPair{b, a});
  }
  return out;
}

std::vector<IndexSequence> subsequence_family(const IndexSequence& seq, int u) {
  const int len = seq.length();
  if (u < 1 || u > len) throw contract_violation("subsequence_family: u out of range");
  std::vector<IndexSequence> out;
  // Masks in increasing order keep the family deterministic.
  for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
    if (std::popcount(mask) != u) continue;
    IndexSequence sub;
    sub.pairs.reserve(u);
    for (int i = 0; i < len; ++i)
      if (mask & (1u << i)) sub.pairs.push_back(seq.pairs[i]);
    out.push_back(std::move(sub));
  }
  return out;
}

int replica_count(const BranchPath& path, int n) {
  int m = n;
  for (Step s : path.steps) {
    if (s == Step::Add1) m += 1;
    if (s == Step::Add2) m += 2;
  }
  return m;
}

BigInt rho(const BranchPath& path, int n, bool test_fault) {
  if (path.length() < 1) throw contract_violation("rho: empty path");
  BigInt r = 1;
  int m = n;
  for (Step s : path.steps) {
    switch (s) {
      case Step::Keep:
        break;
      case Step::Add1:
        r *= test_fault ? BigInt(m) : BigInt(-m);
        m += 1;
        break;
      case Step::Add2:
        r *= BigInt(m) * (m + 1) / 2;
        m += 2;
        break;
    }
  }
  return r;
}

void WorkBudget::charge(std::uint64_t amount) {
  if (amount > remaining_)
    throw budget_exhausted("work budget exhausted after " + std::to_string(used_) + " units");
  remaining_ -= amount;
  used_ += amount;
}

namespace {

struct Walker {
  int n;
  int max_len;
  bool yield_inner;
  WorkBudget* budget;
  const std::function<void(const CSetEntry&)>* yield;
  CSetEntry cur;

  void emit() {
    budget->charge();
    (*yield)(cur);
  }

  void descend(int m) {
    const int depth = cur.path.length();
    if (depth == max_len) return;
    BigInt saved_rho = cur.rho;

    cur.path.steps.push_back(Step::Keep);
    for (int a = 1; a < m; ++a)
      for (int b = a + 1; b <= m; ++b) step({a, b}, m, saved_rho, saved_rho);
    cur.path.steps.back() = Step::Add1;
    for (int a = 1; a <= m; ++a) step({a, m + 1}, m + 1, saved_rho, saved_rho * -m);
    cur.path.steps.back() = Step::Add2;
    step({m + 1, m + 2}, m + 2, saved_rho, saved_rho * m * (m + 1) / 2);
    cur.path.steps.pop_back();
  }

  void step(ReplicaPair p, int m_next, const BigInt& saved_rho, BigInt rho_next) {
    cur.seq.pairs.push_back(p);
    cur.replica_count = m_next;
    cur.rho = std::move(rho_next);
    if (yield_inner || cur.path.length() == max_len) emit();
    descend(m_next);
    cur.seq.pairs.pop_back();
    cur.rho = saved_rho;
  }
};

void walk(int max_len, int n, bool yield_inner, WorkBudget& budget,
          const std::function<void(const CSetEntry&)>& yield) {
  if (max_len < 1 || n < 1) throw contract_violation("enumerate_c_sets: len and n must be >= 1");
  Walker w{n, max_len, yield_inner, &budget, &yield, {}};
  w.cur.rho = 1;
  w.descend(n);
}

}  // namespace

void enumerate_c_sets(int len, int n, WorkBudget& budget,
                      const std::function<void(const CSetEntry&)>& yield) {
  walk(len, n, /*yield_inner=*/false, budget, yield);
}

void enumerate_c_sets_upto(int max_len, int n, WorkBudget& budget,
                           const std::function<void(const CSetEntry&)>& yield) {
  walk(max_len, n, /*yield_inner=*/true, budget, yield);
}

std::string dump_line(const CSetEntry& entry) {
  std::ostringstream out;
  out << "path=";
  for (int i = 0; i < entry.path.length(); ++i) {
    if (i) out << ',';
    switch (entry.path.steps[i]) {
      case Step::Keep: out << "keep"; break;
      case Step::Add1: out << "add1"; break;
      case Step::Add2: out << "add2"; break;
    }
  }
  out << " seq=";
  for (const auto& p : entry.seq.pairs) out << '(' << p.lo << ',' << p.hi << ')';
  out << " M=" << entry.replica_count << " rho=" << entry.rho.get_str()
      << " parity=" << (is_even_parity(entry.seq) ? "even" : "odd");
  return out.str();
}

}  // namespace skx
