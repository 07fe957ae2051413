#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "skx/rational.hpp"

namespace skx {

// One replica-index pair (lo, hi) with lo < hi.
struct ReplicaPair {
  int lo = 0;
  int hi = 0;
  friend auto operator<=>(const ReplicaPair&, const ReplicaPair&) = default;
};

/// Ordered sequence of replica-index pairs l = (l_1,l_1',...,l_len,l_len').
/// Each pair indexes the two replicas coupled by one overlap factor; the
/// same pair may repeat and positions matter.
struct IndexSequence {
  std::vector<ReplicaPair> pairs;

  int length() const { return static_cast<int>(pairs.size()); }
  int max_index() const;
  friend auto operator<=>(const IndexSequence&, const IndexSequence&) = default;
};

// Which of the three set constructions produced a pair: reuse two existing
// replicas, couple an existing replica to one new one, or introduce two.
enum class Step : std::uint8_t { Keep = 0, Add1 = 1, Add2 = 2 };

/// Branch identity of a sequence inside the family tree of C-sets.
/// Encodes m in 1..3^len bijectively: step i is the i-th base-3 digit of
/// m-1, most significant first (Keep=0, Add1=1, Add2=2).
struct BranchPath {
  std::vector<Step> steps;

  int length() const { return static_cast<int>(steps.size()); }
  std::uint64_t m_index() const;
  friend auto operator<=>(const BranchPath&, const BranchPath&) = default;
};

// True iff every replica index occurs an even number of times across the
// pairs, i.e. the product of cavity-spin factors eps^l is identically one.
bool is_even_parity(const IndexSequence& seq);

// Relabel replica indices by order of first appearance (first seen -> 1),
// then restore lo < hi inside each pair. Idempotent; sequences with equal
// canonical form have equal nu_0 by replica symmetry.
IndexSequence canonicalize(const IndexSequence& seq);

// All C(len, u) subsequences obtained by picking u pair positions in order.
// Positions are distinct even when pair values repeat, so repeated pairs
// yield repeated subsequence values, one per selection.
std::vector<IndexSequence> subsequence_family(const IndexSequence& seq, int u);

// Replica count after walking the path starting from n configurations:
// n + #Add1 + 2 * #Add2.
int replica_count(const BranchPath& path, int n);

// Signed combinatorial coefficient of the path: the product over steps of
// 1 (Keep), -M (Add1) or M(M+1)/2 (Add2), with M the replica count before
// the step. test_fault flips the Add1 sign; it exists only so the selftest
// can prove it would catch a wrong table.
BigInt rho(const BranchPath& path, int n, bool test_fault = false);

/// Shared work allowance. Enumerations charge one unit per sequence they
/// yield or visit; exhaustion throws budget_exhausted, deterministically.
class WorkBudget {
 public:
  explicit WorkBudget(std::uint64_t cap) : remaining_(cap) {}
  void charge(std::uint64_t amount = 1);
  std::uint64_t used() const { return used_; }

 private:
  std::uint64_t remaining_;
  std::uint64_t used_ = 0;
};

struct CSetEntry {
  BranchPath path;
  IndexSequence seq;
  int replica_count = 0;  // M for this path
  BigInt rho;
};

// Stream every sequence of every C_{len,m}, m = 1..3^len, exactly once,
// for a base function depending on n configurations. Depth-first, Keep
// before Add1 before Add2, pairs in lexicographic order; deterministic.
void enumerate_c_sets(int len, int n, WorkBudget& budget,
                      const std::function<void(const CSetEntry&)>& yield);

// Same walk but yielding at every depth 1..max_len, shorter prefixes first
// along each branch.
void enumerate_c_sets_upto(int max_len, int n, WorkBudget& budget,
                           const std::function<void(const CSetEntry&)>& yield);

// Debug dump, one sequence per line:
//   path=keep,add1 seq=(1,2)(1,3) M=3 rho=-2 parity=odd
std::string dump_line(const CSetEntry& entry);

}  // namespace skx
