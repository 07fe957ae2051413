#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "skx/rational_function.hpp"
#include "skx/sequences.hpp"

namespace skx {

/// Identifies one expansion coefficient lambda_j of nu_0(eps^l R_l^-),
/// the weight of N^{-j} in its large-N expansion, requested while working
/// at truncation order k.
struct LambdaKey {
  IndexSequence seq;
  int j = 0;
  int k = 1;
};

struct ExpansionStats {
  std::uint64_t sequences_enumerated = 0;  // top-level sequences visited
  std::uint64_t parity_survivors = 0;      // with even composite parity
  std::uint64_t lambda_entries = 0;        // memo table size at the end
  std::uint64_t budget_used = 0;
  double wall_seconds = 0.0;
};

/// The 1/N expansion of the overlap second moment:
///   nu(R_{1,2}^2) = 1/N + sum_{j=1..order} c_j / N^j + O(N^{-order-1/2}).
struct ExpansionResult {
  int order = 0;
  std::vector<RationalFunction> coefficients;  // c_1 .. c_order
  ExpansionStats stats;
  // Coefficient indices whose denominator is not a pure power of 1 - x.
  // Expected empty; kept so a violation is reported, never hidden.
  std::vector<int> pole_check_failures;

  const RationalFunction& c(int j) const { return coefficients.at(j - 1); }
};

// The k = 1 anchor: lambda_1 = 1/(1 - x) for the doubled pair.
RationalFunction lambda_base();

/// Computes lambda coefficients by extracting powers of 1/N from the
/// recursive identity for nu_0(eps^l R_l^-), memoized over canonical
/// sequences. Coefficients are truncation-stable, so the memo key is
/// (sequence, j) alone; the k carried by LambdaKey is validated and then
/// only used as a sanity bound.
class LambdaEngine {
 public:
  explicit LambdaEngine(WorkBudget& budget) : budget_(budget) {}

  // Validating entry point. Throws contract_violation for malformed pairs,
  // odd parity, or len > 2k; returns zero for j <= 0.
  const RationalFunction& lambda(const LambdaKey& key);

  // Coefficients of 1/N^j for j = 1..k. Requires even parity and len >= 2.
  std::vector<RationalFunction> nu0_symbolic_expansion(const IndexSequence& l, int k);

  // Core lookup; seq must be canonical and even. Infeasible indices
  // (j <= 0 or 2j < len) return the zero function.
  const RationalFunction& coefficient(const IndexSequence& canon_seq, int j);

  std::uint64_t table_size() const { return memo_.size(); }

 private:
  struct Terms {
    Polynomial constant;                              // plain x-polynomial part
    std::map<std::pair<IndexSequence, int>, Polynomial> groups;  // (child, j') -> weight
    Polynomial self;                                  // weight on lambda_j^l itself
  };
  Terms gather_terms(const IndexSequence& l, int j);

  WorkBudget& budget_;
  std::unordered_map<std::string, RationalFunction> memo_;
  std::unordered_set<std::string> in_progress_;
};

// All coefficients c_1..c_order of the overlap second moment expansion.
ExpansionResult expansion_coefficients(int order, WorkBudget& budget);

// 1/N + sum c_j(beta^2)/N^j, carried as exact rationals and converted to
// double once at the end. Requires 0 <= beta < 1.
double evaluate_truncated(const ExpansionResult& expansion, double beta, int n_sites);
double evaluate_truncated(double beta, int order, int n_sites, WorkBudget& budget);

// True when the denominator divides a power of (1 - x).
bool has_pure_high_temperature_poles(const RationalFunction& f);

}  // namespace skx
