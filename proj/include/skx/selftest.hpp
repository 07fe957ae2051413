#pragma once

#include <cstdint>
#include <string>

namespace skx {

enum class SelftestFault {
  kNone = 0,
  kRhoSign = 1,  // negative control: flips the sign of the Add1 factor
};

struct SelftestReport {
  bool ok = false;
  std::string text;  // one line per check, counterexample on failure
};

// Fast invariant suite (well under ten seconds): combinatorial identities,
// parity laws, the rho table, canonical-form idempotence, rational-algebra
// laws and the first expansion coefficient. Charges the given budget.
SelftestReport run_selftest(std::uint64_t budget, SelftestFault fault = SelftestFault::kNone);

}  // namespace skx
