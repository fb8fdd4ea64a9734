#pragma once

#include <ostream>

namespace mub {

struct SelftestOptions {
  bool corrupt_nu_order = false;  // negative test: the Phi oracle must then fail
};

// Prints one PASS/FAIL line per check; returns true when all pass.
bool run_selftest(std::ostream &os, const SelftestOptions &opt = {});

}  // namespace mub
