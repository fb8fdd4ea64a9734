#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mub/combinatorics.hpp"
#include "mub/types.hpp"

namespace mub {

// j holds 1-based indices into integer_partitions(d); ell is its length.
std::vector<Partition> gamma_profile(const std::vector<int> &j, int r, int k, int ell);

// Blocks keyed by the multipartition (Lambda^1,...,Lambda^ell) of k.
RepSet wreath_representative_set(int d, int k, int t);

// Words x_{1,1} w, |w| = t, under S_{d-1} x (S_d wr S_{k-1}); position 0 is the
// fixed letter. Blocks keyed by (lambda, Lambda^1, ..., Lambda^ell).
RepSet half_level_representative_set(int d, int k, int t);

struct DimensionReport {
  bool ok = false;
  std::uint64_t total = 0;
  std::uint64_t expected = 0;
  std::string detail;
};

std::uint64_t wreath_specht_dimension(const BlockKey &lambda, int d);

DimensionReport total_dimension_check(const RepSet &repset, int d, int k, int t);

// Test hook: list the partitions of d in ascending instead of descending order.
void set_reverse_nu_order_for_testing(bool on);

}  // namespace mub
