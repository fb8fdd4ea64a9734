#pragma once

#include <map>
#include <vector>

#include "mub/types.hpp"

namespace mub {

using SparseRow = std::map<int, Rational>;

// Exact row echelon form where each stored row is pivoted on its largest column.
class Echelon {
 public:
  // Reduces `row` against the stored rows. Returns true and stores the row
  // if it is independent. The reduced remainder is written to `out` if given.
  bool add(SparseRow row, SparseRow *out = nullptr);
  SparseRow reduce(SparseRow row) const;
  std::size_t rank() const { return rows_.size(); }
  bool is_pivot(int col) const { return rows_.count(col) != 0; }

  // For each pivot column c: the row with c eliminated in terms of non-pivot
  // columns, normalized so that c has coefficient 1.
  std::map<int, SparseRow> reduced_rows() const;

 private:
  std::map<int, SparseRow> rows_;
};

std::size_t exact_rank(const std::vector<SparseRow> &rows);

}  // namespace mub
