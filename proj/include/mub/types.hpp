#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mub/combinatorics.hpp"

namespace mub {

using Rational = mpq_class;

// Letter x_{e+1,b+1}: element e of basis b, both 0-based.
struct Letter {
  int e = 0;
  int b = 0;
  bool operator==(const Letter &) const = default;
  auto operator<=>(const Letter &) const = default;
};

using Word = std::vector<Letter>;
using WordVector = std::map<Word, Rational>;

std::string word_to_string(const Word &w);

// Sparse coefficients over injective label tuples.
using TupleMap = std::vector<std::pair<std::vector<int>, Rational>>;

// Elements for one part of P: the first `fixed` parts of Q_i carry elements
// 0..fixed-1, the remaining parts are labelled by the tuple.
struct PartElements {
  int fixed = 0;
  std::shared_ptr<const TupleMap> tuples;
};

// A representative vector in product form: coefficient of a word in class
// `cls` is bases(b) * prod_i elements[i](e_i).
struct RepVector {
  OrbitClass cls;
  int fixed_basis = 0;
  std::shared_ptr<const TupleMap> bases;
  std::vector<PartElements> elements;
  std::string label;

  WordVector expand() const;
  std::size_t support_size() const;
};

// Block key: list of partitions (a single lambda, a multipartition, or
// (lambda, multipartition...) for half levels).
using BlockKey = std::vector<Partition>;
using RepSet = std::map<BlockKey, std::vector<RepVector>>;

std::string partition_to_string(const Partition &p);
std::string block_key_to_string(const BlockKey &k);

}  // namespace mub
