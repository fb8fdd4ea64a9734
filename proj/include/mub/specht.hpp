#pragma once

#include <map>
#include <utility>
#include <vector>

#include "mub/combinatorics.hpp"
#include "mub/types.hpp"

namespace mub {

// Rows sorted ascending; row i has the length of shape part i. Labels are 1-based.
using Tabloid = std::vector<std::vector<int>>;
using TabloidVector = std::map<Tabloid, Rational>;

// Permutation of {1..k} stored with a dummy slot at index 0.
using Perm = std::vector<int>;

std::vector<std::pair<Perm, int>> column_stabilizer(const Tableau &t);

Tableau canonical_tableau(const Partition &shape);
Tabloid tabloid_of(const Tableau &t);

TabloidVector polytabloid(const Tableau &t);

// Row a of the result holds the i whose cell in t carries tau-entry a.
// t must have distinct entries 1..k.
Tabloid act_tableau_on_tableau(const Tableau &tau, const Tableau &t, const std::vector<int> &content);

std::vector<Tableau> row_equivalents(const Tableau &tau);

TabloidVector generator_vector(const Tableau &tau, const Partition &lambda, const std::vector<int> &content);

// Tuple map for a hook-content tabloid vector: row 1 holds unused labels,
// row i+1 holds the label assigned to slot i. Labels shifted to 0-based and
// translated through `alphabet` (alphabet[v-1] is the label for value v).
TupleMap hook_tuples(const TabloidVector &v, const std::vector<int> &alphabet);

// Representative set for S_k on [k]^t; words use element 0 in every letter.
std::map<Partition, std::vector<RepVector>> sk_representative_set(int k, int t);

// S_{k-1} on words x_{1,1} w with |w| = t, bases 2..k permuted.
std::map<Partition, std::vector<RepVector>> sk_half_representative_set(int k, int t);

// Rank of the span of polytabloids of all standard tableaux of the shape.
std::size_t specht_dimension_rank(const Partition &lambda);

std::vector<Tableau> standard_tableaux(const Partition &shape);

}  // namespace mub
