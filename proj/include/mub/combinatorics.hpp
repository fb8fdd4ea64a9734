#pragma once

#include <cstdint>
#include <vector>

namespace mub {

// Weakly decreasing positive parts. Empty means the partition of 0.
using Partition = std::vector<int>;

// Parts ordered by minimal element, elements sorted; ground set {0,...,n-1}.
using SetPartition = std::vector<std::vector<int>>;

// Q[i] partitions P[i].
struct OrbitClass {
  SetPartition P;
  std::vector<SetPartition> Q;

  int length() const;
  std::vector<int> part_sizes_q() const;
  bool operator==(const OrbitClass &) const = default;
  auto operator<=>(const OrbitClass &) const = default;
};

// Row-major entries; entries are 1-based values.
struct Tableau {
  Partition shape;
  std::vector<int> entries;

  int at(int row, int col) const;
  bool operator==(const Tableau &) const = default;
  auto operator<=>(const Tableau &) const = default;
};

int weight(const Partition &p);

// Descending lexicographic, so the first element is (n).
std::vector<Partition> integer_partitions(int n);

std::vector<SetPartition> set_partitions(int n, int max_parts);

// Refinement pairs: one class per orbit of ([d]x[k])^t under the wreath product.
std::vector<OrbitClass> orbit_classes(int t, int k, int d);

// Content is a composition; zero entries are allowed and contribute no cells.
std::vector<Tableau> semistandard_tableaux(const Partition &shape, const std::vector<int> &content);
std::int64_t kostka_number(const Partition &shape, const std::vector<int> &content);

std::uint64_t bell_number(int n);
std::uint64_t refinement_pair_count(int n);
std::uint64_t hook_length_count(const Partition &shape);
std::uint64_t factorial(int n);

// Orbit class of a word given per position (element, basis) labels.
OrbitClass classify_word(const std::vector<int> &elements, const std::vector<int> &bases);

// Canonical set partition of positions by equal labels.
SetPartition partition_by_labels(const std::vector<int> &labels, const std::vector<int> &positions);

// (m - s, 1^s) with the leading entry kept even when it is zero.
std::vector<int> hook_content(int m, int s);

}  // namespace mub
