#include "mub/combinatorics.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace mub {

int OrbitClass::length() const {
  int n = 0;
  for (const auto &p : P) n += static_cast<int>(p.size());
  return n;
}

std::vector<int> OrbitClass::part_sizes_q() const {
  std::vector<int> q;
  for (const auto &qi : Q) q.push_back(static_cast<int>(qi.size()));
  return q;
}

int Tableau::at(int row, int col) const {
  int off = 0;
  for (int r = 0; r < row; ++r) off += shape[r];
  return entries[off + col];
}

int weight(const Partition &p) { return std::accumulate(p.begin(), p.end(), 0); }

namespace {

void partitions_rec(int n, int maxp, Partition &cur, std::vector<Partition> &out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, maxp); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(n - p, p, cur, out);
    cur.pop_back();
  }
}

// Restricted growth strings over the given positions.
void set_partitions_rec(const std::vector<int> &elems, std::size_t i, int max_parts,
                        SetPartition &cur, std::vector<SetPartition> &out) {
  if (i == elems.size()) {
    out.push_back(cur);
    return;
  }
  for (std::size_t b = 0; b < cur.size(); ++b) {
    cur[b].push_back(elems[i]);
    set_partitions_rec(elems, i + 1, max_parts, cur, out);
    cur[b].pop_back();
  }
  if (static_cast<int>(cur.size()) < max_parts) {
    cur.push_back({elems[i]});
    set_partitions_rec(elems, i + 1, max_parts, cur, out);
    cur.pop_back();
  }
}

std::vector<SetPartition> set_partitions_of(const std::vector<int> &elems, int max_parts) {
  std::vector<SetPartition> out;
  SetPartition cur;
  if (elems.empty()) return {SetPartition{}};
  set_partitions_rec(elems, 0, max_parts, cur, out);
  return out;
}

}  // namespace

std::vector<Partition> integer_partitions(int n) {
  std::vector<Partition> out;
  Partition cur;
  if (n == 0) return {Partition{}};
  partitions_rec(n, n, cur, out);
  return out;
}

std::vector<SetPartition> set_partitions(int n, int max_parts) {
  std::vector<int> elems(n);
  std::iota(elems.begin(), elems.end(), 0);
  auto out = set_partitions_of(elems, max_parts);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<OrbitClass> orbit_classes(int t, int k, int d) {
  std::vector<OrbitClass> out;
  for (const auto &P : set_partitions(t, k)) {
    std::vector<std::vector<SetPartition>> choices;
    for (const auto &part : P) {
      auto qs = set_partitions_of(part, d);
      std::sort(qs.begin(), qs.end());
      choices.push_back(std::move(qs));
    }
    OrbitClass c{P, {}};
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == P.size()) {
        out.push_back(c);
        return;
      }
      for (const auto &q : choices[i]) {
        c.Q.push_back(q);
        rec(i + 1);
        c.Q.pop_back();
      }
    };
    rec(0);
  }
  return out;
}

std::vector<Tableau> semistandard_tableaux(const Partition &shape, const std::vector<int> &content) {
  std::vector<Tableau> out;
  int n = weight(shape);
  if (n != std::accumulate(content.begin(), content.end(), 0)) return out;
  Tableau t{shape, std::vector<int>(n, 0)};
  std::vector<int> start(shape.size(), 0);
  for (std::size_t r = 1; r < shape.size(); ++r) start[r] = start[r - 1] + shape[r - 1];
  std::vector<int> left = content;
  // Fill row-major; each cell >= left neighbour and > cell above.
  std::function<void(int, int)> rec = [&](int row, int col) {
    if (row == static_cast<int>(shape.size())) {
      out.push_back(t);
      return;
    }
    if (col == shape[row]) {
      rec(row + 1, 0);
      return;
    }
    int lo = 1;
    if (col > 0) lo = std::max(lo, t.entries[start[row] + col - 1]);
    if (row > 0) lo = std::max(lo, t.entries[start[row - 1] + col] + 1);
    for (int v = lo; v <= static_cast<int>(content.size()); ++v) {
      if (left[v - 1] == 0) continue;
      --left[v - 1];
      t.entries[start[row] + col] = v;
      rec(row, col + 1);
      ++left[v - 1];
    }
  };
  rec(0, 0);
  return out;
}

std::int64_t kostka_number(const Partition &shape, const std::vector<int> &content) {
  static std::map<std::pair<Partition, std::vector<int>>, std::int64_t> memo;
  std::vector<int> c;
  for (int x : content)
    if (x > 0) c.push_back(x);
  auto key = std::make_pair(shape, c);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::int64_t res = 0;
  if (weight(shape) == std::accumulate(c.begin(), c.end(), 0)) {
    if (c.empty()) {
      res = 1;
    } else {
      // Strip the largest value as a horizontal strip.
      int m = c.back();
      std::vector<int> rest(c.begin(), c.end() - 1);
      Partition cur;
      std::function<void(std::size_t, int)> rec = [&](std::size_t i, int rem) {
        if (i == shape.size()) {
          if (rem == 0) {
            Partition nl;
            for (int x : cur)
              if (x > 0) nl.push_back(x);
            res += kostka_number(nl, rest);
          }
          return;
        }
        int next = i + 1 < shape.size() ? shape[i + 1] : 0;
        for (int take = 0; take <= std::min(rem, shape[i] - next); ++take) {
          cur.push_back(shape[i] - take);
          rec(i + 1, rem - take);
          cur.pop_back();
        }
      };
      rec(0, m);
    }
  }
  memo[key] = res;
  return res;
}

std::uint64_t bell_number(int n) {
  std::vector<std::uint64_t> b(n + 1, 0);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    std::uint64_t binom = 1;
    for (int j = 0; j < m; ++j) {
      b[m] += binom * b[j];
      binom = binom * (m - 1 - j) / (j + 1);
    }
  }
  return b[n];
}

std::uint64_t refinement_pair_count(int n) {
  std::uint64_t total = 0;
  for (const auto &P : set_partitions(n, std::max(n, 1))) {
    std::uint64_t prod = 1;
    for (const auto &part : P) prod *= bell_number(static_cast<int>(part.size()));
    total += prod;
  }
  return n == 0 ? 1 : total;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::uint64_t hook_length_count(const Partition &shape) {
  int n = weight(shape);
  std::uint64_t num = factorial(n), den = 1;
  for (std::size_t r = 0; r < shape.size(); ++r)
    for (int c = 0; c < shape[r]; ++c) {
      int below = 0;
      for (std::size_t r2 = r + 1; r2 < shape.size() && shape[r2] > c; ++r2) ++below;
      den *= static_cast<std::uint64_t>(shape[r] - c + below);
    }
  return num / den;
}

SetPartition partition_by_labels(const std::vector<int> &labels, const std::vector<int> &positions) {
  SetPartition out;
  std::map<int, int> where;
  for (int p : positions) {
    int l = labels[p];
    auto it = where.find(l);
    if (it == where.end()) {
      where[l] = static_cast<int>(out.size());
      out.push_back({p});
    } else {
      out[it->second].push_back(p);
    }
  }
  for (auto &part : out) std::sort(part.begin(), part.end());
  std::sort(out.begin(), out.end());
  return out;
}

OrbitClass classify_word(const std::vector<int> &elements, const std::vector<int> &bases) {
  if (elements.size() != bases.size()) throw std::invalid_argument("classify_word: length mismatch");
  std::vector<int> all(bases.size());
  std::iota(all.begin(), all.end(), 0);
  OrbitClass c;
  c.P = partition_by_labels(bases, all);
  for (const auto &part : c.P) c.Q.push_back(partition_by_labels(elements, part));
  return c;
}

std::vector<int> hook_content(int m, int s) {
  std::vector<int> c{m - s};
  for (int i = 0; i < s; ++i) c.push_back(1);
  return c;
}

}  // namespace mub
