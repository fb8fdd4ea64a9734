#include <doctest.h>

#include <functional>
#include <set>

#include "mub/combinatorics.hpp"
#include "mub/linalg.hpp"
#include "mub/oracle.hpp"
#include "mub/specht.hpp"
#include "oracles.hpp"

using namespace mub;

namespace {

template <class Key>
struct Indexer {
  std::map<Key, int> ids;
  int operator()(const Key &k) { return ids.emplace(k, static_cast<int>(ids.size())).first->second; }
};

SparseRow row_of(const WordVector &v, Indexer<Word> &ix) {
  SparseRow r;
  for (const auto &[w, c] : v) r[ix(w)] = c;
  return r;
}

WordVector permute_bases(const WordVector &v, const std::vector<int> &pi) {
  WordVector out;
  for (const auto &[w, c] : v) {
    Word x = w;
    for (auto &l : x) l.b = pi[l.b];
    out[x] += c;
  }
  return out;
}

std::size_t sum_squares(const std::map<Partition, std::vector<RepVector>> &rs) {
  std::size_t s = 0;
  for (const auto &[l, v] : rs) s += v.size() * v.size();
  return s;
}

}  // namespace

TEST_CASE("column stabilizer") {
  Tableau t{{3, 2}, {1, 2, 3, 4, 5}};
  auto stab = column_stabilizer(t);
  CHECK(stab.size() == 4);
  std::set<std::set<int>> cols = {{1, 4}, {2, 5}, {3}};
  for (const auto &[perm, sign] : stab) {
    int moved = 0;
    for (int i = 1; i <= 5; ++i) {
      if (perm[i] == i) continue;
      ++moved;
      bool same_col = false;
      for (const auto &c : cols) same_col |= c.count(i) && c.count(perm[i]);
      CHECK(same_col);
    }
    CHECK(sign == (moved / 2 % 2 == 0 ? 1 : -1));
  }

  auto triv = column_stabilizer(Tableau{{4}, {1, 2, 3, 4}});
  REQUIRE(triv.size() == 1);
  CHECK(triv[0].second == 1);

  auto col = column_stabilizer(Tableau{{1, 1, 1}, {1, 2, 3}});
  CHECK(col.size() == 6);
  int sum = 0;
  for (const auto &[p, s] : col) sum += s;
  CHECK(sum == 0);
}

TEST_CASE("polytabloid") {
  auto row = polytabloid(canonical_tableau({3}));
  REQUIRE(row.size() == 1);
  CHECK(row.begin()->second == 1);

  auto col = polytabloid(canonical_tableau({1, 1}));
  CHECK(col.size() == 2);
  CHECK(col.at(Tabloid{{1}, {2}}) == 1);
  CHECK(col.at(Tabloid{{2}, {1}}) == -1);

  auto hook = polytabloid(canonical_tableau({2, 1}));
  CHECK(hook.size() == 2);
  CHECK(hook.at(Tabloid{{1, 2}, {3}}) == 1);
  CHECK(hook.at(Tabloid{{2, 3}, {1}}) == -1);
}

TEST_CASE("tableau action on tabloids") {
  Tableau tau{{3}, {1, 1, 1}};
  CHECK(act_tableau_on_tableau(tau, canonical_tableau({3}), {3}) == Tabloid{{1, 2, 3}});

  Tableau tp{{2, 1}, {1, 1, 2}};
  Tableau t{{2, 1}, {1, 2, 3}};
  CHECK(act_tableau_on_tableau(tp, t, {2, 1}) == Tabloid{{1, 2}, {3}});

  // Row a of the result has content[a] entries.
  Tableau tau2{{3, 2}, {1, 1, 2, 2, 3}};
  for (const auto &st : standard_tableaux({3, 2})) {
    auto r = act_tableau_on_tableau(tau2, st, {2, 2, 1});
    CHECK(r[0].size() == 2);
    CHECK(r[1].size() == 2);
    CHECK(r[2].size() == 1);
  }
  CHECK_THROWS(act_tableau_on_tableau(tau2, canonical_tableau({4, 1}), {2, 2, 1}));
}

TEST_CASE("generator vectors") {
  auto single = generator_vector(Tableau{{4}, {1, 1, 1, 1}}, {4}, {4});
  REQUIRE(single.size() == 1);
  CHECK(single.begin()->first == Tabloid{{1, 2, 3, 4}});

  for (int k = 2; k <= 5; ++k) {
    std::vector<int> e(k, 1);
    e.back() = 2;
    auto v = generator_vector(Tableau{{k}, e}, {k}, {k - 1, 1});
    CHECK(v.size() == static_cast<std::size_t>(k));
    for (const auto &[tab, c] : v) CHECK(c == 1);
  }
}

TEST_CASE("generator vectors are independent") {
  for (int k = 2; k <= 5; ++k)
    for (int r = 0; r < k; ++r) {
      auto content = hook_content(k, r);
      for (const auto &lambda : integer_partitions(k)) {
        auto taus = semistandard_tableaux(lambda, content);
        if (taus.empty()) continue;
        Indexer<Tabloid> ix;
        std::vector<SparseRow> rows;
        for (const auto &tau : taus) {
          SparseRow row;
          for (const auto &[tab, c] : generator_vector(tau, lambda, content)) row[ix(tab)] = c;
          CHECK(!row.empty());
          rows.push_back(row);
        }
        CHECK(exact_rank(rows) == taus.size());
      }
    }
}

TEST_CASE("specht dimension by rank") {
  CHECK(specht_dimension_rank({4}) == 1);
  CHECK(specht_dimension_rank({2, 1}) == 2);
  CHECK(specht_dimension_rank({2, 2}) == 2);
  for (int n = 1; n <= 6; ++n)
    for (const auto &l : integer_partitions(n)) CHECK(specht_dimension_rank(l) == hook_length_count(l));
}

TEST_CASE("S_k representative set multiplicities") {
  auto rs2 = sk_representative_set(2, 1);
  CHECK(rs2.size() == 2);
  CHECK(rs2.at({2}).size() == 1);
  CHECK(rs2.at({1, 1}).size() == 1);

  auto rs = sk_representative_set(4, 2);
  CHECK(rs.at({4}).size() == 2);
  CHECK(rs.at({3, 1}).size() == 3);
  CHECK(rs.at({2, 2}).size() == 1);
  CHECK(rs.at({2, 1, 1}).size() == 1);
  CHECK(sum_squares(rs) == 15);
}

TEST_CASE("S_k sum of squares") {
  for (int t = 1; t <= 3; ++t)
    for (int k = 1; k <= 2 * t + 1; ++k) {
      CAPTURE(k);
      CAPTURE(t);
      auto s = sum_squares(sk_representative_set(k, t));
      if (k >= 2 * t) CHECK(s == bell_number(2 * t));
      CHECK(s == oracle::set_partition_count(2 * t, k));
    }
}

TEST_CASE("S_k total dimension") {
  for (int k = 1; k <= 4; ++k)
    for (int t = 1; t <= 4; ++t) {
      std::uint64_t total = 0, expect = 1;
      for (int i = 0; i < t; ++i) expect *= k;
      for (const auto &[l, v] : sk_representative_set(k, t)) total += v.size() * hook_length_count(l);
      CHECK(total == expect);
    }
}

TEST_CASE("S_k vectors live on their class") {
  for (const auto &[l, vecs] : sk_representative_set(4, 3))
    for (const auto &u : vecs) {
      auto ex = u.expand();
      CHECK(!ex.empty());
      for (const auto &[w, c] : ex) {
        std::vector<int> el, ba;
        for (const auto &x : w) {
          CHECK(x.e == 0);
          el.push_back(x.e);
          ba.push_back(x.b);
        }
        CHECK(classify_word(el, ba) == u.cls);
      }
    }
}

TEST_CASE("isotypic components are S_k-invariant and complementary") {
  for (int k = 2; k <= 4; ++k)
    for (int t = 1; t <= 2; ++t) {
      CAPTURE(k);
      CAPTURE(t);
      auto perms = oracle::all_permutations(k);
      Indexer<Word> ix;
      std::vector<SparseRow> all;
      std::uint64_t expect = 1;
      for (int i = 0; i < t; ++i) expect *= k;
      for (const auto &[l, vecs] : sk_representative_set(k, t)) {
        std::vector<SparseRow> comp;
        for (const auto &u : vecs) {
          auto ex = u.expand();
          for (const auto &pi : perms) comp.push_back(row_of(permute_bases(ex, pi), ix));
        }
        CHECK(exact_rank(comp) == vecs.size() * hook_length_count(l));
        all.insert(all.end(), comp.begin(), comp.end());
      }
      CHECK(exact_rank(all) == expect);
    }
}

TEST_CASE("bases-only Phi oracle") {
  for (int k = 2; k <= 4; ++k)
    for (int t = 1; t <= 2; ++t) {
      auto rep = brute_force_phi_oracle(2, k, t, Mode::BasesOnly, 20, 1e-8);
      CAPTURE(rep.summary());
      CHECK(rep.ok());
    }
  for (int k = 2; k <= 4; ++k) {
    auto rep = brute_force_phi_oracle(2, k, 2, Mode::BasesOnly, 10, 1e-8, 7, true);
    CAPTURE(rep.summary());
    CHECK(rep.ok());
  }
}

TEST_CASE("half-level S_{k-1} set") {
  // Words x_{1,1} w; orbits of pairs under S_{k-1} on bases 2..k.
  for (int k = 2; k <= 4; ++k)
    for (int t = 1; t <= 2; ++t) {
      std::size_t s = sum_squares(sk_half_representative_set(k, t));
      std::set<std::vector<int>> orbits;
      auto perms = oracle::all_permutations(k - 1);
      std::vector<int> w(2 * t);
      std::function<void(int)> rec = [&](int p) {
        if (p == 2 * t) {
          std::vector<int> best;
          for (const auto &pi : perms) {
            std::vector<int> img;
            for (int b : w) img.push_back(b == 0 ? 0 : pi[b - 1] + 1);
            if (best.empty() || img < best) best = img;
          }
          orbits.insert(best);
          return;
        }
        for (int b = 0; b < k; ++b) {
          w[p] = b;
          rec(p + 1);
        }
      };
      rec(0);
      CHECK(s == orbits.size());
    }
}
