#include "mub/specht.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mub/linalg.hpp"

namespace mub {

namespace {

std::vector<std::vector<int>> columns_of(const Tableau &t) {
  std::vector<std::vector<int>> cols;
  if (t.shape.empty()) return cols;
  for (int c = 0; c < t.shape[0]; ++c) {
    std::vector<int> col;
    for (std::size_t r = 0; r < t.shape.size() && t.shape[r] > c; ++r) col.push_back(t.at(static_cast<int>(r), c));
    cols.push_back(col);
  }
  return cols;
}

int perm_sign(const std::vector<int> &p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

std::string set_partition_to_string(const SetPartition &P) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < P.size(); ++i) {
    os << (i ? "," : "") << '{';
    for (std::size_t j = 0; j < P[i].size(); ++j) os << (j ? "," : "") << P[i][j] + 1;
    os << '}';
  }
  os << '}';
  return os.str();
}

std::string tableau_to_string(const Tableau &t) {
  std::ostringstream os;
  int off = 0;
  for (std::size_t r = 0; r < t.shape.size(); ++r) {
    os << (r ? "/" : "");
    for (int c = 0; c < t.shape[r]; ++c) os << t.entries[off + c];
    off += t.shape[r];
  }
  return os.str();
}

std::shared_ptr<const TupleMap> unit_tuples() {
  static auto u = std::make_shared<const TupleMap>(TupleMap{{std::vector<int>{}, Rational(1)}});
  return u;
}

}  // namespace

std::vector<std::pair<Perm, int>> column_stabilizer(const Tableau &t) {
  int k = static_cast<int>(t.entries.size());
  auto cols = columns_of(t);
  std::vector<std::pair<Perm, int>> out;
  Perm base(k + 1);
  std::iota(base.begin(), base.end(), 0);
  std::function<void(std::size_t, Perm &, int)> rec = [&](std::size_t c, Perm &p, int s) {
    if (c == cols.size()) {
      out.emplace_back(p, s);
      return;
    }
    std::vector<int> idx(cols[c].size());
    std::iota(idx.begin(), idx.end(), 0);
    do {
      for (std::size_t i = 0; i < idx.size(); ++i) p[cols[c][i]] = cols[c][idx[i]];
      rec(c + 1, p, s * perm_sign(idx));
    } while (std::next_permutation(idx.begin(), idx.end()));
    for (int v : cols[c]) p[v] = v;
  };
  rec(0, base, 1);
  return out;
}

Tableau canonical_tableau(const Partition &shape) {
  Tableau t{shape, std::vector<int>(weight(shape))};
  std::iota(t.entries.begin(), t.entries.end(), 1);
  return t;
}

Tabloid tabloid_of(const Tableau &t) {
  Tabloid rows;
  int off = 0;
  for (int len : t.shape) {
    std::vector<int> row(t.entries.begin() + off, t.entries.begin() + off + len);
    std::sort(row.begin(), row.end());
    rows.push_back(row);
    off += len;
  }
  return rows;
}

TabloidVector polytabloid(const Tableau &t) {
  TabloidVector v;
  for (const auto &[p, s] : column_stabilizer(t)) {
    Tableau u = t;
    for (int &x : u.entries) x = p[x];
    v[tabloid_of(u)] += s;
  }
  for (auto it = v.begin(); it != v.end();)
    if (sgn(it->second) == 0) it = v.erase(it);
    else ++it;
  return v;
}

Tabloid act_tableau_on_tableau(const Tableau &tau, const Tableau &t, const std::vector<int> &content) {
  if (tau.shape != t.shape) throw std::invalid_argument("act_tableau_on_tableau: shape mismatch");
  Tabloid rows(content.size());
  for (std::size_t x = 0; x < t.entries.size(); ++x) {
    int a = tau.entries[x];
    if (a < 1 || a > static_cast<int>(content.size())) throw std::invalid_argument("act_tableau_on_tableau: content mismatch");
    rows[a - 1].push_back(t.entries[x]);
  }
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (static_cast<int>(rows[a].size()) != content[a]) throw std::invalid_argument("act_tableau_on_tableau: content mismatch");
    std::sort(rows[a].begin(), rows[a].end());
  }
  return rows;
}

std::vector<Tableau> row_equivalents(const Tableau &tau) {
  std::vector<Tableau> out;
  Tableau cur = tau;
  std::vector<int> start(tau.shape.size(), 0);
  for (std::size_t r = 1; r < tau.shape.size(); ++r) start[r] = start[r - 1] + tau.shape[r - 1];
  std::function<void(std::size_t)> rec = [&](std::size_t r) {
    if (r == tau.shape.size()) {
      out.push_back(cur);
      return;
    }
    auto b = cur.entries.begin() + start[r], e = b + tau.shape[r];
    std::vector<int> saved(b, e);
    std::sort(b, e);
    do {
      rec(r + 1);
    } while (std::next_permutation(b, e));
    std::copy(saved.begin(), saved.end(), b);
  };
  rec(0);
  return out;
}

TabloidVector generator_vector(const Tableau &tau, const Partition &lambda, const std::vector<int> &content) {
  if (tau.shape != lambda) throw std::invalid_argument("generator_vector: shape mismatch");
  Tableau t = canonical_tableau(lambda);
  auto stab = column_stabilizer(t);
  std::vector<Tableau> ct;
  for (const auto &[p, s] : stab) {
    Tableau u = t;
    for (int &x : u.entries) x = p[x];
    ct.push_back(u);
  }
  TabloidVector v;
  for (const auto &tp : row_equivalents(tau))
    for (std::size_t i = 0; i < stab.size(); ++i) v[act_tableau_on_tableau(tp, ct[i], content)] += stab[i].second;
  for (auto it = v.begin(); it != v.end();)
    if (sgn(it->second) == 0) it = v.erase(it);
    else ++it;
  return v;
}

TupleMap hook_tuples(const TabloidVector &v, const std::vector<int> &alphabet) {
  TupleMap out;
  for (const auto &[tab, c] : v) {
    std::vector<int> tuple;
    for (std::size_t a = 1; a < tab.size(); ++a) {
      if (tab[a].size() != 1) throw std::invalid_argument("hook_tuples: not a hook content");
      tuple.push_back(alphabet[tab[a][0] - 1]);
    }
    out.emplace_back(std::move(tuple), c);
  }
  return out;
}

std::map<Partition, std::vector<RepVector>> sk_representative_set(int k, int t) {
  std::map<Partition, std::vector<RepVector>> out;
  std::vector<int> alphabet(k);
  std::iota(alphabet.begin(), alphabet.end(), 0);
  for (const auto &lambda : integer_partitions(k)) {
    for (const auto &P : set_partitions(t, k)) {
      int r = static_cast<int>(P.size());
      auto content = hook_content(k, r);
      for (const auto &tau : semistandard_tableaux(lambda, content)) {
        RepVector u;
        u.cls.P = P;
        for (const auto &part : P) u.cls.Q.push_back({part});
        u.bases = std::make_shared<const TupleMap>(hook_tuples(generator_vector(tau, lambda, content), alphabet));
        u.elements.assign(r, PartElements{1, unit_tuples()});
        u.label = "P=" + set_partition_to_string(P) + " tau=" + tableau_to_string(tau);
        out[lambda].push_back(std::move(u));
      }
    }
  }
  return out;
}

std::map<Partition, std::vector<RepVector>> sk_half_representative_set(int k, int t) {
  std::map<Partition, std::vector<RepVector>> out;
  std::vector<int> alphabet(k - 1);
  std::iota(alphabet.begin(), alphabet.end(), 1);
  for (const auto &lambda : integer_partitions(k - 1)) {
    for (const auto &P : set_partitions(t + 1, k)) {
      int r = static_cast<int>(P.size());
      auto content = hook_content(k - 1, r - 1);
      for (const auto &tau : semistandard_tableaux(lambda, content)) {
        RepVector u;
        u.cls.P = P;
        for (const auto &part : P) u.cls.Q.push_back({part});
        u.fixed_basis = 1;
        u.bases = std::make_shared<const TupleMap>(hook_tuples(generator_vector(tau, lambda, content), alphabet));
        u.elements.assign(r, PartElements{1, unit_tuples()});
        u.label = "P=" + set_partition_to_string(P) + " tau=" + tableau_to_string(tau);
        out[lambda].push_back(std::move(u));
      }
    }
  }
  return out;
}

std::vector<Tableau> standard_tableaux(const Partition &shape) {
  return semistandard_tableaux(shape, std::vector<int>(weight(shape), 1));
}

std::size_t specht_dimension_rank(const Partition &lambda) {
  std::map<Tabloid, int> index;
  std::vector<SparseRow> rows;
  for (const auto &t : standard_tableaux(lambda)) {
    SparseRow row;
    for (const auto &[tab, c] : polytabloid(t)) {
      auto [it, fresh] = index.emplace(tab, static_cast<int>(index.size()));
      row[it->second] = c;
    }
    rows.push_back(row);
  }
  return exact_rank(rows);
}

}  // namespace mub
