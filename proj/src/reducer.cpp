#include "mub/reducer.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>

namespace mub {

LinearForm &LinearForm::operator+=(const LinearForm &o) {
  add_scaled(o, Rational(1));
  return *this;
}

LinearForm &LinearForm::operator-=(const LinearForm &o) {
  add_scaled(o, Rational(-1));
  return *this;
}

LinearForm &LinearForm::operator*=(const Rational &a) {
  if (sgn(a) == 0) {
    constant = 0;
    coeffs.clear();
    return *this;
  }
  constant *= a;
  for (auto &[v, c] : coeffs) c *= a;
  return *this;
}

void LinearForm::add_scaled(const LinearForm &o, const Rational &a) {
  constant += a * o.constant;
  for (const auto &[v, c] : o.coeffs) {
    auto &slot = coeffs[v];
    slot += a * c;
    if (sgn(slot) == 0) coeffs.erase(v);
  }
}

bool LinearForm::operator==(const LinearForm &o) const { return constant == o.constant && coeffs == o.coeffs; }

double LinearForm::evaluate(const std::vector<double> &values) const {
  double s = constant.get_d();
  for (const auto &[v, c] : coeffs) s += c.get_d() * values.at(v);
  return s;
}

std::string LinearForm::to_string() const {
  std::ostringstream os;
  os << constant.get_str();
  for (const auto &[v, c] : coeffs) os << (sgn(c) < 0 ? " - " : " + ") << Rational(abs(c)).get_str() << "*y" << v;
  return os.str();
}

bool graded_lex_less(const Word &a, const Word &b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].b != b[i].b) return a[i].b < b[i].b;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].e != b[i].e) return a[i].e < b[i].e;
  return false;
}

namespace {

inline int bas(char c) { return static_cast<unsigned char>(c) >> 4; }
inline int ele(char c) { return static_cast<unsigned char>(c) & 15; }
inline char mk(int e, int b) { return static_cast<char>((b << 4) | e); }

// Graded-lex on encoded words: basis sequence first, then elements.
bool key_less(const std::string &a, const std::string &b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (bas(a[i]) != bas(b[i])) return bas(a[i]) < bas(b[i]);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (ele(a[i]) != ele(b[i])) return ele(a[i]) < ele(b[i]);
  return false;
}

// First-occurrence relabelling of a letter sequence read from `get`.
template <class Get>
std::string relabel(std::size_t n, Get get) {
  int bmap[16], emap[16][16], ecount[16];
  std::fill(std::begin(bmap), std::end(bmap), -1);
  std::fill(std::begin(ecount), std::end(ecount), 0);
  int nb = 0;
  std::string out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    char c = get(i);
    int b = bas(c), e = ele(c);
    if (bmap[b] < 0) {
      bmap[b] = nb++;
      std::fill(std::begin(emap[b]), std::end(emap[b]), -1);
    }
    if (emap[b][e] < 0) emap[b][e] = ecount[b]++;
    out[i] = mk(emap[b][e], bmap[b]);
  }
  return out;
}

thread_local std::set<std::string> in_progress;

}  // namespace

Reducer::Reducer(int d, int k) : d_(d), k_(k) {
  if (d < 1 || d > 16 || k < 1 || k > 16) throw std::invalid_argument("Reducer: d and k must lie in 1..16");
}

Reducer::Key Reducer::encode(const Word &w) const {
  Key s(w.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) s[i] = mk(w[i].e, w[i].b);
  return s;
}

Word Reducer::decode(const Key &s) const {
  Word w(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) w[i] = {ele(s[i]), bas(s[i])};
  return w;
}

Reducer::Key Reducer::canonical_key(const Key &s) const {
  const std::size_t n = s.size();
  if (n == 0) return s;
  Key best;
  bool have = false;
  for (std::size_t r = 0; r < n; ++r) {
    for (int dir = 0; dir < 2; ++dir) {
      Key cand = dir == 0 ? relabel(n, [&](std::size_t i) { return s[(r + i) % n]; })
                          : relabel(n, [&](std::size_t i) { return s[(r + n - i) % n]; });
      if (!have || key_less(cand, best)) {
        best = std::move(cand);
        have = true;
      }
    }
  }
  return best;
}

Word Reducer::canonicalize(const Word &w) const { return decode(canonical_key(encode(w))); }

int Reducer::intern(const Key &s) {
  auto it = var_index_.find(s);
  if (it != var_index_.end()) return it->second;
  int id = static_cast<int>(var_words_.size());
  var_index_.emplace(s, id);
  var_words_.push_back(decode(s));
  return id;
}

bool Reducer::rule4_applies(const Key &s) const {
  const std::size_t n = s.size();
  if (n < 3) return false;
  for (std::size_t p = 0; p < n; ++p)
    if (s[p] == s[(p + 2) % n] && bas(s[(p + 1) % n]) != bas(s[p])) return true;
  return false;
}

LinearForm Reducer::reduce(const Word &w) {
  for (const auto &l : w)
    if (l.e < 0 || l.e >= d_ || l.b < 0 || l.b >= k_) throw std::invalid_argument("reduce: letter out of range");
  Key c = canonical_key(encode(w));
  {
    std::shared_lock lock(mutex_);
    auto it = memo_.find(c);
    if (it != memo_.end()) return it->second;
  }
  std::unique_lock lock(mutex_);
  return reduce_key(c, 0);
}

std::size_t Reducer::memo_size() const {
  std::shared_lock lock(mutex_);
  return memo_.size();
}

LinearForm Reducer::reduce_key(const Key &s, int depth) {
  const std::size_t n = s.size();
  LinearForm out;
  if (n == 0) {
    out.constant = d_;
    return out;
  }
  if (n == 1) {
    out.constant = 1;
    return out;
  }
  if (auto it = memo_.find(s); it != memo_.end()) return it->second;
  if (depth > 10000) throw CycleDetected("reduce: iteration cap exceeded at " + word_to_string(decode(s)));
  if (!in_progress.insert(s).second) throw CycleDetected("reduce: cycle at " + word_to_string(decode(s)));
  auto sub = [&](const Key &t) { return reduce_key(canonical_key(t), depth + 1); };
  auto finish = [&](LinearForm f) {
    in_progress.erase(s);
    memo_.emplace(s, f);
    return f;
  };

  // Rule 1: cyclically adjacent letters of one basis.
  for (std::size_t p = 0; p < (n == 2 ? 1 : n); ++p) {
    std::size_t q = (p + 1) % n;
    if (bas(s[p]) != bas(s[q])) continue;
    ++rule_hits_[1];
    if (ele(s[p]) != ele(s[q])) return finish(LinearForm{});
    Key t = s;
    t.erase(q, 1);
    return finish(sub(t));
  }

  int bcount[16] = {0};
  int lcount[16][16] = {{0}};
  for (char c : s) {
    ++bcount[bas(c)];
    ++lcount[bas(c)][ele(c)];
  }

  // Rule 2: a basis occurring once averages out.
  for (std::size_t p = 0; p < n; ++p) {
    if (bcount[bas(s[p])] != 1) continue;
    ++rule_hits_[2];
    Key t = s;
    t.erase(p, 1);
    LinearForm f = sub(t);
    f *= Rational(1, d_);
    return finish(f);
  }

  // Rule 3: largest letter whose element occurs once in a repeated basis.
  int best = -1;
  for (std::size_t p = 0; p < n; ++p) {
    int b = bas(s[p]), e = ele(s[p]);
    if (bcount[b] >= 2 && lcount[b][e] == 1 && (best < 0 || static_cast<unsigned char>(s[p]) > static_cast<unsigned char>(s[best])))
      best = static_cast<int>(p);
  }
  if (best >= 0) {
    ++rule_hits_[3];
    int b = bas(s[best]), e = ele(s[best]);
    std::vector<int> present;
    for (int x = 0; x < 16; ++x)
      if (lcount[b][x] > 0) present.push_back(x);
    int m = static_cast<int>(present.size());
    Key t0 = s;
    t0.erase(best, 1);
    LinearForm f = sub(t0);
    for (int x : present) {
      if (x == e) continue;
      Key t = s;
      t[best] = mk(x, b);
      f -= sub(t);
    }
    f *= Rational(1, d_ - m + 1);
    return finish(f);
  }

  // Rule 4: x y x collapses to x / d.
  if (n >= 3) {
    for (std::size_t p = 0; p < n; ++p) {
      if (s[p] != s[(p + 2) % n]) continue;
      ++rule_hits_[4];
      Key t;
      for (std::size_t i = 0; i < n; ++i)
        if (i != (p + 1) % n && i != (p + 2) % n) t.push_back(s[i]);
      LinearForm f = sub(t);
      f *= Rational(1, d_);
      return finish(f);
    }
  }

  // Rule 5: x A x B x C = x B x A x C when that helps.
  Key chosen;
  bool found = false;
  for (std::size_t o1 = 0; o1 < n; ++o1)
    for (std::size_t o2 = o1 + 1; o2 < n; ++o2) {
      if (s[o2] != s[o1]) continue;
      for (std::size_t o3 = o2 + 1; o3 < n; ++o3) {
        if (s[o3] != s[o1]) continue;
        Key A = s.substr(o1 + 1, o2 - o1 - 1), B = s.substr(o2 + 1, o3 - o2 - 1);
        Key C = s.substr(o3 + 1) + s.substr(0, o1);
        Key t = Key(1, s[o1]) + B + Key(1, s[o1]) + A + Key(1, s[o1]) + C;
        Key ct = canonical_key(t);
        if (!(key_less(ct, s) || rule4_applies(ct))) continue;
        if (!found || key_less(ct, chosen)) {
          chosen = ct;
          found = true;
        }
      }
    }
  if (found) {
    ++rule_hits_[5];
    return finish(reduce_key(chosen, depth + 1));
  }

  ++rule_hits_[0];
  LinearForm f;
  f.coeffs[intern(s)] = 1;
  return finish(f);
}

void Reducer::for_each_orbit_word(int length, const std::vector<std::vector<int>> &tied,
                                  const std::function<void(const Word &)> &f, bool bases_only) const {
  std::vector<int> leader(length, -1);
  for (const auto &g : tied) {
    if (g.empty()) continue;
    int lead = *std::min_element(g.begin(), g.end());
    for (int p : g)
      if (p != lead) leader[p] = lead;
  }
  Word w(length);
  int ecount[16] = {0};
  std::function<void(int, int)> rec = [&](int p, int nb) {
    if (p == length) {
      f(w);
      return;
    }
    if (leader[p] >= 0) {
      w[p] = w[leader[p]];
      rec(p + 1, nb);
      return;
    }
    for (int b = 0; b <= nb && b < k_; ++b) {
      bool fresh_basis = b == nb;
      if (fresh_basis) ecount[b] = 0;
      for (int e = 0; e <= ecount[b] && e < (bases_only ? 1 : d_); ++e) {
        bool fresh_el = e == ecount[b];
        if (fresh_el) ++ecount[b];
        w[p] = {e, b};
        rec(p + 1, fresh_basis ? nb + 1 : nb);
        if (fresh_el) --ecount[b];
      }
    }
  };
  rec(0, 0);
}

std::vector<int> Reducer::variables_up_to(int degree, bool bases_only) const {
  std::vector<int> ids;
  for (std::size_t i = 0; i < var_words_.size(); ++i) {
    const auto &w = var_words_[i];
    if (static_cast<int>(w.size()) > degree) continue;
    if (bases_only && std::any_of(w.begin(), w.end(), [](const Letter &l) { return l.e != 0; })) continue;
    ids.push_back(static_cast<int>(i));
  }
  std::sort(ids.begin(), ids.end(), [&](int a, int b) { return graded_lex_less(var_words_[a], var_words_[b]); });
  return ids;
}

std::vector<int> Reducer::discover_variables(int degree) {
  std::set<std::string> seen;
  for_each_orbit_word(degree, {}, [&](const Word &w) {
    Key c = canonical_key(encode(w));
    if (seen.insert(c).second) {
      std::unique_lock lock(mutex_);
      reduce_key(c, 0);
    }
  });
  return variables_up_to(degree, false);
}

std::vector<int> Reducer::discover_bases_only_variables(int degree) {
  std::set<std::string> seen;
  for_each_orbit_word(
      degree, {},
      [&](const Word &w) {
        Key c = canonical_key(encode(w));
        if (seen.insert(c).second) {
          std::unique_lock lock(mutex_);
          reduce_key(c, 0);
        }
      },
      true);
  return variables_up_to(degree, true);
}

std::vector<ConstraintRow> Reducer::ideal_sweep_constraints(int budget, bool bases_only) {
  std::map<int, int> column_of;
  auto refresh_columns = [&] {
    std::vector<int> ids(var_words_.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
    std::sort(ids.begin(), ids.end(), [&](int a, int b) { return graded_lex_less(var_words_[a], var_words_[b]); });
    column_of.clear();
    for (std::size_t c = 0; c < ids.size(); ++c) column_of[ids[c]] = static_cast<int>(c);
  };
  refresh_columns();
  Echelon ech;
  std::vector<ConstraintRow> out;
  auto consider = [&](const LinearForm &f, const std::string &family, const Word &w) {
    if (f.is_zero()) return;
    for (const auto &[v, c] : f.coeffs)
      if (!column_of.count(v)) {
        refresh_columns();
        break;
      }
    if (ech.add(to_row(f, column_of))) out.push_back({f, family + " " + word_to_string(w)});
  };
  auto L = [&](const Word &w) { return reduce(w); };

  // (i) x_{i,j} x_{i',j} - delta x_{i,j}
  for (int n = 2; n <= budget; ++n)
    for_each_orbit_word(
        n, {},
        [&](const Word &w) {
          if (w[0].b != w[1].b) return;
          Word rest(w.begin() + 1, w.end());
          LinearForm f = L(w);
          if (w[0].e == w[1].e) f -= L(rest);
          consider(f, "(i)", w);
        },
        bases_only);

  // (ii) sum_i x_{i,j} - 1
  if (!bases_only)
    for (int n = 0; n + 1 <= budget; ++n)
      for_each_orbit_word(n, {}, [&](const Word &p) {
        int nb = 0;
        for (const auto &l : p) nb = std::max(nb, l.b + 1);
        for (int j = 0; j <= nb && j < k_; ++j) {
          LinearForm f = L(p);
          f *= Rational(-1);
          Word w(1 + p.size());
          std::copy(p.begin(), p.end(), w.begin() + 1);
          for (int i = 0; i < d_; ++i) {
            w[0] = {i, j};
            f += L(w);
          }
          w[0] = {0, j};
          consider(f, "(ii)", w);
        }
      });

  // (iii) x y x - x / d
  for (int n = 3; n <= budget; ++n)
    for_each_orbit_word(
        n, {{0, 2}},
        [&](const Word &w) {
          if (w[1].b == w[0].b) return;
          Word rest{w[0]};
          rest.insert(rest.end(), w.begin() + 3, w.end());
          LinearForm f = L(rest);
          f *= Rational(-1, d_);
          f += L(w);
          consider(f, "(iii)", w);
        },
        bases_only);

  // (iv) [x U x, x V x]
  for (int lu = 0; lu <= 3; ++lu)
    for (int lv = 0; lv <= 3; ++lv) {
      int dq = lu + lv + commutator_offset_;
      for (int lp = 0; dq + lp <= budget; ++lp) {
        int n = lu + lv + 3 + lp;
        for_each_orbit_word(
            n, {{0, lu + 1, lu + lv + 2}},
            [&](const Word &w) {
              Word sw;
              sw.push_back(w[0]);
              sw.insert(sw.end(), w.begin() + lu + 2, w.begin() + lu + lv + 2);
              sw.push_back(w[0]);
              sw.insert(sw.end(), w.begin() + 1, w.begin() + lu + 1);
              sw.push_back(w[0]);
              sw.insert(sw.end(), w.begin() + lu + lv + 3, w.end());
              LinearForm f = L(w);
              f -= L(sw);
              consider(f, "(iv)", w);
            },
            bases_only);
      }
    }
  return out;
}

InfeasibilityReport detect_linear_infeasibility(const std::vector<ConstraintRow> &rows) {
  InfeasibilityReport rep;
  // Variable columns are shifted above the constant column -1; row tags sit below it.
  std::map<int, int> col;
  for (const auto &r : rows)
    for (const auto &[v, c] : r.form.coeffs) col.emplace(v, 0);
  int next = 0;
  for (auto &[v, c] : col) c = next++;
  Echelon ech;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    SparseRow row = Reducer::to_row(rows[i].form, col);
    row[-2 - static_cast<int>(i)] = 1;
    SparseRow red;
    ech.add(row, &red);
    if (!red.empty() && std::prev(red.end())->first == -1) {
      rep.verdict = Verdict::Infeasible;
      rep.residual = red[-1];
      for (const auto &[c, v] : red)
        if (c <= -2) rep.witness.emplace_back(static_cast<std::size_t>(-2 - c), v);
      std::sort(rep.witness.begin(), rep.witness.end());
      return rep;
    }
  }
  return rep;
}

SparseRow Reducer::to_row(const LinearForm &f, const std::map<int, int> &column_of) {
  SparseRow r;
  if (sgn(f.constant) != 0) r[-1] = f.constant;
  for (const auto &[v, c] : f.coeffs) r[column_of.at(v)] = c;
  return r;
}

}  // namespace mub
