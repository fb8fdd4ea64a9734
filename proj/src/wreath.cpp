#include "mub/wreath.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "mub/specht.hpp"

namespace mub {

namespace {

bool reverse_nu_order_flag = false;

std::vector<Partition> nu_list(int d) {
  auto nus = integer_partitions(d);
  if (reverse_nu_order_flag) std::reverse(nus.begin(), nus.end());
  return nus;
}

using TupleCache = std::map<std::tuple<Tableau, std::vector<int>, std::vector<int>>, std::shared_ptr<const TupleMap>>;

std::shared_ptr<const TupleMap> cached_tuples(TupleCache &cache, const Tableau &tau, const std::vector<int> &content,
                                              const std::vector<int> &alphabet) {
  auto key = std::make_tuple(tau, content, alphabet);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto v = std::make_shared<const TupleMap>(hook_tuples(generator_vector(tau, tau.shape, content), alphabet));
  cache.emplace(key, v);
  return v;
}

std::string sp_string(const SetPartition &P) {
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

std::string tab_string(const Tableau &t) {
  std::ostringstream os;
  int off = 0;
  for (std::size_t r = 0; r < t.shape.size(); ++r) {
    os << (r ? "/" : "");
    for (int c = 0; c < t.shape[r]; ++c) os << t.entries[off + c];
    off += t.shape[r];
  }
  return os.str();
}

std::string class_string(const OrbitClass &c) {
  std::ostringstream os;
  os << "P=" << sp_string(c.P) << " Q=";
  for (const auto &q : c.Q) os << sp_string(q);
  return os.str();
}

// One copy of S^Lambda inside the k-part: the basis-label tuple map over the
// r parts, obtained from the per-colour generators with the identity coset.
struct KPart {
  BlockKey lambda;
  std::shared_ptr<const TupleMap> tuples;
  std::string label;
};

std::vector<KPart> k_parts(int k, int r, const std::vector<int> &j, int ell, int label_offset, TupleCache &cache) {
  // Colour a owns a contiguous block of basis labels; colour 0's block also
  // holds the labels left unused by the parts.
  std::vector<std::vector<int>> members(ell), alphabets(ell);
  for (int i = 0; i < r; ++i) members[j[i]].push_back(i);
  int next = label_offset;
  for (int a = 0; a < ell; ++a) {
    int size = static_cast<int>(members[a].size()) + (a == 0 ? k - r : 0);
    for (int x = 0; x < size; ++x) alphabets[a].push_back(next++);
  }
  std::vector<std::vector<int>> contents(ell);
  for (int a = 0; a < ell; ++a) {
    int n = static_cast<int>(members[a].size());
    contents[a] = a == 0 ? hook_content(k - r + n, n) : hook_content(n, n);
  }
  std::vector<std::vector<Partition>> shape_choices(ell);
  for (int a = 0; a < ell; ++a) shape_choices[a] = integer_partitions(static_cast<int>(alphabets[a].size()));

  std::vector<KPart> out;
  BlockKey lam(ell);
  std::function<void(int)> over_shapes = [&](int a) {
    if (a == ell) {
      std::vector<std::vector<Tableau>> taus(ell);
      for (int b = 0; b < ell; ++b) {
        taus[b] = semistandard_tableaux(lam[b], contents[b]);
        if (taus[b].empty()) return;
      }
      std::vector<const Tableau *> pick(ell);
      std::function<void(int)> over_taus = [&](int b) {
        if (b == ell) {
          TupleMap combined{{std::vector<int>(r, -1), Rational(1)}};
          std::ostringstream lab;
          lab << "tau=";
          for (int c = 0; c < ell; ++c) {
            lab << (c ? "," : "") << tab_string(*pick[c]);
            if (alphabets[c].empty()) continue;
            auto tm = cached_tuples(cache, *pick[c], contents[c], alphabets[c]);
            TupleMap next;
            for (const auto &[tup, coef] : combined)
              for (const auto &[sub, sc] : *tm) {
                auto t2 = tup;
                for (std::size_t m = 0; m < sub.size(); ++m) t2[members[c][m]] = sub[m];
                next.emplace_back(std::move(t2), coef * sc);
              }
            combined = std::move(next);
          }
          std::sort(combined.begin(), combined.end());
          out.push_back({lam, std::make_shared<const TupleMap>(std::move(combined)), lab.str()});
          return;
        }
        for (const auto &t : taus[b]) {
          pick[b] = &t;
          over_taus(b + 1);
        }
      };
      over_taus(0);
      return;
    }
    for (const auto &p : shape_choices[a]) {
      lam[a] = p;
      over_shapes(a + 1);
    }
  };
  over_shapes(0);
  return out;
}

// Enumerate j and sigma for the parts listed in `parts`; calls back with the
// element tuple maps per part and a label.
void over_j_sigma(int d, const std::vector<int> &qs, int ell, TupleCache &cache,
                  const std::function<void(const std::vector<int> &, const std::vector<std::shared_ptr<const TupleMap>> &,
                                           const std::string &)> &emit) {
  auto nus = nu_list(d);
  int r = static_cast<int>(qs.size());
  std::vector<int> alphabet(d);
  std::iota(alphabet.begin(), alphabet.end(), 0);
  std::vector<int> j(r, 0);
  std::function<void(int)> over_j = [&](int i) {
    if (i == r) {
      std::vector<std::vector<Tableau>> sig(r);
      for (int m = 0; m < r; ++m) {
        sig[m] = semistandard_tableaux(nus[j[m]], hook_content(d, qs[m]));
        if (sig[m].empty()) return;
      }
      std::vector<std::shared_ptr<const TupleMap>> maps(r);
      std::vector<const Tableau *> pick(r);
      std::function<void(int)> over_sigma = [&](int m) {
        if (m == r) {
          std::ostringstream lab;
          lab << "j=";
          for (int x = 0; x < r; ++x) lab << (x ? "," : "") << j[x] + 1;
          lab << " sigma=";
          for (int x = 0; x < r; ++x) lab << (x ? "," : "") << tab_string(*pick[x]);
          emit(j, maps, lab.str());
          return;
        }
        for (const auto &s : sig[m]) {
          pick[m] = &s;
          maps[m] = cached_tuples(cache, s, hook_content(d, qs[m]), alphabet);
          over_sigma(m + 1);
        }
      };
      over_sigma(0);
      return;
    }
    for (int a = 0; a < ell; ++a) {
      j[i] = a;
      over_j(i + 1);
    }
  };
  over_j(0);
}

TupleCache &global_cache() {
  static TupleCache cache;
  return cache;
}

}  // namespace

void set_reverse_nu_order_for_testing(bool on) { reverse_nu_order_flag = on; }

std::vector<Partition> gamma_profile(const std::vector<int> &j, int r, int k, int ell) {
  std::vector<int> count(ell, 0);
  for (int x : j) ++count[x - 1];
  std::vector<Partition> out(ell);
  if (k - r > 0) out[0].push_back(k - r);
  for (int i = 0; i < count[0]; ++i) out[0].push_back(1);
  for (int a = 1; a < ell; ++a) out[a].assign(count[a], 1);
  return out;
}

RepSet wreath_representative_set(int d, int k, int t) {
  RepSet out;
  auto &cache = global_cache();
  int ell = static_cast<int>(nu_list(d).size());
  for (const auto &cls : orbit_classes(t, k, d)) {
    auto qs = cls.part_sizes_q();
    int r = static_cast<int>(qs.size());
    over_j_sigma(d, qs, ell, cache,
                 [&](const std::vector<int> &j, const std::vector<std::shared_ptr<const TupleMap>> &maps,
                     const std::string &jlab) {
                   for (auto &kp : k_parts(k, r, j, ell, 0, cache)) {
                     RepVector u;
                     u.cls = cls;
                     u.bases = kp.tuples;
                     for (int i = 0; i < r; ++i) u.elements.push_back({0, maps[i]});
                     u.label = class_string(cls) + " " + jlab + " " + kp.label;
                     out[kp.lambda].push_back(std::move(u));
                   }
                 });
  }
  return out;
}

RepSet half_level_representative_set(int d, int k, int t) {
  RepSet out;
  auto &cache = global_cache();
  int ell = static_cast<int>(nu_list(d).size());
  std::vector<int> alpha1(d - 1);
  std::iota(alpha1.begin(), alpha1.end(), 1);
  for (const auto &cls : orbit_classes(t + 1, k, d)) {
    auto qs = cls.part_sizes_q();
    int r = static_cast<int>(qs.size());
    std::vector<int> rest(qs.begin() + 1, qs.end());
    auto content1 = hook_content(d - 1, qs[0] - 1);
    for (const auto &lambda1 : integer_partitions(d - 1)) {
      for (const auto &tau1 : semistandard_tableaux(lambda1, content1)) {
        auto first = cached_tuples(cache, tau1, content1, alpha1);
        over_j_sigma(d, rest, ell, cache,
                     [&](const std::vector<int> &j, const std::vector<std::shared_ptr<const TupleMap>> &maps,
                         const std::string &jlab) {
                       for (auto &kp : k_parts(k - 1, r - 1, j, ell, 1, cache)) {
                         RepVector u;
                         u.cls = cls;
                         u.fixed_basis = 1;
                         u.bases = kp.tuples;
                         u.elements.push_back({1, first});
                         for (int i = 0; i + 1 < r; ++i) u.elements.push_back({0, maps[i]});
                         u.label = class_string(cls) + " tau0=" + tab_string(tau1) + " " + jlab + " " + kp.label;
                         BlockKey key{lambda1};
                         key.insert(key.end(), kp.lambda.begin(), kp.lambda.end());
                         out[key].push_back(std::move(u));
                       }
                     });
      }
    }
  }
  return out;
}

std::uint64_t wreath_specht_dimension(const BlockKey &lambda, int d) {
  auto nus = nu_list(d);
  int k = 0;
  for (const auto &p : lambda) k += weight(p);
  std::uint64_t dim = factorial(k);
  for (std::size_t a = 0; a < lambda.size(); ++a) {
    int m = weight(lambda[a]);
    dim /= factorial(m);
    dim *= hook_length_count(lambda[a]);
    std::uint64_t h = hook_length_count(nus[a]);
    for (int i = 0; i < m; ++i) dim *= h;
  }
  return dim;
}

DimensionReport total_dimension_check(const RepSet &repset, int d, int k, int t) {
  DimensionReport rep;
  rep.expected = 1;
  for (int i = 0; i < t; ++i) rep.expected *= static_cast<std::uint64_t>(d) * k;
  std::ostringstream os;
  for (const auto &[key, vecs] : repset) {
    auto dim = wreath_specht_dimension(key, d);
    rep.total += dim * vecs.size();
    os << block_key_to_string(key) << ":" << vecs.size() << "x" << dim << " ";
  }
  rep.ok = rep.total == rep.expected;
  rep.detail = os.str();
  return rep;
}

}  // namespace mub
