#include "mub/types.hpp"

#include <functional>
#include <sstream>

namespace mub {

std::string word_to_string(const Word &w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << 'x' << (w[i].e + 1) << ',' << (w[i].b + 1);
  }
  return os.str();
}

std::string partition_to_string(const Partition &p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ')';
  return os.str();
}

std::string block_key_to_string(const BlockKey &k) {
  std::ostringstream os;
  for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "|" : "") << partition_to_string(k[i]);
  return os.str();
}

WordVector RepVector::expand() const {
  WordVector out;
  const int n = cls.length();
  const int r = static_cast<int>(cls.P.size());
  Word w(n);
  for (const auto &[btuple, bcoef] : *bases) {
    std::vector<int> basis(r);
    for (int i = 0; i < r; ++i) basis[i] = i < fixed_basis ? i : btuple[i - fixed_basis];
    for (int i = 0; i < r; ++i)
      for (int p : cls.P[i]) w[p].b = basis[i];
    std::function<void(int, Rational)> rec = [&](int i, Rational c) {
      if (i == r) {
        out[w] += c;
        return;
      }
      const auto &pe = elements[i];
      for (const auto &[etuple, ecoef] : *pe.tuples) {
        const auto &qs = cls.Q[i];
        for (std::size_t m = 0; m < qs.size(); ++m) {
          int e = static_cast<int>(m) < pe.fixed ? static_cast<int>(m) : etuple[m - pe.fixed];
          for (int p : qs[m]) w[p].e = e;
        }
        rec(i + 1, c * ecoef);
      }
    };
    rec(0, bcoef);
  }
  for (auto it = out.begin(); it != out.end();)
    if (sgn(it->second) == 0) it = out.erase(it);
    else ++it;
  return out;
}

std::size_t RepVector::support_size() const {
  std::size_t s = bases->size();
  for (const auto &pe : elements) s *= pe.tuples->size();
  return s;
}

}  // namespace mub
