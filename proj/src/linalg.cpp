#include "mub/linalg.hpp"

namespace mub {

namespace {

void axpy(SparseRow &row, const Rational &a, const SparseRow &x) {
  for (const auto &[c, v] : x) {
    auto &slot = row[c];
    slot -= a * v;
    if (sgn(slot) == 0) row.erase(c);
  }
}

}  // namespace

SparseRow Echelon::reduce(SparseRow row) const {
  for (auto it = row.begin(); it != row.end();)
    if (sgn(it->second) == 0) it = row.erase(it);
    else ++it;
  SparseRow done;
  while (!row.empty()) {
    auto top = std::prev(row.end());
    auto piv = rows_.find(top->first);
    if (piv == rows_.end()) {
      done[top->first] = top->second;
      row.erase(top);
    } else {
      Rational a = top->second;
      axpy(row, a, piv->second);
    }
  }
  return done;
}

bool Echelon::add(SparseRow row, SparseRow *out) {
  SparseRow r = reduce(std::move(row));
  if (out) *out = r;
  if (r.empty()) return false;
  int c = std::prev(r.end())->first;
  Rational lead = r[c];
  for (auto &[col, v] : r) v /= lead;
  rows_[c] = std::move(r);
  return true;
}

std::map<int, SparseRow> Echelon::reduced_rows() const {
  std::map<int, SparseRow> out;
  for (const auto &[c, row] : rows_) {
    SparseRow r = row;
    // Eliminate lower pivots using already reduced rows.
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto it = r.begin(); it != r.end(); ++it) {
        if (it->first == c) continue;
        auto p = out.find(it->first);
        if (p == out.end()) continue;
        Rational a = it->second;
        axpy(r, a, p->second);
        changed = true;
        break;
      }
    }
    out[c] = std::move(r);
  }
  return out;
}

std::size_t exact_rank(const std::vector<SparseRow> &rows) {
  Echelon e;
  for (const auto &r : rows) e.add(r);
  return e.rank();
}

}  // namespace mub
