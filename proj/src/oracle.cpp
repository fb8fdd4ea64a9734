#include "mub/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "mub/linalg.hpp"

namespace mub {

namespace {

bool is_odd_prime(int d) {
  if (d < 3 || d % 2 == 0) return false;
  for (int p = 3; p * p <= d; p += 2)
    if (d % p == 0) return false;
  return true;
}

}  // namespace

MubModel::MubModel(int d, int k) : d_(d), k_(k) {
  using C = std::complex<double>;
  if (!((d == 2 && k <= 3) || (is_odd_prime(d) && k <= d + 1)) || k < 1)
    throw std::invalid_argument("MubModel: no explicit construction for this d,k");
  const double pi = std::acos(-1.0);
  std::vector<std::vector<Eigen::VectorXcd>> bases;
  bases.push_back({});
  for (int a = 0; a < d; ++a) bases[0].push_back(Eigen::VectorXcd::Unit(d, a));
  if (d == 2) {
    const double s = 1 / std::sqrt(2.0);
    bases.push_back({Eigen::Vector2cd(s, s), Eigen::Vector2cd(s, -s)});
    bases.push_back({Eigen::Vector2cd(s, C(0, s)), Eigen::Vector2cd(s, C(0, -s))});
  } else {
    for (int m = 0; m < d; ++m) {
      std::vector<Eigen::VectorXcd> basis;
      for (int a = 0; a < d; ++a) {
        Eigen::VectorXcd v(d);
        for (int x = 0; x < d; ++x) v[x] = std::polar(1 / std::sqrt(double(d)), 2 * pi * ((m * x * x + a * x) % d) / d);
        basis.push_back(v);
      }
      bases.push_back(basis);
    }
  }
  for (int b = 0; b < k; ++b) {
    X_.push_back({});
    for (const auto &v : bases[b]) X_.back().push_back(v * v.adjoint());
  }
}

double MubModel::L(const Word &w) const {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(d_, d_);
  for (const auto &l : w) M = M * X_.at(l.b).at(l.e);
  return M.trace().real();
}

double MubModel::L_invariant(const Word &w) const {
  // Average over injective relabellings of the bases and elements that occur.
  std::vector<int> bases;
  std::vector<std::vector<int>> elems;
  std::vector<std::pair<int, int>> pos(w.size());
  for (std::size_t p = 0; p < w.size(); ++p) {
    auto b = std::find(bases.begin(), bases.end(), w[p].b) - bases.begin();
    if (b == static_cast<long>(bases.size())) {
      bases.push_back(w[p].b);
      elems.emplace_back();
    }
    auto e = std::find(elems[b].begin(), elems[b].end(), w[p].e) - elems[b].begin();
    if (e == static_cast<long>(elems[b].size())) elems[b].push_back(w[p].e);
    pos[p] = {static_cast<int>(b), static_cast<int>(e)};
  }
  std::vector<int> bmap(bases.size());
  std::vector<std::vector<int>> emap(bases.size());
  std::vector<bool> bused(k_);
  double sum = 0;
  std::size_t count = 0;
  std::function<void(std::size_t, std::size_t, std::vector<bool> &)> elem_rec;
  std::function<void(std::size_t)> basis_rec = [&](std::size_t b) {
    if (b == bases.size()) {
      std::vector<bool> used(d_);
      elem_rec(0, 0, used);
      return;
    }
    for (int x = 0; x < k_; ++x) {
      if (bused[x]) continue;
      bused[x] = true;
      bmap[b] = x;
      basis_rec(b + 1);
      bused[x] = false;
    }
  };
  elem_rec = [&](std::size_t b, std::size_t e, std::vector<bool> &used) {
    if (b == bases.size()) {
      Word img(w.size());
      for (std::size_t p = 0; p < w.size(); ++p) img[p] = {emap[pos[p].first][pos[p].second], bmap[pos[p].first]};
      sum += L(img);
      ++count;
      return;
    }
    if (e == elems[b].size()) {
      std::vector<bool> fresh(d_);
      elem_rec(b + 1, 0, fresh);
      return;
    }
    emap[b].resize(elems[b].size());
    for (int x = 0; x < d_; ++x) {
      if (used[x]) continue;
      used[x] = true;
      emap[b][e] = x;
      elem_rec(b, e + 1, used);
      used[x] = false;
    }
  };
  basis_rec(0);
  return sum / static_cast<double>(count);
}

std::vector<double> model_values(const MubModel &model, const Reducer &reducer) {
  std::vector<double> out(reducer.variable_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = model.L_invariant(reducer.variable(static_cast<int>(i)));
  return out;
}

double min_eigenvalue(const Eigen::MatrixXd &A) {
  if (A.rows() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Eigen::MatrixXd evaluate_block(const Block &b, const std::vector<double> &values) {
  const auto n = static_cast<Eigen::Index>(b.size());
  Eigen::MatrixXd M(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) M(i, j) = b.entries[i][j].evaluate(values);
  return M;
}

std::string PhiReport::summary() const {
  std::ostringstream os;
  os << "agree=" << agreements << "/" << trials << " psd_trials=" << psd_trials << " orbits=" << orbit_count
     << " sum_m2=" << sum_m2 << " phi_rank=" << phi_rank << " identity=" << (identity_ok ? "ok" : "fail");
  return os.str();
}

PhiReport brute_force_phi_oracle(int d, int k, int t, Mode mode, int trials, double tolerance, std::uint64_t seed,
                                 bool half_level) {
  PhiReport rep;
  const bool bo = mode == Mode::BasesOnly;
  const int alphabet = bo ? k : d * k;
  std::size_t N = 1;
  for (int i = 0; i < t; ++i) N *= alphabet;
  if (N > 2000) throw std::invalid_argument("brute_force_phi_oracle: index set too large");

  const int lead = half_level ? 1 : 0;
  std::vector<Word> words(N, Word(t + lead));
  std::map<Word, std::size_t> index;
  for (std::size_t x = 0; x < N; ++x) {
    std::size_t y = x;
    for (int p = t - 1; p >= 0; --p) {
      int a = static_cast<int>(y % alphabet);
      y /= alphabet;
      words[x][p + lead] = bo ? Letter{0, a} : Letter{a % d, a / d};
    }
    index[words[x]] = x;
  }

  std::map<OrbitClass, std::size_t> class_id;
  std::vector<std::size_t> cls(N * N);
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t y = 0; y < N; ++y) {
      std::vector<int> el, ba;
      for (const auto *w : {&words[x], &words[y]})
        for (const auto &l : *w) {
          el.push_back(l.e);
          ba.push_back(l.b);
        }
      auto c = classify_word(el, ba);
      auto it = class_id.emplace(c, class_id.size()).first;
      cls[x * N + y] = it->second;
    }
  rep.orbit_count = class_id.size();

  RepSet rs = representative_set_for(d, k, 2 * t + lead, mode);
  std::vector<Eigen::MatrixXd> U;
  std::vector<std::vector<WordVector>> expanded;
  for (const auto &[key, vecs] : rs) {
    rep.sum_m2 += vecs.size() * vecs.size();
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(vecs.size()));
    expanded.push_back({});
    for (std::size_t j = 0; j < vecs.size(); ++j) {
      expanded.back().push_back(vecs[j].expand());
      for (const auto &[w, c] : expanded.back().back()) B(static_cast<Eigen::Index>(index.at(w)), j) = c.get_d();
    }
    U.push_back(B);
  }

  // Exact injectivity: rank of the images of the orbit-basis matrices.
  std::vector<SparseRow> rows;
  for (const auto &vecs : expanded)
    for (std::size_t i = 0; i < vecs.size(); ++i)
      for (std::size_t j = 0; j < vecs.size(); ++j) {
        SparseRow row;
        for (const auto &[w, cu] : vecs[i])
          for (const auto &[w2, cv] : vecs[j]) row[static_cast<int>(cls[index.at(w) * N + index.at(w2)])] += cu * cv;
        for (auto it = row.begin(); it != row.end();)
          if (sgn(it->second) == 0) it = row.erase(it);
          else ++it;
        rows.push_back(std::move(row));
      }
  rep.phi_rank = exact_rank(rows);

  auto blocks_psd = [&](const Eigen::MatrixXd &A) {
    for (const auto &B : U) {
      Eigen::MatrixXd P = B.transpose() * A * B;
      double scale = std::max(1.0, P.cwiseAbs().maxCoeff());
      if (min_eigenvalue(P) < -tolerance * scale) return false;
    }
    return true;
  };
  auto psd = [&](const Eigen::MatrixXd &A) {
    double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    return min_eigenvalue(A) >= -tolerance * scale;
  };

  const auto n = static_cast<Eigen::Index>(N);
  rep.identity_ok = blocks_psd(Eigen::MatrixXd::Identity(n, n));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < trials; ++trial) {
    Eigen::MatrixXd G(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) G(i, j) = gauss(rng);
    Eigen::MatrixXd B = G * G.transpose();
    std::vector<double> sum(class_id.size(), 0.0);
    std::vector<int> count(class_id.size(), 0);
    for (std::size_t x = 0; x < N * N; ++x) {
      sum[cls[x]] += B.data()[x];
      ++count[cls[x]];
    }
    Eigen::MatrixXd A(n, n);
    for (std::size_t x = 0; x < N * N; ++x) A.data()[x] = sum[cls[x]] / count[cls[x]];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
    double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
    double delta = 1e-3 * std::max(1.0, std::abs(hi));
    A -= (trial % 2 == 0 ? lo - delta : lo + delta) * Eigen::MatrixXd::Identity(n, n);
    bool a = psd(A), b = blocks_psd(A);
    rep.psd_trials += a;
    rep.agreements += a == b;
    ++rep.trials;
  }
  return rep;
}

}  // namespace mub
