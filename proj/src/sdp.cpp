#include "mub/sdp.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "mub/specht.hpp"
#include "mub/wreath.hpp"

namespace mub {

std::string mode_name(Mode m) { return m == Mode::Full ? "full" : "bases_only"; }

std::optional<Mode> parse_mode(const std::string &s) {
  if (s == "full") return Mode::Full;
  if (s == "bases_only" || s == "bases-only") return Mode::BasesOnly;
  return std::nullopt;
}

std::string level_string(int twice_t) {
  return std::to_string(twice_t / 2) + (twice_t % 2 ? ".5" : "");
}

std::optional<int> parse_level(const std::string &s) {
  std::size_t dot = s.find('.');
  std::string whole = s.substr(0, dot), frac = dot == std::string::npos ? "" : s.substr(dot + 1);
  if (whole.empty() || !std::all_of(whole.begin(), whole.end(), ::isdigit)) return std::nullopt;
  int half;
  if (frac.empty() || frac == "0") half = 0;
  else if (frac == "5") half = 1;
  else return std::nullopt;
  return 2 * std::stoi(whole) + half;
}

bool class_survives_pruning(const OrbitClass &c, int first_adjacent) {
  int n = c.length();
  std::vector<int> part(n), qpart(n);
  int qid = 0;
  for (std::size_t i = 0; i < c.P.size(); ++i) {
    for (int p : c.P[i]) part[p] = static_cast<int>(i);
    for (const auto &q : c.Q[i]) {
      for (int p : q) qpart[p] = qid;
      ++qid;
    }
  }
  for (int a = first_adjacent; a + 1 < n; ++a)
    if (part[a] == part[a + 1]) return false;
  for (int a = 0; a + 2 < n; ++a)
    if (qpart[a] == qpart[a + 2]) return false;
  return true;
}

std::vector<OrbitClass> prune_orbit_classes(const std::vector<OrbitClass> &classes, int, int) {
  std::vector<OrbitClass> out;
  for (const auto &c : classes)
    if (class_survives_pruning(c)) out.push_back(c);
  return out;
}

int first_pruned_adjacency(int twice_t, Mode mode) { return mode == Mode::BasesOnly && twice_t % 2 ? 1 : 0; }

RepSet representative_set_for(int d, int k, int twice_t, Mode mode) {
  int t = twice_t / 2;
  bool half = twice_t % 2;
  if (mode == Mode::Full) return half ? half_level_representative_set(d, k, t) : wreath_representative_set(d, k, t);
  auto sk = half ? sk_half_representative_set(k, t) : sk_representative_set(k, t);
  RepSet out;
  for (auto &[lambda, vecs] : sk) out[BlockKey{lambda}] = std::move(vecs);
  return out;
}

namespace {

RepSet pruned(RepSet rs, int first_adjacent) {
  RepSet out;
  for (auto &[key, vecs] : rs) {
    std::vector<RepVector> keep;
    for (auto &u : vecs)
      if (class_survives_pruning(u.cls, first_adjacent)) keep.push_back(std::move(u));
    if (!keep.empty()) out[key] = std::move(keep);
  }
  return out;
}

Word reversed_concat(const Word &a, const Word &b) {
  Word w(a.rbegin(), a.rend());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

std::vector<int> full_labels(int fixed, const std::vector<int> &tuple) {
  std::vector<int> l(fixed + tuple.size());
  for (int i = 0; i < fixed; ++i) l[i] = i;
  std::copy(tuple.begin(), tuple.end(), l.begin() + fixed);
  return l;
}

// For each entry of a: the index in b carrying the same label, or -1.
std::vector<int> matching(const std::vector<int> &a, const std::vector<int> &b) {
  std::vector<int> m(a.size(), -1);
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y)
      if (a[x] == b[y]) m[x] = static_cast<int>(y);
  return m;
}

Rational coefficient_sum(const TupleMap &tm) {
  Rational s = 0;
  for (const auto &[t, c] : tm) s += c;
  return s;
}

}  // namespace

LinearForm moment_entry(const WordVector &u, const WordVector &v, Reducer &reducer) {
  LinearForm out;
  for (const auto &[w, cu] : u)
    for (const auto &[w2, cv] : v) out.add_scaled(reducer.reduce(reversed_concat(w, w2)), cu * cv);
  return out;
}

const EntryEvaluator::PairTable &EntryEvaluator::pair_table(const PartElements &a, const PartElements &b) {
  std::lock_guard lock(mutex_);
  auto key = std::make_tuple(static_cast<const void *>(a.tuples.get()), a.fixed,
                             static_cast<const void *>(b.tuples.get()), b.fixed);
  auto it = tables_.find(key);
  if (it != tables_.end()) return *it->second;
  std::map<std::vector<int>, Rational> acc;
  for (const auto &[ta, ca] : *a.tuples) {
    auto la = full_labels(a.fixed, ta);
    for (const auto &[tb, cb] : *b.tuples) acc[matching(la, full_labels(b.fixed, tb))] += ca * cb;
  }
  auto table = std::make_unique<PairTable>();
  for (auto &[m, c] : acc)
    if (sgn(c) != 0) table->entries.emplace_back(m, c);
  return *tables_.emplace(key, std::move(table)).first->second;
}

LinearForm EntryEvaluator::operator()(const RepVector &u, const RepVector &v) {
  const int n = u.cls.length(), n2 = v.cls.length();
  const int r = static_cast<int>(u.cls.P.size()), r2 = static_cast<int>(v.cls.P.size());

  std::map<std::vector<int>, Rational> K;
  for (const auto &[bu, cu] : *u.bases) {
    auto lu = full_labels(u.fixed_basis, bu);
    for (const auto &[bv, cv] : *v.bases) K[matching(lu, full_labels(v.fixed_basis, bv))] += cu * cv;
  }

  std::vector<Rational> su(r), sv(r2);
  for (int i = 0; i < r; ++i) su[i] = coefficient_sum(*u.elements[i].tuples);
  for (int i = 0; i < r2; ++i) sv[i] = coefficient_sum(*v.elements[i].tuples);

  LinearForm out;
  Word wu(n), wv(n2);
  for (const auto &[M, kc] : K) {
    if (sgn(kc) == 0) continue;
    Rational factor = kc;
    std::vector<bool> v_matched(r2, false);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < r; ++i) {
      if (M[i] < 0) factor *= su[i];
      else {
        v_matched[M[i]] = true;
        pairs.emplace_back(i, M[i]);
      }
    }
    for (int i = 0; i < r2; ++i)
      if (!v_matched[i]) factor *= sv[i];
    if (sgn(factor) == 0) continue;

    // Bases: u part i gets label i, v parts reuse matched labels or take fresh ones.
    int fresh = r;
    std::vector<int> vbasis(r2, -1);
    for (auto [i, i2] : pairs) vbasis[i2] = i;
    for (int i = 0; i < r2; ++i)
      if (vbasis[i] < 0) vbasis[i] = fresh++;
    for (int i = 0; i < r; ++i)
      for (std::size_t m = 0; m < u.cls.Q[i].size(); ++m)
        for (int p : u.cls.Q[i][m]) wu[p] = {static_cast<int>(m), i};
    for (int i = 0; i < r2; ++i)
      if (!v_matched[i])
        for (std::size_t m = 0; m < v.cls.Q[i].size(); ++m)
          for (int p : v.cls.Q[i][m]) wv[p] = {static_cast<int>(m), vbasis[i]};

    std::vector<const PairTable *> tables;
    for (auto [i, i2] : pairs) tables.push_back(&pair_table(u.elements[i], v.elements[i2]));

    std::function<void(std::size_t, Rational)> rec = [&](std::size_t x, Rational c) {
      if (x == pairs.size()) {
        out.add_scaled(reducer_.reduce(reversed_concat(wu, wv)), c);
        return;
      }
      auto [i, i2] = pairs[x];
      const auto &qv = v.cls.Q[i2];
      for (const auto &[N, ec] : tables[x]->entries) {
        std::vector<int> elem(qv.size(), -1);
        for (std::size_t m = 0; m < N.size(); ++m)
          if (N[m] >= 0) elem[N[m]] = static_cast<int>(m);
        int fe = static_cast<int>(u.cls.Q[i].size());
        for (auto &e : elem)
          if (e < 0) e = fe++;
        for (std::size_t m = 0; m < qv.size(); ++m)
          for (int p : qv[m]) wv[p] = {elem[m], vbasis[i2]};
        rec(x + 1, c * ec);
      }
    };
    rec(0, factor);
  }
  return out;
}

LinearInfeasible::LinearInfeasible(InfeasibilityReport rep, std::vector<ConstraintRow> r)
    : std::runtime_error("linear constraints are infeasible"), report(std::move(rep)), rows(std::move(r)) {}

LinearSystem linear_system(Reducer &reducer, int twice_t, Mode mode, int sweep_cap) {
  LinearSystem sys;
  bool bo = mode == Mode::BasesOnly;
  sys.variables = bo ? reducer.discover_bases_only_variables(twice_t) : reducer.discover_variables(twice_t);
  sys.constraints = reducer.ideal_sweep_constraints(sweep_cap < 0 ? twice_t : sweep_cap, bo);
  sys.report = detect_linear_infeasibility(sys.constraints);
  for (int v : sys.variables) sys.words[v] = reducer.variable(v);
  for (const auto &row : sys.constraints)
    for (const auto &[v, c] : row.form.coeffs) sys.words[v] = reducer.variable(v);
  return sys;
}

std::map<int, LinearForm> eliminate(const std::vector<ConstraintRow> &rows, const std::map<int, Word> &words,
                                    std::vector<int> &free_vars) {
  std::vector<int> ids;
  for (const auto &[v, w] : words) ids.push_back(v);
  std::sort(ids.begin(), ids.end(), [&](int a, int b) { return graded_lex_less(words.at(a), words.at(b)); });
  std::map<int, int> col;
  for (std::size_t c = 0; c < ids.size(); ++c) col[ids[c]] = static_cast<int>(c);
  Echelon ech;
  for (const auto &r : rows) ech.add(Reducer::to_row(r.form, col));
  std::map<int, LinearForm> subst;
  for (const auto &[c, row] : ech.reduced_rows()) {
    if (c < 0) throw std::logic_error("eliminate: inconsistent system");
    LinearForm f;
    for (const auto &[cc, a] : row) {
      if (cc == c) continue;
      if (cc == -1) f.constant = -a;
      else f.coeffs[ids[cc]] = -a;
    }
    subst[ids[c]] = f;
  }
  free_vars.clear();
  for (int v : ids)
    if (!subst.count(v)) free_vars.push_back(v);
  return subst;
}

namespace {

LinearForm substitute(const LinearForm &f, const std::map<int, LinearForm> &subst) {
  LinearForm out;
  out.constant = f.constant;
  for (const auto &[v, c] : f.coeffs) {
    auto it = subst.find(v);
    if (it == subst.end()) out.add_scaled(LinearForm{0, {{v, 1}}}, c);
    else out.add_scaled(it->second, c);
  }
  return out;
}

std::uint64_t unreduced_size(int d, int k, int twice_t, Mode mode) {
  std::uint64_t s = 1, base = mode == Mode::Full ? static_cast<std::uint64_t>(d) * k : k;
  for (int i = 0; i < twice_t / 2; ++i) s *= base;
  return s;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)> &f) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mutex;
  auto work = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard lock(err_mutex);
        if (!err) err = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(work);
  work();
  for (auto &th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace

SDPInstance assemble_instance(int d, int k, int twice_t, Mode mode, const AssemblyOptions &opt) {
  Reducer reducer(d, k);
  return assemble_instance(reducer, twice_t, mode, opt);
}

SDPInstance assemble_instance(Reducer &reducer, int twice_t, Mode mode, const AssemblyOptions &opt) {
  if (twice_t < 2) throw std::invalid_argument("assemble_instance: t must be at least 1");
  SDPInstance inst;
  inst.d = reducer.d();
  inst.k = reducer.k();
  inst.twice_t = twice_t;
  inst.mode = mode;
  inst.unreduced_size = unreduced_size(inst.d, inst.k, twice_t, mode);

  auto sys = linear_system(reducer, twice_t, mode, opt.sweep_cap);
  if (sys.report.verdict == Verdict::Infeasible) throw LinearInfeasible(sys.report, sys.constraints);
  inst.variables = sys.variables;
  inst.words = sys.words;
  inst.constraints = sys.constraints;

  auto rs = representative_set_for(inst.d, inst.k, twice_t, mode);
  if (opt.prune) rs = pruned(std::move(rs), first_pruned_adjacency(twice_t, mode));

  struct Cell {
    std::size_t block, i, j;
  };
  std::vector<Cell> cells;
  for (const auto &[key, vecs] : rs) {
    Block b;
    b.key = key;
    for (const auto &u : vecs) b.labels.push_back(u.label);
    b.entries.assign(vecs.size(), std::vector<LinearForm>(vecs.size()));
    for (std::size_t i = 0; i < vecs.size(); ++i)
      for (std::size_t j = i; j < vecs.size(); ++j) cells.push_back({inst.blocks.size(), i, j});
    inst.blocks.push_back(std::move(b));
  }
  std::vector<const std::vector<RepVector> *> block_vecs;
  for (const auto &[key, vecs] : rs) block_vecs.push_back(&vecs);

  EntryEvaluator eval(reducer);
  parallel_for(cells.size(), opt.threads, [&](std::size_t x) {
    const auto &c = cells[x];
    const auto &vecs = *block_vecs[c.block];
    inst.blocks[c.block].entries[c.i][c.j] = eval(vecs[c.i], vecs[c.j]);
  });

  for (auto &b : inst.blocks)
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i; j < b.size(); ++j)
        for (const auto &[v, c] : b.entries[i][j].coeffs)
          if (!inst.words.count(v)) inst.words[v] = reducer.variable(v);

  inst.substitution = eliminate(inst.constraints, inst.words, inst.free_vars);
  for (auto &b : inst.blocks)
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i; j < b.size(); ++j) {
        b.entries[i][j] = substitute(b.entries[i][j], inst.substitution);
        b.entries[j][i] = b.entries[i][j];
      }
  return inst;
}

Stats compute_stats(Reducer &reducer, int twice_t, Mode mode, const AssemblyOptions &opt) {
  Stats s;
  s.size = unreduced_size(reducer.d(), reducer.k(), twice_t, mode);
  auto sys = linear_system(reducer, twice_t, mode, opt.sweep_cap);
  s.n_vars = sys.variables.size();
  s.n_linear = sys.constraints.size();
  s.linear_infeasible = sys.report.verdict == Verdict::Infeasible;
  auto rs = representative_set_for(reducer.d(), reducer.k(), twice_t, mode);
  if (opt.prune) rs = pruned(std::move(rs), first_pruned_adjacency(twice_t, mode));
  for (const auto &[key, vecs] : rs) {
    s.block_sum += vecs.size();
    s.block_max = std::max(s.block_max, vecs.size());
  }
  return s;
}

Stats stats(const SDPInstance &inst) {
  Stats s;
  s.size = inst.unreduced_size;
  s.n_vars = inst.variables.size();
  s.n_linear = inst.constraints.size();
  for (const auto &b : inst.blocks) {
    s.block_sum += b.size();
    s.block_max = std::max(s.block_max, b.size());
  }
  return s;
}

std::string format_rational(const Rational &q, int digits) {
  if (q.get_den() == 1) return q.get_num().get_str();
  mpf_class f(0, static_cast<mp_bitcnt_t>(digits * 3.33 + 64));
  f = q;
  char *buf = nullptr;
  gmp_asprintf(&buf, "%.*Fe", digits - 1, f.get_mpf_t());
  std::string s(buf);
  void (*freefunc)(void *, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefunc);
  freefunc(buf, s.size() + 1);
  return s;
}

std::string sdpa_string(const SDPInstance &inst, int digits) {
  // Size-one blocks are collected into one trailing diagonal block.
  std::vector<std::pair<std::size_t, std::size_t>> where(inst.blocks.size());  // block -> (sdpa block, offset)
  std::vector<long> sizes;
  std::size_t diag = 0;
  for (std::size_t b = 0; b < inst.blocks.size(); ++b)
    if (inst.blocks[b].size() > 1) {
      where[b] = {sizes.size() + 1, 0};
      sizes.push_back(static_cast<long>(inst.blocks[b].size()));
    }
  for (std::size_t b = 0; b < inst.blocks.size(); ++b)
    if (inst.blocks[b].size() == 1) where[b] = {sizes.size() + 1, diag++};
  if (diag) sizes.push_back(-static_cast<long>(diag));

  std::map<int, int> matno;
  for (std::size_t i = 0; i < inst.free_vars.size(); ++i) matno[inst.free_vars[i]] = static_cast<int>(i) + 1;
  int m = std::max<int>(1, static_cast<int>(inst.free_vars.size()));

  std::map<std::tuple<int, std::size_t, std::size_t, std::size_t>, Rational> lines;
  for (std::size_t b = 0; b < inst.blocks.size(); ++b) {
    const auto &blk = inst.blocks[b];
    auto [sb, off] = where[b];
    for (std::size_t i = 0; i < blk.size(); ++i)
      for (std::size_t j = i; j < blk.size(); ++j) {
        const auto &f = blk.entries[i][j];
        std::size_t ii = i + off + 1, jj = j + off + 1;
        if (sgn(f.constant) != 0) lines[{0, sb, ii, jj}] = -f.constant;
        for (const auto &[v, c] : f.coeffs) lines[{matno.at(v), sb, ii, jj}] = c;
      }
  }

  std::ostringstream os;
  os << "* sdp(d=" << inst.d << ",k=" << inst.k << ",t=" << level_string(inst.twice_t) << ") mode=" << mode_name(inst.mode)
     << "\n";
  os << "* feasibility problem: find y with sum_i y_i F_i - F_0 psd\n";
  if (inst.free_vars.empty()) os << "* no free variables; y1 is a placeholder with F_1 = 0\n";
  os << m << "\n" << sizes.size() << "\n";
  for (std::size_t i = 0; i < sizes.size(); ++i) os << (i ? " " : "") << sizes[i];
  os << "\n";
  for (int i = 0; i < m; ++i) os << (i ? " " : "") << 0;
  os << "\n";
  for (const auto &[key, val] : lines) {
    auto [mat, b, i, j] = key;
    os << mat << " " << b << " " << i << " " << j << " " << format_rational(val, digits) << "\n";
  }
  return os.str();
}

void export_sdpa(const SDPInstance &inst, const std::string &path, int digits) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("export_sdpa: cannot create " + path);
  f << sdpa_string(inst, digits);
  if (!f) throw std::runtime_error("export_sdpa: write failed for " + path);
}

namespace {

std::string form_in_words(const LinearForm &f, const std::map<int, Word> &words) {
  std::ostringstream os;
  os << f.constant.get_str();
  for (const auto &[v, c] : f.coeffs) os << (sgn(c) < 0 ? " - " : " + ") << Rational(abs(c)).get_str() << "*L(" << word_to_string(words.at(v)) << ")";
  return os.str();
}

}  // namespace

std::string sidecar_string(const SDPInstance &inst) {
  std::ostringstream os;
  os << "d=" << inst.d << "\nk=" << inst.k << "\nt=" << level_string(inst.twice_t) << "\nmode=" << mode_name(inst.mode)
     << "\nn_vars=" << inst.variables.size() << "\nn_linear=" << inst.constraints.size()
     << "\nn_free=" << inst.free_vars.size() << "\n";
  for (std::size_t i = 0; i < inst.free_vars.size(); ++i)
    os << "y" << i + 1 << "=L(" << word_to_string(inst.words.at(inst.free_vars[i])) << ")\n";
  for (const auto &[v, f] : inst.substitution)
    os << "subst.L(" << word_to_string(inst.words.at(v)) << ")=" << form_in_words(f, inst.words) << "\n";
  for (std::size_t i = 0; i < inst.blocks.size(); ++i)
    os << "block" << i + 1 << "=" << inst.blocks[i].name() << " size " << inst.blocks[i].size() << "\n";
  return os.str();
}

std::string status_name(SolverStatus s) {
  switch (s) {
    case SolverStatus::Feasible: return "feasible";
    case SolverStatus::Infeasible: return "infeasible";
    default: return "unknown";
  }
}

SolverStatus parse_solver_text(const std::string &text) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto pos = line.find("phase.value");
    if (pos == std::string::npos) continue;
    auto eq = line.find('=', pos);
    if (eq == std::string::npos) throw std::runtime_error("parse_solver_output: malformed phase line");
    std::istringstream v(line.substr(eq + 1));
    std::string phase;
    v >> phase;
    if (phase == "pINF" || phase == "dINF" || phase == "pdINF" || phase == "dUNBD") return SolverStatus::Infeasible;
    if (phase == "pdOPT" || phase == "pdFEAS") return SolverStatus::Feasible;
    if (phase.empty()) throw std::runtime_error("parse_solver_output: empty phase value");
    return SolverStatus::Unknown;
  }
  throw std::runtime_error("parse_solver_output: no phase.value line");
}

SolverStatus parse_solver_output(const std::string &path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("parse_solver_output: cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_solver_text(ss.str());
}

}  // namespace mub
