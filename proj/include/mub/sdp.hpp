#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "mub/reducer.hpp"
#include "mub/types.hpp"

namespace mub {

enum class Mode { Full, BasesOnly };

std::string mode_name(Mode m);
std::optional<Mode> parse_mode(const std::string &s);

// Level t is carried as the integer 2t.
std::string level_string(int twice_t);
std::optional<int> parse_level(const std::string &s);

// Drops classes whose words have two adjacent positions in one P-part, or
// positions a and a+2 in one Q-part. Adjacent pairs before `first_adjacent`
// are not checked.
bool class_survives_pruning(const OrbitClass &c, int first_adjacent = 0);

// 1 for bases-only half levels, where x_{1,1} x_{1,1} w only shortens the row.
int first_pruned_adjacency(int twice_t, Mode mode);
std::vector<OrbitClass> prune_orbit_classes(const std::vector<OrbitClass> &classes, int d, int k);

// Representative set before pruning.
RepSet representative_set_for(int d, int k, int twice_t, Mode mode);

// sum coeff(u) coeff(v) L(reverse(w) w') by direct expansion.
LinearForm moment_entry(const WordVector &u, const WordVector &v, Reducer &reducer);

// Same value as moment_entry on the expansions, computed from the product form
// by grouping label tuples by the basis and element matchings they induce.
class EntryEvaluator {
 public:
  explicit EntryEvaluator(Reducer &reducer) : reducer_(reducer) {}
  LinearForm operator()(const RepVector &u, const RepVector &v);

 private:
  // Element matching between the Q-parts of two parts -> summed coefficient.
  struct PairTable {
    std::vector<std::pair<std::vector<int>, Rational>> entries;
  };
  const PairTable &pair_table(const PartElements &a, const PartElements &b);

  Reducer &reducer_;
  std::mutex mutex_;
  std::map<std::tuple<const void *, int, const void *, int>, std::unique_ptr<PairTable>> tables_;
};

struct Block {
  BlockKey key;
  std::vector<std::string> labels;
  std::vector<std::vector<LinearForm>> entries;

  std::size_t size() const { return labels.size(); }
  std::string name() const { return block_key_to_string(key); }
};

struct AssemblyOptions {
  int sweep_cap = -1;  // total degree budget of the sweep; -1 means 2t
  bool prune = true;
  unsigned threads = 0;  // 0 means hardware concurrency
};

struct SDPInstance {
  int d = 0, k = 0, twice_t = 0;
  Mode mode = Mode::Full;
  std::uint64_t unreduced_size = 0;
  std::vector<int> variables;  // discovered, graded-lex order
  std::map<int, Word> words;   // reducer id -> canonical word
  std::vector<ConstraintRow> constraints;
  std::vector<int> free_vars;
  std::map<int, LinearForm> substitution;  // eliminated id -> form over free ids
  std::vector<Block> blocks;
};

class LinearInfeasible : public std::runtime_error {
 public:
  LinearInfeasible(InfeasibilityReport rep, std::vector<ConstraintRow> rows);
  InfeasibilityReport report;
  std::vector<ConstraintRow> rows;
};

struct Stats {
  std::uint64_t size = 0;
  std::size_t n_vars = 0;
  std::size_t n_linear = 0;
  std::size_t block_sum = 0;
  std::size_t block_max = 0;
  bool linear_infeasible = false;
};

// Variables and sweep only.
struct LinearSystem {
  std::vector<int> variables;
  std::map<int, Word> words;
  std::vector<ConstraintRow> constraints;
  InfeasibilityReport report;
};
LinearSystem linear_system(Reducer &reducer, int twice_t, Mode mode, int sweep_cap = -1);

std::map<int, LinearForm> eliminate(const std::vector<ConstraintRow> &rows, const std::map<int, Word> &words,
                                    std::vector<int> &free_vars);

SDPInstance assemble_instance(int d, int k, int twice_t, Mode mode, const AssemblyOptions &opt = {});
SDPInstance assemble_instance(Reducer &reducer, int twice_t, Mode mode, const AssemblyOptions &opt = {});

// Table columns; block sizes come from the pruned representative set.
Stats compute_stats(Reducer &reducer, int twice_t, Mode mode, const AssemblyOptions &opt = {});
Stats stats(const SDPInstance &inst);

std::string format_rational(const Rational &q, int digits);
std::string sdpa_string(const SDPInstance &inst, int digits = 40);
void export_sdpa(const SDPInstance &inst, const std::string &path, int digits = 40);
std::string sidecar_string(const SDPInstance &inst);

enum class SolverStatus { Feasible, Infeasible, Unknown };
std::string status_name(SolverStatus s);
SolverStatus parse_solver_text(const std::string &text);
SolverStatus parse_solver_output(const std::string &path);

}  // namespace mub
