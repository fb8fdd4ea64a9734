#pragma once

#include <functional>
#include <map>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "mub/linalg.hpp"
#include "mub/types.hpp"

namespace mub {

// constant + sum_v coeffs[v] * y_v, v indexing Reducer::variable().
struct LinearForm {
  Rational constant;
  std::map<int, Rational> coeffs;

  bool is_zero() const { return sgn(constant) == 0 && coeffs.empty(); }
  bool is_constant() const { return coeffs.empty(); }
  LinearForm &operator+=(const LinearForm &o);
  LinearForm &operator-=(const LinearForm &o);
  LinearForm &operator*=(const Rational &a);
  void add_scaled(const LinearForm &o, const Rational &a);
  bool operator==(const LinearForm &o) const;
  double evaluate(const std::vector<double> &values) const;
  std::string to_string() const;
};

struct CycleDetected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool graded_lex_less(const Word &a, const Word &b);

struct ConstraintRow {
  LinearForm form;
  std::string provenance;
};

enum class Verdict { Infeasible, Undetermined };

struct InfeasibilityReport {
  Verdict verdict = Verdict::Undetermined;
  // Row indices and multipliers whose combination is a nonzero constant.
  std::vector<std::pair<std::size_t, Rational>> witness;
  Rational residual;
};

class Reducer {
 public:
  Reducer(int d, int k);

  int d() const { return d_; }
  int k() const { return k_; }

  Word canonicalize(const Word &w) const;
  LinearForm reduce(const Word &w);

  const Word &variable(int id) const { return var_words_.at(id); }
  std::size_t variable_count() const { return var_words_.size(); }

  // Variables reachable from all degree-`degree` words, ordered by graded_lex_less.
  std::vector<int> discover_variables(int degree);
  std::vector<int> variables_up_to(int degree, bool bases_only) const;

  // Calls `f` once per canonical word (up to the wreath action only) of the
  // given length whose letters at each index group in `tied` coincide.
  void for_each_orbit_word(int length, const std::vector<std::vector<int>> &tied,
                           const std::function<void(const Word &)> &f, bool bases_only = false) const;

  // Variables reachable from all degree-`degree` words in x_{1,j} only.
  std::vector<int> discover_bases_only_variables(int degree);

  // Independent rows L(q p) = 0 over generators q of the four relation families.
  std::vector<ConstraintRow> ideal_sweep_constraints(int max_total_degree, bool bases_only = false);

  // Degree charged to a commutator generator [xUx, xVx]: |U| + |V| + offset.
  void set_commutator_degree_offset(int offset) { commutator_offset_ = offset; }

  std::size_t memo_size() const;
  std::size_t rule_counts(int rule) const { return rule_hits_[rule]; }

  // Column of a variable in constraint rows: graded-lex rank among `order`.
  static SparseRow to_row(const LinearForm &f, const std::map<int, int> &column_of);

 private:
  using Key = std::string;
  Key encode(const Word &w) const;
  Word decode(const Key &s) const;
  Key canonical_key(const Key &s) const;
  LinearForm reduce_key(const Key &canon, int depth);
  bool rule4_applies(const Key &s) const;
  int intern(const Key &s);

  int d_, k_;
  int commutator_offset_ = 3;
  std::unordered_map<Key, LinearForm> memo_;
  std::unordered_map<Key, int> var_index_;
  std::vector<Word> var_words_;
  mutable std::shared_mutex mutex_;
  std::size_t rule_hits_[6] = {0, 0, 0, 0, 0, 0};
};

InfeasibilityReport detect_linear_infeasibility(const std::vector<ConstraintRow> &rows);

}  // namespace mub
