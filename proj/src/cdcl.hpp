#pragma once
// small CDCL solver used for marker selection. No randomness, no restarts:
// decisions go in variable order with phase true, so an instance whose
// greedy assignment works is solved without a single conflict

#include <cstdint>
#include <vector>

namespace cantor::detail {

// literal encoding: 2v is "v true", 2v+1 is "v false"
inline int pos(int v) { return 2 * v; }
inline int neg(int v) { return 2 * v + 1; }

class Cdcl {
 public:
  explicit Cdcl(int nvars);
  void add_clause(std::vector<int> lits);
  int solve(long max_conflicts);  // 1 sat, 0 unsat, -1 gave up
  bool value(int v) const { return val_[v] == 1; }

  long conflicts = 0, decisions = 0;

 private:
  int n_;
  bool unsat_ = false;
  std::vector<std::vector<int>> cls_;
  std::vector<std::vector<int>> watch_;  // per literal: clauses watching it
  std::vector<signed char> val_;
  std::vector<int> level_, reason_, trail_, lim_;
  std::size_t qhead_ = 0;
  int next_ = 0;  // decisions follow variable order
  std::vector<bool> phase_, seen_;

  int lit_val(int l) const {
    int v = val_[l >> 1];
    return v < 0 ? -1 : (v ^ (l & 1));
  }
  void enqueue(int l, int why);
  int propagate();
  void analyze(int confl, std::vector<int>& learnt, int& back);
  void cancel(int lvl);
  void attach(int c);
};

}  // namespace cantor::detail
