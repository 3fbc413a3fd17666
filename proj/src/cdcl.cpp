#include "cdcl.hpp"

#include <algorithm>

namespace cantor::detail {

Cdcl::Cdcl(int nvars)
    : n_(nvars), watch_(2 * nvars), val_(nvars, -1), level_(nvars, 0), reason_(nvars, -1),
      phase_(nvars, true), seen_(nvars, false) {}

void Cdcl::attach(int c) {
  watch_[cls_[c][0]].push_back(c);
  watch_[cls_[c][1]].push_back(c);
}

void Cdcl::add_clause(std::vector<int> lits) {
  if (unsat_) return;
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (std::size_t i = 0; i + 1 < lits.size(); ++i)
    if ((lits[i] ^ 1) == lits[i + 1]) return;  // tautology
  // only called before solving, at level 0
  std::vector<int> keep;
  for (int l : lits) {
    int lv = lit_val(l);
    if (lv == 1) return;
    if (lv < 0) keep.push_back(l);
  }
  if (keep.empty()) {
    unsat_ = true;
    return;
  }
  if (keep.size() == 1) {
    enqueue(keep[0], -1);
    if (propagate() >= 0) unsat_ = true;
    return;
  }
  cls_.push_back(keep);
  attach(int(cls_.size()) - 1);
}

void Cdcl::enqueue(int l, int why) {
  int v = l >> 1;
  val_[v] = static_cast<signed char>((l & 1) ^ 1);
  level_[v] = int(lim_.size());
  reason_[v] = why;
  trail_.push_back(l);
}

// returns the conflicting clause or -1
int Cdcl::propagate() {
  while (qhead_ < trail_.size()) {
    int p = trail_[qhead_++];
    int f = p ^ 1;  // now false
    auto& ws = watch_[f];
    std::size_t i = 0, j = 0;
    int confl = -1;
    while (i < ws.size()) {
      int c = ws[i++];
      auto& cl = cls_[c];
      if (cl[0] == f) std::swap(cl[0], cl[1]);
      if (lit_val(cl[0]) == 1) {
        ws[j++] = c;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < cl.size(); ++k)
        if (lit_val(cl[k]) != 0) {
          std::swap(cl[1], cl[k]);
          watch_[cl[1]].push_back(c);
          moved = true;
          break;
        }
      if (moved) continue;
      ws[j++] = c;
      if (lit_val(cl[0]) == 0) {
        confl = c;
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        enqueue(cl[0], c);
      }
    }
    ws.resize(j);
    if (confl >= 0) return confl;
  }
  return -1;
}

void Cdcl::analyze(int confl, std::vector<int>& learnt, int& back) {
  learnt.assign(1, 0);
  int pending = 0, p = -1;
  std::size_t idx = trail_.size();
  int cur = int(lim_.size());
  do {
    for (int q : cls_[confl]) {
      if (p >= 0 && q == p) continue;
      int v = q >> 1;
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = true;
      if (level_[v] == cur)
        ++pending;
      else
        learnt.push_back(q);
    }
    while (!seen_[trail_[--idx] >> 1]) {
    }
    p = trail_[idx];
    confl = reason_[p >> 1];
    seen_[p >> 1] = false;
    --pending;
  } while (pending > 0);
  learnt[0] = p ^ 1;
  back = 0;
  std::size_t best = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i)
    if (level_[learnt[i] >> 1] > back) back = level_[learnt[i] >> 1], best = i;
  if (learnt.size() > 1) std::swap(learnt[1], learnt[best]);
  for (int l : learnt) seen_[l >> 1] = false;
}

void Cdcl::cancel(int lvl) {
  if (int(lim_.size()) <= lvl) return;
  for (std::size_t i = trail_.size(); i-- > std::size_t(lim_[lvl]);) {
    int v = trail_[i] >> 1;
    phase_[v] = val_[v] == 1;
    val_[v] = -1;
    reason_[v] = -1;
    next_ = std::min(next_, v);
  }
  trail_.resize(lim_[lvl]);
  qhead_ = trail_.size();
  lim_.resize(lvl);
}

int Cdcl::solve(long max_conflicts) {
  if (unsat_) return 0;
  if (propagate() >= 0) return 0;
  std::vector<int> learnt;
  for (;;) {
    int confl = propagate();
    if (confl >= 0) {
      ++conflicts;
      if (lim_.empty()) return 0;
      if (conflicts > max_conflicts) return -1;
      int back;
      analyze(confl, learnt, back);
      cancel(back);
      if (learnt.size() == 1) {
        enqueue(learnt[0], -1);
      } else {
        cls_.push_back(learnt);
        attach(int(cls_.size()) - 1);
        enqueue(learnt[0], int(cls_.size()) - 1);
      }
      continue;
    }
    while (next_ < n_ && val_[next_] >= 0) ++next_;
    if (next_ == n_) return 1;
    int v = next_;
    ++decisions;
    lim_.push_back(int(trail_.size()));
    enqueue(phase_[v] ? pos(v) : neg(v), -1);
  }
}

}  // namespace cantor::detail
