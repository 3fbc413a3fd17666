#include "cantor/marker.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_map>

#include "cantor/error.hpp"
#include "cantor/sft.hpp"
#include "cdcl.hpp"

namespace cantor {

bool is_j_periodic(Word const& w, std::size_t j) {
  if (j == 0) throw Error("is_j_periodic: j >= 1 required");
  for (std::size_t i = 0; i + j < w.size(); ++i)
    if (w[i] != w[i + j]) return false;
  return true;
}

bool aperiodic_below(Word const& w, std::size_t N) {
  for (std::size_t j = 1; j < N; ++j)
    if (is_j_periodic(w, j)) return false;
  return true;
}

bool MarkerSet::marked(Word const& win) const {
  if (lookup_.empty() && !windows.empty()) return std::binary_search(windows.begin(), windows.end(), win);
  return lookup_.count(win) > 0;
}

void MarkerSet::index() {
  std::sort(windows.begin(), windows.end());
  lookup_ = std::unordered_set<Word>(windows.begin(), windows.end());
}

namespace {

template <class F>
void each_word(DirectedGraph const& g, std::size_t len, F&& f) {
  Word w;
  w.reserve(len);
  auto rec = [&](auto& self) -> void {
    if (w.size() == len) {
      f(w);
      return;
    }
    if (w.empty()) {
      for (std::size_t v = 0; v < g.size(); ++v) {
        w.push_back(char(v));
        self(self);
        w.pop_back();
      }
      return;
    }
    for (int v : g.out((unsigned char)w.back())) {
      w.push_back(char(v));
      self(self);
      w.pop_back();
    }
  };
  rec(rec);
}

}  // namespace

MarkerSet build_markers(DirectedGraph const& g, int N, int k, int L_max, MarkerStats* stats) {
  long const max_conflicts = 2000000;
  double const max_words = 5e7;
  if (N < 2) throw Error("build_markers: N >= 2 required");
  if (k <= 2 * N) throw Error("build_markers: requires k > 2N");
  if (L_max < k) throw Error("build_markers: L_max must be >= k");
  if (g.empty() || !is_essential(g)) throw Error("build_markers: subshift graph must be essential");
  if (!is_perfect(g)) throw Refusal("not perfect: the subshift has an isolated point", "isolated point");
  MarkerStats local;
  MarkerStats& st = stats ? *stats : local;
  for (int L = k; L <= L_max; ++L) {
    st.tried_L.push_back(L);
    std::size_t wl = 2 * L + 1, c = L - k;
    // the coverage clauses enumerate words of length 2(L+N-1)+1
    double span_words = count_words(g, 2 * (L + N - 1) + 1);
    if (span_words > max_words) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "L=%d needs %.3g words of length %d, over the limit of %.3g", L, span_words,
                    2 * (L + N - 1) + 1, max_words);
      st.note = buf;
      throw Refusal("build_markers: " + st.note, "too large");
    }
    std::vector<Word> cand;
    each_word(g, wl, [&](Word const& w) {
      if (aperiodic_below(w.substr(c, 2 * k + 1), N)) cand.push_back(w);
    });
    std::unordered_map<Word, int> id;
    for (std::size_t i = 0; i < cand.size(); ++i) id.emplace(cand[i], int(i));
    // one variable per candidate window. Exclusion clauses give disjointness,
    // "one of the windows at offsets -N<o<N" clauses give coverage. Decisions
    // start lexicographically with phase true, i.e. the greedy pass, and the
    // solver backtracks when greedy would leave a word uncovered.
    detail::Cdcl s(int(cand.size()));
    for (int sh = 1; sh < N; ++sh)
      each_word(g, wl + sh, [&](Word const& u) {
        auto a = id.find(u.substr(0, wl)), b = id.find(u.substr(sh));
        if (a != id.end() && b != id.end()) s.add_clause({detail::neg(a->second), detail::neg(b->second)});
      });
    std::size_t span = 2 * (L + N - 1) + 1, ctr = L + N - 1;
    std::vector<int> cl;
    each_word(g, span, [&](Word const& u) {
      if (!aperiodic_below(u.substr(ctr - k, 2 * k + 1), N)) return;
      cl.clear();
      for (int o = -(N - 1); o <= N - 1; ++o) {
        auto it = id.find(u.substr(ctr + o - L, wl));
        if (it != id.end()) cl.push_back(detail::pos(it->second));
      }
      s.add_clause(cl);
    });
    int r = s.solve(max_conflicts);
    st.decisions += s.decisions;
    st.conflicts += s.conflicts;
    if (r != 1) continue;
    MarkerSet m;
    m.subshift = g;
    m.N = N, m.k = k, m.L = L;
    for (std::size_t i = 0; i < cand.size(); ++i)
      if (s.value(int(i))) m.windows.push_back(cand[i]);
    m.index();
    // the verifiers, not the search, are what we trust
    if (!verify_disjoint(m).ok || !verify_coverage(m).ok)
      throw std::logic_error("build_markers: search result failed verification");
    return m;
  }
  st.note = "no marker set found for L in [" + std::to_string(k) + ", " + std::to_string(L_max) + "]";
  throw Refusal("build_markers: " + st.note, "L_max=" + std::to_string(L_max));
}

VerifyResult verify_disjoint(MarkerSet const& m) {
  VerifyResult r;
  std::size_t wl = 2 * m.L + 1;
  for (int s = 1; s < m.N && r.ok; ++s)
    each_word(m.subshift, wl + s, [&](Word const& u) {
      if (!r.ok) return;
      ++r.scanned;
      if (m.marked(u.substr(0, wl)) && m.marked(u.substr(s))) r.ok = false, r.witness = u;
    });
  return r;
}

VerifyResult verify_coverage(MarkerSet const& m) {
  VerifyResult r;
  std::size_t wl = 2 * m.L + 1, span = 2 * (m.L + m.N - 1) + 1, ctr = m.L + m.N - 1;
  each_word(m.subshift, span, [&](Word const& u) {
    if (!r.ok) return;
    ++r.scanned;
    if (!aperiodic_below(u.substr(ctr - m.k, 2 * m.k + 1), m.N)) return;
    for (int o = -(m.N - 1); o <= m.N - 1; ++o)
      if (m.marked(u.substr(ctr + o - m.L, wl))) return;
    r.ok = false;
    r.witness = u;
  });
  return r;
}

IntervalDecomposition decompose(MarkerSet const& m, Word const& x) {
  int n = int(x.size()), L = m.L, N = m.N, k = m.k;
  if (n < 2 * L + 1) throw Error("decompose: word shorter than a marker window");
  IntervalDecomposition d;
  d.first = L;
  d.last = n - 1 - L;
  std::vector<bool> mk(n, false);
  for (int i = d.first; i <= d.last; ++i)
    if (m.marked(x.substr(i - L, 2 * L + 1))) mk[i] = true, d.marks.push_back(i);
  for (int i = d.first; i <= d.last;) {
    if (mk[i]) {
      ++i;
      continue;
    }
    Run run;
    run.start = i;
    while (i <= d.last && !mk[i]) ++i;
    run.end = i - 1;
    bool closed = run.start > d.first && run.end < d.last;
    if (!closed)
      run.kind = Run::Truncated;
    else
      run.kind = run.length() < 2 * N - 1 ? Run::Short : Run::Long;
    if (run.length() >= 2 * N - 1) {  // truncated runs get a period too, flagged by kind
      int a = run.start + N - 1 - k, b = run.end - N + 1 + k;
      a = std::max(a, 0);
      b = std::min(b, n - 1);
      Word in = x.substr(a, b - a + 1);
      int p = int(least_period(in));
      run.period = p < N ? p : 0;
    }
    d.runs.push_back(run);
  }
  return d;
}

}  // namespace cantor
