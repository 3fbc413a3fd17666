#include "cantor/sft.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "cantor/error.hpp"

namespace cantor {

DirectedGraph essentialize(DirectedGraph const& g) {
  std::size_t n = g.size();
  std::vector<bool> alive(n, true);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      bool o = std::any_of(g.out(v).begin(), g.out(v).end(), [&](int u) { return alive[u]; });
      bool i = std::any_of(g.in(v).begin(), g.in(v).end(), [&](int u) { return alive[u]; });
      if (!o || !i) alive[v] = false, changed = true;
    }
  }
  std::vector<std::string> names;
  std::vector<int> idx(n, -1);
  for (std::size_t v = 0; v < n; ++v)
    if (alive[v]) idx[v] = int(names.size()), names.push_back(g.name(v));
  DirectedGraph h(names);
  for (auto [u, v] : g.edges())
    if (alive[u] && alive[v]) h.add_edge(idx[u], idx[v]);
  return h;
}

bool is_essential(DirectedGraph const& g) {
  for (std::size_t v = 0; v < g.size(); ++v)
    if (g.out(v).empty() || g.in(v).empty()) return false;
  return true;
}

std::vector<Word> words(DirectedGraph const& g, std::size_t k) {
  std::vector<Word> out;
  if (k == 0) return {Word()};
  Word w;
  auto rec = [&](auto& self) -> void {
    if (w.size() == k) {
      out.push_back(w);
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
  return out;
}

double count_words(DirectedGraph const& g, std::size_t k) {
  if (k == 0) return 1;
  std::vector<double> c(g.size(), 1.0);
  for (std::size_t step = 1; step < k; ++step) {
    std::vector<double> d(g.size(), 0.0);
    for (std::size_t v = 0; v < g.size(); ++v)
      for (int u : g.out(v)) d[v] += c[u];
    c = d;
  }
  return std::accumulate(c.begin(), c.end(), 0.0);
}

MixingResult is_mixing(DirectedGraph const& g) {
  if (g.empty()) throw Error("is_mixing: empty graph");
  std::size_t n = g.size();
  MixingResult r;
  // reachability first, so reducible graphs get a plain witness
  BooleanMatrix reach = g.matrix(), p = g.matrix();
  for (std::size_t i = 1; i < n; ++i) {
    p = p * g.matrix();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (p.get(a, b)) reach.set(a, b);
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (!reach.get(a, b)) {
        r.u = int(a), r.v = int(b);
        r.reason = "no path from " + g.name(a) + " to " + g.name(b);
        return r;
      }
  // irreducible: period = gcd of level differences along edges
  std::vector<long> level(n, -1);
  level[0] = 0;
  std::vector<int> queue{0};
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (int v : g.out(queue[h]))
      if (level[v] < 0) level[v] = level[queue[h]] + 1, queue.push_back(v);
  long per = 0;
  for (auto [a, b] : g.edges()) per = std::gcd(per, std::labs(level[a] + 1 - level[b]));
  if (per != 1) {
    r.u = r.v = 0;
    r.period = int(per);
    r.residue = 0;
    r.reason = "period " + std::to_string(per) + ": paths " + g.name(0) + "->" + g.name(0) +
               " only at lengths divisible by " + std::to_string(per);
    return r;
  }
  // primitive; Wielandt bounds the index
  std::size_t bound = (n - 1) * (n - 1) + 1;
  p = g.matrix();
  for (std::size_t e = 1; e <= bound; ++e) {
    if (p.all_ones()) {
      r.mixing = true;
      r.N = int(e);
      return r;
    }
    p = p * g.matrix();
  }
  throw std::logic_error("is_mixing: primitive graph exceeded Wielandt bound");
}

std::vector<bool> forward_deterministic(DirectedGraph const& g) {
  std::size_t n = g.size();
  std::vector<bool> det(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    // follow unique out-edges; deterministic iff we close a cycle that way
    std::vector<bool> seen(n, false);
    std::size_t x = v;
    bool ok = true;
    while (!seen[x]) {
      seen[x] = true;
      if (g.out(x).size() != 1) {
        ok = false;
        break;
      }
      x = g.out(x)[0];
    }
    det[v] = ok;
  }
  return det;
}

std::vector<bool> backward_deterministic(DirectedGraph const& g) {
  DirectedGraph r(g.names());
  for (auto [a, b] : g.edges()) r.add_edge(b, a);
  return forward_deterministic(r);
}

bool is_perfect(DirectedGraph const& g0) {
  DirectedGraph g = essentialize(g0);
  if (g.empty()) return true;  // empty space has no isolated point
  if (g.edge_count() >= 2 && is_mixing(g).mixing) return true;
  // x is isolated iff a finite block pins both its past and future: some
  // backward-forced vertex reaches some forward-forced vertex
  auto fwd = forward_deterministic(g);
  auto bwd = backward_deterministic(g);
  std::size_t n = g.size();
  for (std::size_t u = 0; u < n; ++u) {
    if (!bwd[u]) continue;
    std::vector<bool> seen(n, false);
    std::vector<int> st{int(u)};
    seen[u] = true;
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      if (fwd[x]) return false;
      for (int y : g.out(x))
        if (!seen[y]) seen[y] = true, st.push_back(y);
    }
  }
  return true;
}

bool is_perfect_one_sided(DirectedGraph const& g0) {
  DirectedGraph g = essentialize(g0);
  auto fwd = forward_deterministic(g);
  return std::none_of(fwd.begin(), fwd.end(), [](bool b) { return b; });
}

EventuallyPeriodicSet::EventuallyPeriodicSet(int rho, int p, std::vector<bool> bits)
    : rho_(rho), p_(p), bits_(std::move(bits)) {
  if (rho_ < 1 || p_ < 1 || bits_.size() != std::size_t(rho_ + p_ - 1))
    throw Error("EventuallyPeriodicSet: inconsistent preperiod/period/members");
  auto at = [&](long n) { return contains(n); };
  // smallest period dividing p
  int best = p_;
  for (int q = 1; q < p_; ++q) {
    if (p_ % q) continue;
    bool ok = true;
    for (int i = 0; i < p_ && ok; ++i) ok = at(rho_ + i) == at(rho_ + (i + q) % p_ + 0L);
    if (ok) {
      best = q;
      break;
    }
  }
  int np = best, nr = rho_;
  while (nr > 1 && at(nr - 1) == at(nr - 1 + np)) --nr;
  std::vector<bool> nb(nr + np - 1);
  for (int i = 0; i < nr + np - 1; ++i) nb[i] = at(i + 1);
  rho_ = nr, p_ = np, bits_ = std::move(nb);
}

bool EventuallyPeriodicSet::contains(long n) const {
  if (n < 1) return false;
  if (n >= rho_) n = rho_ + (n - rho_) % p_;
  return bits_[n - 1];
}

bool EventuallyPeriodicSet::is_empty() const {
  return std::none_of(bits_.begin(), bits_.end(), [](bool b) { return b; });
}

std::string EventuallyPeriodicSet::str() const {
  if (is_empty()) return "{}";
  std::ostringstream os;
  os << "{";
  int shown = 0, limit = rho_ + 2 * p_ - 1;
  limit = std::max(limit, 4);
  bool first = true;
  for (int n = 1; n <= limit; ++n)
    if (contains(n)) {
      os << (first ? "" : ",") << n;
      first = false;
      ++shown;
    }
  os << ",...}";
  return os.str();
}

EventuallyPeriodicSet per_spectrum(DirectedGraph const& g) {
  if (g.empty()) return EventuallyPeriodicSet::empty();
  // powers B^1, B^2, ... until one repeats
  std::unordered_multimap<std::size_t, int> seen;
  std::vector<BooleanMatrix> pw;
  BooleanMatrix p = g.matrix();
  for (;;) {
    std::size_t h = p.hash();
    auto [lo, hi] = seen.equal_range(h);
    for (auto it = lo; it != hi; ++it)
      if (pw[it->second] == p) {
        int rho = it->second + 1, per = int(pw.size()) + 1 - rho;
        std::vector<bool> bits;
        for (auto& m : pw) bits.push_back(m.trace());
        return EventuallyPeriodicSet(rho, per, bits);
      }
    seen.emplace(h, int(pw.size()));
    pw.push_back(p);
    p = p * g.matrix();
  }
}

SubsetResult per_subset(EventuallyPeriodicSet const& a, EventuallyPeriodicSet const& b) {
  long lim = std::max(a.preperiod(), b.preperiod()) + std::lcm(long(a.period()), long(b.period()));
  for (long n = 1; n <= lim; ++n)
    if (a.contains(n) && !b.contains(n)) return {false, n};
  return {};
}

bool is_primitive_word(Word const& w) {
  if (w.empty()) return false;
  return (w + w).find(w, 1) == w.size();
}

Word least_rotation(Word const& w) {
  Word best = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    Word r = w.substr(i) + w.substr(0, i);
    if (r < best) best = r;
  }
  return best;
}

std::size_t least_period(Word const& w) {
  // prefix function
  std::size_t n = w.size();
  if (n == 0) return 0;
  std::vector<std::size_t> pi(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t k = pi[i - 1];
    while (k && w[i] != w[k]) k = pi[k - 1];
    if (w[i] == w[k]) ++k;
    pi[i] = k;
  }
  return n - pi[n - 1];
}

std::vector<PeriodicOrbit> periodic_orbits_upto(DirectedGraph const& g, int N) {
  std::vector<PeriodicOrbit> out;
  for (int j = 1; j < N; ++j) {
    for (std::size_t s = 0; s < g.size(); ++s) {
      // closed walks starting at their minimal vertex s
      Word w(1, char(s));
      auto rec = [&](auto& self) -> void {
        if (int(w.size()) == j) {
          if (g.has_edge((unsigned char)w.back(), s) && is_primitive_word(w) && least_rotation(w) == w)
            out.push_back({j, w});
          return;
        }
        for (int v : g.out((unsigned char)w.back())) {
          if (std::size_t(v) < s) continue;
          w.push_back(char(v));
          self(self);
          w.pop_back();
        }
      };
      rec(rec);
    }
  }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) {
    return a.period != b.period ? a.period < b.period : a.walk < b.walk;
  });
  return out;
}

bool is_subgraph(DirectedGraph const& g, DirectedGraph const& h) {
  std::vector<int> map(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    map[v] = h.index(g.name(v));
    if (map[v] < 0) return false;
  }
  for (auto [a, b] : g.edges())
    if (!h.has_edge(map[a], map[b])) return false;
  return true;
}

std::string to_dot(DirectedGraph const& g, std::string const& name) {
  auto q = [](std::string const& s) {
    std::string r = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') r += '\\';
      r += c;
    }
    return r + "\"";
  };
  std::ostringstream os;
  os << "digraph " << q(name) << " {\n";
  for (std::size_t v = 0; v < g.size(); ++v) os << "  " << q(g.name(v)) << ";\n";
  for (auto [a, b] : g.edges()) os << "  " << q(g.name(a)) << " -> " << q(g.name(b)) << ";\n";
  os << "}\n";
  return os.str();
}

// every strongly connected piece a single cycle and no edges between pieces
bool is_finite_periodic(DirectedGraph const& g) {
  int n = int(g.size());
  BooleanMatrix reach(n), p = g.matrix();
  for (int t = 1; t <= n; ++t, p = p * g.matrix())
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (p.get(i, j)) reach.set(i, j);
  for (int i = 0; i < n; ++i) {
    int inside = 0;
    for (int j : g.out(i))
      if (reach.get(j, i)) ++inside;
      else return false;
    if (inside > 1) return false;
  }
  return true;
}

}  // namespace cantor
