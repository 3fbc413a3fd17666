#include "cantor/factor_coder.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "cantor/error.hpp"
#include "cantor/sft.hpp"
#include "digest.hpp"

namespace cantor {

namespace {

std::vector<BooleanMatrix> powers(DirectedGraph const& g, int upto) {
  std::vector<BooleanMatrix> p{BooleanMatrix::identity(g.size())};
  for (int t = 1; t <= upto; ++t) p.push_back(p.back() * g.matrix());
  return p;
}

// intermediate vertices of the lexicographically least path u -> v with
// exactly e >= 1 edges
std::optional<Word> lex_path(DirectedGraph const& g, std::vector<BooleanMatrix> const& pw, int u, int v, int e) {
  if (e < 1 || e >= int(pw.size()) || !pw[e].get(u, v)) return std::nullopt;
  Word mid;
  int cur = u;
  for (int left = e; left > 1; --left) {
    for (int y : g.out(cur))
      if (pw[left - 1].get(y, v)) {
        cur = y;
        break;
      }
    mid.push_back(char(cur));
  }
  return mid;
}

bool unbordered(Word const& w) {
  std::vector<int> pi(w.size(), 0);
  for (std::size_t i = 1; i < w.size(); ++i) {
    int j = pi[i - 1];
    while (j > 0 && w[i] != w[j]) j = pi[j - 1];
    if (w[i] == w[j]) ++j;
    pi[i] = j;
  }
  return w.empty() || pi.back() == 0;
}

void check_source(DirectedGraph const& lambda, char const* who) {
  if (lambda.empty() || !is_essential(lambda)) throw Error(std::string(who) + ": source graph must be essential");
  if (is_finite_periodic(lambda))
    throw Refusal(std::string(who) + ": the source is a finite set of periodic points", "finite-periodic");
  if (!is_perfect(lambda)) throw Refusal(std::string(who) + ": the source has an isolated point", "isolated point");
}

struct IdentityRule : detail::Rule {
  char eval(char const* x, signed char const*) const override { return x[0]; }
};

struct TableRule : detail::Rule {
  int r;
  std::map<Word, char> table;
  char eval(char const* x, signed char const*) const override {
    auto it = table.find(Word(x - r, x + r + 1));
    if (it == table.end()) throw Error("table code: no entry for a window");
    return it->second;
  }
};

struct MarkerRule : detail::Rule {
  MarkerSet m;
  int N, k;
  std::vector<int> phi;
  PsiTable psi;
  std::map<Word, char> head;

  MarkerSet const* markers() const override { return &m; }

  char periodic(char const* y) const {
    Word c(y - k, y + k + 1);
    int p = int(least_period(c));
    if (p >= N) throw std::logic_error("marker code: unmarked stretch with an aperiodic centre");
    auto it = head.find(Word(y, y + p));
    if (it == head.end()) throw std::logic_error("marker code: periodic block without an assigned orbit");
    return it->second;
  }

  char eval(char const* x, signed char const* mk) const override {
    if (mk[0]) return char(phi[(unsigned char)x[0]]);
    int R = N + k, a = 0, b = 0;
    for (int d = 1; d <= R && !a; ++d)
      if (mk[-d]) a = -d;
    for (int d = 1; d <= R && !b; ++d)
      if (mk[d]) b = d;
    // (A) short interval a+1 .. b-1
    if (a && b && b - a - 1 <= 2 * N - 2)
      return psi.at(phi[(unsigned char)x[a]], phi[(unsigned char)x[b]], b - a - 1)[-a - 1];
    // (C) transition at the left end of a long interval, then the right end
    if (a && -a <= N - 1) return psi.at(phi[(unsigned char)x[a]], periodic(x + a + N), N - 1)[-a - 1];
    if (b && b <= N - 1) return psi.at(periodic(x + b - N), phi[(unsigned char)x[b]], N - 1)[N - 1 - b];
    // (B)
    return periodic(x);
  }
};

struct TriggerRule : detail::Rule {
  Word T, D;
  char z;
  char eval(char const* x, signed char const*) const override {
    int t = int(T.size());
    for (int s = 0; s > -t; --s)
      if (std::equal(T.begin(), T.end(), x + s)) return D[-s];
    return z;
  }
};

}  // namespace

MixingConstants choose_constants(DirectedGraph const& sigma, std::vector<Word> W) {
  if (sigma.empty()) throw Error("choose_constants: empty target graph");
  auto mr = is_mixing(sigma);
  if (!mr.mixing) throw Refusal("choose_constants: target is not mixing (" + mr.reason + ")", mr.reason);
  for (auto const& w : W)
    if (w.empty() || !sigma.admissible(w)) throw Error("choose_constants: word not admissible in the target");
  std::sort(W.begin(), W.end());
  W.erase(std::unique(W.begin(), W.end()), W.end());
  MixingConstants c;
  c.n = mr.N;
  auto pw = powers(sigma, c.n);
  if (W.empty()) c.w0 = Word(1, char(0));
  for (auto const& w : W) {
    if (c.w0.empty()) {
      c.w0 = w;
      continue;
    }
    if (c.w0.find(w) != Word::npos) continue;
    int o = int(std::min(c.w0.size(), w.size() - 1));
    while (o > 0 && c.w0.compare(c.w0.size() - o, o, w, 0, o) != 0) --o;
    if (o > 0) {
      c.w0 += w.substr(o);
      continue;
    }
    std::optional<Word> mid;
    for (int e = 1; e <= c.n && !mid; ++e) mid = lex_path(sigma, pw, (unsigned char)c.w0.back(), (unsigned char)w[0], e);
    if (!mid) throw std::logic_error("choose_constants: mixing constant does not connect two vertices");
    c.w0 += *mid + w;
  }
  c.n0 = int(c.w0.size());
  c.N = 2 * c.n + c.n0;
  return c;
}

Word const& PsiTable::at(int v, int v2, int l) const {
  auto it = entries.find({v, v2, l});
  if (it == entries.end()) throw Error("psi: no entry for the requested length");
  return it->second;
}

PsiTable build_psi(DirectedGraph const& sigma, MixingConstants const& c) {
  if (c.w0.empty() || !sigma.admissible(c.w0) || c.N != 2 * c.n + c.n0) throw Error("build_psi: inconsistent constants");
  PsiTable t;
  t.N = c.N;
  int V = int(sigma.size());
  auto pw = powers(sigma, 2 * c.N);
  int first = (unsigned char)c.w0.front(), last = (unsigned char)c.w0.back();
  for (int v = 0; v < V; ++v)
    for (int v2 = 0; v2 < V; ++v2)
      for (int l = c.N - 1; l <= 2 * c.N - 2; ++l) {
        std::optional<Word> best;
        for (int p = 0; p + c.n0 <= l; ++p) {
          auto pre = lex_path(sigma, pw, v, first, p + 1);
          if (!pre) continue;
          auto suf = lex_path(sigma, pw, last, v2, l - p - c.n0 + 1);
          if (!suf) continue;
          Word cand = *pre + c.w0 + *suf;
          if (!best || cand < *best) best = cand;
        }
        if (!best) throw std::logic_error("build_psi: no routing through w0");
        Word full = char(v) + *best + char(v2);
        if (!sigma.admissible(full)) throw std::logic_error("build_psi: entry is not a path");
        t.entries[{v, v2, l}] = *best;
      }
  return t;
}

PeriodicAssignment assign_periodic(DirectedGraph const& lambda, DirectedGraph const& sigma, int N) {
  auto sub = per_subset(per_spectrum(lambda), per_spectrum(sigma));
  if (!sub.holds)
    throw Refusal("assign_periodic: period " + std::to_string(sub.witness) + " of the source is missing in the target",
                  std::to_string(sub.witness));
  PeriodicAssignment pa;
  pa.N = N;
  auto pw = powers(sigma, N);
  for (auto const& orb : periodic_orbits_upto(lambda, N)) {
    int p = orb.period;
    // lexicographic DFS over closed walks of length p, first primitive one wins
    std::optional<Word> any, prim;
    Word w;
    auto rec = [&](auto& self) -> void {
      if (prim) return;
      if (int(w.size()) == p) {
        if (!sigma.has_edge((unsigned char)w.back(), (unsigned char)w[0])) return;
        if (!any) any = w;
        if (is_primitive_word(w)) prim = w;
        return;
      }
      int left = p - int(w.size());
      auto try_v = [&](int y) {
        if (!w.empty() && !pw[left].get(y, (unsigned char)w[0])) return;
        w.push_back(char(y));
        self(self);
        w.pop_back();
      };
      if (w.empty())
        for (int y = 0; y < int(sigma.size()); ++y) try_v(y);
      else
        for (int y : sigma.out((unsigned char)w.back())) try_v(y);
    };
    rec(rec);
    if (!any) throw std::logic_error("assign_periodic: spectrum said yes but no closed walk found");
    Word q = prim ? *prim : *any;
    pa.orbits[orb.walk] = q;
    for (int s = 0; s < p; ++s) pa.head[orb.walk.substr(s) + orb.walk.substr(0, s)] = q[s];
  }
  return pa;
}

SlidingBlockCode::SlidingBlockCode(DirectedGraph source, DirectedGraph target, int radius, std::string method,
                                   std::shared_ptr<detail::Rule const> rule)
    : source_(std::move(source)), target_(std::move(target)), radius_(radius), method_(std::move(method)),
      rule_(std::move(rule)) {
  if (radius_ < 0 || !rule_) throw Error("sliding block code: bad radius or missing rule");
}

char SlidingBlockCode::apply(Word const& window) const {
  if (int(window.size()) != 2 * radius_ + 1) throw Error("apply: window length must be 2r+1");
  return image(window)[0];
}

Word SlidingBlockCode::image(Word const& x) const {
  int n = int(x.size()), r = radius_;
  Word out;
  if (n < 2 * r + 1) return out;
  std::vector<signed char> mk(n, 0);
  if (auto m = rule_->markers()) {
    int L = m->L;
    for (int j = L; j + L < n; ++j) mk[j] = m->marked(x.substr(j - L, 2 * L + 1)) ? 1 : 0;
  }
  for (int i = r; i + r < n; ++i) out.push_back(rule_->eval(x.data() + i, mk.data() + i));
  return out;
}

std::uint64_t SlidingBlockCode::digest() const {
  std::string s = method_ + "|" + std::to_string(radius_);
  for (auto const& [k, v] : provenance) s += "|" + k + "=" + v;
  return detail::fnv(s);
}

SlidingBlockCode table_code(DirectedGraph source, DirectedGraph target, int radius, std::map<Word, char> table) {
  auto r = std::make_shared<TableRule>();
  r->r = radius;
  std::string all;
  for (auto const& [w, s] : table) {
    if (int(w.size()) != 2 * radius + 1) throw Error("table code: window of the wrong length");
    if (!source.admissible(w)) throw Error("table code: window not admissible in the source");
    if ((unsigned char)s >= target.size()) throw Error("table code: output symbol outside the target");
    all += w + char(s);
  }
  for (auto const& w : words(source, 2 * radius + 1))
    if (!table.count(w)) throw Error("table code: rule is not total");
  r->table = std::move(table);
  SlidingBlockCode c(std::move(source), std::move(target), radius, "table", r);
  c.provenance["table"] = detail::hex(detail::fnv(all));
  return c;
}

SlidingBlockCode identity_code(DirectedGraph g) { return identity_code(g, g); }

SlidingBlockCode identity_code(DirectedGraph source, DirectedGraph target) {
  if (!(source.matrix() == target.matrix())) throw Error("identity code: graphs differ");
  return SlidingBlockCode(std::move(source), std::move(target), 0, "identity", std::make_shared<IdentityRule>());
}

SlidingBlockCode compile_code(DirectedGraph const& lambda, DirectedGraph const& sigma, MarkerSet const& markers,
                              MixingConstants const& c, PsiTable const& psi, PeriodicAssignment const& pa,
                              std::vector<int> phi) {
  check_source(lambda, "compile_code");
  if (!(markers.subshift == lambda)) throw Error("compile_code: markers were built for another subshift");
  if (markers.N != c.N || psi.N != c.N || pa.N != c.N) throw Error("compile_code: N disagrees between inputs");
  if (markers.k <= 2 * c.N) throw Error("compile_code: requires k > 2N");
  if (phi.empty()) phi.assign(lambda.size(), 0);
  if (phi.size() != lambda.size()) throw Error("compile_code: phi needs one target vertex per source vertex");
  for (int v : phi)
    if (v < 0 || v >= int(sigma.size())) throw Error("compile_code: phi value outside the target");
  auto r = std::make_shared<MarkerRule>();
  r->m = markers;
  r->m.index();
  r->N = c.N;
  r->k = markers.k;
  r->phi = phi;
  r->psi = psi;
  r->head = pa.head;
  int radius = markers.L + c.N + markers.k;
  SlidingBlockCode code(lambda, sigma, radius, "marker", r);
  std::string ms, ps, phis;
  for (auto const& w : markers.windows) ms += w + '|';
  for (auto const& [key, w] : psi.entries) ps += w + '|';
  for (int v : phi) phis += sigma.name(v) + ",";
  code.provenance["N"] = std::to_string(c.N);
  code.provenance["n"] = std::to_string(c.n);
  code.provenance["k"] = std::to_string(markers.k);
  code.provenance["L"] = std::to_string(markers.L);
  code.provenance["w0"] = sigma.spell(c.w0);
  code.provenance["phi"] = phis;
  code.provenance["markers"] = detail::hex(detail::fnv(ms));
  code.provenance["psi"] = detail::hex(detail::fnv(ps));
  return code;
}

TriggerPlan plan_trigger(DirectedGraph const& lambda, DirectedGraph const& sigma, Word const& w0) {
  check_source(lambda, "plan_trigger");
  if (w0.empty() || !sigma.admissible(w0)) throw Error("plan_trigger: w0 must be a target word");
  TriggerPlan p;
  p.z = -1;
  for (int v = 0; v < int(sigma.size()) && p.z < 0; ++v)
    if (sigma.has_edge(v, v)) p.z = v;
  if (p.z < 0) throw Refusal("plan_trigger: target has no fixed point to idle on", "no loop");
  int n = int(sigma.size());
  auto pw = powers(sigma, n);
  auto connect = [&](int u, int v) {
    for (int e = 1; e <= n; ++e)
      if (auto m = lex_path(sigma, pw, u, v, e)) return *m;
    throw Refusal("plan_trigger: target is not strongly connected", "disconnected");
  };
  Word D = char(p.z) + connect(p.z, (unsigned char)w0.front()) + w0 + connect((unsigned char)w0.back(), p.z) + char(p.z);

  // first-return loops at a base vertex: simple cycles, shortest first
  int m = int(lambda.size());
  for (int base = 0; base < m; ++base) {
    std::vector<Word> loops;
    Word w(1, char(base));
    std::vector<bool> used(m, false);
    used[base] = true;
    auto rec = [&](auto& self) -> void {
      for (int y : lambda.out((unsigned char)w.back())) {
        if (y == base) {
          loops.push_back(w);
          continue;
        }
        if (used[y]) continue;
        used[y] = true;
        w.push_back(char(y));
        self(self);
        w.pop_back();
        used[y] = false;
      }
    };
    rec(rec);
    if (loops.size() < 2) continue;
    std::sort(loops.begin(), loops.end(),
              [](Word const& a, Word const& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
    Word X = loops[0], Y = loops[1];
    for (std::size_t reps = 1; reps < D.size() + X.size() + Y.size() + 4; ++reps) {
      for (int order = 0; order < 2; ++order) {
        Word const& A = order ? Y : X;
        Word const& B = order ? X : Y;
        Word T;
        for (std::size_t i = 0; i < reps; ++i) T += A;
        T += B;
        if (T.size() < D.size() || !unbordered(T)) continue;
        p.T = T;
        p.D = Word(T.size() - D.size(), char(p.z)) + D;
        return p;
      }
    }
  }
  throw Refusal("plan_trigger: no unbordered trigger word found in the source", "no trigger");
}

SlidingBlockCode trigger_code(DirectedGraph const& lambda, DirectedGraph const& sigma, TriggerPlan const& p) {
  auto r = std::make_shared<TriggerRule>();
  r->T = p.T;
  r->D = p.D;
  r->z = char(p.z);
  SlidingBlockCode code(lambda, sigma, int(p.T.size()) - 1, "trigger", r);
  code.provenance["T"] = lambda.spell(p.T);
  code.provenance["D"] = sigma.spell(p.D);
  code.provenance["z"] = sigma.name(p.z);
  return code;
}

AdmissibilityReport verify_image(SlidingBlockCode const& code, double max_windows) {
  AdmissibilityReport rep;
  auto const& g = code.source();
  auto const& t = code.target();
  int r = code.radius(), len = 2 * r + 2;
  double total = count_words(g, len);
  if (total > max_windows) {
    rep.ok = false;
    rep.note = "exhaustive check needs " + std::to_string(total) + " windows of length " + std::to_string(len) +
               ", over the budget of " + std::to_string(max_windows);
    return rep;
  }
  rep.exhaustive = true;
  MarkerSet const* m = code.rule().markers();
  int L = m ? m->L : 0;
  Word x(len, 0);
  std::vector<signed char> mk(len, 0);
  Word win;
  auto const& rule = code.rule();
  auto rec = [&](auto& self, int d) -> void {
    if (!rep.ok) return;
    if (d == len) {
      rep.scanned += 1;
      char a = rule.eval(x.data() + r, mk.data() + r), b = rule.eval(x.data() + r + 1, mk.data() + r + 1);
      if (!t.has_edge((unsigned char)a, (unsigned char)b)) rep.ok = false, rep.witness = x;
      return;
    }
    auto step = [&](int v) {
      x[d] = char(v);
      if (m && d >= 2 * L) {
        win.assign(x.data() + d - 2 * L, 2 * L + 1);
        mk[d - L] = m->marked(win) ? 1 : 0;
      }
      self(self, d + 1);
    };
    if (d == 0)
      for (int v = 0; v < int(g.size()); ++v) step(v);
    else
      for (int v : g.out((unsigned char)x[d - 1])) step(v);
  };
  rec(rec, 0);
  return rep;
}

AdmissibilityReport verify_trigger_structure(SlidingBlockCode const& code, TriggerPlan const& p) {
  AdmissibilityReport rep;
  rep.note = "structural";
  auto fail = [&](std::string why) {
    rep.ok = false;
    rep.note = why;
    return rep;
  };
  auto const& g = code.source();
  auto const& t = code.target();
  if (code.method() != "trigger") return fail("not a trigger code");
  if (p.T.empty() || !g.admissible(p.T)) return fail("trigger word not admissible in the source");
  if (!unbordered(p.T)) return fail("trigger word has a border, occurrences could overlap");
  if (p.D.size() != p.T.size()) return fail("D and T differ in length");
  if (!t.admissible(p.D)) return fail("D is not a target path");
  if (p.z < 0 || p.z >= int(t.size()) || !t.has_edge(p.z, p.z)) return fail("idle vertex has no loop");
  if ((unsigned char)p.D.front() != p.z || (unsigned char)p.D.back() != p.z) return fail("D must start and end at z");
  if (code.radius() != int(p.T.size()) - 1) return fail("radius does not match the trigger length");
  // occurrences of T are disjoint, so the image is a concatenation of copies
  // of D and of z, each a path, glued at z where the loop is an edge
  return rep;
}

CoverageWitness coverage_witness(SlidingBlockCode const& code, Word const& w0) {
  auto const& g = code.source();
  int r = code.radius();
  auto extend = [&](Word x, int left, int right) {
    for (int i = 0; i < left; ++i) x.insert(x.begin(), char(g.in((unsigned char)x.front()).front()));
    for (int i = 0; i < right; ++i) x.push_back(char(g.out((unsigned char)x.back()).front()));
    return x;
  };
  auto attempt = [&](Word const& core, int extra) -> std::optional<CoverageWitness> {
    Word x = extend(core, r, r + extra);
    Word img = code.image(x);
    auto pos = img.find(w0);
    if (pos == Word::npos) return std::nullopt;
    return CoverageWitness{x, int(pos), img};
  };
  if (code.source().matrix() == code.target().matrix())
    if (auto cw = attempt(w0, 0)) return *cw;
  if (code.method() == "trigger") {
    Word T = code.provenance.count("T") ? g.parse_word(code.provenance.at("T")) : Word();
    if (auto cw = attempt(T, 0)) return *cw;
  }
  if (auto m = code.rule().markers()) {
    int N = std::stoi(code.provenance.at("N"));
    std::size_t tries = std::min<std::size_t>(m->windows.size(), 2000);
    for (std::size_t i = 0; i < tries; ++i)
      if (auto cw = attempt(m->windows[i], 2 * N)) return *cw;
  }
  // plain search over short words
  for (int len = 1; len <= 8; ++len)
    for (auto const& core : words(g, len))
      if (auto cw = attempt(core, 0)) return *cw;
  throw Refusal("coverage_witness: no source word found whose image contains w0", "not found");
}

namespace {

// source words of length |w|+2r whose image is w, lexicographic; visit
// returns false to stop
template <class F>
void preimages(SlidingBlockCode const& code, Word const& w, F&& visit) {
  auto const& g = code.source();
  int r = code.radius(), len = int(w.size()) + 2 * r;
  Word x;
  bool stop = false;
  auto rec = [&](auto& self) -> void {
    int d = int(x.size());
    if (d >= 2 * r + 1) {
      int i = d - 2 * r - 1;  // output index now determined
      if (code.apply(x.substr(i, 2 * r + 1)) != w[i]) return;
    }
    if (d == len) {
      stop = !visit(x);
      return;
    }
    auto step = [&](int v) {
      if (stop) return;
      x.push_back(char(v));
      self(self);
      x.pop_back();
    };
    if (x.empty())
      for (int v = 0; v < int(g.size()); ++v) step(v);
    else
      for (int v : g.out((unsigned char)x.back())) step(v);
  };
  if (!w.empty()) rec(rec);
}

}  // namespace

CylinderUnion preimage_cylinder(SlidingBlockCode const& code, int m, Word const& w, std::size_t max_words) {
  CylinderUnion out;
  out.start = m - code.radius();
  preimages(code, w, [&](Word const& u) {
    out.words.push_back(u);
    if (out.words.size() > max_words)
      throw Refusal("preimage_cylinder: more than " + std::to_string(max_words) + " words", "budget");
    return true;
  });
  return out;
}

bool preimage_nonempty(SlidingBlockCode const& code, Word const& w) {
  bool hit = false;
  preimages(code, w, [&](Word const&) { return !(hit = true); });
  return hit;
}

PreimagePoint preimage_point(SlidingBlockCode const& code, CoverageWitness const& cw, int m, Word const& w) {
  auto q = cw.image.find(w);
  if (q == Word::npos) return {};
  return PreimagePoint{cw.x, m - int(q) - code.radius()};
}

}  // namespace cantor
