#include "cantor/cantor_space.hpp"

#include <algorithm>
#include <map>

#include "cantor/error.hpp"
#include "cantor/sft.hpp"

namespace cantor {

DomainSpace::DomainSpace(DirectedGraph g) : g_(std::move(g)) {
  if (g_.size() < 2) throw Error("domain alphabet needs at least 2 symbols");
  if (!is_essential(g_)) throw Error("domain graph is not essential (a vertex lacks an in- or out-edge)");
}

DomainSpace DomainSpace::full(std::size_t n) { return DomainSpace(graphs::complete(n)); }

bool DomainSpace::perfect() const { return is_perfect_one_sided(g_); }

namespace {

bool is_prefix(Word const& p, Word const& w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

void drop_covered(std::vector<Word>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  // in sorted order a word's prefixes that are present come before it; the
  // last kept word is the only candidate prefix
  std::vector<Word> out;
  for (auto& w : v)
    if (out.empty() || !is_prefix(out.back(), w)) out.push_back(w);
  v.swap(out);
}

}  // namespace

ClopenSet::ClopenSet(DomainSpace const& space, std::vector<Word> cyl) : cyl_(std::move(cyl)) {
  auto const& g = space.graph();
  for (auto& w : cyl_)
    if (w.empty() || !g.admissible(w)) throw Error("cylinder word is empty or inadmissible");
  drop_covered(cyl_);
  for (bool changed = true; changed;) {
    changed = false;
    std::map<Word, std::size_t> kids;
    for (auto& w : cyl_)
      if (w.size() >= 2) ++kids[w.substr(0, w.size() - 1)];
    std::vector<Word> merged;
    for (auto& [p, c] : kids)
      if (c == g.out((unsigned char)p.back()).size()) merged.push_back(p);
    if (merged.empty()) break;
    changed = true;
    for (auto& p : merged) cyl_.push_back(p);
    drop_covered(cyl_);
  }
}

ClopenSet ClopenSet::whole(DomainSpace const& space) {
  std::vector<Word> w;
  for (std::size_t v = 0; v < space.symbols(); ++v) w.push_back(Word(1, char(v)));
  return ClopenSet(space, w);
}

std::size_t ClopenSet::max_depth() const {
  std::size_t d = 0;
  for (auto& w : cyl_) d = std::max(d, w.size());
  return d;
}

std::vector<Word> ClopenSet::expand(DomainSpace const& space, std::size_t D) const {
  std::vector<Word> out;
  auto const& g = space.graph();
  for (auto const& c : cyl_) {
    if (c.size() > D) throw Error("expand: depth below cylinder depth");
    Word w = c;
    auto rec = [&](auto& self) -> void {
      if (w.size() == D) {
        out.push_back(w);
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
  std::sort(out.begin(), out.end());
  return out;
}

bool ClopenSet::contains_prefix(Word const& x) const {
  for (auto& c : cyl_)
    if (is_prefix(c, x)) return true;
  return false;
}

ClopenSet set_union(DomainSpace const& space, ClopenSet const& a, ClopenSet const& b) {
  auto v = a.cylinders();
  v.insert(v.end(), b.cylinders().begin(), b.cylinders().end());
  return ClopenSet(space, v);
}

bool disjoint(ClopenSet const& a, ClopenSet const& b) {
  for (auto& x : a.cylinders())
    for (auto& y : b.cylinders())
      if (is_prefix(x, y) || is_prefix(y, x)) return false;
  return true;
}

bool is_partition(DomainSpace const& space, CPartition const& p) {
  ClopenSet u;
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    if (p.parts[i].empty()) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (!disjoint(p.parts[i], p.parts[j])) return false;
    u = set_union(space, u, p.parts[i]);
  }
  return u == ClopenSet::whole(space);
}

Distance metric_dist(Word const& x, Word const& y) {
  std::size_t m = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < m; ++i)
    if (x[i] != y[i]) return {Dyadic::pow2(-int(i)), true};
  return {Dyadic::pow2(-int(m)), false};
}

Dyadic diam(DomainSpace const& space, ClopenSet const& s) {
  if (s.empty()) throw Error("diam of empty set");
  auto const& c = s.cylinders();
  if (c.size() > 1) {
    // prefix-incomparable words: the sorted extremes share the least prefix
    Word const& a = c.front();
    Word const& b = c.back();
    std::size_t i = 0;
    while (a[i] == b[i]) ++i;
    return Dyadic::pow2(-int(i));
  }
  // single cylinder: follow forced continuations to the first branch
  auto const& g = space.graph();
  Word w = c.front();
  std::vector<bool> seen(g.size(), false);
  for (;;) {
    int v = (unsigned char)w.back();
    if (g.out(v).size() >= 2) return Dyadic::pow2(-int(w.size()));
    if (seen[v]) return Dyadic();  // a single point
    seen[v] = true;
    w.push_back(char(g.out(v)[0]));
  }
}

Dyadic mesh(DomainSpace const& space, CPartition const& p) {
  Dyadic m;
  for (auto& part : p.parts) m = std::max(m, diam(space, part));
  return m;
}

CPartition standard_partition(DomainSpace const& space, std::size_t k) {
  if (k < 1) throw Error("standard_partition: k >= 1 required");
  CPartition p;
  for (auto& w : words(space.graph(), k)) {
    p.parts.push_back(ClopenSet(space, {w}));
    p.labels.push_back(w);
  }
  return p;
}

std::vector<ClopenSet> split_clopen(DomainSpace const& space, ClopenSet const& s, std::size_t m) {
  if (s.empty()) throw Error("split_clopen: empty set");
  if (m == 0) throw Error("split_clopen: m >= 1 required");
  auto const& g = space.graph();
  std::vector<ClopenSet> pieces{s};
  while (pieces.size() < m) {
    std::sort(pieces.begin(), pieces.end());
    bool done = false;
    for (std::size_t i = pieces.size(); i-- > 0 && !done;) {
      auto const& c = pieces[i].cylinders();
      if (c.size() >= 2) {
        std::vector<Word> rest(c.begin(), c.end() - 1);
        ClopenSet a(space, rest), b(space, {c.back()});
        pieces.erase(pieces.begin() + i);
        pieces.push_back(a);
        pieces.push_back(b);
        done = true;
        break;
      }
      Word w = c.front();
      std::vector<bool> seen(g.size(), false);
      while (g.out((unsigned char)w.back()).size() == 1 && !seen[(unsigned char)w.back()]) {
        seen[(unsigned char)w.back()] = true;
        w.push_back(char(g.out((unsigned char)w.back())[0]));
      }
      auto const& kids = g.out((unsigned char)w.back());
      if (kids.size() < 2) continue;  // a single point; try a smaller piece
      std::vector<Word> left;
      for (std::size_t j = 0; j + 1 < kids.size(); ++j) left.push_back(w + char(kids[j]));
      ClopenSet a(space, left), b(space, {w + char(kids.back())});
      pieces.erase(pieces.begin() + i);
      pieces.push_back(a);
      pieces.push_back(b);
      done = true;
    }
    if (!done) {
      std::string who = space.graph().spell(pieces.back().cylinders().front());
      throw Refusal("split_clopen: domain not perfect, cylinder " + who + " is a single point", who);
    }
  }
  std::sort(pieces.begin(), pieces.end());
  return pieces;
}

}  // namespace cantor
