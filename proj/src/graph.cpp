#include "cantor/graph.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "cantor/error.hpp"

namespace cantor {

BooleanMatrix::BooleanMatrix(std::size_t n)
    : n_(n), stride_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

BooleanMatrix BooleanMatrix::identity(std::size_t n) {
  BooleanMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

void BooleanMatrix::set(std::size_t i, std::size_t j, bool v) {
  auto& w = bits_[i * stride_ + j / 64];
  if (v)
    w |= std::uint64_t(1) << (j % 64);
  else
    w &= ~(std::uint64_t(1) << (j % 64));
}

bool BooleanMatrix::all_ones() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (!get(i, j)) return false;
  return true;
}

bool BooleanMatrix::trace() const {
  for (std::size_t i = 0; i < n_; ++i)
    if (get(i, i)) return true;
  return false;
}

std::size_t BooleanMatrix::count() const {
  std::size_t c = 0;
  for (auto w : bits_) c += __builtin_popcountll(w);
  return c;
}

BooleanMatrix operator*(BooleanMatrix const& a, BooleanMatrix const& b) {
  BooleanMatrix r(a.n_);
  for (std::size_t i = 0; i < a.n_; ++i) {
    std::uint64_t* out = &r.bits_[i * r.stride_];
    for (std::size_t k = 0; k < a.n_; ++k) {
      if (!a.get(i, k)) continue;
      std::uint64_t const* row = &b.bits_[k * b.stride_];
      for (std::size_t w = 0; w < r.stride_; ++w) out[w] |= row[w];
    }
  }
  return r;
}

std::size_t BooleanMatrix::hash() const {
  std::size_t h = n_;
  for (auto w : bits_) h = h * 1000003u ^ std::hash<std::uint64_t>{}(w);
  return h;
}

DirectedGraph::DirectedGraph(std::vector<std::string> names)
    : names_(std::move(names)), adj_(names_.size()), out_(names_.size()), in_(names_.size()) {
  std::set<std::string> seen(names_.begin(), names_.end());
  if (seen.size() != names_.size()) throw Error("duplicate vertex name");
  if (names_.size() > 255) throw Error("too many vertices (max 255)");
}

int DirectedGraph::index(std::string const& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : int(it - names_.begin());
}

void DirectedGraph::add_edge(std::size_t i, std::size_t j) {
  if (adj_.get(i, j)) return;
  adj_.set(i, j);
  auto ins = [](std::vector<int>& v, int x) { v.insert(std::lower_bound(v.begin(), v.end(), x), x); };
  ins(out_[i], int(j));
  ins(in_[j], int(i));
  ++nedges_;
}

std::vector<std::pair<int, int>> DirectedGraph::edges() const {
  std::vector<std::pair<int, int>> e;
  for (std::size_t i = 0; i < size(); ++i)
    for (int j : out_[i]) e.emplace_back(int(i), j);
  return e;
}

bool DirectedGraph::admissible(Word const& w) const {
  for (unsigned char c : w)
    if (c >= size()) return false;
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (!has_edge((unsigned char)w[i], (unsigned char)w[i + 1])) return false;
  return true;
}

namespace {
bool single_chars(std::vector<std::string> const& names) {
  for (auto& n : names)
    if (n.size() != 1) return false;
  return true;
}
}  // namespace

std::string DirectedGraph::spell(Word const& w) const {
  std::string s;
  bool one = single_chars(names_);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!one && i) s += '.';
    s += names_[(unsigned char)w[i]];
  }
  return s;
}

Word DirectedGraph::parse_word(std::string const& s) const {
  Word w;
  auto push = [&](std::string const& tok) {
    int i = index(tok);
    if (i < 0) throw Error("unknown symbol '" + tok + "' in word '" + s + "'");
    w.push_back(char(i));
  };
  if (single_chars(names_)) {
    for (char c : s) push(std::string(1, c));
  } else {
    std::size_t start = 0;
    while (start <= s.size()) {
      auto dot = s.find('.', start);
      if (dot == std::string::npos) dot = s.size();
      push(s.substr(start, dot - start));
      start = dot + 1;
    }
  }
  return w;
}

namespace graphs {

DirectedGraph complete(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, char('a' + i)));
  DirectedGraph g(names);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g.add_edge(i, j);
  return g;
}

DirectedGraph from_edges(std::vector<std::string> names,
                         std::vector<std::pair<std::string, std::string>> const& edges) {
  DirectedGraph g(std::move(names));
  for (auto& [u, v] : edges) {
    int i = g.index(u), j = g.index(v);
    if (i < 0 || j < 0) throw Error("edge references unknown vertex " + u + "->" + v);
    g.add_edge(i, j);
  }
  return g;
}

DirectedGraph golden_mean() { return from_edges({"a", "b"}, {{"a", "a"}, {"a", "b"}, {"b", "a"}}); }
DirectedGraph two_cycle() { return from_edges({"a", "b"}, {{"a", "b"}, {"b", "a"}}); }
DirectedGraph single_loop() { return from_edges({"a"}, {{"a", "a"}}); }
DirectedGraph cycles_2_3() {
  return from_edges({"a", "b", "c", "d"},
                    {{"a", "b"}, {"b", "a"}, {"a", "c"}, {"c", "d"}, {"d", "a"}});
}

}  // namespace graphs
}  // namespace cantor
