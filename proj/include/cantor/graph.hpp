#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cantor {

// A word is a string of vertex indices (one char per position). Lexicographic
// order on words is therefore the order induced by vertex order.
using Word = std::string;

class BooleanMatrix {
 public:
  BooleanMatrix() = default;
  explicit BooleanMatrix(std::size_t n);
  static BooleanMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  bool get(std::size_t i, std::size_t j) const {
    return (bits_[i * stride_ + j / 64] >> (j % 64)) & 1;
  }
  void set(std::size_t i, std::size_t j, bool v = true);

  bool all_ones() const;
  bool trace() const;  // some diagonal entry set
  std::size_t count() const;

  friend BooleanMatrix operator*(BooleanMatrix const& a, BooleanMatrix const& b);
  friend bool operator==(BooleanMatrix const&, BooleanMatrix const&) = default;
  std::size_t hash() const;

 private:
  std::size_t n_ = 0, stride_ = 0;
  std::vector<std::uint64_t> bits_;
};

class DirectedGraph {
 public:
  DirectedGraph() = default;
  explicit DirectedGraph(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  std::string const& name(std::size_t i) const { return names_[i]; }
  std::vector<std::string> const& names() const { return names_; }
  int index(std::string const& name) const;  // -1 if absent

  void add_edge(std::size_t i, std::size_t j);
  bool has_edge(std::size_t i, std::size_t j) const { return adj_.get(i, j); }
  std::vector<int> const& out(std::size_t i) const { return out_[i]; }
  std::vector<int> const& in(std::size_t i) const { return in_[i]; }
  std::size_t edge_count() const { return nedges_; }
  std::vector<std::pair<int, int>> edges() const;  // sorted
  BooleanMatrix const& matrix() const { return adj_; }

  bool admissible(Word const& w) const;

  // "ab" when every name is one character, otherwise "v1.v2"
  std::string spell(Word const& w) const;
  Word parse_word(std::string const& s) const;  // throws Error

  friend bool operator==(DirectedGraph const& a, DirectedGraph const& b) {
    return a.names_ == b.names_ && a.adj_ == b.adj_;
  }

 private:
  std::vector<std::string> names_;
  BooleanMatrix adj_;
  std::vector<std::vector<int>> out_, in_;
  std::size_t nedges_ = 0;
};

// common presentations used by tests, examples and the cli
namespace graphs {
DirectedGraph complete(std::size_t n);  // vertices a, b, c ...
DirectedGraph golden_mean();            // a->a, a->b, b->a
DirectedGraph two_cycle();              // a<->b
DirectedGraph single_loop();
DirectedGraph cycles_2_3();             // a->b->a and a->c->d->a
DirectedGraph from_edges(std::vector<std::string> names,
                         std::vector<std::pair<std::string, std::string>> const& edges);
}  // namespace graphs

}  // namespace cantor
