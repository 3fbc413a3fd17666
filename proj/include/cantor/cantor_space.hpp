#pragma once

#include <string>
#include <vector>

#include "cantor/dyadic.hpp"
#include "cantor/graph.hpp"

namespace cantor {

// One-sided vertex shift X_G^+ with d(x,y) = 2^-(first differing index).
class DomainSpace {
 public:
  DomainSpace() = default;
  explicit DomainSpace(DirectedGraph g);  // throws Error unless essential, >= 2 symbols

  static DomainSpace full(std::size_t n) ;

  DirectedGraph const& graph() const { return g_; }
  std::vector<std::string> const& alphabet() const { return g_.names(); }
  std::size_t symbols() const { return g_.size(); }
  bool perfect() const;

  friend bool operator==(DomainSpace const&, DomainSpace const&) = default;

 private:
  DirectedGraph g_;
};

// finite union of cylinders [w] = {x : x_0..x_{|w|-1} = w}, kept canonical:
// the minimal words whose cylinders lie in the set
class ClopenSet {
 public:
  ClopenSet() = default;
  ClopenSet(DomainSpace const& space, std::vector<Word> cylinders);

  static ClopenSet whole(DomainSpace const& space);

  std::vector<Word> const& cylinders() const { return cyl_; }
  bool empty() const { return cyl_.empty(); }
  std::size_t max_depth() const;

  // every admissible depth-D word whose cylinder lies in the set (D >= max_depth)
  std::vector<Word> expand(DomainSpace const& space, std::size_t D) const;
  bool contains_prefix(Word const& x) const;  // x long enough to decide

  friend bool operator==(ClopenSet const&, ClopenSet const&) = default;
  friend auto operator<=>(ClopenSet const& a, ClopenSet const& b) { return a.cyl_ <=> b.cyl_; }

 private:
  std::vector<Word> cyl_;
};

ClopenSet set_union(DomainSpace const& space, ClopenSet const& a, ClopenSet const& b);
bool disjoint(ClopenSet const& a, ClopenSet const& b);

struct CPartition {
  std::vector<ClopenSet> parts;
  std::vector<Word> labels;  // optional, e.g. the depth-k words of a standard partition
};
// disjoint, covering, no empty part
bool is_partition(DomainSpace const& space, CPartition const& p);

struct Distance {
  Dyadic value;
  bool exact = true;  // false: words agree on their common length, value is an upper bound
};
Distance metric_dist(Word const& x, Word const& y);

Dyadic diam(DomainSpace const& space, ClopenSet const& s);
Dyadic mesh(DomainSpace const& space, CPartition const& p);
CPartition standard_partition(DomainSpace const& space, std::size_t k);

// m nonempty pieces with union s; throws Refusal when a cylinder has a
// unique infinite continuation
std::vector<ClopenSet> split_clopen(DomainSpace const& space, ClopenSet const& s, std::size_t m);

}  // namespace cantor
