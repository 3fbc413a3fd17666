#pragma once

#include <string>
#include <vector>

#include "cantor/graph.hpp"

namespace cantor {

// maximal subgraph with all in/out degrees >= 1 (vertex order kept)
DirectedGraph essentialize(DirectedGraph const& g);
bool is_essential(DirectedGraph const& g);

// all admissible k-words, lexicographic
std::vector<Word> words(DirectedGraph const& g, std::size_t k);
// number of admissible words of length k (as double; used for cost estimates)
double count_words(DirectedGraph const& g, std::size_t k);

struct MixingResult {
  bool mixing = false;
  int N = 0;  // least N with B^n all ones for n >= N
  // obstruction when not mixing: u never reaches v, or reaches it only at
  // lengths == residue (mod period)
  int u = -1, v = -1;
  int period = 0, residue = 0;
  std::string reason;
};
MixingResult is_mixing(DirectedGraph const& g);

// two-sided vertex shift has no isolated point
bool is_perfect(DirectedGraph const& g);
// one-sided version (no vertex with a unique forward continuation)
bool is_perfect_one_sided(DirectedGraph const& g);
// finitely many points, all periodic (essential g)
bool is_finite_periodic(DirectedGraph const& g);

// vertices whose forward (backward) walk is forced
std::vector<bool> forward_deterministic(DirectedGraph const& g);
std::vector<bool> backward_deterministic(DirectedGraph const& g);

// subset of {1,2,...}; n >= rho is periodic with period p
class EventuallyPeriodicSet {
 public:
  EventuallyPeriodicSet() : rho_(1), p_(1), bits_(1, false) {}
  EventuallyPeriodicSet(int rho, int p, std::vector<bool> bits);  // canonicalizes

  static EventuallyPeriodicSet all() { return {1, 1, {true}}; }
  static EventuallyPeriodicSet empty() { return {}; }

  bool contains(long n) const;
  int preperiod() const { return rho_; }
  int period() const { return p_; }
  std::vector<bool> const& members() const { return bits_; }  // n = 1 .. rho+p-1
  bool is_empty() const;
  std::string str() const;  // e.g. "{2,4,6,...}"

  friend bool operator==(EventuallyPeriodicSet const&, EventuallyPeriodicSet const&) = default;

 private:
  int rho_, p_;
  std::vector<bool> bits_;
};

EventuallyPeriodicSet per_spectrum(DirectedGraph const& g);

struct SubsetResult {
  bool holds = true;
  long witness = 0;  // least n in a but not in b
};
SubsetResult per_subset(EventuallyPeriodicSet const& a, EventuallyPeriodicSet const& b);

struct PeriodicOrbit {
  int period = 0;
  Word walk;  // least rotation, primitive
  friend bool operator==(PeriodicOrbit const&, PeriodicOrbit const&) = default;
};
// every orbit of least period < N
std::vector<PeriodicOrbit> periodic_orbits_upto(DirectedGraph const& g, int N);

// vertex and edge containment, matched by vertex name
bool is_subgraph(DirectedGraph const& g, DirectedGraph const& h);

std::string to_dot(DirectedGraph const& g, std::string const& name = "G");

// word helpers
bool is_primitive_word(Word const& w);
Word least_rotation(Word const& w);
std::size_t least_period(Word const& w);  // smallest p with w[i]==w[i+p]

}  // namespace cantor
