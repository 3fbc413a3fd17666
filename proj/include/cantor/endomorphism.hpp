#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "cantor/cantor_space.hpp"
#include "cantor/sft.hpp"

namespace cantor {

// f(x)_i = rule(x_i .. x_{i+w})
class CantorMap {
 public:
  CantorMap() = default;
  // throws Error if the rule is partial or the image can leave the space
  CantorMap(DomainSpace space, int window, std::unordered_map<Word, char> rule, std::string name = "");

  static CantorMap shift(DomainSpace space);
  static CantorMap identity(DomainSpace space);

  DomainSpace const& space() const { return space_; }
  int window() const { return w_; }
  std::string const& name() const { return name_; }
  char rule(Word const& win) const;  // win has length w+1
  std::unordered_map<Word, char> const& table() const { return rule_; }

  // depth |u|-w image of the cylinder word u
  Word image(Word const& u) const;

 private:
  DomainSpace space_;
  int w_ = 0;
  std::unordered_map<Word, char> rule_;
  std::string name_;
};

// G_{f,U_k} on the depth-k cylinders; vertex names are the spelled words
DirectedGraph cover_graph(CantorMap const& f, std::size_t k);

// d(x,y) <= delta  =>  d(fx,fy) < eps/2, and delta < eps/2
Dyadic delta_for(CantorMap const& f, Dyadic eps);

struct OntoCertificate {
  std::size_t depth = 0;
  bool verified = false;
  std::size_t failed_depth = 0;
  Word missing;  // a depth-k word not met by the image
};
OntoCertificate check_onto(CantorMap const& f, std::size_t K);

struct ChainMixCertificate {
  std::size_t depth = 0;
  bool verified = false;
  std::vector<int> N;  // N_k for k = 1..depth (up to the failure)
  std::size_t failed_depth = 0;
  MixingResult obstruction;
};
ChainMixCertificate check_chain_mixing(CantorMap const& f, std::size_t K);

EventuallyPeriodicSet per_upper(CantorMap const& f, std::size_t K);

struct SupDistance {
  Dyadic lower, upper;
  Word witness;  // a depth word realizing lower (empty if images agree)
};
SupDistance sup_distance_at_depth(CantorMap const& f, CantorMap const& g, std::size_t K);

}  // namespace cantor
