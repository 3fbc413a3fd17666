#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cantor/endomorphism.hpp"
#include "cantor/factor_coder.hpp"

namespace cantor {

struct PerconVerdict {
  bool holds = true;
  long witness = 0;  // least period of lambda missing from the cover graph
  EventuallyPeriodicSet lambda_per, cover_per;
};
PerconVerdict percon_gate(DirectedGraph const& lambda, CantorMap const& f, std::size_t k);

// matched refinement trees: node i pairs a cylinder of Sigma(G_k), spelled by
// sigma_word at coordinates sigma_start.., with a nonempty clopen piece of X
struct CorrespondenceNode {
  int level = 0;
  int parent = -1;
  Word sigma_word;
  int sigma_start = 0;
  ClopenSet piece;
};

struct CylinderCorrespondence {
  DirectedGraph gk;
  DomainSpace space;
  std::size_t k = 0;
  int depth = 0;  // refinement levels below the roots
  std::vector<CorrespondenceNode> nodes;  // level by level, roots first

  std::vector<int> level(int l) const;
  Dyadic level_mesh(int l) const;  // largest piece diameter on the X side
  std::uint64_t digest() const;
};

// level l+1 extends every sigma word to the right when l is even and to the
// left when l is odd; the X piece is split into as many parts as there are
// extensions. Refuses when gk is not mixing or not perfect.
CylinderCorrespondence build_correspondence(DirectedGraph const& gk, DomainSpace const& space, std::size_t k,
                                            int refine_depth);
// bijection at every level, nonempty pieces, pieces partition X, children
// partition their parent, sigma words admissible. Empty string when fine.
std::string check_correspondence(CylinderCorrespondence const& c);

struct ApproxCertificate {
  std::size_t k = 0;
  DirectedGraph gk;
  int mixing_N = 0;
  PerconVerdict percon;
  std::string method;  // witness code method
  std::uint64_t code_digest = 0, correspondence_digest = 0;
  Dyadic mesh;      // mesh(U_k)
  Dyadic eps;       // d(f, conjugated shift of Sigma(G_k)) < eps
  Dyadic delta;     // delta_for(f, eps)
  Dyadic sigma_bound;  // Sigma-level distance of the witness conjugate
  Dyadic pushed;    // that bound moved to X through the correspondence
  Dyadic total;     // eps + pushed + mesh
  bool subgraph_ok = false;
  bool conjugate_graph_equal = false;
  std::string subgraph_note;
};

// least 2^-t with delta_for(f, 2^-t) >= mesh(U_k)
Dyadic conjugate_eps(CantorMap const& f, std::size_t k);

// everything except the witness part: check_onto / check_chain_mixing at k,
// cover graph, correspondence roots, eps
ApproxCertificate certify_conjugate_bound(CantorMap const& f, std::size_t k);

struct WordWitness {
  Word w;
  PreimagePoint point;
};

struct Prop35Witness {
  int j = 1;  // W = words of length 2j+1
  SlidingBlockCode code;
  TriggerPlan plan;  // set when method == trigger
  MixingConstants constants;
  std::vector<Word> W;
  AdmissibilityReport admissibility;
  CoverageWitness coverage;
  int coord = 0;                        // preimages show w starting here
  std::vector<WordWitness> preimages;  // one source point per w
  std::string note;                    // why the marker path was skipped, if it was
  bool subgraph_ok = false;
  Dyadic bound;  // 2^-j
};

struct WitnessOptions {
  int j = 1;
  double marker_budget = 2e7;   // windows the exhaustive marker check may scan
  double exhaustive_budget = 2e7;  // trigger codes are also scanned when this small
  bool allow_marker = true;
  bool force_marker = false;  // marker code or refusal, no budget estimate
  int marker_k = 0, marker_Lmax = 0;  // 0: 2N+1 and 4N+8
};

// code from lambda into Sigma(sigma) whose image meets every word of W, with
// admissibility and one source point per w showing it at coordinate coord.
// Identity when the adjacency matrices agree, else the marker code if its
// exhaustive check fits the budget, else the trigger code.
Prop35Witness factor_witness(DirectedGraph const& lambda, DirectedGraph const& sigma, std::vector<Word> W, int coord,
                             WitnessOptions const& opt = {});

// factor_witness with W = every (2j+1)-word of gk, shown at coordinate -j
Prop35Witness prop35_witness(DirectedGraph const& lambda, DirectedGraph const& gk, WitnessOptions const& opt = {});

struct ConvergenceReport {
  std::string lambda_name, map_name;
  std::vector<std::size_t> depths;
  std::vector<ApproxCertificate> certificates;
  bool halted = false;
  std::size_t halt_depth = 0;
  std::string halt_stage;  // input, onto, chain_mixing, percon, conjugate, witness
  std::string halt_reason;
  std::string witness;
  bool ok() const { return !halted; }
};

// never throws Refusal: a refusal becomes a halt. Error still propagates.
ConvergenceReport approximate(DirectedGraph const& lambda, CantorMap const& f, std::vector<std::size_t> depths,
                              WitnessOptions const& opt = {});

// recompute cover graphs, the subgraph condition, mesh <= delta and the totals
// from the certificate data alone; returns the list of problems
std::vector<std::string> reverify(DirectedGraph const& lambda, CantorMap const& f, ConvergenceReport const& r);

}  // namespace cantor
