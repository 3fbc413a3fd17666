#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "cantor/graph.hpp"
#include "cantor/marker.hpp"

namespace cantor {

struct MixingConstants {
  int n = 0;  // paths of every length >= n (in edges) join any two vertices
  Word w0;    // contains every word of W
  int n0 = 0;
  int N = 0;  // 2n + n0
};

// W sorted, each word glued to w0 by the longest overlap, or by the shortest
// lexicographically least connecting path when there is none
MixingConstants choose_constants(DirectedGraph const& sigma, std::vector<Word> W);

struct PsiTable {
  int N = 0;
  std::map<std::tuple<int, int, int>, Word> entries;  // (v, v', l) -> word of length l
  Word const& at(int v, int v2, int l) const;
};

// lexicographically least word of length l containing w0 with v.psi.v' a path
PsiTable build_psi(DirectedGraph const& sigma, MixingConstants const& c);

struct PeriodicAssignment {
  int N = 0;
  // Lyndon word of a source orbit (least period < N) -> closed walk in the
  // target of the same length; the orbit point starting with the Lyndon word
  // goes to the target point starting with the walk
  std::map<Word, Word> orbits;
  // every rotation b of an orbit word -> image symbol at the position where b starts
  std::map<Word, char> head;
};

// throws Refusal (witness = least missing period) unless Per(lambda) is in Per(sigma)
PeriodicAssignment assign_periodic(DirectedGraph const& lambda, DirectedGraph const& sigma, int N);

namespace detail {
struct Rule {
  virtual ~Rule() = default;
  // x points at position 0 of a window x[-r..r]; marks (when used) is aligned with x
  virtual char eval(char const* x, signed char const* marks) const = 0;
  virtual MarkerSet const* markers() const { return nullptr; }
};
}  // namespace detail

class SlidingBlockCode {
 public:
  SlidingBlockCode() = default;
  SlidingBlockCode(DirectedGraph source, DirectedGraph target, int radius, std::string method,
                   std::shared_ptr<detail::Rule const> rule);

  DirectedGraph const& source() const { return source_; }
  DirectedGraph const& target() const { return target_; }
  int radius() const { return radius_; }
  std::string const& method() const { return method_; }  // identity, table, marker, trigger
  detail::Rule const& rule() const { return *rule_; }

  char apply(Word const& window) const;  // window of length 2r+1
  // outputs at positions r .. |x|-1-r of x
  Word image(Word const& x) const;

  // free-form provenance: constants, digests and the like
  std::map<std::string, std::string> provenance;
  std::uint64_t digest() const;

 private:
  DirectedGraph source_, target_;
  int radius_ = 0;
  std::string method_;
  std::shared_ptr<detail::Rule const> rule_;
};

// explicit table code, window length 2r+1
SlidingBlockCode table_code(DirectedGraph source, DirectedGraph target, int radius, std::map<Word, char> table);
SlidingBlockCode identity_code(DirectedGraph g);
// same adjacency, names may differ
SlidingBlockCode identity_code(DirectedGraph source, DirectedGraph target);

// phi maps source vertices to target vertices; empty phi means "all to vertex 0"
SlidingBlockCode compile_code(DirectedGraph const& lambda, DirectedGraph const& sigma, MarkerSet const& markers,
                              MixingConstants const& c, PsiTable const& psi, PeriodicAssignment const& pa,
                              std::vector<int> phi = {});

// inside an occurrence of the unbordered source word T the output spells D,
// elsewhere it is the loop vertex z
struct TriggerPlan {
  Word T, D;
  int z = 0;
};
// throws Refusal when sigma has no loop or lambda has no usable trigger word
TriggerPlan plan_trigger(DirectedGraph const& lambda, DirectedGraph const& sigma, Word const& w0);
SlidingBlockCode trigger_code(DirectedGraph const& lambda, DirectedGraph const& sigma, TriggerPlan const& p);

struct AdmissibilityReport {
  bool ok = true;
  Word witness;      // source window whose two outputs are not an edge
  double scanned = 0;  // windows of length 2r+2 checked
  bool exhaustive = false;
  std::string note;
};
// every admissible (2r+2)-window gives a target edge; refuses to start (ok
// stays false, note says why) when there are more than max_windows windows
AdmissibilityReport verify_image(SlidingBlockCode const& code, double max_windows = 2e8);
// the argument that does not enumerate: only for trigger codes
AdmissibilityReport verify_trigger_structure(SlidingBlockCode const& code, TriggerPlan const& p);

struct CoverageWitness {
  Word x;          // admissible source word
  int offset = 0;  // w0 occurs in image(x) at this index
  Word image;      // image(x)
};
CoverageWitness coverage_witness(SlidingBlockCode const& code, Word const& w0);

// source words u (length |w|+2r) with image(u) == w; the preimage of the
// cylinder [w] at coordinate m is the union of [u] at m-r. Throws Refusal
// past max_words.
struct CylinderUnion {
  int start = 0;
  std::vector<Word> words;
  bool empty() const { return words.empty(); }
};
CylinderUnion preimage_cylinder(SlidingBlockCode const& code, int m, Word const& w, std::size_t max_words = 1 << 20);
// same search, stopping at the first preimage word (exact emptiness test)
bool preimage_nonempty(SlidingBlockCode const& code, Word const& w);

// a single source word whose image shows w at coordinate m, from a coverage
// witness; empty when w does not occur in the witness image
struct PreimagePoint {
  Word u;
  int start = 0;  // coordinate of u[0]
};
PreimagePoint preimage_point(SlidingBlockCode const& code, CoverageWitness const& cw, int m, Word const& w);

}  // namespace cantor
