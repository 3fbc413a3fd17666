#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "cantor/graph.hpp"

namespace cantor {

bool is_j_periodic(Word const& w, std::size_t j);
// not j-periodic for any 1 <= j < N
bool aperiodic_below(Word const& w, std::size_t N);

// F = union of C_{-L}(w) over the windows; windows are (2L+1)-words whose
// middle symbol sits at coordinate 0
struct MarkerSet {
  DirectedGraph subshift;
  int N = 0, k = 0, L = 0;
  std::vector<Word> windows;  // sorted

  bool marked(Word const& win) const;  // win has length 2L+1
  void index();                        // rebuild the lookup after editing windows

 private:
  std::unordered_set<Word> lookup_;
};

struct MarkerStats {
  std::vector<int> tried_L;
  long decisions = 0, conflicts = 0;
  std::string note;
};

// throws Refusal if the subshift is not perfect, no set is found by L_max, or
// the clause enumeration would exceed 5e7 words
MarkerSet build_markers(DirectedGraph const& g, int N, int k, int L_max, MarkerStats* stats = nullptr);

struct VerifyResult {
  bool ok = true;
  Word witness;  // offending word when !ok
  long scanned = 0;
};
VerifyResult verify_disjoint(MarkerSet const& m);
VerifyResult verify_coverage(MarkerSet const& m);

struct Run {
  enum Kind { Short, Long, Truncated };
  int start = 0, end = 0;  // inclusive positions in the word
  Kind kind = Short;
  int period = 0;  // least period of the interior when length >= 2N-1 (0: none < N)
  int length() const { return end - start + 1; }
};

struct IntervalDecomposition {
  int first = 0, last = -1;  // positions whose marking is determined
  std::vector<int> marks;
  std::vector<Run> runs;
};

// word positions 0..n-1; requires n >= 2L+1
IntervalDecomposition decompose(MarkerSet const& m, Word const& x);

}  // namespace cantor
