#include "cantor/endomorphism.hpp"

#include <algorithm>

#include "cantor/error.hpp"

namespace cantor {

CantorMap::CantorMap(DomainSpace space, int window, std::unordered_map<Word, char> rule, std::string name)
    : space_(std::move(space)), w_(window), rule_(std::move(rule)), name_(std::move(name)) {
  auto const& g = space_.graph();
  if (w_ < 0) throw Error("window must be >= 0");
  for (auto const& win : words(g, w_ + 1)) {
    auto it = rule_.find(win);
    if (it == rule_.end()) throw Error("rule undefined on window " + g.spell(win));
    if ((unsigned char)it->second >= g.size()) throw Error("rule output is not a symbol");
  }
  if (rule_.size() != words(g, w_ + 1).size()) throw Error("rule has entries for inadmissible windows");
  for (auto const& u : words(g, w_ + 2)) {
    char a = rule_.at(u.substr(0, w_ + 1)), b = rule_.at(u.substr(1));
    if (!g.has_edge((unsigned char)a, (unsigned char)b))
      throw Error("rule leaves the space on " + g.spell(u) + " (" + g.spell(Word{a, b}) + " is not an edge)");
  }
}

CantorMap CantorMap::shift(DomainSpace space) {
  std::unordered_map<Word, char> r;
  for (auto const& win : words(space.graph(), 2)) r[win] = win[1];
  return CantorMap(std::move(space), 1, std::move(r), "shift");
}

CantorMap CantorMap::identity(DomainSpace space) {
  std::unordered_map<Word, char> r;
  for (auto const& win : words(space.graph(), 1)) r[win] = win[0];
  return CantorMap(std::move(space), 0, std::move(r), "identity");
}

char CantorMap::rule(Word const& win) const {
  auto it = rule_.find(win);
  if (it == rule_.end()) throw Error("window not in rule domain");
  return it->second;
}

Word CantorMap::image(Word const& u) const {
  if (u.size() < std::size_t(w_) + 1) throw Error("image: word shorter than window");
  if (!space_.graph().admissible(u)) throw Error("image: inadmissible word");
  Word out(u.size() - w_, '\0');
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = rule_.at(u.substr(i, w_ + 1));
  return out;
}

DirectedGraph cover_graph(CantorMap const& f, std::size_t k) {
  if (k < 1) throw Error("cover_graph: k >= 1 required");
  auto const& g = f.space().graph();
  auto verts = words(g, k);
  std::vector<std::string> names;
  for (auto& v : verts) names.push_back(g.spell(v));
  DirectedGraph h(names);
  auto rank = [&](Word const& w) {
    return std::size_t(std::lower_bound(verts.begin(), verts.end(), w) - verts.begin());
  };
  for (auto const& z : words(g, k + f.window())) h.add_edge(rank(z.substr(0, k)), rank(f.image(z)));
  return h;
}

Dyadic delta_for(CantorMap const& f, Dyadic eps) {
  if (eps <= Dyadic()) throw Error("delta_for: eps must be positive");
  Dyadic half = eps.half();
  int m = -64;
  while (!(Dyadic::pow2(-m) < half)) ++m;  // first m with 2^-m < eps/2
  return Dyadic::pow2(-(m + f.window()));
}

OntoCertificate check_onto(CantorMap const& f, std::size_t K) {
  OntoCertificate c;
  c.depth = K;
  auto const& g = f.space().graph();
  for (std::size_t k = 1; k <= K; ++k) {
    std::vector<Word> img;
    for (auto const& z : words(g, k + f.window())) img.push_back(f.image(z));
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    for (auto const& w : words(g, k))
      if (!std::binary_search(img.begin(), img.end(), w)) {
        c.failed_depth = k;
        c.missing = w;
        return c;
      }
  }
  c.verified = true;
  return c;
}

ChainMixCertificate check_chain_mixing(CantorMap const& f, std::size_t K) {
  ChainMixCertificate c;
  c.depth = K;
  for (std::size_t k = 1; k <= K; ++k) {
    auto r = is_mixing(cover_graph(f, k));
    if (!r.mixing) {
      c.failed_depth = k;
      c.obstruction = r;
      return c;
    }
    c.N.push_back(r.N);
  }
  c.verified = true;
  return c;
}

EventuallyPeriodicSet per_upper(CantorMap const& f, std::size_t K) { return per_spectrum(cover_graph(f, K)); }

SupDistance sup_distance_at_depth(CantorMap const& f, CantorMap const& g, std::size_t K) {
  if (!(f.space() == g.space())) throw Error("sup_distance: maps on different spaces");
  int W = std::max(f.window(), g.window());
  SupDistance r;
  std::size_t best = K;  // first differing index found so far
  for (auto const& z : words(f.space().graph(), K + W)) {
    Word a = f.image(z), b = g.image(z);
    for (std::size_t i = 0; i < K && i < best; ++i)
      if (a[i] != b[i]) {
        best = i;
        r.witness = z;
        break;
      }
  }
  if (best < K) {
    r.lower = r.upper = Dyadic::pow2(-int(best));
  } else {
    r.lower = Dyadic();
    r.upper = Dyadic::pow2(-int(K));
  }
  return r;
}

}  // namespace cantor
