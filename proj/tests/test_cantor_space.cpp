#include <doctest.h>

#include "cantor/cantor_space.hpp"
#include "cantor/error.hpp"
#include "cantor/sft.hpp"

using namespace cantor;

namespace {
DomainSpace binary() { return DomainSpace::full(2); }
DomainSpace golden() { return DomainSpace(graphs::golden_mean()); }
Word W(DomainSpace const& s, std::string const& t) { return s.graph().parse_word(t); }
ClopenSet C(DomainSpace const& s, std::vector<std::string> const& ws) {
  std::vector<Word> v;
  for (auto& w : ws) v.push_back(W(s, w));
  return ClopenSet(s, v);
}
std::vector<std::string> spell(DomainSpace const& s, ClopenSet const& c) {
  std::vector<std::string> out;
  for (auto& w : c.cylinders()) out.push_back(s.graph().spell(w));
  return out;
}

// brute force diameter: max distance over distinct depth-K words
Dyadic brute_diam(DomainSpace const& s, ClopenSet const& c, std::size_t K) {
  auto ws = c.expand(s, K);
  Dyadic best;
  for (std::size_t i = 0; i < ws.size(); ++i)
    for (std::size_t j = i + 1; j < ws.size(); ++j) best = std::max(best, metric_dist(ws[i], ws[j]).value);
  return best;
}
}  // namespace

TEST_CASE("domain space validation") {
  CHECK_THROWS_AS(DomainSpace(graphs::single_loop()), Error);
  CHECK_THROWS_AS(DomainSpace(graphs::from_edges({"a", "b"}, {{"a", "b"}})), Error);
  CHECK(golden().perfect());
  CHECK_FALSE(DomainSpace(graphs::from_edges({"a", "b"}, {{"a", "a"}, {"b", "b"}})).perfect());
}

TEST_CASE("metric_dist") {
  auto s = binary();
  auto d = metric_dist(W(s, "abab"), W(s, "abaa"));
  CHECK(d.exact);
  CHECK(d.value == Dyadic::pow2(-3));
  d = metric_dist(W(s, "aa"), W(s, "aa"));
  CHECK_FALSE(d.exact);
  CHECK(d.value == Dyadic::pow2(-2));
  CHECK(metric_dist(W(s, "b"), W(s, "a")).value == Dyadic::pow2(0));
}

TEST_CASE("metric is a symmetric ultrametric on words up to length 8") {
  auto ws = words(graphs::complete(2), 8);
  // sample every 7th word to keep the triple loop small
  std::vector<Word> sm;
  for (std::size_t i = 0; i < ws.size(); i += 7) sm.push_back(ws[i]);
  for (auto& x : sm)
    for (auto& y : sm) {
      CHECK(metric_dist(x, y).value == metric_dist(y, x).value);
      for (auto& z : sm)
        CHECK(metric_dist(x, z).value <=
              std::max(metric_dist(x, y).value, metric_dist(y, z).value));
    }
}

TEST_CASE("canonical clopen sets") {
  auto s = binary();
  CHECK(spell(s, C(s, {"aa", "ab"})) == std::vector<std::string>{"a"});
  CHECK(spell(s, C(s, {"a", "ab", "b"})) == std::vector<std::string>{"a", "b"});
  CHECK(C(s, {"aa", "ab", "b"}) == ClopenSet::whole(s));
  auto g = golden();
  // "b" is always followed by "a"
  CHECK(spell(g, C(g, {"ba"})) == std::vector<std::string>{"b"});
  CHECK_THROWS_AS(C(g, {"bb"}), Error);
}

TEST_CASE("diam examples") {
  auto s = binary();
  CHECK(diam(s, C(s, {"abb"})) == Dyadic::pow2(-3));
  CHECK(diam(s, C(s, {"aa", "ab"})) == Dyadic::pow2(-1));
  CHECK(diam(s, ClopenSet::whole(s)) == Dyadic::pow2(0));
  CHECK(diam(s, C(s, {"aab", "abb"})) == Dyadic::pow2(-1));
  auto g = golden();
  CHECK(diam(g, C(g, {"ab"})) == Dyadic::pow2(-3));
  auto one = DomainSpace(graphs::from_edges({"a", "b"}, {{"a", "a"}, {"a", "b"}, {"b", "b"}}));
  CHECK(diam(one, C(one, {"b"})) == Dyadic());
}

TEST_CASE("diam equals brute-force max distance") {
  for (auto sp : {binary(), golden(), DomainSpace(graphs::cycles_2_3())}) {
    auto ws3 = words(sp.graph(), 3);
    // all sets of one or two depth<=3 cylinders
    std::vector<Word> cand;
    for (std::size_t d = 1; d <= 3; ++d)
      for (auto& w : words(sp.graph(), d)) cand.push_back(w);
    for (std::size_t i = 0; i < cand.size(); ++i)
      for (std::size_t j = i; j < cand.size(); ++j) {
        ClopenSet c(sp, {cand[i], cand[j]});
        std::size_t K = c.max_depth() + sp.symbols() + 1;
        CHECK(diam(sp, c) == brute_diam(sp, c, K));
      }
  }
}

TEST_CASE("mesh and standard partition") {
  auto s = binary();
  auto p = standard_partition(s, 3);
  CHECK(p.parts.size() == 8);
  CHECK(mesh(s, p) == Dyadic::pow2(-3));
  CHECK(is_partition(s, p));
  CPartition mixed{{C(s, {"a"}), C(s, {"ba"}), C(s, {"bb"})}, {}};
  CHECK(mesh(s, mixed) == Dyadic::pow2(-1));
  CPartition single{{ClopenSet::whole(s)}, {}};
  CHECK(mesh(s, single) == Dyadic::pow2(0));
  auto g = golden();
  auto pg = standard_partition(g, 2);
  std::vector<std::string> lab;
  for (auto& w : pg.labels) lab.push_back(g.graph().spell(w));
  CHECK(lab == std::vector<std::string>{"aa", "ab", "ba"});
  CHECK(is_partition(g, pg));
  CHECK(standard_partition(g, 1).parts.size() == 2);
  for (std::size_t k = 1; k <= 6; ++k) {
    auto pk = standard_partition(g, k);
    CHECK(pk.parts.size() == words(g.graph(), k).size());
    CHECK(is_partition(g, pk));
  }
  CPartition overlap{{C(s, {"a"}), C(s, {"ab", "b"})}, {}};
  CHECK_FALSE(is_partition(s, overlap));
}

TEST_CASE("split_clopen examples") {
  auto s = binary();
  auto two = split_clopen(s, ClopenSet::whole(s), 2);
  REQUIRE(two.size() == 2);
  CHECK(spell(s, two[0]) == std::vector<std::string>{"a"});
  CHECK(spell(s, two[1]) == std::vector<std::string>{"b"});
  auto three = split_clopen(s, ClopenSet::whole(s), 3);
  REQUIRE(three.size() == 3);
  CHECK(spell(s, three[0]) == std::vector<std::string>{"a"});
  CHECK(spell(s, three[1]) == std::vector<std::string>{"ba"});
  CHECK(spell(s, three[2]) == std::vector<std::string>{"bb"});
  auto g = golden();
  auto ab = split_clopen(g, C(g, {"ab"}), 2);
  REQUIRE(ab.size() == 2);
  CHECK(spell(g, ab[0]) == std::vector<std::string>{"abaa"});
  CHECK(spell(g, ab[1]) == std::vector<std::string>{"abab"});
  auto np = DomainSpace(graphs::from_edges({"a", "b"}, {{"a", "a"}, {"a", "b"}, {"b", "b"}}));
  CHECK_THROWS_AS(split_clopen(np, C(np, {"b"}), 2), Refusal);
}

TEST_CASE("split_clopen pieces partition the input (exhaustive, <= 4 cylinders of depth <= 4)") {
  for (auto sp : {binary(), golden()}) {
    std::vector<Word> cand;
    for (std::size_t d = 1; d <= 4; ++d)
      for (auto& w : words(sp.graph(), d)) cand.push_back(w);
    std::size_t n = cand.size(), checked = 0;
    // multisets of size 4 cover every subset of size 1..4
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b)
        for (std::size_t c = b; c < n; ++c)
          for (std::size_t d = c; d < n; ++d) {
            ClopenSet in(sp, {cand[a], cand[b], cand[c], cand[d]});
            for (std::size_t m = 1; m <= 4; ++m) {
              auto pieces = split_clopen(sp, in, m);
              REQUIRE(pieces.size() == m);
              ClopenSet u;
              for (std::size_t i = 0; i < m; ++i) {
                CHECK_FALSE(pieces[i].empty());
                for (std::size_t j = 0; j < i; ++j) CHECK(disjoint(pieces[i], pieces[j]));
                u = set_union(sp, u, pieces[i]);
              }
              CHECK(u == in);
              ++checked;
            }
          }
    CHECK(checked > 1000);
  }
}
