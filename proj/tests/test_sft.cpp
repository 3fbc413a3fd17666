#include <doctest.h>

#include "cantor/error.hpp"
#include "cantor/sft.hpp"
#include "oracles.hpp"

using namespace cantor;

namespace {
std::set<std::string> spelled(DirectedGraph const& g, std::vector<Word> const& ws) {
  std::set<std::string> s;
  for (auto& w : ws) s.insert(g.spell(w));
  return s;
}
}  // namespace

TEST_CASE("essentialize") {
  auto k2 = graphs::complete(2);
  CHECK(essentialize(k2) == k2);
  auto path = graphs::from_edges({"a", "b"}, {{"a", "b"}});
  CHECK(essentialize(path).empty());
  auto dang = graphs::from_edges({"a", "b"}, {{"a", "a"}, {"a", "b"}});
  auto e = essentialize(dang);
  CHECK(e.size() == 1);
  CHECK(e.name(0) == "a");
  CHECK(e.has_edge(0, 0));
}

TEST_CASE("words") {
  auto gm = graphs::golden_mean();
  CHECK(spelled(gm, words(gm, 2)) == std::set<std::string>{"aa", "ab", "ba"});
  CHECK(words(graphs::complete(2), 3).size() == 8);
  auto c2 = graphs::two_cycle();
  CHECK(spelled(c2, words(c2, 3)) == std::set<std::string>{"aba", "bab"});
  CHECK(count_words(gm, 10) == double(words(gm, 10).size()));
  auto ws = words(gm, 6);
  CHECK(std::is_sorted(ws.begin(), ws.end()));
}

TEST_CASE("is_mixing examples") {
  auto r = is_mixing(graphs::complete(2));
  CHECK(r.mixing);
  CHECK(r.N == 1);
  r = is_mixing(graphs::two_cycle());
  CHECK_FALSE(r.mixing);
  CHECK(r.period == 2);
  r = is_mixing(graphs::golden_mean());
  CHECK(r.mixing);
  CHECK(r.N == 2);
  r = is_mixing(graphs::from_edges({"a", "b"}, {{"a", "a"}, {"b", "b"}}));
  CHECK_FALSE(r.mixing);
  CHECK(r.u >= 0);
  CHECK(r.period == 0);
  CHECK_THROWS(is_mixing(DirectedGraph()));
}

TEST_CASE("is_mixing agrees with path-length enumeration (<= 3 vertices)") {
  // the 4-vertex sweep lives in the acceptance binary
  for (auto& g : oracle::all_essential(3)) {
    int N = oracle::mixing_index(g);
    auto r = is_mixing(g);
    CHECK(r.mixing == (N > 0));
    if (r.mixing) CHECK(r.N == N);
  }
}

TEST_CASE("is_perfect") {
  CHECK_FALSE(is_perfect(graphs::single_loop()));
  CHECK(is_perfect(graphs::complete(2)));
  CHECK(is_perfect(graphs::golden_mean()));
  auto d = graphs::from_edges({"a", "b", "c"}, {{"a", "b"}, {"b", "a"}, {"c", "c"}});
  CHECK_FALSE(is_perfect(d));
  // loop at c, loop at d, c -> d: c^oo d^oo is isolated though neither vertex
  // is forced in both directions
  auto cd = graphs::from_edges({"c", "d"}, {{"c", "c"}, {"d", "d"}, {"c", "d"}});
  CHECK_FALSE(is_perfect(cd));
  // a c-tail on the golden mean: the past before c is never forced
  auto t = graphs::from_edges({"a", "b", "c"}, {{"a", "a"}, {"a", "b"}, {"b", "a"}, {"b", "c"}, {"c", "c"}});
  CHECK(is_perfect(t));
  CHECK_FALSE(is_perfect_one_sided(t));
}

TEST_CASE("is_perfect agrees with brute-force isolated point search (<= 3 vertices)") {
  for (auto& g : oracle::all_essential(3)) CHECK(is_perfect(g) == !oracle::has_isolated_point(g));
}

TEST_CASE("mixing with two edges implies perfect") {
  for (auto& g : oracle::all_essential(3))
    if (g.edge_count() >= 2 && is_mixing(g).mixing) CHECK(is_perfect(g));
}

TEST_CASE("per_spectrum examples") {
  CHECK(per_spectrum(graphs::single_loop()) == EventuallyPeriodicSet::all());
  auto ev = per_spectrum(graphs::two_cycle());
  CHECK(ev.period() == 2);
  CHECK_FALSE(ev.contains(1));
  CHECK(ev.contains(2));
  CHECK_FALSE(ev.contains(101));
  CHECK(ev.contains(1000));
  auto s23 = per_spectrum(graphs::cycles_2_3());
  CHECK_FALSE(s23.contains(1));
  for (int n = 2; n <= 40; ++n) CHECK(s23.contains(n));
  CHECK(s23.preperiod() == 2);
  CHECK(s23.period() == 1);
  CHECK(per_spectrum(DirectedGraph()).is_empty());
  CHECK(ev.str() == "{2,4,...}");
}

TEST_CASE("per_spectrum matches closed-walk counts on random graphs") {
  for (auto& g : oracle::random_essential(60, 6, 7)) {
    auto s = per_spectrum(g);
    for (int n = 1; n <= 24; ++n) CHECK(s.contains(n) == (oracle::closed_walks(g, n) > 0));
  }
}

TEST_CASE("eventually periodic canonical form") {
  // {2,4,6,...} given with a redundant description
  EventuallyPeriodicSet a(3, 4, {false, true, false, true, false, true});
  CHECK(a.preperiod() == 1);
  CHECK(a.period() == 2);
  CHECK(a == per_spectrum(graphs::two_cycle()));
  CHECK_THROWS_AS(EventuallyPeriodicSet(1, 2, {true}), Error);
}

TEST_CASE("per_subset") {
  auto evens = per_spectrum(graphs::two_cycle());
  auto all = EventuallyPeriodicSet::all();
  auto s23 = per_spectrum(graphs::cycles_2_3());
  CHECK(per_subset(evens, all).holds);
  auto r = per_subset(all, s23);
  CHECK_FALSE(r.holds);
  CHECK(r.witness == 1);
  CHECK(per_subset(EventuallyPeriodicSet::empty(), evens).holds);
  // pointwise cross-check on the example spectra
  std::vector<EventuallyPeriodicSet> ex{evens, all, s23, EventuallyPeriodicSet::empty(),
                                        EventuallyPeriodicSet(1, 3, {false, false, true}),
                                        EventuallyPeriodicSet(4, 6, {true, false, false, false, false, true, false, false, true})};
  for (auto& a : ex)
    for (auto& b : ex) {
      bool pw = true;
      for (int n = 1; n <= 100; ++n) pw = pw && (!a.contains(n) || b.contains(n));
      CHECK(per_subset(a, b).holds == pw);
    }
}

TEST_CASE("periodic_orbits_upto") {
  auto k2 = graphs::complete(2);
  auto o = periodic_orbits_upto(k2, 3);
  REQUIRE(o.size() == 3);
  CHECK(k2.spell(o[0].walk) == "a");
  CHECK(k2.spell(o[1].walk) == "b");
  CHECK(k2.spell(o[2].walk) == "ab");
  CHECK(periodic_orbits_upto(graphs::two_cycle(), 2).empty());
  auto gm = graphs::golden_mean();
  o = periodic_orbits_upto(gm, 3);
  REQUIRE(o.size() == 2);
  CHECK(gm.spell(o[0].walk) == "a");
  CHECK(gm.spell(o[1].walk) == "ab");
}

TEST_CASE("periodic orbit counts match traces") {
  for (auto& g : oracle::random_essential(40, 4, 11)) {
    int N = 9;
    auto orbits = periodic_orbits_upto(g, N);
    for (auto& o : orbits) {
      CHECK(int(o.walk.size()) == o.period);
      for (int i = 0; i < o.period; ++i)
        CHECK(g.has_edge((unsigned char)o.walk[i], (unsigned char)o.walk[(i + 1) % o.period]));
    }
    for (int n = 1; n < N; ++n) {
      std::uint64_t pts = 0;
      for (auto& o : orbits)
        if (n % o.period == 0) pts += o.period;
      CHECK(pts == oracle::closed_walks(g, n));
    }
  }
}

TEST_CASE("is_subgraph") {
  CHECK(is_subgraph(graphs::golden_mean(), graphs::complete(2)));
  CHECK_FALSE(is_subgraph(graphs::complete(2), graphs::golden_mean()));
  CHECK(is_subgraph(DirectedGraph(), graphs::golden_mean()));
}

TEST_CASE("dot export") {
  auto dot = to_dot(graphs::golden_mean());
  CHECK(dot.find("\"a\" -> \"b\";\n") != std::string::npos);
  CHECK(dot.find("\"b\" -> \"b\"") == std::string::npos);
}

TEST_CASE("word helpers") {
  auto w = Word("\1\0\1\0", 4);
  CHECK_FALSE(is_primitive_word(w));
  CHECK(least_period(w) == 2);
  CHECK(least_rotation(Word("\1\1\0", 3)) == Word("\0\1\1", 3));
}

TEST_CASE("is_finite_periodic against word counts") {
  // a two-sided subshift is finite exactly when some p(L) == p(L+1)
  for (auto const& g : oracle::all_essential(3)) {
    std::size_t L = 2 * g.size() + 2;
    bool finite = words(g, L).size() == words(g, L + 1).size();
    CHECK(is_finite_periodic(g) == finite);
  }
  CHECK(is_finite_periodic(graphs::two_cycle()));
  CHECK(is_finite_periodic(graphs::single_loop()));
  CHECK_FALSE(is_finite_periodic(graphs::golden_mean()));
}
