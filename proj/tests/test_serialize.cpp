#include <doctest.h>

#include "cantor/catalog.hpp"
#include "cantor/error.hpp"
#include "cantor/serialize.hpp"
#include "oracles.hpp"

using namespace cantor;
using io::json;

namespace {
// text round trip: dump, parse, dump again
void text_stable(json const& j) {
  auto s = j.dump();
  auto back = io::parse(s);
  CHECK(back == j);
  CHECK(back.dump() == s);
}
}  // namespace

TEST_CASE("dyadic json") {
  for (auto d : {Dyadic(), Dyadic::pow2(-3), Dyadic(5, 2), Dyadic(-7, -1), Dyadic::pow2(40)}) {
    auto j = io::to_json(d);
    CHECK(io::dyadic_from_json(j) == d);
    text_stable(j);
  }
  CHECK(io::to_json(Dyadic::pow2(-3)) == json::parse(R"({"num":1,"exp":3})"));
}

TEST_CASE("graph and space json") {
  auto g = graphs::golden_mean();
  auto j = io::to_json(g);
  CHECK(j == json::parse(R"({"alphabet":["a","b"],"edges":[["a","a"],["a","b"],["b","a"]]})"));
  for (auto const& h : oracle::all_essential(3)) {
    CHECK(io::graph_from_json(io::to_json(h)) == h);
    text_stable(io::to_json(h));
  }
  auto s = DomainSpace(g);
  CHECK(io::space_from_json(io::to_json(s)) == s);

  CHECK_THROWS_AS(io::graph_from_json(json::parse(R"({"alphabet":["a","a"],"edges":[]})")), Error);
  CHECK_THROWS_AS(io::graph_from_json(json::parse(R"({"alphabet":["a"],"edges":[["a","z"]]})")), Error);
  CHECK_THROWS_AS(io::graph_from_json(json::parse(R"({"alphabet":["a"]})")), Error);
  CHECK_THROWS_AS(io::graph_from_json(json::parse(R"({"alphabet":["a"],"edges":[["a"]]})")), Error);
  CHECK_THROWS_AS(io::space_from_json(json::parse(R"({"alphabet":["a","b"],"edges":[["a","b"]]})")), Error);
}

TEST_CASE("periodic set json") {
  for (auto const& g : oracle::random_essential(50, 5, 3)) {
    auto p = per_spectrum(g);
    auto j = io::to_json(p);
    CHECK(io::eps_from_json(j) == p);
    text_stable(j);
  }
  CHECK(io::to_json(per_spectrum(graphs::two_cycle())) ==
        json::parse(R"({"preperiod":1,"period":2,"members":[0,1]})"));
  CHECK_THROWS_AS(io::eps_from_json(json::parse(R"({"preperiod":1,"period":2,"members":[1]})")), Error);
}

TEST_CASE("clopen and map json") {
  auto s = DomainSpace::full(2);
  ClopenSet c(s, {Word{0, 0}, Word{0, 1}, Word{1, 1, 0}});
  auto j = io::to_json(s, c);
  CHECK(j == json::parse(R"(["a","bba"])"));
  CHECK(io::clopen_from_json(s, j) == c);

  for (auto const& name : catalog::map_names()) {
    auto f = catalog::map(name);
    auto back = io::map_from_json(io::to_json(f));
    CHECK(back.window() == f.window());
    CHECK(back.table() == f.table());
    CHECK(back.space() == f.space());
    CHECK(back.name() == f.name());
    text_stable(io::to_json(f));
  }
  auto bad = io::to_json(catalog::map("shift_full2"));
  bad["rule"].erase(0);
  CHECK_THROWS_AS(io::map_from_json(bad), Error);
  bad = io::to_json(catalog::map("shift_golden"));
  bad["rule"][0][1] = "b";  // "aa" -> b, then "ab" -> b leaves the golden mean
  CHECK_THROWS_AS(io::map_from_json(bad), Error);
}

TEST_CASE("marker and code json") {
  auto m = build_markers(graphs::golden_mean(), 2, 5, 20);
  auto j = io::to_json(m);
  auto back = io::markers_from_json(j);
  CHECK(back.windows == m.windows);
  CHECK(back.L == m.L);
  CHECK(verify_disjoint(back).ok);
  CHECK(verify_coverage(back).ok);
  text_stable(j);

  // a small table code survives a full trip
  std::map<Word, char> t;
  for (auto const& w : words(graphs::complete(2), 3)) t[w] = char(w[0] ^ w[2]);
  auto code = table_code(graphs::complete(2), graphs::complete(2), 1, t);
  auto cj = io::to_json(code);
  REQUIRE(cj.contains("rule"));
  auto cb = io::code_from_json(cj);
  CHECK(cb.digest() == code.digest());
  for (auto const& w : words(graphs::complete(2), 3)) CHECK(cb.apply(w) == code.apply(w));
  text_stable(cj);

  // a big code keeps only generator data
  auto lam = graphs::golden_mean();
  auto sig = graphs::complete(2);
  auto plan = plan_trigger(lam, sig, words(sig, 3)[5]);
  auto tc = trigger_code(lam, sig, plan);
  auto tj = io::to_json(tc, 16);
  CHECK_FALSE(tj.contains("rule"));
  CHECK(tj["method"] == "trigger");
  CHECK(tj["provenance"]["T"] == lam.spell(plan.T));
  CHECK_THROWS_AS(io::code_from_json(tj), Error);
}

TEST_CASE("convergence report json") {
  auto lam = catalog::graph("golden");
  auto f = catalog::map("shift_full2");
  auto r = approximate(lam, f, {2, 3, 4});
  r.lambda_name = "golden";
  auto j = io::to_json(r, lam, f);
  text_stable(j);
  auto l = io::report_from_json(j);
  CHECK(l.lambda == lam);
  CHECK(l.map.table() == f.table());
  REQUIRE(l.report.certificates.size() == 3);
  CHECK(io::to_json(l.report, l.lambda, l.map) == j);
  CHECK(reverify(l.lambda, l.map, l.report).empty());

  auto h = approximate(catalog::graph("full2"), catalog::map("shift_cycles23"), {2});
  auto hj = io::to_json(h, catalog::graph("full2"), catalog::map("shift_cycles23"));
  CHECK(hj["halt"]["stage"] == "percon");
  CHECK(hj["halt"]["witness"] == "1");
  auto hl = io::report_from_json(hj);
  CHECK(io::to_json(hl.report, hl.lambda, hl.map) == hj);

  // tampering with a bound is caught after a trip through text
  j["certificates"][1]["eps"]["exp"] = j["certificates"][1]["eps"]["exp"].get<int>() + 1;
  auto t = io::report_from_json(io::parse(j.dump()));
  CHECK_FALSE(reverify(t.lambda, t.map, t.report).empty());
}

TEST_CASE("parse errors carry a position") {
  try {
    io::parse("{\n  \"a\": [1, 2,\n  }", "x.json");
    FAIL("no error");
  } catch (Error const& e) {
    std::string s = e.what();
    CHECK(s.find("x.json") != std::string::npos);
    CHECK(s.find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(io::read_file("/nonexistent/file.json"), Error);
}
