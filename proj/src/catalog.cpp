#include "cantor/catalog.hpp"

#include <functional>
#include <map>

#include "cantor/error.hpp"

namespace cantor::catalog {

namespace {

std::map<std::string, std::function<DirectedGraph()>> const& graph_table() {
  static std::map<std::string, std::function<DirectedGraph()>> t{
      {"full2", [] { return graphs::complete(2); }},
      {"full3", [] { return graphs::complete(3); }},
      {"golden", [] { return graphs::golden_mean(); }},
      {"two_cycle", [] { return graphs::two_cycle(); }},
      {"single_loop", [] { return graphs::single_loop(); }},
      {"cycles23", [] { return graphs::cycles_2_3(); }},
  };
  return t;
}

// w=1 rule on the full 2-shift from a function of the window
CantorMap full2_rule(std::string name, std::function<char(char, char)> fn) {
  DomainSpace s = DomainSpace::full(2);
  std::unordered_map<Word, char> r;
  for (auto const& win : words(s.graph(), 2)) r[win] = fn(win[0], win[1]);
  return CantorMap(s, 1, r, name);
}

std::map<std::string, std::function<CantorMap()>> const& map_table() {
  static std::map<std::string, std::function<CantorMap()>> t{
      {"shift_full2", [] { return CantorMap::shift(DomainSpace::full(2)); }},
      {"identity_full2", [] { return CantorMap::identity(DomainSpace::full(2)); }},
      {"equal_full2", [] { return full2_rule("equal_full2", [](char x, char y) { return char(x == y ? 0 : 1); }); }},
      {"xor_full2", [] { return full2_rule("xor_full2", [](char x, char y) { return char(x ^ y); }); }},
      {"bbvariant_full2",
       [] { return full2_rule("bbvariant_full2", [](char x, char y) { return char(x == 1 && y == 1 ? 0 : y); }); }},
      {"constant_full2",
       [] {
         DomainSpace s = DomainSpace::full(2);
         return CantorMap(s, 0, {{Word(1, 0), 0}, {Word(1, 1), 0}}, "constant_full2");
       }},
      {"shift2_full2",
       [] {
         DomainSpace s = DomainSpace::full(2);
         std::unordered_map<Word, char> r;
         for (auto const& win : words(s.graph(), 3)) r[win] = win[2];
         return CantorMap(s, 2, r, "shift2_full2");
       }},
      {"shift_full3", [] { return CantorMap::shift(DomainSpace::full(3)); }},
      {"shift_golden", [] { return CantorMap::shift(DomainSpace(graphs::golden_mean())); }},
      {"shift_cycles23", [] { return CantorMap::shift(DomainSpace(graphs::cycles_2_3())); }},
      {"shift_two_cycle", [] { return CantorMap::shift(DomainSpace(graphs::two_cycle())); }},
  };
  return t;
}

}  // namespace

DirectedGraph graph(std::string const& name) {
  auto it = graph_table().find(name);
  if (it == graph_table().end()) throw Error("unknown built-in graph '" + name + "'");
  return it->second();
}

std::vector<std::string> graph_names() {
  std::vector<std::string> v;
  for (auto& [k, _] : graph_table()) v.push_back(k);
  return v;
}

CantorMap map(std::string const& name) {
  auto it = map_table().find(name);
  if (it == map_table().end()) throw Error("unknown built-in map '" + name + "'");
  auto m = it->second();
  return CantorMap(m.space(), m.window(), m.table(), name);
}

std::vector<std::string> map_names() {
  std::vector<std::string> v;
  for (auto& [k, _] : map_table()) v.push_back(k);
  return v;
}

}  // namespace cantor::catalog
