#include "cantor/serialize.hpp"

#include <fstream>
#include <sstream>

#include "cantor/error.hpp"
#include "digest.hpp"

namespace cantor::io {

namespace {

json const& need(json const& j, char const* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class T>
T get(json const& j, char const* key) {
  try {
    return need(j, key).get<T>();
  } catch (json::exception const& e) {
    throw Error(std::string("field \"") + key + "\": " + e.what());
  }
}

std::string hex(std::uint64_t x) { return detail::hex(x); }
std::uint64_t unhex(std::string const& s) {
  try {
    return std::stoull(s, nullptr, 16);
  } catch (std::exception const&) {
    throw Error("bad digest \"" + s + "\"");
  }
}

json spelled(DirectedGraph const& g, std::vector<Word> const& ws) {
  json a = json::array();
  for (auto const& w : ws) a.push_back(g.spell(w));
  return a;
}

}  // namespace

json to_json(Dyadic const& d) { return {{"num", d.num()}, {"exp", d.exp()}}; }

Dyadic dyadic_from_json(json const& j) { return Dyadic(get<std::int64_t>(j, "num"), get<int>(j, "exp")); }

json to_json(DirectedGraph const& g) {
  json e = json::array();
  for (auto [a, b] : g.edges()) e.push_back({g.name(a), g.name(b)});
  return {{"alphabet", g.names()}, {"edges", e}};
}

DirectedGraph graph_from_json(json const& j) {
  auto names = get<std::vector<std::string>>(j, "alphabet");
  if (names.empty()) throw Error("empty alphabet");
  DirectedGraph g(names);
  auto const& e = need(j, "edges");
  if (!e.is_array()) throw Error("\"edges\" must be an array");
  for (auto const& p : e) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
      throw Error("edge must be a pair of names: " + p.dump());
    int a = g.index(p[0].get<std::string>()), b = g.index(p[1].get<std::string>());
    if (a < 0 || b < 0) throw Error("edge names an unknown vertex: " + p.dump());
    g.add_edge(a, b);
  }
  return g;
}

json to_json(DomainSpace const& s) { return to_json(s.graph()); }
DomainSpace space_from_json(json const& j) { return DomainSpace(graph_from_json(j)); }

json to_json(EventuallyPeriodicSet const& s) {
  json m = json::array();
  for (bool b : s.members()) m.push_back(b ? 1 : 0);
  return {{"preperiod", s.preperiod()}, {"period", s.period()}, {"members", m}};
}

EventuallyPeriodicSet eps_from_json(json const& j) {
  int rho = get<int>(j, "preperiod"), p = get<int>(j, "period");
  if (rho < 1 || p < 1) throw Error("preperiod and period must be >= 1");
  std::vector<bool> bits;
  for (auto const& b : need(j, "members")) {
    if (b.is_boolean()) bits.push_back(b.get<bool>());
    else if (b.is_number_integer()) bits.push_back(b.get<int>() != 0);
    else throw Error("members must be 0/1");
  }
  if (bits.size() != std::size_t(rho + p - 1)) throw Error("members must list n = 1 .. preperiod+period-1");
  return EventuallyPeriodicSet(rho, p, bits);
}

json to_json(DomainSpace const& s, ClopenSet const& c) { return spelled(s.graph(), c.cylinders()); }

ClopenSet clopen_from_json(DomainSpace const& s, json const& j) {
  if (!j.is_array()) throw Error("clopen set must be a list of words");
  std::vector<Word> ws;
  for (auto const& w : j) ws.push_back(s.graph().parse_word(w.get<std::string>()));
  return ClopenSet(s, ws);
}

json to_json(CantorMap const& f) {
  auto const& g = f.space().graph();
  std::map<Word, char> sorted(f.table().begin(), f.table().end());
  json rule = json::array();
  for (auto const& [w, s] : sorted) rule.push_back({g.spell(w), g.name((unsigned char)s)});
  json j = {{"space", to_json(f.space())}, {"window", f.window()}, {"rule", rule}};
  if (!f.name().empty()) j["name"] = f.name();
  return j;
}

CantorMap map_from_json(json const& j) {
  auto space = space_from_json(need(j, "space"));
  int w = get<int>(j, "window");
  auto const& g = space.graph();
  std::unordered_map<Word, char> rule;
  for (auto const& p : need(j, "rule")) {
    if (!p.is_array() || p.size() != 2) throw Error("rule entry must be [window, symbol]: " + p.dump());
    Word win = g.parse_word(p[0].get<std::string>());
    if (int(win.size()) != w + 1) throw Error("rule window of the wrong length: " + p.dump());
    int s = g.index(p[1].get<std::string>());
    if (s < 0) throw Error("rule output is not a symbol: " + p.dump());
    if (!rule.emplace(win, char(s)).second) throw Error("rule window repeated: " + p.dump());
  }
  return CantorMap(space, w, rule, j.value("name", ""));
}

json to_json(MixingResult const& m, DirectedGraph const& g) {
  json j = {{"mixing", m.mixing}, {"N", m.N}};
  if (!m.mixing) {
    if (m.u >= 0) j["u"] = g.name(m.u);
    if (m.v >= 0) j["v"] = g.name(m.v);
    j["period"] = m.period;
    j["residue"] = m.residue;
    j["reason"] = m.reason;
  }
  return j;
}

json to_json(OntoCertificate const& c, DomainSpace const& s) {
  json j = {{"depth", c.depth}, {"verified", c.verified}};
  if (!c.verified) {
    j["failed_depth"] = c.failed_depth;
    j["missing"] = s.graph().spell(c.missing);
  }
  return j;
}

json to_json(ChainMixCertificate const& c) {
  json j = {{"depth", c.depth}, {"verified", c.verified}, {"N", c.N}};
  if (!c.verified) {
    j["failed_depth"] = c.failed_depth;
    // obstruction vertices live in the cover graph of the failing depth; the
    // reason text names them already
    j["obstruction"] = {{"period", c.obstruction.period}, {"residue", c.obstruction.residue},
                        {"reason", c.obstruction.reason}};
  }
  return j;
}

json to_json(PerconVerdict const& v) {
  json j = {{"holds", v.holds}, {"lambda_per", to_json(v.lambda_per)}, {"cover_per", to_json(v.cover_per)}};
  if (!v.holds) j["witness"] = v.witness;
  return j;
}

json to_json(MarkerSet const& m) {
  return {{"N", m.N}, {"k", m.k}, {"L", m.L}, {"subshift", to_json(m.subshift)},
          {"windows", spelled(m.subshift, m.windows)}};
}

MarkerSet markers_from_json(json const& j) {
  MarkerSet m;
  m.subshift = graph_from_json(need(j, "subshift"));
  m.N = get<int>(j, "N");
  m.k = get<int>(j, "k");
  m.L = get<int>(j, "L");
  for (auto const& w : need(j, "windows")) {
    Word x = m.subshift.parse_word(w.get<std::string>());
    if (int(x.size()) != 2 * m.L + 1) throw Error("marker window of the wrong length");
    m.windows.push_back(x);
  }
  std::sort(m.windows.begin(), m.windows.end());
  m.index();
  return m;
}

json to_json(VerifyResult const& v, DirectedGraph const& g) {
  json j = {{"ok", v.ok}, {"scanned", v.scanned}};
  if (!v.ok) j["witness"] = g.spell(v.witness);
  return j;
}

json to_json(SlidingBlockCode const& c, std::size_t max_table) {
  json prov = json::object();
  for (auto const& [k, v] : c.provenance) prov[k] = v;
  json j = {{"radius", c.radius()},       {"method", c.method()},   {"source", to_json(c.source())},
            {"target", to_json(c.target())}, {"provenance", prov}, {"digest", hex(c.digest())}};
  std::size_t len = 2 * c.radius() + 1;
  if (count_words(c.source(), len) <= double(max_table)) {
    json rule = json::array();
    for (auto const& w : words(c.source(), len))
      rule.push_back({c.source().spell(w), c.target().name((unsigned char)c.apply(w))});
    j["rule"] = rule;
  }
  return j;
}

SlidingBlockCode code_from_json(json const& j) {
  auto src = graph_from_json(need(j, "source")), dst = graph_from_json(need(j, "target"));
  int r = get<int>(j, "radius");
  if (r < 0) throw Error("radius must be >= 0");
  if (!j.contains("rule")) throw Error("code file has no rule table (generator data only)");
  std::map<Word, char> t;
  for (auto const& p : j.at("rule")) {
    if (!p.is_array() || p.size() != 2) throw Error("rule entry must be [window, symbol]: " + p.dump());
    int s = dst.index(p[1].get<std::string>());
    if (s < 0) throw Error("rule output is not a target symbol: " + p.dump());
    t[src.parse_word(p[0].get<std::string>())] = char(s);
  }
  return table_code(src, dst, r, t);
}

json to_json(AdmissibilityReport const& a, DirectedGraph const& source) {
  json j = {{"ok", a.ok}, {"scanned", a.scanned}, {"exhaustive", a.exhaustive}, {"note", a.note}};
  if (!a.ok && !a.witness.empty()) j["witness"] = source.spell(a.witness);
  return j;
}

json to_json(CoverageWitness const& w, SlidingBlockCode const& c) {
  return {{"x", c.source().spell(w.x)}, {"offset", w.offset}, {"image", c.target().spell(w.image)}};
}

json to_json(ApproxCertificate const& c) {
  return {{"k", c.k},
          {"gk", to_json(c.gk)},
          {"mixing_N", c.mixing_N},
          {"percon", to_json(c.percon)},
          {"method", c.method},
          {"code_digest", hex(c.code_digest)},
          {"correspondence_digest", hex(c.correspondence_digest)},
          {"mesh", to_json(c.mesh)},
          {"eps", to_json(c.eps)},
          {"delta", to_json(c.delta)},
          {"sigma_bound", to_json(c.sigma_bound)},
          {"pushed", to_json(c.pushed)},
          {"total", to_json(c.total)},
          {"subgraph_ok", c.subgraph_ok},
          {"conjugate_graph_equal", c.conjugate_graph_equal},
          {"subgraph_note", c.subgraph_note}};
}

ApproxCertificate certificate_from_json(json const& j) {
  ApproxCertificate c;
  c.k = get<std::size_t>(j, "k");
  c.gk = graph_from_json(need(j, "gk"));
  c.mixing_N = get<int>(j, "mixing_N");
  auto const& p = need(j, "percon");
  c.percon.holds = get<bool>(p, "holds");
  c.percon.witness = p.value("witness", 0L);
  c.percon.lambda_per = eps_from_json(need(p, "lambda_per"));
  c.percon.cover_per = eps_from_json(need(p, "cover_per"));
  c.method = get<std::string>(j, "method");
  c.code_digest = unhex(get<std::string>(j, "code_digest"));
  c.correspondence_digest = unhex(get<std::string>(j, "correspondence_digest"));
  c.mesh = dyadic_from_json(need(j, "mesh"));
  c.eps = dyadic_from_json(need(j, "eps"));
  c.delta = dyadic_from_json(need(j, "delta"));
  c.sigma_bound = dyadic_from_json(need(j, "sigma_bound"));
  c.pushed = dyadic_from_json(need(j, "pushed"));
  c.total = dyadic_from_json(need(j, "total"));
  c.subgraph_ok = get<bool>(j, "subgraph_ok");
  c.conjugate_graph_equal = get<bool>(j, "conjugate_graph_equal");
  c.subgraph_note = get<std::string>(j, "subgraph_note");
  return c;
}

json to_json(ConvergenceReport const& r, DirectedGraph const& lambda, CantorMap const& f) {
  json certs = json::array();
  for (auto const& c : r.certificates) certs.push_back(to_json(c));
  json j = {{"lambda", to_json(lambda)}, {"map", to_json(f)}, {"depths", r.depths},
            {"certificates", certs},     {"halted", r.halted}};
  if (!r.lambda_name.empty()) j["lambda_name"] = r.lambda_name;
  if (!r.map_name.empty()) j["map_name"] = r.map_name;
  if (r.halted)
    j["halt"] = {{"depth", r.halt_depth}, {"stage", r.halt_stage}, {"reason", r.halt_reason}, {"witness", r.witness}};
  return j;
}

LoadedReport report_from_json(json const& j) {
  LoadedReport l;
  l.lambda = graph_from_json(need(j, "lambda"));
  l.map = map_from_json(need(j, "map"));
  auto& r = l.report;
  r.depths = get<std::vector<std::size_t>>(j, "depths");
  for (auto const& c : need(j, "certificates")) r.certificates.push_back(certificate_from_json(c));
  r.halted = get<bool>(j, "halted");
  r.lambda_name = j.value("lambda_name", "");
  r.map_name = j.value("map_name", "");
  if (r.halted) {
    auto const& h = need(j, "halt");
    r.halt_depth = get<std::size_t>(h, "depth");
    r.halt_stage = get<std::string>(h, "stage");
    r.halt_reason = get<std::string>(h, "reason");
    r.witness = get<std::string>(h, "witness");
  }
  return l;
}

json parse(std::string const& text, std::string const& what) {
  try {
    return json::parse(text);
  } catch (json::parse_error const& e) {
    // byte offset -> line and column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') ++line, col = 1;
      else ++col;
    }
    throw Error(what + ": parse error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                e.what());
  }
}

json read_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

}  // namespace cantor::io
