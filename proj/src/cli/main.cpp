#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "cantor/approx_pipeline.hpp"
#include "cantor/catalog.hpp"
#include "cantor/error.hpp"
#include "cantor/serialize.hpp"

using namespace cantor;
using io::json;

namespace {

struct Common {
  std::string out, dot;
  bool canonical = false;
};

DirectedGraph load_graph(std::string const& src) {
  if (src.rfind("builtin:", 0) == 0) return catalog::graph(src.substr(8));
  return io::graph_from_json(io::read_file(src));
}

CantorMap load_map(std::string const& src) {
  if (src.rfind("builtin:", 0) == 0) return catalog::map(src.substr(8));
  return io::map_from_json(io::read_file(src));
}

void write_text(std::string const& path, std::string const& text) {
  std::ofstream o(path);
  if (!o) throw Error("cannot write " + path);
  o << text;
}

// JSON to --out or stdout
void emit(Common const& c, json j, double seconds) {
  if (!c.canonical) j["elapsed_seconds"] = seconds;
  auto text = j.dump(2) + "\n";
  if (c.out.empty()) std::cout << text;
  else write_text(c.out, text);
}

// tables go to stdout when the JSON went to a file, stderr otherwise
std::ostream& table_stream(Common const& c) { return c.out.empty() ? std::cerr : std::cout; }

std::vector<std::size_t> parse_depths(std::string const& s) {
  std::vector<std::size_t> d;
  auto num = [&](std::string const& t) -> std::size_t {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
      throw Error("--depths: \"" + t + "\" is not a depth");
    return std::stoul(t);
  };
  auto dots = s.find("..");
  if (dots != std::string::npos) {
    auto a = num(s.substr(0, dots)), b = num(s.substr(dots + 2));
    for (auto k = a; k <= b; ++k) d.push_back(k);
  } else {
    std::stringstream ss(s);
    std::string t;
    while (std::getline(ss, t, ',')) d.push_back(num(t));
  }
  if (d.empty()) throw Error("--depths: empty");
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] < 1 || (i && d[i] <= d[i - 1])) throw Error("--depths must be ascending and >= 1");
  return d;
}

std::string bound(Dyadic const& d) {
  std::ostringstream os;
  os << d.str() << " (" << std::setprecision(6) << d.to_double() << ")";
  return os.str();
}

void print_table(std::ostream& os, ConvergenceReport const& r) {
  os << std::left << std::setw(4) << "k" << std::setw(6) << "N_k" << std::setw(8) << "percon" << std::setw(10)
     << "method" << std::setw(22) << "eps_k" << "total\n";
  for (auto const& c : r.certificates)
    os << std::setw(4) << c.k << std::setw(6) << c.mixing_N << std::setw(8) << (c.percon.holds ? "ok" : "fail")
       << std::setw(10) << c.method << std::setw(22) << bound(c.eps) << bound(c.total) << "\n";
  if (r.halted)
    os << "halted at depth " << r.halt_depth << " (" << r.halt_stage << "): " << r.halt_reason
       << (r.witness.empty() ? "" : ", witness " + r.witness) << "\n";
}

void write_dots(std::string const& dir, ConvergenceReport const& r) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  for (auto const& c : r.certificates)
    write_text(dir + "/G_" + std::to_string(c.k) + ".dot", to_dot(c.gk, "G_" + std::to_string(c.k)));
}

int cmd_analyze(Common const& c, std::string const& file, int orbits_upto) {
  auto t0 = std::chrono::steady_clock::now();
  auto g = load_graph(file);
  json j;
  j["graph"] = io::to_json(g);
  j["essential"] = is_essential(g);
  auto e = essentialize(g);
  if (e.empty()) throw Refusal("the graph has no bi-infinite walk: the shift is empty", "empty");
  if (!is_essential(g)) j["essential_part"] = io::to_json(e);
  auto m = is_mixing(e);
  j["mixing"] = m.mixing;
  j["N"] = m.N;
  if (!m.mixing) j["obstruction"] = io::to_json(m, e);
  j["perfect"] = is_perfect(e);
  j["finite_periodic"] = is_finite_periodic(e);
  auto per = per_spectrum(e);
  j["per"] = io::to_json(per);
  j["per_text"] = per.str();
  json orbits = json::array();
  for (auto const& o : periodic_orbits_upto(e, orbits_upto + 1))
    orbits.push_back({{"period", o.period}, {"walk", e.spell(o.walk)}});
  j["orbits_upto"] = orbits_upto;
  j["orbits"] = orbits;
  if (!c.dot.empty()) write_text(c.dot, to_dot(g));
  emit(c, j, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  return 0;
}

int cmd_markers(Common const& c, std::string const& file, int N, int k, int Lmax) {
  if (N < 2) throw Error("--N must be >= 2");
  if (k <= 2 * N) throw Error("requires k > 2N (got k=" + std::to_string(k) + ", N=" + std::to_string(N) + ")");
  if (Lmax == 0) Lmax = std::max(k, 4 * N + 8);
  auto t0 = std::chrono::steady_clock::now();
  auto g = load_graph(file);
  MarkerStats st;
  auto m = build_markers(g, N, k, Lmax, &st);
  auto d = verify_disjoint(m), cov = verify_coverage(m);
  json j = io::to_json(m);
  j["verification"] = {{"disjoint", io::to_json(d, g)}, {"coverage", io::to_json(cov, g)}};
  j["search"] = {{"tried_L", st.tried_L}, {"decisions", st.decisions}, {"conflicts", st.conflicts}};
  emit(c, j, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  return d.ok && cov.ok ? 0 : 2;
}

int cmd_factor(Common const& c, std::string const& lf, std::string const& sf, std::string const& wspec, int k,
               int Lmax) {
  auto t0 = std::chrono::steady_clock::now();
  auto lam = load_graph(lf), sig = load_graph(sf);
  std::vector<Word> W;
  if (!wspec.empty() && wspec.find_first_not_of("0123456789") == std::string::npos) {
    W = words(sig, std::stoul(wspec));
  } else {
    std::stringstream ss(wspec);
    std::string t;
    while (std::getline(ss, t, ',')) W.push_back(sig.parse_word(t));
  }
  WitnessOptions o;
  if (k) {
    o.force_marker = true;
    o.marker_k = k;
  }
  o.marker_Lmax = Lmax;
  auto w = factor_witness(lam, sig, W, 0, o);
  json j;
  j["code"] = io::to_json(w.code);
  j["constants"] = {{"n", w.constants.n}, {"n0", w.constants.n0}, {"N", w.constants.N},
                    {"w0", sig.spell(w.constants.w0)}};
  j["W"] = json::array();
  for (auto const& x : w.W) j["W"].push_back(sig.spell(x));
  j["admissibility"] = io::to_json(w.admissibility, lam);
  j["coverage"] = io::to_json(w.coverage, w.code);
  json pre = json::array();
  for (auto const& p : w.preimages) pre.push_back({{"w", sig.spell(p.w)}, {"u", lam.spell(p.point.u)}, {"start", p.point.start}});
  j["preimages"] = pre;
  if (!w.note.empty()) j["note"] = w.note;
  if (!c.dot.empty()) write_text(c.dot, to_dot(sig, "target"));
  emit(c, j, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  return 0;
}

int cmd_approximate(Common const& c, std::string const& lf, std::string const& mf, std::string const& depths) {
  auto ds = parse_depths(depths);
  auto t0 = std::chrono::steady_clock::now();
  auto lam = load_graph(lf);
  auto f = load_map(mf);
  auto r = approximate(lam, f, ds);
  if (lf.rfind("builtin:", 0) == 0) r.lambda_name = lf.substr(8);
  write_dots(c.dot, r);
  emit(c, io::to_json(r, lam, f), std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  print_table(table_stream(c), r);
  return r.halted ? 2 : 0;
}

int cmd_report(Common const& c, std::string const& file) {
  auto t0 = std::chrono::steady_clock::now();
  auto l = io::report_from_json(io::read_file(file));
  auto problems = reverify(l.lambda, l.map, l.report);
  write_dots(c.dot, l.report);
  json j = {{"report", file},
            {"certificates", l.report.certificates.size()},
            {"halted", l.report.halted},
            {"reverified", problems.empty()},
            {"problems", problems}};
  emit(c, j, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  auto& os = table_stream(c);
  print_table(os, l.report);
  for (auto const& p : problems) os << "problem: " << p << "\n";
  if (!problems.empty()) return 1;
  return l.report.halted ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified approximation of Cantor endomorphisms by subshift conjugates"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--out", common.out, "write the JSON here instead of stdout");
    s->add_option("--dot", common.dot, "DOT export (a file, or a directory for cover graphs)");
    s->add_flag("--canonical", common.canonical, "byte-stable output: no timings");
  };

  std::string f1, f2, wspec = "3", depths = "2..6";
  int N = 0, k = 0, Lmax = 0, orbits = 8;

  auto* an = app.add_subcommand("analyze", "mixing, perfectness and periods of a graph");
  an->add_option("graph", f1, "graph JSON or builtin:NAME")->required();
  an->add_option("--N", orbits, "list periodic orbits of period <= N");
  add_common(an);

  auto* mk = app.add_subcommand("markers", "build and verify a marker set");
  mk->add_option("graph", f1, "graph JSON or builtin:NAME")->required();
  mk->add_option("--N", N, "aperiodicity bound")->required();
  mk->add_option("--k", k, "gap bound, k > 2N")->required();
  mk->add_option("--Lmax", Lmax, "largest window radius to try");
  add_common(mk);

  auto* fc = app.add_subcommand("factor", "compile a shift-commuting code whose image meets W");
  fc->add_option("lambda", f1, "source graph")->required();
  fc->add_option("sigma", f2, "target graph")->required();
  fc->add_option("W", wspec, "word length, or comma-separated target words (default 3)");
  fc->add_option("--k", k, "force the marker code with this gap bound");
  fc->add_option("--Lmax", Lmax, "largest marker window radius");
  add_common(fc);

  auto* ap = app.add_subcommand("approximate", "run the approximation pipeline over depths");
  ap->add_option("lambda", f1, "source graph")->required();
  ap->add_option("map", f2, "map JSON or builtin:NAME")->required();
  ap->add_option("--depths", depths, "e.g. 2..6 or 2,4,5");
  add_common(ap);

  auto* rp = app.add_subcommand("report", "re-verify a saved convergence report");
  rp->add_option("file", f1, "report JSON")->required();
  add_common(rp);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*an) return cmd_analyze(common, f1, orbits);
    if (*mk) return cmd_markers(common, f1, N, k, Lmax);
    if (*fc) return cmd_factor(common, f1, f2, wspec, k, Lmax);
    if (*ap) return cmd_approximate(common, f1, f2, depths);
    if (*rp) return cmd_report(common, f1);
  } catch (Refusal const& e) {
    std::cerr << "refused: " << e.what() << (e.witness().empty() ? "" : " [witness " + e.witness() + "]") << "\n";
    return 2;
  } catch (Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (json::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (std::filesystem::filesystem_error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
