#include "cantor/approx_pipeline.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "cantor/error.hpp"
#include "digest.hpp"

namespace cantor {

PerconVerdict percon_gate(DirectedGraph const& lambda, CantorMap const& f, std::size_t k) {
  PerconVerdict v;
  v.lambda_per = per_spectrum(lambda);
  v.cover_per = per_spectrum(cover_graph(f, k));
  auto s = per_subset(v.lambda_per, v.cover_per);
  v.holds = s.holds;
  v.witness = s.witness;
  return v;
}

std::vector<int> CylinderCorrespondence::level(int l) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].level == l) out.push_back(int(i));
  return out;
}

Dyadic CylinderCorrespondence::level_mesh(int l) const {
  Dyadic m;
  for (int i : level(l)) m = std::max(m, diam(space, nodes[i].piece));
  return m;
}

std::uint64_t CylinderCorrespondence::digest() const {
  std::string s = std::to_string(k) + "/" + std::to_string(depth) + "/";
  for (auto const& n : nodes) {
    s += std::to_string(n.level) + ":" + std::to_string(n.parent) + ":" + std::to_string(n.sigma_start) + ":";
    s += n.sigma_word + "=";
    for (auto const& c : n.piece.cylinders()) s += c + ",";
    s += ";";
  }
  return detail::fnv(s);
}

CylinderCorrespondence build_correspondence(DirectedGraph const& gk, DomainSpace const& space, std::size_t k,
                                            int refine_depth) {
  if (refine_depth < 0) throw Error("build_correspondence: negative depth");
  auto mix = is_mixing(gk);
  if (!mix.mixing) throw Refusal("cover graph not mixing: " + mix.reason, "not mixing");
  if (!is_perfect(gk)) throw Refusal("cover graph shift has an isolated point, so it is not a Cantor set", "not perfect");

  CylinderCorrespondence c;
  c.gk = gk;
  c.space = space;
  c.k = k;
  c.depth = refine_depth;
  std::vector<Word> seen;
  for (std::size_t u = 0; u < gk.size(); ++u) {
    Word x = space.graph().parse_word(gk.name(u));
    if (x.size() != k) throw Error("build_correspondence: vertex " + gk.name(u) + " is not a depth-k word");
    seen.push_back(x);
    c.nodes.push_back({0, -1, Word(1, char(u)), 0, ClopenSet(space, {x})});
  }
  std::sort(seen.begin(), seen.end());
  if (seen != words(space.graph(), k)) throw Error("build_correspondence: vertices are not the depth-k cylinders");

  std::size_t lo = 0;
  for (int l = 0; l < refine_depth; ++l) {
    std::size_t hi = c.nodes.size();
    for (std::size_t i = lo; i < hi; ++i) {
      CorrespondenceNode const n = c.nodes[i];
      std::vector<CorrespondenceNode> kids;
      if (l % 2 == 0) {
        for (int v : gk.out((unsigned char)n.sigma_word.back()))
          kids.push_back({l + 1, int(i), n.sigma_word + char(v), n.sigma_start, {}});
      } else {
        for (int v : gk.in((unsigned char)n.sigma_word.front()))
          kids.push_back({l + 1, int(i), char(v) + n.sigma_word, n.sigma_start - 1, {}});
      }
      auto parts = split_clopen(space, n.piece, kids.size());
      for (std::size_t t = 0; t < kids.size(); ++t) {
        kids[t].piece = parts[t];
        c.nodes.push_back(kids[t]);
      }
    }
    lo = hi;
  }
  return c;
}

std::string check_correspondence(CylinderCorrespondence const& c) {
  auto const& gk = c.gk;
  for (int l = 0; l <= c.depth; ++l) {
    auto ids = c.level(l);
    CPartition p;
    std::vector<std::pair<int, Word>> sig;
    for (int i : ids) {
      auto const& n = c.nodes[i];
      if (n.piece.empty()) return "empty piece at level " + std::to_string(l);
      if (!gk.admissible(n.sigma_word)) return "inadmissible sigma word at level " + std::to_string(l);
      p.parts.push_back(n.piece);
      sig.push_back({n.sigma_start, n.sigma_word});
    }
    if (!is_partition(c.space, p)) return "X pieces do not partition at level " + std::to_string(l);
    // sigma side: all cylinders of the same window, each once, and all of them
    std::sort(sig.begin(), sig.end());
    if (std::adjacent_find(sig.begin(), sig.end()) != sig.end()) return "sigma cylinder repeated";
    if (sig.empty()) return "empty level";
    for (auto const& s : sig)
      if (s.first != sig[0].first || s.second.size() != sig[0].second.size()) return "ragged sigma level";
    // mixing gk is essential, so every admissible word spans a nonempty cylinder
    if (sig.size() != words(gk, sig[0].second.size()).size()) return "sigma cylinders do not cover";
  }
  for (auto const& n : c.nodes) {
    if (n.parent < 0) {
      if (n.sigma_start != 0 || n.sigma_word.size() != 1) return "root is not a coordinate-0 cylinder";
      Word x = c.space.graph().parse_word(gk.name((unsigned char)n.sigma_word[0]));
      if (!(n.piece == ClopenSet(c.space, {x}))) return "root " + gk.name((unsigned char)n.sigma_word[0]) + " paired with the wrong cylinder";
      continue;
    }
    auto const& p = c.nodes[n.parent];
    if (n.sigma_word.find(p.sigma_word) == Word::npos) return "child does not refine its parent";
    for (auto const& w : n.piece.expand(c.space, std::max(n.piece.max_depth(), p.piece.max_depth())))
      if (!p.piece.contains_prefix(w)) return "child piece leaves its parent";
  }
  return "";
}

Dyadic conjugate_eps(CantorMap const& f, std::size_t k) {
  auto m = mesh(f.space(), standard_partition(f.space(), k));
  for (int t = 64; t >= -64; --t)
    if (delta_for(f, Dyadic::pow2(-t)) >= m) return Dyadic::pow2(-t);
  throw Error("no dyadic eps found");
}

namespace {

// random admissible word of length n (gk essential)
Word random_walk(DirectedGraph const& g, std::size_t n, std::mt19937_64& rng) {
  Word w(1, char(rng() % g.size()));
  while (w.size() < n) {
    auto const& o = g.out((unsigned char)w.back());
    w.push_back(char(o[rng() % o.size()]));
  }
  return w;
}

}  // namespace

ApproxCertificate certify_conjugate_bound(CantorMap const& f, std::size_t k) {
  if (k < 1) throw Error("depth must be >= 1");
  auto onto = check_onto(f, k);
  if (!onto.verified)
    throw Refusal("map is not onto at depth " + std::to_string(onto.failed_depth),
                  f.space().graph().spell(onto.missing));
  auto cm = check_chain_mixing(f, k);
  if (!cm.verified)
    throw Refusal("not chain mixing at depth " + std::to_string(cm.failed_depth) + ": " + cm.obstruction.reason,
                  "depth " + std::to_string(cm.failed_depth));

  ApproxCertificate c;
  c.k = k;
  c.gk = cover_graph(f, k);
  c.mixing_N = cm.N.back();
  // the conjugated shift on U_k has the cover graph of Sigma(G_k) itself,
  // which is G_k exactly when no vertex or edge is lost to essentialization
  auto ess = essentialize(c.gk);
  c.conjugate_graph_equal = ess.size() == c.gk.size() && ess.edges() == c.gk.edges();
  if (!c.conjugate_graph_equal) throw Refusal("cover graph is not essential", "depth " + std::to_string(k));
  auto corr = build_correspondence(c.gk, f.space(), k, 0);
  c.correspondence_digest = corr.digest();
  c.mesh = mesh(f.space(), standard_partition(f.space(), k));
  c.eps = conjugate_eps(f, k);
  c.delta = delta_for(f, c.eps);
  return c;
}

Prop35Witness factor_witness(DirectedGraph const& lambda, DirectedGraph const& sigma, std::vector<Word> W,
                             int coord, WitnessOptions const& opt) {
  if (!is_essential(lambda)) throw Error("source graph is not essential");
  if (W.empty()) throw Error("W is empty");
  for (auto const& w : W)
    if (w.empty() || !sigma.admissible(w)) throw Error("W word " + sigma.spell(w) + " is not admissible in the target");
  if (is_finite_periodic(lambda)) throw Refusal("source is a finite set of periodic points", "finite");
  if (!is_perfect(lambda)) throw Refusal("source has an isolated point", "not perfect");
  auto mix = is_mixing(sigma);
  if (!mix.mixing) throw Refusal("target not mixing: " + mix.reason, "not mixing");
  if (!is_perfect(sigma)) throw Refusal("target has an isolated point", "not perfect");
  auto pc = per_subset(per_spectrum(lambda), per_spectrum(sigma));
  if (!pc.holds) throw Refusal("period " + std::to_string(pc.witness) + " of the source is missing in the target",
                               std::to_string(pc.witness));

  Prop35Witness r;
  std::sort(W.begin(), W.end());
  W.erase(std::unique(W.begin(), W.end()), W.end());
  r.W = W;
  r.constants = choose_constants(sigma, r.W);
  auto const& w0 = r.constants.w0;

  bool built = false;
  if (lambda.matrix() == sigma.matrix() && !opt.force_marker) {
    r.code = identity_code(lambda, sigma);
    r.admissibility.exhaustive = true;
    r.admissibility.note = "identity";
    built = true;
  }
  if (!built && (opt.allow_marker || opt.force_marker)) {
    int N = r.constants.N;
    int k = opt.marker_k ? opt.marker_k : 2 * N + 1;
    int Lmax = opt.marker_Lmax ? opt.marker_Lmax : 4 * N + 8;
    if (k <= 2 * N) throw Error("marker k must exceed 2N = " + std::to_string(2 * N));
    double windows = count_words(lambda, 2 * (2 * N + 1 + N + k) + 2);
    r.note = "marker path: N=" + std::to_string(N) + " k=" + std::to_string(k) +
             " estimated windows " + std::to_string(windows);
    if (opt.force_marker || windows <= opt.marker_budget) {
      try {
        auto m = build_markers(lambda, N, k, Lmax);
        auto psi = build_psi(sigma, r.constants);
        auto pa = assign_periodic(lambda, sigma, N);
        auto code = compile_code(lambda, sigma, m, r.constants, psi, pa);
        auto adm = verify_image(code, std::max(opt.marker_budget, opt.force_marker ? 1e300 : 0.0));
        if (adm.ok || !adm.witness.empty()) {
          r.code = code;
          r.admissibility = adm;
          built = true;
        } else {
          r.note += "; " + adm.note;
        }
      } catch (Refusal const& e) {
        if (opt.force_marker) throw;
        r.note += std::string("; ") + e.what();
      }
    }
  }
  if (!built) {
    r.plan = plan_trigger(lambda, sigma, w0);
    r.code = trigger_code(lambda, sigma, r.plan);
    r.admissibility = verify_trigger_structure(r.code, r.plan);
    if (r.admissibility.ok && count_words(lambda, 2 * r.code.radius() + 2) <= opt.exhaustive_budget) {
      auto ex = verify_image(r.code, opt.exhaustive_budget);
      if (!ex.ok) r.admissibility = ex;
      else {
        r.admissibility.exhaustive = true;
        r.admissibility.scanned = ex.scanned;
        r.admissibility.note += " and exhaustive";
      }
    }
  }
  if (!r.admissibility.ok)
    throw Refusal("witness code image is not admissible: " + r.admissibility.note, lambda.spell(r.admissibility.witness));

  r.coverage = coverage_witness(r.code, w0);
  for (auto const& w : r.W) {
    auto p = preimage_point(r.code, r.coverage, coord, w);
    if (p.u.empty()) throw Refusal("no preimage found for " + sigma.spell(w), sigma.spell(w));
    r.preimages.push_back({w, p});
  }
  r.coord = coord;
  // an edge w -> w' of the pulled-back graph comes from a point whose image
  // shows w at -j and w' at -j+1; the image lies in Sigma(sigma), so w w' overlap
  // along a path and the edge is one of sigma's own
  r.subgraph_ok = r.admissibility.ok;
  return r;
}

Prop35Witness prop35_witness(DirectedGraph const& lambda, DirectedGraph const& gk, WitnessOptions const& opt) {
  if (opt.j < 1) throw Error("j >= 1 required");
  auto r = factor_witness(lambda, gk, words(gk, 2 * opt.j + 1), -opt.j, opt);
  r.j = opt.j;
  r.bound = Dyadic::pow2(-opt.j);
  return r;
}

ConvergenceReport approximate(DirectedGraph const& lambda, CantorMap const& f, std::vector<std::size_t> depths,
                              WitnessOptions const& opt) {
  ConvergenceReport r;
  r.map_name = f.name();
  r.depths = depths;
  if (depths.empty()) throw Error("no depths given");
  for (std::size_t i = 0; i < depths.size(); ++i)
    if (depths[i] < 1 || (i && depths[i] <= depths[i - 1])) throw Error("depths must be ascending and >= 1");
  if (!is_essential(lambda)) throw Error("source graph is not essential");

  auto halt = [&](std::size_t k, std::string stage, std::string reason, std::string witness) {
    r.halted = true;
    r.halt_depth = k;
    r.halt_stage = std::move(stage);
    r.halt_reason = std::move(reason);
    r.witness = std::move(witness);
    return r;
  };
  if (!is_perfect(lambda)) return halt(0, "input", "source is not perfect: it has an isolated point", "not perfect");

  for (std::size_t k : depths) {
    auto onto = check_onto(f, k);
    if (!onto.verified)
      return halt(onto.failed_depth, "onto", "map is not onto at depth " + std::to_string(onto.failed_depth),
                  f.space().graph().spell(onto.missing));
    auto cm = check_chain_mixing(f, k);
    if (!cm.verified)
      return halt(cm.failed_depth, "chain_mixing",
                  "not chain mixing at depth " + std::to_string(cm.failed_depth) + ": " + cm.obstruction.reason,
                  "depth " + std::to_string(cm.failed_depth));
    auto pv = percon_gate(lambda, f, k);
    if (!pv.holds)
      return halt(k, "percon", "period " + std::to_string(pv.witness) + " of the source has no cover-graph cycle",
                  std::to_string(pv.witness));
    ApproxCertificate c;
    try {
      c = certify_conjugate_bound(f, k);
    } catch (Refusal const& e) {
      return halt(k, "conjugate", e.what(), e.witness());
    }
    c.percon = pv;
    try {
      auto w = prop35_witness(lambda, c.gk, opt);
      c.method = w.code.method();
      c.code_digest = w.code.digest();
      c.sigma_bound = w.bound;
      c.subgraph_ok = w.subgraph_ok;
      c.subgraph_note = w.admissibility.exhaustive ? "exhaustive" : "structural";
      // agreeing on [-(j-1), j-1] keeps both points in one node of
      // correspondence level 2(j-1); its X diameter bounds the distance
      auto corr = build_correspondence(c.gk, f.space(), k, 2 * (w.j - 1));
      c.pushed = corr.level_mesh(2 * (w.j - 1));
    } catch (Refusal const& e) {
      return halt(k, "witness", e.what(), e.witness());
    }
    c.total = c.eps + c.pushed + c.mesh;
    if (!r.certificates.empty() && !(c.total < r.certificates.back().total))
      return halt(k, "bound", "total bound did not decrease", c.total.str());
    r.certificates.push_back(std::move(c));
  }
  return r;
}

std::vector<std::string> reverify(DirectedGraph const& lambda, CantorMap const& f, ConvergenceReport const& r) {
  std::vector<std::string> bad;
  auto fail = [&](std::size_t k, std::string const& s) { bad.push_back("k=" + std::to_string(k) + ": " + s); };
  Dyadic prev;
  bool first = true;
  for (auto const& c : r.certificates) {
    auto k = c.k;
    auto gk = cover_graph(f, k);
    if (!(gk == c.gk)) fail(k, "cover graph differs from recomputation");
    // (i) every vertex has an edge in and out, so Sigma(gk) sees all of gk
    for (std::size_t v = 0; v < gk.size(); ++v)
      if (gk.out(v).empty() || gk.in(v).empty()) fail(k, "vertex " + gk.name(v) + " is not essential");
    if (is_mixing(gk).N != c.mixing_N) fail(k, "mixing constant differs");

    // (ii) subgraph condition: rebuild the witness, compare digests and check
    // images of random long source words
    WitnessOptions o;
    o.j = c.sigma_bound.is_zero() ? 1 : c.sigma_bound.exp();
    if (c.sigma_bound != Dyadic::pow2(-o.j)) fail(k, "sigma bound is not a power of two");
    Prop35Witness w;
    try {
      w = prop35_witness(lambda, gk, o);
    } catch (Refusal const& e) {
      fail(k, std::string("witness rebuild refused: ") + e.what());
      continue;
    }
    if (w.code.digest() != c.code_digest) fail(k, "witness code digest differs");
    std::mt19937_64 rng(k);
    for (int t = 0; t < 200; ++t) {
      Word x = random_walk(lambda, 2 * w.code.radius() + 64, rng);
      if (!gk.admissible(w.code.image(x))) fail(k, "random image inadmissible: " + lambda.spell(x));
    }
    for (auto const& p : w.preimages) {
      int off = w.coord - p.point.start - w.code.radius();
      auto img = w.code.image(p.point.u);
      if (!lambda.admissible(p.point.u) || off < 0 || img.compare(off, p.w.size(), p.w) != 0)
        fail(k, "preimage point does not show " + gk.spell(p.w));
    }
    if (w.W.size() != words(gk, 2 * w.j + 1).size()) fail(k, "W is not every word");
    if (c.subgraph_ok != w.subgraph_ok || !c.subgraph_ok) fail(k, "subgraph condition not verified");

    // (iii) mesh <= delta and delta below eps/2
    auto m = mesh(f.space(), standard_partition(f.space(), k));
    if (m != c.mesh) fail(k, "mesh differs");
    auto d = delta_for(f, c.eps);
    if (d != c.delta) fail(k, "delta differs");
    if (!(m <= d)) fail(k, "mesh exceeds delta");
    if (!(d < c.eps.half())) fail(k, "delta not below eps/2");
    try {
      auto corr = build_correspondence(gk, f.space(), k, 2 * (o.j - 1));
      auto why = check_correspondence(corr);
      if (!why.empty()) fail(k, "correspondence: " + why);
      if (corr.level_mesh(2 * (o.j - 1)) != c.pushed) fail(k, "pushed bound differs");
    } catch (Refusal const& e) {
      fail(k, std::string("correspondence refused: ") + e.what());
    }
    if (c.total != c.eps + c.pushed + c.mesh) fail(k, "total is not eps + pushed + mesh");
    if (!first && !(c.total < prev)) fail(k, "total bound not decreasing");
    prev = c.total;
    first = false;
  }
  return bad;
}

}  // namespace cantor
