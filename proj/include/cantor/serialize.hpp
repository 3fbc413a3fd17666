#pragma once

#include <json.hpp>

#include "cantor/approx_pipeline.hpp"
#include "cantor/cantor_space.hpp"
#include "cantor/endomorphism.hpp"
#include "cantor/factor_coder.hpp"
#include "cantor/marker.hpp"
#include "cantor/sft.hpp"

// JSON forms of the library objects. Words are written spelled with the
// names of the graph they live in. Readers throw Error on malformed input.
namespace cantor::io {

using json = nlohmann::json;

json to_json(Dyadic const& d);
Dyadic dyadic_from_json(json const& j);

// {"alphabet":[names],"edges":[[from,to],...]}
json to_json(DirectedGraph const& g);
DirectedGraph graph_from_json(json const& j);
json to_json(DomainSpace const& s);
DomainSpace space_from_json(json const& j);

json to_json(EventuallyPeriodicSet const& s);
EventuallyPeriodicSet eps_from_json(json const& j);

json to_json(DomainSpace const& s, ClopenSet const& c);
ClopenSet clopen_from_json(DomainSpace const& s, json const& j);

json to_json(CantorMap const& f);
CantorMap map_from_json(json const& j);

json to_json(MixingResult const& m, DirectedGraph const& g);
json to_json(OntoCertificate const& c, DomainSpace const& s);
json to_json(ChainMixCertificate const& c);
json to_json(PerconVerdict const& v);

json to_json(MarkerSet const& m);
MarkerSet markers_from_json(json const& j);
json to_json(VerifyResult const& v, DirectedGraph const& g);

// radius, method, source, target, provenance, digest; the rule table when it
// has at most max_table windows
json to_json(SlidingBlockCode const& c, std::size_t max_table = 4096);
// needs the table
SlidingBlockCode code_from_json(json const& j);
json to_json(AdmissibilityReport const& a, DirectedGraph const& source);
json to_json(CoverageWitness const& w, SlidingBlockCode const& c);

json to_json(ApproxCertificate const& c);
ApproxCertificate certificate_from_json(json const& j);
// lambda and f are embedded so a report can be checked on its own
json to_json(ConvergenceReport const& r, DirectedGraph const& lambda, CantorMap const& f);
struct LoadedReport {
  DirectedGraph lambda;
  CantorMap map;
  ConvergenceReport report;
};
LoadedReport report_from_json(json const& j);

// parse text, Error with line and column on failure
json parse(std::string const& text, std::string const& what = "input");
json read_file(std::string const& path);

}  // namespace cantor::io
