#pragma once

// JSON forms of images, certificates and reports (nlohmann::json).

#include <json.hpp>

#include "dighom/catalog.hpp"
#include "dighom/core.hpp"
#include "dighom/lasso.hpp"
#include "dighom/loops.hpp"
#include "dighom/reductions.hpp"

namespace dighom {

using json = nlohmann::ordered_json;

inline json edges_json(const DigitalImage& img) {
  json out = json::array();
  for (auto [u, v] : img.edges()) out.push_back({u, v});
  return out;
}

inline json image_json(const DigitalImage& img) {
  return {{"points", img.size()}, {"edges", edges_json(img)}, {"graph6", encode_graph6(img)}};
}

inline json set_json(VertexSet s) { return to_vector(s); }

inline json reduction_json(const ReductionCertificate& c) {
  json out = {{"kind", to_string(c.kind)}, {"source", image_json(c.source)}};
  switch (c.kind) {
    case ReductionKind::dominating_clique:
      out["clique"] = c.clique;
      break;
    case ReductionKind::neighborhood_absorption:
      out["absorbed"] = c.absorbed;
      out["absorber"] = c.absorber;
      break;
    case ReductionKind::path_reduction:
      out["path_p"] = c.path_p;
      out["path_q"] = c.path_q;
      break;
    case ReductionKind::chordal_collapse:
      out["elimination_order"] = c.elimination_order;
      break;
    case ReductionKind::one_step_nonsurjective:
      break;
  }
  out["chain"] = c.chain;
  out["kept"] = set_json(c.kept);
  out["result"] = image_json(c.result);
  out["verified"] = verify_reduction(c);
  return out;
}

inline json equivalence_json(const DigitalImage& x, const DigitalImage& y, const EquivalenceCertificate& e) {
  return {{"f", e.f},
          {"g", e.g},
          {"chain_gf", e.chain_gf},
          {"chain_fg", e.chain_fg},
          {"verified", verify_equivalence(x, y, e)}};
}

inline json decision_json(const Decision& d) {
  json out = {{"value", d.value}};
  out["witness"] = d.witness ? json(*d.witness) : json(nullptr);
  return out;
}

template <class W>
json verdict_json(const Verdict<W>& v) {
  json out = {{"verdict", to_string(v.kind)}, {"reason", v.reason}};
  out["witness"] = v.witness ? json(*v.witness) : json(nullptr);
  return out;
}

inline json lm_json(const LoopClassTable& t) {
  json loops = json::array();
  for (std::size_t i = 0; i < t.loops.size(); ++i)
    loops.push_back({{"loop", t.loops[i]}, {"class", t.class_of[i] < 0 ? json(nullptr) : json(t.class_of[i])}});
  return {{"m", t.m},       {"count", t.count}, {"status", to_string(t.status)},
          {"method", t.method}, {"classes", t.classes}, {"loops", loops}};
}

inline json loop_irreducible_json(const LoopIrreducibilityResult& r) {
  json out = {{"status", to_string(r.status)}, {"reason", r.reason}};
  out["chain"] = r.chain ? json(*r.chain) : json(nullptr);
  out["extension_length"] = r.extension_length;
  return out;
}

inline json lasso_json(const Lasso& l) { return {{"path", l.path}, {"loop", l.loop}}; }

inline json rigidity_certificate_json(const RigidityCertificate& c) {
  json out = json::array();
  for (const auto& [pair, l] : c.lassos)
    out.push_back({{"x_prev", pair.first}, {"x", pair.second}, {"lasso", lasso_json(l)}});
  return out;
}

inline json catalog_json(const CatalogReport& r, bool timing) {
  json classes = json::array();
  for (const auto& c : r.irreducible_classes) {
    classes.push_back({{"graph6", c.graph6},
                       {"edges", c.edges},
                       {"rigid", c.rigid},
                       {"lasso_certificate", c.lasso_certificate},
                       {"matched_fixture", c.matched_fixture ? json(*c.matched_fixture) : json(nullptr)}});
  }
  json out = {{"n", r.n},
              {"filter", r.filter},
              {"source", r.source},
              {"total_connected", r.total_connected},
              {"lemma_survivors", {{"count", r.lemma_survivors.size()}, {"graph6", r.lemma_survivors}}},
              {"irreducible_classes", classes},
              {"class_count", r.irreducible_classes.size()}};
  if (timing) out["timing"] = {{"enumerate_and_filter_seconds", r.seconds_enumerate}, {"exact_seconds", r.seconds_exact}};
  return out;
}

}  // namespace dighom
