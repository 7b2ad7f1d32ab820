// Acceptance checks: one PASS/FAIL line per criterion.
//   acceptance                 criteria 1-5, 7-10
//   acceptance --long          adds the 9-point catalog (criterion 6)
//   acceptance --criterion N   only criterion N (repeatable)

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "dighom/catalog.hpp"
#include "dighom/core.hpp"
#include "dighom/fixtures.hpp"
#include "dighom/lasso.hpp"
#include "dighom/loops.hpp"
#include "dighom/maps.hpp"
#include "dighom/reductions.hpp"

using namespace dighom;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

std::string str(const std::vector<Vertex>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

/// True when the class list is, up to isomorphism, exactly `expected`.
bool same_classes(const CatalogReport& r, const std::vector<DigitalImage>& expected) {
  if (r.irreducible_classes.size() != expected.size()) return false;
  std::set<std::size_t> hit;
  for (const auto& c : r.irreducible_classes) {
    const auto img = parse_graph6(c.graph6);
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (are_isomorphic(img, expected[i])) hit.insert(i);
  }
  return hit.size() == expected.size();
}

CatalogOptions catalog_options(FilterConfig filter) {
  CatalogOptions opt;
  opt.filter = filter;
  return opt;
}

// ---------------------------------------------------------------------------

Outcome criterion_1() {
  Outcome out;
  for (std::size_t m = 5; m <= 8; ++m) {
    const auto cm = cycle_image(m);
    for (std::size_t i = 1; i <= 8; ++i) {
      const auto t = compute_Lm(cm, i);
      const std::size_t want = i == 1 ? 1 : i == m ? 2 : 0;
      out.expect(t.count == want && t.status == LmStatus::exact,
                 "L_" + std::to_string(i) + "(C_" + std::to_string(m) + ") = " + std::to_string(t.count) + " " +
                     to_string(t.status));
    }
  }
  out.note("L_i(C_m) for m = 5..8, i = 1..8, all exact");
  return out;
}

Outcome criterion_2() {
  Outcome out;
  const auto img = named_image("IMG7_1");
  const std::map<std::size_t, std::size_t> want{{1, 1}, {2, 0}, {3, 0}, {4, 0}, {5, 4}, {6, 2}};
  std::string got;
  for (auto [m, value] : want) {
    const auto t = compute_Lm(img, m);
    got += " L_" + std::to_string(m) + "=" + std::to_string(t.count);
    out.expect(t.count == value && t.status == LmStatus::exact,
               "L_" + std::to_string(m) + " = " + std::to_string(t.count) + " " + to_string(t.status));
  }
  out.note("IMG7_1:" + got);
  return out;
}

Outcome criterion_3() {
  Outcome out;
  std::size_t small = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& g : connected_graphs(n)) {
      ++small;
      const auto core = reduce_to_core(g);
      out.expect(core.core.size() == 1, "core of " + encode_graph6(g) + " has " + std::to_string(core.core.size()) +
                                            " points");
      out.expect(verify_equivalence(g, core.core, core_equivalence(g, core)), "core certificate of " + encode_graph6(g));
    }
  out.note(std::to_string(small) + " connected images with n <= 4 have one-point cores");

  const auto r5 = run_catalog(5, {});
  out.expect(same_classes(r5, {cycle_image(5)}), "n = 5 classes are {C_5}");
  const auto r6 = run_catalog(6, {});
  out.expect(r6.total_connected == 112, "n = 6 enumerated " + std::to_string(r6.total_connected));
  out.expect(r6.lemma_survivors.size() == 2, "n = 6 survivors " + std::to_string(r6.lemma_survivors.size()));
  out.expect(same_classes(r6, {cycle_image(6)}), "n = 6 classes are {C_6}");
  const auto r7 = run_catalog(7, {});
  out.expect(r7.total_connected == 853, "n = 7 enumerated " + std::to_string(r7.total_connected));
  out.expect(r7.lemma_survivors.size() == 15, "n = 7 survivors " + std::to_string(r7.lemma_survivors.size()));
  out.expect(same_classes(r7, {cycle_image(7), named_image("IMG7_1"), named_image("IMG7_2")}),
             "n = 7 classes are {C_7, IMG7_1, IMG7_2}");
  out.note("n=5: " + std::to_string(r5.irreducible_classes.size()) + " class; n=6: 112 -> " +
           std::to_string(r6.lemma_survivors.size()) + " -> " + std::to_string(r6.irreducible_classes.size()) +
           "; n=7: 853 -> " + std::to_string(r7.lemma_survivors.size()) + " -> " +
           std::to_string(r7.irreducible_classes.size()));
  return out;
}

Outcome criterion_4() {
  Outcome out;
  struct PathWitness {
    std::vector<Vertex> p, q;
  };
  // X_12 as printed defines f(2) twice and leaves 6 open; read as f(6) = 1.
  const std::map<int, VertexMap> maps{{5, {1, 2, 3, 4, 5, 0, 2}},  {7, {1, 2, 3, 4, 0, 0, 4}},
                                      {8, {1, 2, 3, 4, 0, 2, 3}},  {12, {1, 2, 3, 4, 0, 0, 1}},
                                      {13, {1, 2, 3, 4, 0, 1, 1}}, {15, {1, 2, 3, 4, 0, 3, 0}}};
  const std::map<int, PathWitness> paths{{4, {{0, 1, 2}, {3, 4, 5}}}, {6, {{1, 2}, {0, 3}}},
                                         {9, {{1, 2}, {0, 3}}},       {10, {{3, 0, 6}, {2, 1, 5}}},
                                         {11, {{0, 3}, {1, 2}}},      {14, {{0, 1}, {6, 2}}}};
  for (int i = 4; i <= 15; ++i) {
    const auto img = named_image("APPENDIX_" + std::to_string(i));
    const std::string name = "X_" + std::to_string(i);
    if (auto it = maps.find(i); it != maps.end()) {
      const auto& f = it->second;
      out.expect(is_continuous(img, f), name + " map continuous");
      out.expect(one_step_related(img, identity_map(img.size()), f), name + " map one step from identity");
      out.expect(!is_surjective(f, img.size()), name + " map nonsurjective");
    } else {
      const auto& w = paths.at(i);
      out.expect(path_reduction_conditions(img, w.p, w.q), name + " paths " + str(w.p) + " " + str(w.q));
    }
    out.expect(is_reducible(img).value, name + " reducible by the exact oracle");
  }
  out.note("12 witnesses (6 maps, 6 path pairs) verified; oracle agrees on all");
  return out;
}

Outcome criterion_5() {
  Outcome out;
  const auto r = run_catalog(8, catalog_options(FilterConfig::catalog_edge_paths));
  out.expect(r.lemma_survivors.size() == 106, "survivors " + std::to_string(r.lemma_survivors.size()));
  const std::vector<std::string> names{"C8", "IMG8_1", "IMG8_2", "IMG8_3", "IMG8_4"};
  std::vector<DigitalImage> named;
  for (const auto& n : names) named.push_back(named_image(n));
  for (std::size_t i = 0; i < named.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      out.expect(!are_isomorphic(named[i], named[j]), names[i] + " and " + names[j] + " are isomorphic");
  std::vector<std::string> missing_lasso;
  for (std::size_t i = 0; i < named.size(); ++i) {
    const auto it = std::find_if(r.irreducible_classes.begin(), r.irreducible_classes.end(),
                                 [&](const auto& c) { return are_isomorphic(parse_graph6(c.graph6), named[i]); });
    if (it == r.irreducible_classes.end()) {
      out.expect(false, names[i] + " among the irreducible classes");
      continue;
    }
    if (i == 0) continue;
    out.expect(it->rigid, names[i] + " rigid");
    if (!it->lasso_certificate) missing_lasso.push_back(names[i]);
  }
  std::string list;
  for (const auto& n : missing_lasso) list += (list.empty() ? "" : ", ") + n;
  out.expect(missing_lasso.empty(), "lasso certificate for " + list);
  out.note("106 survivors, " + std::to_string(r.irreducible_classes.size()) +
           " classes incl. C8 and IMG8_1..4, IMG8_1..4 rigid");
  return out;
}

Outcome criterion_6() {
  Outcome out;
  const auto r = run_catalog(9, catalog_options(FilterConfig::catalog_edge_paths));
  out.expect(r.total_connected == 261080, "enumerated " + std::to_string(r.total_connected));
  out.expect(r.lemma_survivors.size() == 2132, "survivors " + std::to_string(r.lemma_survivors.size()));
  out.note("n=9: " + std::to_string(r.total_connected) + " connected, " + std::to_string(r.lemma_survivors.size()) +
           " survivors, " + std::to_string(r.irreducible_classes.size()) + " irreducible classes");
  return out;
}

Outcome criterion_7() {
  Outcome out;
  for (const char* name : {"IMG7_2", "IMG8_1", "IMG8_2", "IMG8_3", "IMG8_4"})
    out.expect(is_rigid(named_image(name)).value, std::string(name) + " rigid");
  for (std::size_t m = 4; m <= 12; ++m)
    out.expect(!is_rigid(cycle_image(m)).value, "C_" + std::to_string(m) + " not rigid");

  const auto klein = named_image("KLEIN");
  const VertexMap swap{5, 6, 7, 8, 9, 0, 1, 2, 3, 4};
  out.expect(!is_rigid(klein).value, "KLEIN not rigid");
  out.expect(is_continuous(klein, swap) && !is_identity(swap), "KLEIN swap is a non-identity self-map");
  const auto h = homotopic_maps(klein, klein, swap, identity_map(10));
  out.expect(h.yes() && verify_chain(klein, klein, *h.witness), "KLEIN swap homotopic to the identity");

  const auto img = named_image("IMG7_2");
  const DigitalLoop outer{6, 3, 0, 2, 5};
  out.expect(find_lasso(img, 1, 0) == Lasso{{0, 1, 4, 6}, outer}, "IMG7_2 lasso (0,1,4,6)");
  out.expect(find_lasso(img, 4, 1) == Lasso{{1, 4, 6}, outer}, "IMG7_2 lasso (1,4,6)");
  out.expect(find_lasso(img, 6, 4) == Lasso{{4, 6}, outer}, "IMG7_2 lasso (4,6)");
  const auto cert = lasso_rigidity(img);
  if (!cert) {
    std::string pairs;
    for (auto [u, v] : img.edges())
      for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}})
        if (!find_lasso(img, b, a)) pairs += " (" + std::to_string(a) + "," + std::to_string(b) + ")";
    out.expect(false, "lasso_rigidity(IMG7_2) is None; no lasso for (x', x) =" + pairs);
  } else {
    out.expect(verify_rigidity_certificate(img, *cert), "IMG7_2 certificate verifies");
  }
  out.note("rigidity verdicts and the known IMG7_2 lassos reproduced");
  return out;
}

Outcome criterion_8() {
  Outcome out;
  const auto x6 = named_image("X6");
  const auto c = pointed_equivalence_check(x6, cycle_image(5));
  out.expect(c.homotopy_equivalent, "X6 homotopy equivalent to C_5");
  const auto cert = equivalence_certificate(x6, cycle_image(5));
  out.expect(cert && verify_equivalence(x6, cycle_image(5), *cert), "equivalence certificate verifies");
  out.expect(c.pointed_rigid.size() == 6 && c.all_pointed_rigid, "X6 pointed rigid at all 6 basepoints");
  out.expect(c.cardinality_excludes && !c.pointed_equivalence_possible, "pointed equivalence excluded");
  out.note(c.explanation);
  return out;
}

// Property suites -----------------------------------------------------------

void inverse_continuity(Outcome& out) {
  std::size_t bijections = 0;
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& g : connected_graphs(n)) {
      VertexMap f(n);
      std::iota(f.begin(), f.end(), 0);
      do {
        if (!is_continuous(g, f)) continue;
        ++bijections;
        VertexMap inv(n);
        for (Vertex x = 0; x < n; ++x) inv[f[x]] = x;
        out.expect(is_continuous(g, inv), "inverse of " + str(f) + " on " + encode_graph6(g));
      } while (std::next_permutation(f.begin(), f.end()));
    }
  out.note("inverse continuity: " + std::to_string(bijections) + " continuous bijections");
}

std::vector<DigitalPath> simple_paths(const DigitalImage& img) {
  std::vector<DigitalPath> out;
  std::function<void(DigitalPath&)> extend = [&](DigitalPath& r) {
    if (r.size() >= 2) out.push_back(r);
    for_each_vertex(img.neighbors(r.back()), [&](Vertex v) {
      r.push_back(v);
      if (is_simple_path(img, r)) extend(r);
      r.pop_back();
    });
  };
  for (Vertex v = 0; v < img.size(); ++v) {
    DigitalPath r{v};
    extend(r);
  }
  return out;
}

void path_pulling(Outcome& out) {
  std::size_t paths = 0, pulled = 0, maps_checked = 0;
  for (const auto& [name, img] : fixtures()) {
    if (img.size() > 7) continue;
    const auto one_step = identity_one_step_maps(img);
    for (const auto& p : simple_paths(img)) {
      if (!path_has_no_right_angles(img, p)) continue;
      ++paths;
      const std::size_t k = p.size() - 1;
      // Every path q one step from p with q(1) = p(0).
      DigitalPath q(p.size());
      std::function<void(std::size_t)> fill = [&](std::size_t i) {
        if (i == q.size()) {
          ++pulled;
          for (std::size_t j = 1; j <= k; ++j)
            if (q[j] != p[j - 1]) {
              out.expect(false, name + " path " + str(p) + " pulled to " + str(q));
              return;
            }
          return;
        }
        VertexSet options = img.closed_neighborhood(p[i]);
        if (i == 1) options &= bit(p[0]);
        if (i > 0) options &= img.closed_neighborhood(q[i - 1]);
        for_each_vertex(options, [&](Vertex v) {
          q[i] = v;
          fill(i + 1);
        });
      };
      fill(0);
      for (const auto& f : one_step) {
        if (f[p[1]] != p[0]) continue;
        ++maps_checked;
        out.expect(f[p[k]] == p[k - 1], name + " map " + str(f) + " on path " + str(p));
      }
    }
  }
  out.note("path pulling: " + std::to_string(paths) + " right-angle-free simple paths, " + std::to_string(pulled) +
           " pulled paths, " + std::to_string(maps_checked) + " one-step maps");
}

class LmCache {
 public:
  const LoopClassTable& get(const DigitalImage& img, std::size_t m) {
    const auto key = std::pair{canonical_key(img), m};
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, compute_Lm(canonical_image(img), m)).first;
    return it->second;
  }

 private:
  std::map<std::pair<std::string, std::size_t>, LoopClassTable> cache_;
};

void additivity(Outcome& out, LmCache& lm) {
  const std::vector<std::string> names{"C5", "C6", "C7", "IMG7_1", "IMG7_2", "X6", "NESTED_6_5"};
  std::size_t compared = 0, skipped = 0;
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i; j < names.size(); ++j) {
      const auto a = named_image(names[i]), b = named_image(names[j]);
      const auto u = disjoint_union(a, b);
      for (std::size_t m = 1; m <= 7; ++m) {
        const auto &ta = lm.get(a, m), &tb = lm.get(b, m);
        if (ta.status != LmStatus::exact || tb.status != LmStatus::exact) {
          ++skipped;
          continue;
        }
        const auto tu = compute_Lm(u, m);
        out.expect(tu.status == LmStatus::exact, "L_" + std::to_string(m) + " of " + names[i] + "+" + names[j] +
                                                     " exact");
        out.expect(tu.count == ta.count + tb.count, "L_" + std::to_string(m) + " of " + names[i] + "+" + names[j]);
        ++compared;
      }
    }
  out.note("additivity: " + std::to_string(compared) + " exact comparisons, " + std::to_string(skipped) +
           " skipped as not exact");
}

void invariance(Outcome& out, LmCache& lm) {
  std::size_t certificates = 0, compared = 0, skipped = 0;
  std::set<std::string> seen;
  for (const auto& [name, img] : fixtures()) {
    if (img.size() > 7) continue;
    std::vector<ReductionCertificate> steps;
    for (auto config : {FilterConfig::catalog, FilterConfig::catalog_edge_paths, FilterConfig::fast})
      for (auto& s : lemma_reduce_fully(img, config).steps) steps.push_back(std::move(s));
    for (auto& s : reduce_to_core(img).steps) steps.push_back(std::move(s));
    for (const auto& s : steps) {
      if (!seen.insert(canonical_key(s.source) + " " + canonical_key(s.result)).second) continue;
      ++certificates;
      out.expect(verify_reduction(s), name + " certificate verifies");
      for (std::size_t m = 1; m <= 7; ++m) {
        const auto &before = lm.get(s.source, m), &after = lm.get(s.result, m);
        if (before.status != LmStatus::exact || after.status != LmStatus::exact) {
          ++skipped;
          continue;
        }
        ++compared;
        out.expect(before.count == after.count, name + " " + to_string(s.kind) + " changes L_" + std::to_string(m));
      }
    }
  }
  out.note("invariance: " + std::to_string(certificates) + " distinct certificates, " + std::to_string(compared) +
           " exact comparisons, " + std::to_string(skipped) + " skipped as not exact");
}

void rotation_vs_search(Outcome& out) {
  const std::vector<std::pair<std::string, std::size_t>> cases{
      {"C5", 5}, {"C6", 6}, {"C7", 7}, {"IMG7_1", 5}, {"IMG7_1", 6}};
  for (const auto& [name, m] : cases) {
    const auto img = named_image(name);
    const auto rot = rotation_classes(img, m);
    const auto bfs = compute_Lm(img, m, {}, LmMethod::search);
    out.expect(rot.has_value(), "rotation classes apply to " + name);
    if (!rot) continue;
    std::set<std::string> a, b;
    for (const auto& p : *rot) a.insert(loop_key(rotate(p, static_cast<std::ptrdiff_t>(least_rotation(p)))));
    for (const auto& p : bfs.classes) b.insert(loop_key(rotate(p, static_cast<std::ptrdiff_t>(least_rotation(p)))));
    out.expect(a == b, "rotation classes of " + name + " for m = " + std::to_string(m) + " (" +
                           std::to_string(a.size()) + " vs " + std::to_string(b.size()) + " by search)");
  }
  out.note("rotation classes match search on C5, C6, C7, IMG7_1");
}

Outcome criterion_9() {
  Outcome out;
  LmCache lm;
  inverse_continuity(out);
  path_pulling(out);
  additivity(out, lm);
  invariance(out, lm);
  rotation_vs_search(out);
  return out;
}

Outcome criterion_10() {
  Outcome out;
  for (std::size_t n = 1; n <= 7; ++n) {
    std::vector<std::string> keys;
    for (const auto& g : connected_graphs(n)) keys.push_back(canonical_key(g));
    std::sort(keys.begin(), keys.end());
    out.expect(keys == connected_graph_keys_exhaustive(n), "augmentation vs exhaustive at n = " + std::to_string(n));
  }
  out.expect(connected_graphs(6).size() == 112 && connected_graphs(7).size() == 853, "112 and 853");
  std::size_t coded = 0;
  for (std::size_t n = 1; n <= 8; ++n)
    for (const auto& g : connected_graphs(n)) {
      ++coded;
      const auto text = encode_graph6(g);
      out.expect(parse_graph6(text) == g && encode_graph6(parse_graph6(text)) == text, "round trip of " + text);
    }
  out.note("n <= 7 agree; " + std::to_string(coded) + " graph6 round trips");
  return out;
}

struct Criterion {
  std::function<Outcome()> run;
  double limit_seconds;  // 0 = no limit
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::vector<int> only;
  bool long_runs = false;
  app.add_option("--criterion", only, "run only these criteria")->check(CLI::Range(1, 10));
  app.add_flag("--long", long_runs, "include the 9-point catalog");
  CLI11_PARSE(app, argc, argv);

  const std::map<int, Criterion> criteria{
      {1, {criterion_1, 1}},   {2, {criterion_2, 1}},  {3, {criterion_3, 60}}, {4, {criterion_4, 5}},
      {5, {criterion_5, 600}}, {6, {criterion_6, 0}},  {7, {criterion_7, 5}},  {8, {criterion_8, 1}},
      {9, {criterion_9, 300}}, {10, {criterion_10, 60}}};
  if (only.empty())
    for (const auto& [id, c] : criteria)
      if (id != 6 || long_runs) only.push_back(id);

  bool all = true;
  for (int id : only) {
    const auto& c = criteria.at(id);
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      std::ostringstream s;
      s << "runtime over " << c.limit_seconds << " s";
      out.expect(false, s.str());
    }
    all = all && out.pass;
    std::printf("criterion %d: %s (%.2f s)\n", id, out.pass ? "PASS" : "FAIL", secs);
    for (const auto& n : out.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
