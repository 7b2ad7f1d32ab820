// dighom: command-line front end to the digital homotopy library.
// Exit status: 0 decided, 2 unknown verdict, 1 usage or input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dighom/catalog.hpp"
#include "dighom/core.hpp"
#include "dighom/fixtures.hpp"
#include "dighom/graph6.hpp"
#include "dighom/lasso.hpp"
#include "dighom/loops.hpp"
#include "dighom/reductions.hpp"
#include "dighom/serialize.hpp"

using namespace dighom;

namespace {

constexpr int exit_unknown = 2;

struct ImageSource {
  std::string fixture, g6, file;
};

struct Result {
  json doc;
  std::string text;
  int status = 0;
};

void add_source(CLI::App* app, ImageSource& s, const std::string& prefix = "") {
  auto* a = app->add_option("--" + prefix + "fixture", s.fixture, "named fixture");
  auto* b = app->add_option("--" + prefix + "g6", s.g6, "graph6 string");
  auto* c = app->add_option("--" + prefix + "file", s.file, "edge-list file (graph6 when it ends in .g6)");
  a->excludes(b)->excludes(c);
  b->excludes(c);
}

DigitalImage load(const ImageSource& s, const std::string& what = "image") {
  if (!s.fixture.empty()) return named_image(s.fixture);
  if (!s.g6.empty()) return parse_graph6(s.g6);
  if (!s.file.empty()) {
    std::ifstream in(s.file);
    if (!in) throw error("cannot open " + s.file);
    if (s.file.size() > 3 && s.file.compare(s.file.size() - 3, 3, ".g6") == 0) {
      std::string line;
      while (std::getline(in, line) && (line.empty() || line[0] == '#')) {
      }
      return parse_graph6(line);
    }
    return parse_edge_list(in);
  }
  throw error("no " + what + " given; use --fixture, --g6 or --file");
}

std::string join(const std::vector<Vertex>& v, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
  return out;
}

std::vector<Vertex> parse_list(const std::string& text) {
  std::vector<Vertex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw error("bad point list '" + text + "'");
    out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

std::string dot(const DigitalImage& img) {
  std::string out = "graph G {\n";
  for (Vertex v = 0; v < img.size(); ++v) out += "  " + std::to_string(v) + " [label=\"" + img.label(v) + "\"];\n";
  for (auto [u, v] : img.edges()) out += "  " + std::to_string(u) + " -- " + std::to_string(v) + ";\n";
  return out + "}\n";
}

Result cmd_info(const DigitalImage& img, bool with_dot) {
  Result r;
  const auto part = components(img);
  std::vector<int> degrees;
  for (Vertex v = 0; v < img.size(); ++v) degrees.push_back(img.degree(v));
  const auto fixture = match_fixture(img);
  r.doc = image_json(img);
  r.doc["canonical_graph6"] = canonical_key(img);
  r.doc["components"] = part.count;
  r.doc["degrees"] = degrees;
  r.doc["matched_fixture"] = fixture ? json(*fixture) : json(nullptr);
  r.text = "points " + std::to_string(img.size()) + ", edges " + std::to_string(img.edge_count()) +
           ", components " + std::to_string(part.count) + "\ngraph6 " + encode_graph6(img) + "\ncanonical " +
           canonical_key(img) + "\n";
  if (fixture) r.text += "fixture " + *fixture + "\n";
  if (with_dot) {
    r.doc["dot"] = dot(img);
    r.text += dot(img);
  }
  return r;
}

Result cmd_reduce(const DigitalImage& img, FilterConfig filter) {
  Result r;
  const auto out = lemma_reduce_fully(img, filter);
  json steps = json::array();
  bool ok = true;
  for (const auto& s : out.steps) {
    steps.push_back(reduction_json(s));
    ok = ok && verify_reduction(s);
    r.text += std::string(to_string(s.kind)) + ": keep {" + join(to_vector(s.kept)) + "}\n";
  }
  r.doc = {{"filter", to_string(filter)}, {"steps", steps}, {"result", image_json(out.image)}, {"verified", ok}};
  r.text += "result " + std::to_string(out.image.size()) + " points, graph6 " + encode_graph6(out.image) +
            (ok ? "" : " (certificate check FAILED)") + "\n";
  return r;
}

Result cmd_core(const DigitalImage& img) {
  Result r;
  const auto core = reduce_to_core(img);
  json steps = json::array();
  for (const auto& s : core.steps) steps.push_back(reduction_json(s));
  const auto eq = core_equivalence(img, core);
  const auto fixture = match_fixture(core.core);
  r.doc = {{"core", image_json(core.core)},
           {"canonical_graph6", canonical_key(core.core)},
           {"matched_fixture", fixture ? json(*fixture) : json(nullptr)},
           {"steps", steps},
           {"equivalence", equivalence_json(img, core.core, eq)}};
  r.text = "core " + std::to_string(core.core.size()) + " points, graph6 " + encode_graph6(core.core) +
           (fixture ? " (" + *fixture + ")" : "") + "\n" + std::to_string(core.steps.size()) +
           " reductions; equivalence certificate " + (verify_equivalence(img, core.core, eq) ? "verified" : "FAILED") +
           "\n";
  return r;
}

Result cmd_reducible(const DigitalImage& img) {
  Result r;
  const auto d = is_reducible(img);
  r.doc = decision_json(d);
  r.doc["verdict"] = d.value ? "reducible" : "irreducible";
  r.text = std::string(d.value ? "reducible" : "irreducible") + "\n";
  if (d.witness) r.text += "witness " + join(*d.witness) + "\n";
  return r;
}

Result cmd_rigid(const DigitalImage& img) {
  Result r;
  const auto d = is_rigid(img);
  r.doc = decision_json(d);
  r.doc["verdict"] = d.value ? "rigid" : "not rigid";
  r.text = std::string(d.value ? "rigid" : "not rigid") + "\n";
  if (d.witness) r.text += "witness " + join(*d.witness) + "\n";
  return r;
}

Result cmd_pointed_rigid(const DigitalImage& img, std::optional<Vertex> base) {
  Result r;
  json rows = json::array();
  for (Vertex b = 0; b < img.size(); ++b) {
    if (base && b != *base) continue;
    const auto d = is_pointed_rigid(img, b);
    json row = decision_json(d);
    row["base"] = b;
    rows.push_back(row);
    r.text += "base " + std::to_string(b) + ": " + (d.value ? "pointed rigid" : "not pointed rigid") + "\n";
  }
  if (base && *base >= img.size()) throw error("basepoint " + std::to_string(*base) + " is out of range");
  r.doc = {{"basepoints", rows}};
  return r;
}

Result cmd_lm(const DigitalImage& img, std::optional<std::size_t> m, const SearchBudget& budget, const std::string& loop,
              const std::string& other) {
  Result r;
  if (!other.empty() && loop.empty()) throw error("--other-loop needs --loop");
  if (!loop.empty()) {
    const auto p = parse_list(loop);
    if (!other.empty()) {
      const auto v = loops_equivalent(img, p, parse_list(other), budget);
      r.doc = verdict_json(v);
      r.text = std::string(to_string(v.kind)) + " (" + v.reason + ")\n";
      r.status = v.unknown() ? exit_unknown : 0;
      return r;
    }
    const auto res = loop_irreducible(img, p, budget);
    r.doc = loop_irreducible_json(res);
    r.text = std::string(to_string(res.status)) + " (" + res.reason + ")\n";
    r.status = res.status == LoopIrreducibility::unknown ? exit_unknown : 0;
    return r;
  }
  json tables = json::array();
  std::vector<std::size_t> ms;
  if (m)
    ms.push_back(*m);
  else
    for (std::size_t k = 1; k <= img.size(); ++k) ms.push_back(k);
  for (auto k : ms) {
    const auto t = compute_Lm(img, k, budget);
    tables.push_back(lm_json(t));
    r.text += "L_" + std::to_string(k) + " = " + std::to_string(t.count) + " (" + to_string(t.status) + ")\n";
    if (t.status == LmStatus::unknown) r.status = exit_unknown;
  }
  r.doc = m ? tables[0] : json{{"tables", tables}};
  return r;
}

Result cmd_equivalent(const DigitalImage& x, const DigitalImage& y, bool pointed) {
  Result r;
  const auto cert = equivalence_certificate(x, y);
  r.doc = {{"equivalent", cert.has_value()}};
  r.doc["certificate"] = cert ? equivalence_json(x, y, *cert) : json(nullptr);
  r.text = cert ? "homotopy equivalent" : "not homotopy equivalent";
  if (cert) r.text += std::string("; certificate ") + (verify_equivalence(x, y, *cert) ? "verified" : "FAILED");
  r.text += "\n";
  if (pointed) {
    const auto check = pointed_equivalence_check(x, y);
    r.doc["pointed"] = {{"homotopy_equivalent", check.homotopy_equivalent},
                        {"pointed_rigid", check.pointed_rigid},
                        {"all_pointed_rigid", check.all_pointed_rigid},
                        {"cardinality_excludes", check.cardinality_excludes},
                        {"pointed_equivalence_possible", check.pointed_equivalence_possible},
                        {"explanation", check.explanation}};
    r.text += check.explanation + "\n";
  }
  return r;
}

Result cmd_lasso(const DigitalImage& img, std::optional<Vertex> x, std::optional<Vertex> x_prev) {
  Result r;
  if (x.has_value() != x_prev.has_value()) throw error("--x and --x-prev go together");
  if (x) {
    const auto l = find_lasso(img, *x, *x_prev);
    r.doc = {{"x", *x}, {"x_prev", *x_prev}};
    r.doc["lasso"] = l ? lasso_json(*l) : json(nullptr);
    r.text = l ? "path " + join(l->path) + "; loop " + join(l->loop) + "\n" : "no lasso\n";
    return r;
  }
  const auto cert = lasso_rigidity(img);
  r.doc = {{"certified_rigid", cert.has_value()}};
  r.doc["certificate"] = cert ? rigidity_certificate_json(*cert) : json(nullptr);
  r.doc["verified"] = cert ? json(verify_rigidity_certificate(img, *cert)) : json(nullptr);
  if (cert) {
    r.text = "rigid (lasso certificate)\n";
    for (const auto& [pair, l] : cert->lassos)
      r.text += "(" + std::to_string(pair.first) + "," + std::to_string(pair.second) + "): path " + join(l.path) +
                "; loop " + join(l.loop) + "\n";
  } else {
    r.text = "no lasso certificate (says nothing about rigidity)\n";
  }
  return r;
}

Result cmd_catalog(std::size_t n, const CatalogOptions& opt, bool timing, const std::string& survivors_out) {
  Result r;
  const auto report = run_catalog(n, opt);
  r.doc = catalog_json(report, timing);
  if (!survivors_out.empty()) {
    std::ofstream out(survivors_out);
    if (!out) throw error("cannot write " + survivors_out);
    for (const auto& s : report.lemma_survivors) out << s << '\n';
  }
  std::ostringstream t;
  t << "n " << report.n << ", filter " << report.filter << "\n"
    << "connected " << report.total_connected << "\n"
    << "survivors " << report.lemma_survivors.size() << "\n"
    << "irreducible classes " << report.irreducible_classes.size() << "\n";
  if (!report.irreducible_classes.empty()) {
    t << "graph6        edges  rigid  lasso  fixture\n";
    for (const auto& c : report.irreducible_classes) {
      char line[128];
      std::snprintf(line, sizeof line, "%-12s  %5zu  %-5s  %-5s  %s\n", c.graph6.c_str(), c.edges,
                    c.rigid ? "yes" : "no", c.lasso_certificate ? "yes" : "no",
                    c.matched_fixture ? c.matched_fixture->c_str() : "-");
      t << line;
    }
  }
  if (timing) t << "seconds " << report.seconds_enumerate << " + " << report.seconds_exact << "\n";
  r.text = t.str();
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Digital homotopy of finite images"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  ImageSource src, other;
  bool as_json = false;
  std::string out_path;
  std::size_t max_ext = 0, max_states = SearchBudget{}.max_states;
  std::string filter_name = "lemmas";
  unsigned jobs = default_jobs();
  auto common = [&](CLI::App* sub, bool image = true) {
    if (image) add_source(sub, src);
    sub->add_flag("--json", as_json, "JSON output");
    sub->add_option("--out", out_path, "write output to PATH");
  };
  auto budget_flags = [&](CLI::App* sub) {
    sub->add_option("--max-ext", max_ext, "longest trivial extension searched (0 = default bound)");
    sub->add_option("--max-states", max_states, "state budget per search");
  };

  auto* info = app.add_subcommand("info", "basic facts about an image");
  bool with_dot = false;
  common(info);
  info->add_flag("--dot", with_dot, "include DOT text");

  auto* reduce = app.add_subcommand("reduce", "apply lemma reductions until none fires");
  common(reduce);
  reduce->add_option("--filter", filter_name, "lemmas | lemmas-edges | fast");

  auto* core = app.add_subcommand("core", "core and equivalence certificate");
  common(core);
  auto* reducible = app.add_subcommand("reducible", "exact reducibility");
  common(reducible);
  auto* rigid = app.add_subcommand("rigid", "exact rigidity");
  common(rigid);

  auto* pointed = app.add_subcommand("pointed-rigid", "exact pointed rigidity");
  common(pointed);
  std::optional<Vertex> base;
  pointed->add_option("--base", base, "basepoint (default: every point)");

  auto* lm = app.add_subcommand("lm", "L_m loop classes, loop irreducibility and loop equivalence");
  common(lm);
  budget_flags(lm);
  std::optional<std::size_t> m;
  std::string loop, other_loop;
  lm->add_option("--m", m, "loop length (default: 1..n)")->check(CLI::PositiveNumber);
  lm->add_option("--loop", loop, "comma-separated simple loop: report its irreducibility");
  lm->add_option("--other-loop", other_loop, "second loop: report equivalence with --loop");

  auto* equivalent = app.add_subcommand("equivalent", "homotopy equivalence of two images");
  common(equivalent);
  add_source(equivalent, other, "other-");
  bool pointed_check = false;
  equivalent->add_flag("--pointed", pointed_check, "also run the pointed-rigidity cardinality check");

  auto* lasso = app.add_subcommand("lasso", "lasso rigidity certificate");
  common(lasso);
  std::optional<Vertex> lx, lx_prev;
  lasso->add_option("--x", lx, "single pair: r(1)");
  lasso->add_option("--x-prev", lx_prev, "single pair: r(0)");

  auto* catalog = app.add_subcommand("catalog", "homotopy-type catalog of connected images");
  common(catalog, false);
  std::size_t n = 0;
  std::string cat_file, shard_dir, survivors_out;
  bool no_lasso = false, timing = false;
  auto* n_opt = catalog->add_option("--n", n, "number of points (1..10)");
  auto* f_opt = catalog->add_option("--file", cat_file, "graph6 file replacing the generator");
  n_opt->excludes(f_opt);
  catalog->add_option("--filter", filter_name, "lemmas | lemmas-edges | fast");
  catalog->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  catalog->add_option("--shard-dir", shard_dir, "checkpoint directory for survivor shards");
  catalog->add_option("--survivors", survivors_out, "dump survivors as graph6 to PATH");
  catalog->add_flag("--no-lasso", no_lasso, "skip lasso certificates");
  catalog->add_flag("--timing", timing, "report run times (output no longer byte-stable)");

  auto* encode = app.add_subcommand("encode", "graph6 of an image");
  common(encode);
  bool canonical = false;
  encode->add_flag("--canonical", canonical, "canonical relabeling first");

  auto* decode = app.add_subcommand("decode", "edge list of a graph6 string");
  common(decode);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "dighom: " << e.what() << "\n";
    return 1;
  }

  try {
    SearchBudget budget;
    budget.max_extension_length = max_ext;
    budget.max_states = max_states;
    const auto filter = parse_filter_config(filter_name);
    if (!filter) throw error("unknown filter '" + filter_name + "'; use lemmas, lemmas-edges or fast");

    Result r;
    if (*info) {
      r = cmd_info(load(src), with_dot);
    } else if (*reduce) {
      r = cmd_reduce(load(src), *filter);
    } else if (*core) {
      r = cmd_core(load(src));
    } else if (*reducible) {
      r = cmd_reducible(load(src));
    } else if (*rigid) {
      r = cmd_rigid(load(src));
    } else if (*pointed) {
      r = cmd_pointed_rigid(load(src), base);
    } else if (*lm) {
      r = cmd_lm(load(src), m, budget, loop, other_loop);
    } else if (*equivalent) {
      r = cmd_equivalent(load(src), load(other, "second image; use --other-fixture, --other-g6 or --other-file"),
                         pointed_check);
    } else if (*lasso) {
      r = cmd_lasso(load(src), lx, lx_prev);
    } else if (*catalog) {
      if (n == 0 && cat_file.empty()) throw error("catalog needs --n or --file");
      CatalogOptions opt;
      opt.filter = *filter;
      opt.jobs = jobs;
      if (!cat_file.empty()) opt.input_file = cat_file;
      if (!shard_dir.empty()) opt.shard_dir = shard_dir;
      opt.lasso = !no_lasso;
      r = cmd_catalog(n, opt, timing, survivors_out);
    } else if (*encode) {
      const auto img = load(src);
      const auto text = canonical ? canonical_key(img) : encode_graph6(img);
      r.doc = {{"graph6", text}, {"canonical", canonical}};
      r.text = text + "\n";
    } else if (*decode) {
      if (src.g6.empty()) throw error("decode needs --g6");
      const auto img = load(src);
      r.doc = image_json(img);
      r.text = format_edge_list(img);
    }

    const std::string body = as_json ? r.doc.dump(2) + "\n" : r.text;
    if (out_path.empty()) {
      std::cout << body;
    } else {
      std::ofstream out(out_path);
      if (!out) throw error("cannot write " + out_path);
      out << body;
    }
    return r.status;
  } catch (const std::exception& e) {
    std::cerr << "dighom: " << e.what() << "\n";
    return 1;
  }
}
