#pragma once

// Isomorph-free generation of connected images and the homotopy-type catalog
// pipeline: enumerate, lemma filter, exact reducibility, dedupe, flag.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "dighom/canonical.hpp"
#include "dighom/fixtures.hpp"
#include "dighom/graph6.hpp"
#include "dighom/lasso.hpp"
#include "dighom/maps.hpp"
#include "dighom/reductions.hpp"

namespace dighom {

inline unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

namespace detail {

// Runs fn(i) for i in [0, count) on `jobs` threads. The first exception is
// rethrown after all workers stop.
template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// Canonical deletion point: among non-cut points, largest degree, then
// largest canonical label.
inline Vertex deletion_point(const DigitalImage& g, const CanonicalLabeling& lab, VertexSet candidates) {
  Vertex best = lowest(candidates);
  for_each_vertex(candidates, [&](Vertex v) {
    if (lab.labeling[v] > lab.labeling[best]) best = v;
  });
  (void)g;
  return best;
}

}  // namespace detail

/// Canonical forms of the connected children of a connected parent on one
/// more point, each accepted only when the new point is in the orbit of the
/// child's canonical deletion point. Sorted; no two isomorphic.
inline std::vector<DigitalImage> canonical_children(const DigitalImage& parent) {
  const std::size_t n = parent.size();
  const auto v = static_cast<Vertex>(n);
  std::vector<DigitalImage> out;
  std::set<std::vector<VertexSet>> seen;
  const VertexSet full = all_vertices(n);
  for (VertexSet s = 1; s <= full && s != 0; ++s) {
    std::vector<VertexSet> rows = parent.rows();
    rows.push_back(s);
    for_each_vertex(s, [&](Vertex u) { rows[u] |= bit(v); });
    const auto child = DigitalImage::from_rows(std::move(rows));
    // Cheap invariant test before labeling.
    const VertexSet noncut = child.vertices() & ~cut_vertices(child);
    int top = 0;
    for_each_vertex(noncut, [&](Vertex u) { top = std::max(top, child.degree(u)); });
    if (child.degree(v) != top) continue;
    VertexSet candidates = 0;
    for_each_vertex(noncut, [&](Vertex u) {
      if (child.degree(u) == top) candidates |= bit(u);
    });
    const auto lab = canonical_labeling(child);
    const auto orbit = lab.orbits();
    if (orbit[detail::deletion_point(child, lab, candidates)] != orbit[v]) continue;
    if (seen.insert(lab.form).second) out.push_back(DigitalImage::from_rows(lab.form));
  }
  return out;
}

/// One canonical representative per isomorphism class of connected images on
/// n points, sorted by graph6 of the canonical form.
inline std::vector<DigitalImage> connected_graphs(std::size_t n, unsigned jobs = default_jobs()) {
  if (n < 1 || n > 10) throw error("built-in generation supports 1 <= n <= 10");
  std::vector<DigitalImage> level{build_image(1, {})};
  for (std::size_t k = 2; k <= n; ++k) {
    std::vector<std::vector<DigitalImage>> per_parent(level.size());
    detail::parallel_for(level.size(), jobs, [&](std::size_t i) { per_parent[i] = canonical_children(level[i]); });
    std::vector<DigitalImage> next;
    for (auto& kids : per_parent)
      for (auto& c : kids) next.push_back(std::move(c));
    std::vector<std::pair<std::string, std::size_t>> order;
    for (std::size_t i = 0; i < next.size(); ++i) order.emplace_back(encode_graph6(next[i]), i);
    std::sort(order.begin(), order.end());
    level.clear();
    for (auto& [key, i] : order) level.push_back(std::move(next[i]));
  }
  return level;
}

/// Independent oracle: every edge subset on n points, kept when connected,
/// deduplicated by canonical key. Sorted keys.
inline std::vector<std::string> connected_graph_keys_exhaustive(std::size_t n) {
  if (n < 1 || n > 7) throw error("exhaustive generation supports 1 <= n <= 7");
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::set<std::string> keys;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    if (std::popcount(mask) + 1 < static_cast<int>(n)) continue;
    std::vector<VertexSet> rows(n, 0);
    for (std::size_t e = 0; e < pairs.size(); ++e)
      if (mask >> e & 1U) {
        rows[pairs[e].first] |= bit(pairs[e].second);
        rows[pairs[e].second] |= bit(pairs[e].first);
      }
    auto img = DigitalImage::from_rows(std::move(rows));
    if (is_connected(img)) keys.insert(canonical_key(img));
  }
  return {keys.begin(), keys.end()};
}

/// Name of the fixture isomorphic to img, preferring named images over the
/// numbered appendix ones.
inline std::optional<std::string> match_fixture(const DigitalImage& img) {
  static const auto table = [] {
    std::map<std::string, std::string> t;
    for (const auto& [name, f] : fixtures()) {
      auto key = canonical_key(f);
      auto it = t.find(key);
      const bool appendix = name.rfind("APPENDIX_", 0) == 0;
      if (it == t.end() || (it->second.rfind("APPENDIX_", 0) == 0 && !appendix)) t[key] = name;
    }
    return t;
  }();
  auto it = table.find(canonical_key(img));
  if (it == table.end()) return std::nullopt;
  return it->second;
}

struct CatalogOptions {
  FilterConfig filter = FilterConfig::catalog;
  unsigned jobs = default_jobs();
  /// Graph6 file replacing the built-in generator.
  std::optional<std::string> input_file;
  /// Directory of per-shard survivor files; existing complete shards are reused.
  std::optional<std::string> shard_dir;
  std::size_t shards = 64;
  /// Search lassos for each irreducible class.
  bool lasso = true;
};

struct CatalogClass {
  std::string graph6;
  std::size_t edges = 0;
  bool rigid = false;
  bool lasso_certificate = false;
  std::optional<std::string> matched_fixture;
};

struct CatalogReport {
  std::size_t n = 0;
  std::string filter;
  std::string source;
  std::size_t total_connected = 0;
  /// Canonical graph6 strings, sorted.
  std::vector<std::string> lemma_survivors;
  std::vector<CatalogClass> irreducible_classes;
  double seconds_enumerate = 0, seconds_exact = 0;
};

namespace detail {

struct ShardResult {
  std::size_t total = 0;
  std::vector<std::string> survivors;
};

inline bool survives(const DigitalImage& img, FilterConfig filter) { return !lemma_reduction_step(img, filter); }

inline std::string shard_path(const std::string& dir, std::size_t shard) {
  char name[32];
  std::snprintf(name, sizeof name, "shard-%04zu.g6", shard);
  return (std::filesystem::path(dir) / name).string();
}

// A shard file lists survivors and ends with "# total <count>".
inline std::optional<ShardResult> load_shard(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  ShardResult r;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# total ", 0) == 0) {
      r.total = std::stoull(line.substr(8));
      return r;
    }
    if (!line.empty()) r.survivors.push_back(line);
  }
  return std::nullopt;  // incomplete
}

inline void save_shard(const std::string& path, const ShardResult& r) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw error("cannot write shard file " + tmp);
    for (const auto& s : r.survivors) out << s << '\n';
    out << "# total " << r.total << '\n';
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace detail

/// enumerate -> lemma filter -> exact is_reducible -> dedupe -> flag.
inline CatalogReport run_catalog(std::size_t n, const CatalogOptions& opt = {}) {
  using clock = std::chrono::steady_clock;
  CatalogReport report;
  report.n = n;
  report.filter = to_string(opt.filter);
  const auto t0 = clock::now();
  std::vector<std::string> survivors;

  if (opt.input_file) {
    report.source = "file";
    std::ifstream in(*opt.input_file);
    if (!in) throw error("cannot open " + *opt.input_file);
    std::vector<DigitalImage> graphs;
    std::set<std::string> keys;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      DigitalImage g;
      try {
        g = parse_graph6(line);
      } catch (const graph6_error& e) {
        throw error(*opt.input_file + ":" + std::to_string(lineno) + ": " + e.what());
      }
      if (report.n == 0) report.n = g.size();
      if (g.size() != report.n)
        throw error(*opt.input_file + ":" + std::to_string(lineno) + ": expected " + std::to_string(report.n) +
                    " points");
      if (!is_connected(g)) continue;
      if (keys.insert(canonical_key(g)).second) graphs.push_back(g);
    }
    report.total_connected = graphs.size();
    std::vector<char> keep(graphs.size(), 0);
    detail::parallel_for(graphs.size(), opt.jobs,
                         [&](std::size_t i) { keep[i] = detail::survives(graphs[i], opt.filter); });
    for (std::size_t i = 0; i < graphs.size(); ++i)
      if (keep[i]) survivors.push_back(canonical_key(graphs[i]));
  } else if (n == 1) {
    report.source = "generator";
    report.total_connected = 1;
    survivors.push_back(encode_graph6(build_image(1, {})));
  } else {
    report.source = "generator";
    if (n < 1 || n > 10) throw error("built-in generation supports 1 <= n <= 10");
    const auto parents = connected_graphs(n - 1, opt.jobs);
    const std::size_t shard_count = std::min(opt.shards, parents.size());
    std::vector<detail::ShardResult> shards(shard_count);
    if (opt.shard_dir) std::filesystem::create_directories(*opt.shard_dir);
    for (std::size_t s = 0; s < shard_count; ++s) {
      if (opt.shard_dir)
        if (auto loaded = detail::load_shard(detail::shard_path(*opt.shard_dir, s))) {
          shards[s] = std::move(*loaded);
          continue;
        }
      const std::size_t lo = parents.size() * s / shard_count, hi = parents.size() * (s + 1) / shard_count;
      std::vector<detail::ShardResult> part(hi - lo);
      detail::parallel_for(hi - lo, opt.jobs, [&](std::size_t i) {
        for (const auto& child : canonical_children(parents[lo + i])) {
          ++part[i].total;
          if (detail::survives(child, opt.filter)) part[i].survivors.push_back(encode_graph6(child));
        }
      });
      for (auto& p : part) {
        shards[s].total += p.total;
        for (auto& x : p.survivors) shards[s].survivors.push_back(std::move(x));
      }
      std::sort(shards[s].survivors.begin(), shards[s].survivors.end());
      if (opt.shard_dir) detail::save_shard(detail::shard_path(*opt.shard_dir, s), shards[s]);
    }
    for (auto& s : shards) {
      report.total_connected += s.total;
      for (auto& x : s.survivors) survivors.push_back(std::move(x));
    }
  }
  std::sort(survivors.begin(), survivors.end());
  survivors.erase(std::unique(survivors.begin(), survivors.end()), survivors.end());
  report.lemma_survivors = survivors;
  const auto t1 = clock::now();

  std::vector<std::optional<CatalogClass>> found(survivors.size());
  detail::parallel_for(survivors.size(), opt.jobs, [&](std::size_t i) {
    const auto img = parse_graph6(survivors[i]);
    if (is_reducible(img).value) return;
    CatalogClass c;
    c.graph6 = survivors[i];
    c.edges = img.edge_count();
    c.rigid = is_rigid(img).value;
    c.lasso_certificate = opt.lasso && lasso_rigidity(img).has_value();
    c.matched_fixture = match_fixture(img);
    found[i] = std::move(c);
  });
  for (auto& c : found)
    if (c) report.irreducible_classes.push_back(std::move(*c));
  report.seconds_enumerate = std::chrono::duration<double>(t1 - t0).count();
  report.seconds_exact = std::chrono::duration<double>(clock::now() - t1).count();
  return report;
}

}  // namespace dighom
