#pragma once

// Lemma-based reduction rules. Each returns a certificate whose chain and
// hypotheses replay with verify_reduction.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dighom/certificate.hpp"
#include "dighom/image.hpp"
#include "dighom/maps.hpp"

namespace dighom {

namespace detail {

// Cliques of exactly `size` points, lexicographic order; fn returns true to stop.
template <class Fn>
bool cliques_of_size(const DigitalImage& img, int size, Fn&& fn) {
  std::vector<Vertex> chosen;
  auto rec = [&](auto&& self, VertexSet candidates) -> bool {
    if (static_cast<int>(chosen.size()) == size) return fn(chosen);
    while (candidates) {
      const Vertex v = lowest(candidates);
      candidates &= candidates - 1;
      if (count(candidates) + 1 < size - static_cast<int>(chosen.size())) return false;
      chosen.push_back(v);
      if (self(self, candidates & img.neighbors(v))) return true;
      chosen.pop_back();
    }
    return false;
  };
  return rec(rec, img.vertices());
}

}  // namespace detail

/// A clique S with every point in S or adjacent to S collapses the image to
/// a point: first every x moves to the first member of S in N[x], then all
/// of S moves to S's first member.
inline std::optional<ReductionCertificate> dominating_clique_reduction(const DigitalImage& img) {
  if (img.empty()) throw error("dominating clique search needs a nonempty image");
  if (img.size() == 1) return std::nullopt;
  std::optional<ReductionCertificate> out;
  for (int size = 1; size <= static_cast<int>(img.size()) && !out; ++size) {
    detail::cliques_of_size(img, size, [&](const std::vector<Vertex>& clique) {
      VertexSet s = 0;
      for (auto v : clique) s |= bit(v);
      for (Vertex x = 0; x < img.size(); ++x)
        if (!(img.closed_neighborhood(x) & s)) return false;
      VertexMap toward(img.size());
      for (Vertex x = 0; x < img.size(); ++x) toward[x] = lowest(img.closed_neighborhood(x) & s);
      HomotopyChain chain{identity_map(img.size())};
      detail::push_distinct(chain, toward);
      detail::push_distinct(chain, constant_map(img.size(), clique.front()));
      out = detail::finish_certificate(ReductionKind::dominating_clique, img, std::move(chain));
      out->clique = clique;
      return true;
    });
  }
  return out;
}

/// First pair (x, y) in lexicographic order with N[x] contained in N[y];
/// x is sent to y.
inline std::optional<ReductionCertificate> neighborhood_absorption(const DigitalImage& img) {
  for (Vertex x = 0; x < img.size(); ++x) {
    for (Vertex y = 0; y < img.size(); ++y) {
      if (x == y || (img.closed_neighborhood(x) & ~img.closed_neighborhood(y))) continue;
      VertexMap r = identity_map(img.size());
      r[x] = y;
      auto cert = detail::finish_certificate(ReductionKind::neighborhood_absorption, img,
                                             {identity_map(img.size()), std::move(r)});
      cert.absorbed = x;
      cert.absorber = y;
      return cert;
    }
  }
  return std::nullopt;
}

/// Searches equal-length injective paths p, q (k edges, k <= max_len, shortest
/// first, then lexicographic in (p0, q0, p1, q1, ...)) satisfying
/// path_reduction_conditions whose collapse p(i) -> q(i) is continuous and
/// drops at least one point.
inline std::optional<ReductionCertificate> path_reduction_step(const DigitalImage& img, std::size_t max_len) {
  if (max_len < 1) throw error("path reduction needs max_len >= 1");
  const std::size_t n = img.size();
  std::optional<ReductionCertificate> out;
  std::vector<Vertex> p, q;
  VertexSet used_p = 0, used_q = 0;

  // Containment test at position i, which needs p[i-1] and p[i+1] when they exist.
  auto contained = [&](std::size_t i, std::size_t last) {
    VertexSet allowed = img.closed_neighborhood(q[i]);
    if (i > 0) allowed |= bit(p[i - 1]);
    if (i < last) allowed |= bit(p[i + 1]);
    return (img.closed_neighborhood(p[i]) & ~allowed) == 0;
  };

  auto try_finish = [&]() {
    if (!(used_p & ~used_q)) return false;
    VertexMap r = identity_map(n);
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = q[i];
    if (!is_continuous(img, r) || image_of(r) == img.vertices()) return false;
    out = detail::finish_certificate(ReductionKind::path_reduction, img, {identity_map(n), std::move(r)});
    out->path_p = p;
    out->path_q = q;
    return true;
  };

  auto rec = [&](auto&& self, std::size_t last) -> bool {
    const std::size_t i = p.size();
    if (i == last + 1) return contained(last, last) && try_finish();
    VertexSet p_choices = i == 0 ? img.vertices() : img.neighbors(p[i - 1]);
    p_choices &= ~used_p;
    while (p_choices) {
      const Vertex pv = lowest(p_choices);
      p_choices &= p_choices - 1;
      VertexSet q_choices = img.closed_neighborhood(pv) & ~used_q;
      if (i > 0) q_choices &= img.neighbors(q[i - 1]);
      while (q_choices) {
        const Vertex qv = lowest(q_choices);
        q_choices &= q_choices - 1;
        p.push_back(pv);
        q.push_back(qv);
        used_p |= bit(pv);
        used_q |= bit(qv);
        const bool ok = i == 0 || contained(i - 1, last);
        if (ok && self(self, last)) return true;
        p.pop_back();
        q.pop_back();
        used_p &= ~bit(pv);
        used_q &= ~bit(qv);
      }
    }
    return false;
  };

  for (std::size_t k = 0; k <= max_len && k < n; ++k)
    if (rec(rec, k)) return out;
  return std::nullopt;
}

inline std::optional<ReductionCertificate> path_reduction_step(const DigitalImage& img) {
  return path_reduction_step(img, std::max<std::size_t>(img.size(), 1));
}

/// Maximum-cardinality search order (ties to the smallest index).
inline std::vector<Vertex> maximum_cardinality_search(const DigitalImage& img) {
  const std::size_t n = img.size();
  std::vector<int> weight(n, 0);
  std::vector<Vertex> order;
  VertexSet left = img.vertices();
  while (left) {
    Vertex best = lowest(left);
    for_each_vertex(left, [&](Vertex v) {
      if (weight[v] > weight[best]) best = v;
    });
    order.push_back(best);
    left &= ~bit(best);
    for_each_vertex(img.neighbors(best) & left, [&](Vertex u) { ++weight[u]; });
  }
  return order;
}

/// True iff the image has an induced 4-cycle.
inline bool has_induced_four_cycle(const DigitalImage& img) {
  for (Vertex a = 0; a < img.size(); ++a) {
    for (Vertex c = a + 1; c < img.size(); ++c) {
      if (img.adjacent(a, c)) continue;
      const VertexSet common = img.neighbors(a) & img.neighbors(c);
      bool found = false;
      for_each_vertex(common, [&](Vertex b) { found = found || (common & ~img.closed_neighborhood(b)) != 0; });
      if (found) return true;
    }
  }
  return false;
}

/// Chordal images without induced 4-cycles collapse to a point by removing
/// simplicial points in perfect-elimination order, each onto a later neighbor.
inline std::optional<ReductionCertificate> chordal_collapse(const DigitalImage& img) {
  if (img.size() <= 1 || !is_connected(img) || has_induced_four_cycle(img)) return std::nullopt;
  auto order = maximum_cardinality_search(img);
  std::reverse(order.begin(), order.end());
  if (!is_perfect_elimination_order(img, order)) return std::nullopt;
  const std::size_t n = img.size();
  VertexMap current = identity_map(n);
  HomotopyChain chain{current};
  VertexSet later = img.vertices();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Vertex v = order[i];
    later &= ~bit(v);
    const VertexSet targets = img.neighbors(v) & later;
    if (!targets) return std::nullopt;
    const Vertex u = lowest(targets);
    for (auto& value : current)
      if (value == v) value = u;
    chain.push_back(current);
  }
  auto cert = detail::finish_certificate(ReductionKind::chordal_collapse, img, std::move(chain));
  cert.elimination_order = std::move(order);
  return cert;
}

enum class FilterConfig {
  /// Dominating clique and neighborhood absorption only.
  catalog,
  /// Adds path reduction along single edges (k = 1).
  catalog_edge_paths,
  /// Adds chordal collapse and path reduction of any length.
  fast,
};

inline const char* to_string(FilterConfig c) {
  switch (c) {
    case FilterConfig::catalog:
      return "lemmas";
    case FilterConfig::catalog_edge_paths:
      return "lemmas-edges";
    case FilterConfig::fast:
      return "fast";
  }
  return "?";
}

inline std::optional<FilterConfig> parse_filter_config(const std::string& name) {
  for (auto c : {FilterConfig::catalog, FilterConfig::catalog_edge_paths, FilterConfig::fast})
    if (name == to_string(c)) return c;
  return std::nullopt;
}

/// First applicable rule under `config`, in the order clique, absorption,
/// chordal, path.
inline std::optional<ReductionCertificate> lemma_reduction_step(const DigitalImage& img, FilterConfig config) {
  if (img.size() <= 1) return std::nullopt;
  if (auto c = dominating_clique_reduction(img)) return c;
  if (auto c = neighborhood_absorption(img)) return c;
  if (config == FilterConfig::catalog_edge_paths) return path_reduction_step(img, 1);
  if (config == FilterConfig::fast) {
    if (auto c = chordal_collapse(img)) return c;
    if (auto c = path_reduction_step(img)) return c;
  }
  return std::nullopt;
}

struct ReductionResult {
  DigitalImage image;
  std::vector<ReductionCertificate> steps;
};

/// Applies lemma_reduction_step until nothing fires.
inline ReductionResult lemma_reduce_fully(const DigitalImage& img, FilterConfig config = FilterConfig::catalog) {
  ReductionResult out{img, {}};
  while (auto step = lemma_reduction_step(out.image, config)) {
    out.image = step->result;
    out.steps.push_back(std::move(*step));
  }
  return out;
}

}  // namespace dighom
