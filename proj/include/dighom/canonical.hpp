#pragma once

// Canonical labeling by partition refinement plus individualization, with
// pruning by the automorphisms discovered along the way. Exact for every
// image the library accepts (n <= 64); fast for the catalog sizes (n <= 10).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dighom/graph6.hpp"
#include "dighom/image.hpp"

namespace dighom {

struct CanonicalLabeling {
  /// labeling[v] is the canonical index of v.
  std::vector<Vertex> labeling;
  /// Adjacency rows of the canonically relabeled image.
  std::vector<VertexSet> form;
  /// Automorphisms found during the search; they generate the full group.
  std::vector<std::vector<Vertex>> generators;

  /// Orbit representative (smallest member) of every vertex.
  std::vector<Vertex> orbits() const {
    std::vector<Vertex> root(labeling.size());
    std::iota(root.begin(), root.end(), Vertex{0});
    auto find = [&](Vertex v) {
      while (root[v] != v) v = root[v] = root[root[v]];
      return v;
    };
    for (const auto& g : generators) {
      for (Vertex v = 0; v < g.size(); ++v) {
        auto a = find(v), b = find(g[v]);
        if (a != b) root[std::max(a, b)] = std::min(a, b);
      }
    }
    for (Vertex v = 0; v < root.size(); ++v) root[v] = find(v);
    return root;
  }
};

namespace detail {

struct Partition {
  std::array<VertexSet, max_vertices> cells{};
  std::size_t size = 0;

  bool discrete(std::size_t n) const { return size == n; }
};

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const DigitalImage& g) : g_(g), n_(g.size()) {}

  CanonicalLabeling run(const std::vector<int>* colors) {
    Partition p;
    if (n_ > 0) {
      if (colors) {
        std::vector<int> distinct(colors->begin(), colors->end());
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (int c : distinct) {
          VertexSet cell = 0;
          for (Vertex v = 0; v < n_; ++v)
            if ((*colors)[v] == c) cell |= bit(v);
          p.cells[p.size++] = cell;
        }
      } else {
        p.cells[p.size++] = g_.vertices();
      }
    }
    prefix_.clear();
    visit(p);
    CanonicalLabeling out;
    out.labeling = best_lab_;
    out.form = best_form_;
    out.generators = std::move(automorphisms_);
    return out;
  }

 private:
  void refine(Partition& p) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t s = 0; s < p.size && !p.discrete(n_); ++s) {
        const VertexSet splitter = p.cells[s];
        Partition next;
        for (std::size_t c = 0; c < p.size; ++c) {
          const VertexSet cell = p.cells[c];
          if ((cell & (cell - 1)) == 0) {
            next.cells[next.size++] = cell;
            continue;
          }
          std::array<VertexSet, max_vertices + 1> by_count{};
          int lo = 65, hi = -1;
          for_each_vertex(cell, [&](Vertex v) {
            const int k = count(g_.neighbors(v) & splitter);
            by_count[static_cast<std::size_t>(k)] |= bit(v);
            lo = std::min(lo, k);
            hi = std::max(hi, k);
          });
          for (int k = lo; k <= hi; ++k)
            if (by_count[static_cast<std::size_t>(k)]) next.cells[next.size++] = by_count[static_cast<std::size_t>(k)];
        }
        if (next.size != p.size) {
          p = next;
          changed = true;
        }
      }
    }
  }

  // Orbits of the subgroup of found automorphisms fixing the current prefix.
  bool same_orbit_as_tried(Vertex v, VertexSet tried) const {
    std::array<Vertex, max_vertices> root{};
    for (Vertex i = 0; i < n_; ++i) root[i] = i;
    auto find = [&](Vertex x) {
      while (root[x] != x) x = root[x] = root[root[x]];
      return x;
    };
    for (const auto& a : automorphisms_) {
      bool fixes = true;
      for (Vertex u : prefix_) fixes = fixes && a[u] == u;
      if (!fixes) continue;
      for (Vertex i = 0; i < n_; ++i) {
        auto x = find(i), y = find(a[i]);
        if (x != y) root[std::max(x, y)] = std::min(x, y);
      }
    }
    const Vertex rv = find(v);
    bool hit = false;
    for_each_vertex(tried, [&](Vertex t) { hit = hit || find(t) == rv; });
    return hit;
  }

  void leaf(const Partition& p) {
    std::vector<Vertex> lab(n_);
    for (std::size_t c = 0; c < p.size; ++c) lab[lowest(p.cells[c])] = static_cast<Vertex>(c);
    std::vector<VertexSet> form(n_, 0);
    for (Vertex v = 0; v < n_; ++v)
      for_each_vertex(g_.neighbors(v), [&](Vertex u) { form[lab[v]] |= bit(lab[u]); });

    if (first_lab_.empty()) {
      first_lab_ = lab;
      first_form_ = form;
      best_lab_ = lab;
      best_form_ = form;
      return;
    }
    if (form == first_form_) {
      record_automorphism(first_lab_, lab);
      return;
    }
    if (form == best_form_) {
      record_automorphism(best_lab_, lab);
      return;
    }
    if (form > best_form_) {
      best_form_ = std::move(form);
      best_lab_ = std::move(lab);
    }
  }

  void record_automorphism(const std::vector<Vertex>& reference, const std::vector<Vertex>& lab) {
    std::vector<Vertex> inv(n_);
    for (Vertex v = 0; v < n_; ++v) inv[reference[v]] = v;
    std::vector<Vertex> gamma(n_);
    bool identity = true;
    for (Vertex v = 0; v < n_; ++v) {
      gamma[v] = inv[lab[v]];
      identity = identity && gamma[v] == v;
    }
    if (!identity) automorphisms_.push_back(std::move(gamma));
  }

  void visit(Partition p) {
    refine(p);
    if (p.discrete(n_)) {
      leaf(p);
      return;
    }
    std::size_t target = 0;
    while ((p.cells[target] & (p.cells[target] - 1)) == 0) ++target;
    const VertexSet cell = p.cells[target];
    VertexSet tried = 0;
    for_each_vertex(cell, [&](Vertex v) {
      if (tried && same_orbit_as_tried(v, tried)) return;
      tried |= bit(v);
      Partition child;
      for (std::size_t c = 0; c < p.size; ++c) {
        if (c == target) {
          child.cells[child.size++] = bit(v);
          child.cells[child.size++] = cell & ~bit(v);
        } else {
          child.cells[child.size++] = p.cells[c];
        }
      }
      prefix_.push_back(v);
      visit(child);
      prefix_.pop_back();
    });
  }

  const DigitalImage& g_;
  std::size_t n_;
  std::vector<Vertex> prefix_;
  std::vector<Vertex> first_lab_, best_lab_;
  std::vector<VertexSet> first_form_, best_form_;
  std::vector<std::vector<Vertex>> automorphisms_;
};

}  // namespace detail

inline CanonicalLabeling canonical_labeling(const DigitalImage& img) {
  return detail::CanonicalSearch(img).run(nullptr);
}

/// Canonical labeling respecting a vertex coloring: only color-preserving
/// relabelings are considered, and color classes keep their sorted order.
inline CanonicalLabeling canonical_labeling(const DigitalImage& img, const std::vector<int>& colors) {
  if (colors.size() != img.size()) throw error("coloring size does not match point count");
  return detail::CanonicalSearch(img).run(&colors);
}

inline DigitalImage canonical_image(const DigitalImage& img) {
  return DigitalImage::from_rows(canonical_labeling(img).form);
}

/// graph6 string of the canonical relabeling; equal iff isomorphic.
inline std::string canonical_key(const DigitalImage& img) { return encode_graph6(canonical_image(img)); }

/// An isomorphism a -> b (phi[v] is the image of v), if one exists.
inline std::optional<std::vector<Vertex>> isomorphism(const DigitalImage& a, const DigitalImage& b) {
  if (a.size() != b.size() || a.edge_count() != b.edge_count()) return std::nullopt;
  const auto ca = canonical_labeling(a);
  const auto cb = canonical_labeling(b);
  if (ca.form != cb.form) return std::nullopt;
  std::vector<Vertex> inv_b(b.size());
  for (Vertex v = 0; v < b.size(); ++v) inv_b[cb.labeling[v]] = v;
  std::vector<Vertex> phi(a.size());
  for (Vertex v = 0; v < a.size(); ++v) phi[v] = inv_b[ca.labeling[v]];
  return phi;
}

inline bool are_isomorphic(const DigitalImage& a, const DigitalImage& b) { return isomorphism(a, b).has_value(); }

/// True iff phi is a bijection carrying the adjacency of a exactly onto b.
inline bool is_isomorphism(const DigitalImage& a, const DigitalImage& b, const std::vector<Vertex>& phi) {
  if (a.size() != b.size() || phi.size() != a.size()) return false;
  VertexSet hit = 0;
  for (auto v : phi) {
    if (v >= b.size()) return false;
    hit |= bit(v);
  }
  if (hit != b.vertices()) return false;
  for (Vertex u = 0; u < a.size(); ++u)
    for (Vertex v = 0; v < a.size(); ++v)
      if (a.adjacent(u, v) != b.adjacent(phi[u], phi[v])) return false;
  return true;
}

}  // namespace dighom
