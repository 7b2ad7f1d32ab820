#pragma once

// Finite digital images: a vertex set {0..n-1} with a symmetric,
// antireflexive adjacency relation. Adjacency is kept as one 64-bit row per
// vertex, so images are limited to 64 points.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dighom {

using Vertex = std::uint32_t;
using VertexSet = std::uint64_t;
using Edge = std::pair<Vertex, Vertex>;

inline constexpr std::size_t max_vertices = 64;

/// Base class for every error the library raises on bad input.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr VertexSet bit(Vertex v) { return VertexSet{1} << v; }

constexpr VertexSet all_vertices(std::size_t n) {
  return n >= 64 ? ~VertexSet{0} : (VertexSet{1} << n) - 1;
}

inline int count(VertexSet s) { return std::popcount(s); }

inline Vertex lowest(VertexSet s) { return static_cast<Vertex>(std::countr_zero(s)); }

/// Calls fn(v) for every vertex in s, ascending.
template <class Fn>
void for_each_vertex(VertexSet s, Fn&& fn) {
  while (s) {
    fn(lowest(s));
    s &= s - 1;
  }
}

inline std::vector<Vertex> to_vector(VertexSet s) {
  std::vector<Vertex> out;
  for_each_vertex(s, [&](Vertex v) { out.push_back(v); });
  return out;
}

class DigitalImage {
 public:
  DigitalImage() = default;

  /// Builds the image on n points with the given adjacencies. Pairs are
  /// symmetrized and deduplicated; self-pairs and out-of-range endpoints are
  /// rejected.
  static DigitalImage from_edges(std::size_t n, const std::vector<Edge>& edges) {
    if (n > max_vertices) {
      throw error("image has " + std::to_string(n) + " points; at most 64 are supported");
    }
    DigitalImage img;
    img.rows_.assign(n, 0);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) {
        throw error("edge {" + std::to_string(u) + "," + std::to_string(v) +
                    "} has an endpoint outside [0," + std::to_string(n) + ")");
      }
      if (u == v) {
        throw error("self-adjacency {" + std::to_string(u) + "," + std::to_string(v) +
                    "} violates antireflexivity");
      }
      img.rows_[u] |= bit(v);
      img.rows_[v] |= bit(u);
    }
    return img;
  }

  /// Builds an image from open-neighborhood rows. Rows must be symmetric with
  /// a clear diagonal.
  static DigitalImage from_rows(std::vector<VertexSet> rows) {
    const std::size_t n = rows.size();
    if (n > max_vertices) throw error("at most 64 points are supported");
    for (Vertex v = 0; v < n; ++v) {
      if (rows[v] & bit(v)) throw error("adjacency row " + std::to_string(v) + " has a self-loop");
      if (rows[v] & ~all_vertices(n)) throw error("adjacency row " + std::to_string(v) + " is out of range");
      for_each_vertex(rows[v], [&](Vertex u) {
        if (!(rows[u] & bit(v))) throw error("adjacency rows are not symmetric");
      });
    }
    DigitalImage img;
    img.rows_ = std::move(rows);
    return img;
  }

  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  VertexSet vertices() const { return all_vertices(size()); }

  bool adjacent(Vertex a, Vertex b) const { return (rows_[a] >> b) & 1U; }
  bool adjacent_or_equal(Vertex a, Vertex b) const { return a == b || adjacent(a, b); }

  /// Open neighborhood.
  VertexSet neighbors(Vertex v) const { return rows_[v]; }
  /// N[v] = neighbors(v) plus v itself.
  VertexSet closed_neighborhood(Vertex v) const { return rows_[v] | bit(v); }
  int degree(Vertex v) const { return count(rows_[v]); }

  const std::vector<VertexSet>& rows() const { return rows_; }

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (auto r : rows_) total += static_cast<std::size_t>(count(r));
    return total / 2;
  }

  /// Edges as (u, v) with u < v, sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < size(); ++u) {
      for_each_vertex(rows_[u] & ~all_vertices(u + 1), [&](Vertex v) { out.emplace_back(u, v); });
    }
    return out;
  }

  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != size()) throw error("label count does not match point count");
    labels_ = std::move(labels);
  }
  std::string label(Vertex v) const { return labels_.empty() ? std::to_string(v) : labels_[v]; }

  /// Equality compares structure only; display labels are ignored.
  friend bool operator==(const DigitalImage& a, const DigitalImage& b) { return a.rows_ == b.rows_; }

 private:
  std::vector<VertexSet> rows_;
  std::vector<std::string> labels_;
};

inline DigitalImage build_image(std::size_t n, const std::vector<Edge>& edges) {
  return DigitalImage::from_edges(n, edges);
}

/// The m-gon C_m. m = 1 is a point, m = 2 a single edge.
inline DigitalImage cycle_image(std::size_t m) {
  if (m == 0) throw error("a cycle needs at least one point");
  std::vector<Edge> edges;
  if (m == 2) edges.emplace_back(0, 1);
  if (m >= 3) {
    for (Vertex i = 0; i < m; ++i) edges.emplace_back(i, static_cast<Vertex>((i + 1) % m));
  }
  return build_image(m, edges);
}

inline DigitalImage path_image(std::size_t points) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < points; ++i) edges.emplace_back(i, i + 1);
  return build_image(points, edges);
}

inline DigitalImage complete_image(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return build_image(n, edges);
}

/// Subimage induced on `keep`. Point i of the result is the i-th smallest
/// member of `keep`.
inline DigitalImage induced_subimage(const DigitalImage& img, VertexSet keep) {
  const auto kept = to_vector(keep);
  std::vector<VertexSet> rows(kept.size(), 0);
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (img.adjacent(kept[i], kept[j])) rows[i] |= bit(static_cast<Vertex>(j));
  auto out = DigitalImage::from_rows(std::move(rows));
  if (!img.labels().empty()) {
    std::vector<std::string> labels;
    for (auto v : kept) labels.push_back(img.labels()[v]);
    out.set_labels(std::move(labels));
  }
  return out;
}

/// Disjoint union; the points of b follow those of a.
inline DigitalImage disjoint_union(const DigitalImage& a, const DigitalImage& b) {
  auto edges = a.edges();
  const auto shift = static_cast<Vertex>(a.size());
  for (auto [u, v] : b.edges()) edges.emplace_back(u + shift, v + shift);
  return build_image(a.size() + b.size(), edges);
}

/// Relabels points: point v of `img` becomes point perm[v].
inline DigitalImage relabel(const DigitalImage& img, const std::vector<Vertex>& perm) {
  std::vector<VertexSet> rows(img.size(), 0);
  for (Vertex v = 0; v < img.size(); ++v)
    for_each_vertex(img.neighbors(v), [&](Vertex u) { rows[perm[v]] |= bit(perm[u]); });
  return DigitalImage::from_rows(std::move(rows));
}

struct ComponentPartition {
  std::vector<std::size_t> assignment;  // vertex -> component index
  std::size_t count = 0;
};

/// Components numbered in order of their smallest vertex.
inline ComponentPartition components(const DigitalImage& img) {
  ComponentPartition part;
  part.assignment.assign(img.size(), 0);
  VertexSet unseen = img.vertices();
  while (unseen) {
    VertexSet comp = bit(lowest(unseen));
    VertexSet frontier = comp;
    while (frontier) {
      VertexSet next = 0;
      for_each_vertex(frontier, [&](Vertex v) { next |= img.neighbors(v); });
      frontier = next & ~comp;
      comp |= next;
    }
    for_each_vertex(comp, [&](Vertex v) { part.assignment[v] = part.count; });
    ++part.count;
    unseen &= ~comp;
  }
  return part;
}

/// Reachability closure of `start` inside `allowed`.
inline VertexSet reachable(const DigitalImage& img, VertexSet start, VertexSet allowed) {
  VertexSet comp = start & allowed;
  VertexSet frontier = comp;
  while (frontier) {
    VertexSet next = 0;
    for_each_vertex(frontier, [&](Vertex v) { next |= img.neighbors(v); });
    next &= allowed;
    frontier = next & ~comp;
    comp |= next;
  }
  return comp;
}

inline bool is_connected(const DigitalImage& img) {
  return img.empty() || reachable(img, bit(0), img.vertices()) == img.vertices();
}

inline bool is_clique(const DigitalImage& img, VertexSet s) {
  bool ok = true;
  for_each_vertex(s, [&](Vertex v) { ok = ok && ((img.neighbors(v) | bit(v)) & s) == s; });
  return ok;
}

/// Vertices whose removal disconnects their component (connected images only).
inline VertexSet cut_vertices(const DigitalImage& img) {
  VertexSet cuts = 0;
  const VertexSet all = img.vertices();
  for (Vertex v = 0; v < img.size(); ++v) {
    const VertexSet rest = all & ~bit(v);
    if (!rest) continue;
    if (reachable(img, bit(lowest(rest)), rest) != rest) cuts |= bit(v);
  }
  return cuts;
}

// Edge-list text: first non-comment line is n, then one "u v" pair per line.
// '#' starts a comment.
inline DigitalImage parse_edge_list(std::istream& in) {
  std::string line;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<long long> values;
    long long x;
    while (fields >> x) values.push_back(x);
    if (!fields.eof()) throw error("edge list line " + std::to_string(line_no) + ": expected integers");
    if (values.empty()) continue;
    if (!n) {
      if (values.size() != 1 || values[0] < 0) {
        throw error("edge list line " + std::to_string(line_no) + ": expected the point count");
      }
      n = static_cast<std::size_t>(values[0]);
      continue;
    }
    if (values.size() != 2 || values[0] < 0 || values[1] < 0) {
      throw error("edge list line " + std::to_string(line_no) + ": expected 'u v'");
    }
    edges.emplace_back(static_cast<Vertex>(values[0]), static_cast<Vertex>(values[1]));
  }
  if (!n) throw error("edge list is empty");
  return build_image(*n, edges);
}

inline std::string format_edge_list(const DigitalImage& img) {
  std::string out = std::to_string(img.size()) + "\n";
  for (auto [u, v] : img.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

}  // namespace dighom
