#pragma once

// Loops C_m -> X, trivial extensions, loop equivalence (homotopy of equal
// length trivial extensions) and the loop-counting invariant L_m.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "dighom/image.hpp"
#include "dighom/maps.hpp"

namespace dighom {

/// p(c_i) = values[i]. The target image is passed alongside.
using DigitalLoop = std::vector<Vertex>;
/// r(i) = values[i] for i in [0, k].
using DigitalPath = std::vector<Vertex>;

inline bool is_loop(const DigitalImage& img, const DigitalLoop& p) {
  if (p.empty()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] >= img.size()) return false;
    if (!img.adjacent_or_equal(p[i], p[(i + 1) % p.size()])) return false;
  }
  return true;
}

inline bool is_path(const DigitalImage& img, const DigitalPath& r) {
  if (r.empty()) return false;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] >= img.size()) return false;
    if (i > 0 && !img.adjacent_or_equal(r[i - 1], r[i])) return false;
  }
  return true;
}

/// Injective, consecutive points adjacent, no other adjacencies.
inline bool is_simple_path(const DigitalImage& img, const DigitalPath& r) {
  if (r.empty()) return false;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] >= img.size()) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (r[i] == r[j]) return false;
      if (img.adjacent(r[i], r[j]) != (i == j + 1)) return false;
    }
  }
  return true;
}

/// Injective, cyclically consecutive points adjacent, no other adjacencies.
/// Length 1 and 2 loops are the point and edge cases.
inline bool is_simple_loop(const DigitalImage& img, const DigitalLoop& p) {
  const std::size_t m = p.size();
  if (m == 0) return false;
  for (std::size_t i = 0; i < m; ++i) {
    if (p[i] >= img.size()) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (p[i] == p[j]) return false;
      const bool consecutive = i == j + 1 || (j == 0 && i == m - 1);
      if (img.adjacent(p[i], p[j]) != consecutive) return false;
    }
  }
  return true;
}

/// q[i] = p[(i + k) mod m].
inline DigitalLoop rotate(const DigitalLoop& p, std::ptrdiff_t k) {
  const auto m = static_cast<std::ptrdiff_t>(p.size());
  DigitalLoop q(p.size());
  if (m == 0) return q;
  k = ((k % m) + m) % m;
  for (std::ptrdiff_t i = 0; i < m; ++i) q[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>((i + k) % m)];
  return q;
}

/// Smallest rotation offset k such that rotate(p, k) is lexicographically least.
inline std::size_t least_rotation(const DigitalLoop& p) {
  const std::size_t m = p.size();
  std::size_t best = 0;
  for (std::size_t k = 1; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      const Vertex a = p[(k + i) % m], b = p[(best + i) % m];
      if (a != b) {
        if (a < b) best = k;
        break;
      }
    }
  }
  return best;
}

/// Byte string of the least rotation; equal keys mean equal up to rotation.
inline std::string loop_key(const DigitalLoop& p) {
  const std::size_t k = least_rotation(p);
  std::string key(p.size(), '\0');
  for (std::size_t i = 0; i < p.size(); ++i) key[i] = static_cast<char>(p[(i + k) % p.size()]);
  return key;
}

/// Pads p to length n by repeating its final point.
inline DigitalLoop trivial_extension(const DigitalLoop& p, std::size_t n) {
  if (p.empty()) throw error("cannot extend an empty loop");
  if (n < p.size()) throw error("extension length " + std::to_string(n) + " is shorter than the loop");
  DigitalLoop out = p;
  out.resize(n, p.back());
  return out;
}

/// Removes cyclically repeated consecutive points.
inline DigitalLoop cyclic_reduce(const DigitalLoop& p) {
  DigitalLoop out;
  for (auto v : p)
    if (out.empty() || out.back() != v) out.push_back(v);
  while (out.size() > 1 && out.back() == out.front()) out.pop_back();
  return out;
}

/// Number of points left after cyclic_reduce.
inline std::size_t essential_length(const DigitalLoop& p) { return cyclic_reduce(p).size(); }

/// Simple m-loops as oriented sequences, one per rotation class: rooted at
/// the smallest point, listed in lexicographic order. Both orientations of
/// every induced m-cycle appear for m >= 3.
inline std::vector<DigitalLoop> enumerate_simple_loops(const DigitalImage& img, std::size_t m) {
  if (m == 0) throw error("loop length must be positive");
  std::vector<DigitalLoop> out;
  if (m == 1) {
    for (Vertex v = 0; v < img.size(); ++v) out.push_back({v});
    return out;
  }
  if (m == 2) {
    for (auto [u, v] : img.edges()) out.push_back({u, v});
    return out;
  }
  DigitalLoop cur;
  VertexSet used = 0;
  auto rec = [&](auto&& self, VertexSet allowed) -> void {
    const Vertex last = cur.back();
    if (cur.size() == m) {
      if (img.adjacent(last, cur.front())) out.push_back(cur);
      return;
    }
    // Next point: adjacent to the last, above the root, and adjacent to no
    // earlier point except the root when it closes the loop.
    VertexSet next = img.neighbors(last) & allowed & ~used;
    while (next) {
      const Vertex v = lowest(next);
      next &= next - 1;
      VertexSet earlier = used & ~bit(last);
      if (cur.size() + 1 == m) earlier &= ~bit(cur.front());
      if (img.neighbors(v) & earlier) continue;
      cur.push_back(v);
      used |= bit(v);
      self(self, allowed);
      cur.pop_back();
      used &= ~bit(v);
    }
  };
  for (Vertex root = 0; root < img.size(); ++root) {
    cur = {root};
    used = bit(root);
    const VertexSet above = img.vertices() & ~all_vertices(root + 1);
    rec(rec, above);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Corner a-b-c without a right angle: b is the only common neighbor of a
/// and c.
inline bool is_straight_corner(const DigitalImage& img, Vertex a, Vertex b, Vertex c) {
  return (img.neighbors(a) & img.neighbors(c)) == bit(b);
}

/// Right-angle test for a simple path (no corner has a second common
/// neighbor of its ends). Throws on non-simple input.
inline bool path_has_no_right_angles(const DigitalImage& img, const DigitalPath& r) {
  if (!is_simple_path(img, r)) throw error("right angles are defined for simple paths");
  for (std::size_t i = 1; i + 1 < r.size(); ++i)
    if (!is_straight_corner(img, r[i - 1], r[i], r[i + 1])) return false;
  return true;
}

/// Right-angle test for a simple loop, over all corners cyclically. Throws on
/// non-simple input.
inline bool loop_has_no_right_angles(const DigitalImage& img, const DigitalLoop& p) {
  if (!is_simple_loop(img, p)) throw error("right angles are defined for simple loops");
  const std::size_t m = p.size();
  if (m < 3) return true;
  for (std::size_t i = 0; i < m; ++i)
    if (!is_straight_corner(img, p[(i + m - 1) % m], p[i], p[(i + 1) % m])) return false;
  return true;
}

/// No edge of the loop lies on a triangle.
inline bool loop_edges_triangle_free(const DigitalImage& img, const DigitalLoop& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Vertex a = p[i], b = p[(i + 1) % p.size()];
    if (a != b && (img.neighbors(a) & img.neighbors(b))) return false;
  }
  return true;
}

/// When every simple m-loop has no right angles and no edge on a triangle,
/// homotopy classes of simple m-loops are exactly rotation classes; returns
/// one representative per class. Otherwise nothing.
inline std::optional<std::vector<DigitalLoop>> rotation_classes(const DigitalImage& img, std::size_t m) {
  if (m < 3) return std::nullopt;
  auto loops = enumerate_simple_loops(img, m);
  for (const auto& p : loops)
    if (!loop_has_no_right_angles(img, p) || !loop_edges_triangle_free(img, p)) return std::nullopt;
  return loops;
}

// ---------------------------------------------------------------------------
// Breadth-first search through the homotopy class of a loop of fixed length.

/// Explores continuous n-loops reachable from `start` by one-step moves.
/// States are kept up to rotation (rotating by one place is itself a
/// one-step move) in a flat byte arena; chains are rebuilt in actual
/// coordinates.
class LoopClassSearch {
 public:
  LoopClassSearch(const DigitalImage& img, DigitalLoop start, const SearchBudget& budget)
      : img_(img), n_(start.size()), budget_(budget), start_(std::move(start)),
        index_(16, Hash{this}, Equal{this}) {
    if (!is_loop(img_, start_)) throw error("search start is not a loop in the image");
    const std::size_t k = least_rotation(start_);
    append(rotate(start_, static_cast<std::ptrdiff_t>(k)));
    nodes_.push_back({0, static_cast<std::uint16_t>(k), 0});
    index_.insert(0);
  }

  LoopClassSearch(const LoopClassSearch&) = delete;
  LoopClassSearch& operator=(const LoopClassSearch&) = delete;

  /// Runs until stop(loop) is true for a newly reached canonical loop, or the
  /// class is exhausted, or the budget runs out. Returns the stopping node.
  template <class Stop>
  std::optional<std::size_t> run(Stop&& stop) {
    if (head_ == 0 && !started_) {
      started_ = true;
      if (stop(loop_at(0))) return 0;
    }
    for (; head_ < nodes_.size(); ++head_) {
      if (nodes_[head_].depth + 1u >= budget_.max_chain_length) {
        depth_truncated_ = true;
        continue;
      }
      std::optional<std::size_t> hit;
      const auto parent = static_cast<std::uint32_t>(head_);
      const DigitalLoop from = loop_at(head_);
      neighbors(from, [&](const DigitalLoop& q) {
        const std::size_t k = least_rotation(q);
        const std::size_t id = nodes_.size();
        append(rotate(q, static_cast<std::ptrdiff_t>(k)));
        if (index_.count(static_cast<std::uint32_t>(id))) {
          arena_.resize(arena_.size() - n_);
          return true;
        }
        if (nodes_.size() >= budget_.max_states) {
          arena_.resize(arena_.size() - n_);
          states_truncated_ = true;
          return false;
        }
        nodes_.push_back({parent, static_cast<std::uint16_t>(k),
                          static_cast<std::uint16_t>(nodes_[parent].depth + 1)});
        index_.insert(static_cast<std::uint32_t>(id));
        if (stop(loop_at(id))) {
          hit = id;
          return false;
        }
        return true;
      });
      if (hit) return hit;
      if (states_truncated_) return std::nullopt;
    }
    return std::nullopt;
  }

  /// True when the search ended with the whole class explored.
  bool exhausted() const { return head_ >= nodes_.size() && !truncated(); }
  bool truncated() const { return depth_truncated_ || states_truncated_; }
  std::string truncation_reason() const {
    if (states_truncated_) return "state budget of " + std::to_string(budget_.max_states) + " exhausted";
    if (depth_truncated_) return "chain length budget of " + std::to_string(budget_.max_chain_length) + " reached";
    return "";
  }
  std::size_t state_count() const { return nodes_.size(); }

  /// Canonical (least-rotation) loop of a node.
  DigitalLoop loop_at(std::size_t node) const {
    return DigitalLoop(arena_.begin() + static_cast<std::ptrdiff_t>(node * n_),
                       arena_.begin() + static_cast<std::ptrdiff_t>((node + 1) * n_));
  }

  std::optional<std::size_t> find(const DigitalLoop& q) const {
    if (q.size() != n_) return std::nullopt;
    const std::size_t k = least_rotation(q);
    auto canon = rotate(q, static_cast<std::ptrdiff_t>(k));
    auto& self = const_cast<LoopClassSearch&>(*this);
    const std::size_t id = nodes_.size();
    self.append(canon);
    auto it = index_.find(static_cast<std::uint32_t>(id));
    std::optional<std::size_t> out;
    if (it != index_.end()) out = *it;
    self.arena_.resize(arena_.size() - n_);
    return out;
  }

  /// Chain of actual loops from the start to some rotation of the node's
  /// loop; `offset` receives r with last slice = rotate(loop_at(node), r).
  HomotopyChain chain_to(std::size_t node, std::ptrdiff_t* offset = nullptr) const {
    std::vector<std::size_t> lineage;
    for (std::size_t i = node;; i = nodes_[i].parent) {
      lineage.push_back(i);
      if (i == 0) break;
    }
    std::reverse(lineage.begin(), lineage.end());
    // start = rotate(canonical_0, -k0); each child: canonical = rotate(generated, k).
    std::ptrdiff_t r = -static_cast<std::ptrdiff_t>(nodes_[0].rotation);
    HomotopyChain chain{start_};
    for (std::size_t j = 1; j < lineage.size(); ++j) {
      r -= static_cast<std::ptrdiff_t>(nodes_[lineage[j]].rotation);
      chain.push_back(rotate(loop_at(lineage[j]), r));
    }
    if (offset) *offset = r;
    return chain;
  }

  /// Chain from the start to exactly `target`, which must share a rotation
  /// class with a reached node. Closing rotations are one place at a time.
  HomotopyChain chain_to_loop(const DigitalLoop& target) const {
    auto node = find(target);
    if (!node) throw error("target loop was not reached");
    auto chain = chain_to(*node);
    const auto n = static_cast<std::ptrdiff_t>(n_);
    std::ptrdiff_t s = 0;
    while (s < n && rotate(target, s) != chain.back()) ++s;
    const std::ptrdiff_t step = s <= n - s ? -1 : 1;
    while (rotate(target, s) != target) {
      s += step;
      chain.push_back(rotate(target, s));
    }
    return chain;
  }

 private:
  struct Node {
    std::uint32_t parent;
    std::uint16_t rotation;  // canonical = rotate(generated, rotation)
    std::uint16_t depth;
  };

  struct Hash {
    const LoopClassSearch* s;
    std::size_t operator()(std::uint32_t id) const {
      std::size_t h = 1469598103934665603ULL;
      for (std::size_t i = 0; i < s->n_; ++i) h = (h ^ s->arena_[id * s->n_ + i]) * 1099511628211ULL;
      return h;
    }
  };
  struct Equal {
    const LoopClassSearch* s;
    bool operator()(std::uint32_t a, std::uint32_t b) const {
      return std::equal(s->arena_.begin() + static_cast<std::ptrdiff_t>(a * s->n_),
                        s->arena_.begin() + static_cast<std::ptrdiff_t>((a + 1) * s->n_),
                        s->arena_.begin() + static_cast<std::ptrdiff_t>(b * s->n_));
    }
  };

  void append(const DigitalLoop& canon) {
    for (auto v : canon) arena_.push_back(static_cast<std::uint8_t>(v));
  }

  // Continuous loops q with q[i] adjacent-or-equal to p[i] for all i.
  template <class Fn>
  void neighbors(const DigitalLoop& p, Fn&& fn) const {
    DigitalLoop q(n_);
    bool go = true;
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == n_) {
        if (img_.adjacent_or_equal(q[n_ - 1], q[0])) go = fn(static_cast<const DigitalLoop&>(q));
        return;
      }
      VertexSet choices = img_.closed_neighborhood(p[i]);
      if (i > 0) choices &= img_.closed_neighborhood(q[i - 1]);
      while (choices && go) {
        q[i] = lowest(choices);
        choices &= choices - 1;
        self(self, i + 1);
      }
    };
    rec(rec, 0);
  }

  const DigitalImage& img_;
  std::size_t n_;
  SearchBudget budget_;
  DigitalLoop start_;
  std::vector<std::uint8_t> arena_;
  std::vector<Node> nodes_;
  std::unordered_set<std::uint32_t, Hash, Equal> index_;
  std::size_t head_ = 0;
  bool started_ = false;
  bool depth_truncated_ = false;
  bool states_truncated_ = false;
};

/// One-place rotations from p to q, the shorter way round. q must be a
/// rotation of p.
inline HomotopyChain rotation_chain(const DigitalLoop& p, const DigitalLoop& q) {
  const auto n = static_cast<std::ptrdiff_t>(p.size());
  std::ptrdiff_t k = 0;
  while (k < n && rotate(p, k) != q) ++k;
  if (k == n) throw error("loops are not rotations of one another");
  HomotopyChain chain{p};
  const std::ptrdiff_t step = k <= n - k ? 1 : -1;
  for (std::ptrdiff_t s = 0; rotate(p, s) != q;) {
    s += step;
    chain.push_back(rotate(p, s));
  }
  return chain;
}

// ---------------------------------------------------------------------------
// Components without triangles or 4-cycles. There every closed walk of
// length at most 4 backtracks to a point, so each one-step move keeps the
// free homotopy class of the loop as a closed walk in the graph. Pauses,
// backtracks and rotations are themselves one-step moves, so the cyclically
// reduced walk, up to rotation, is a complete invariant for equivalence.

/// True when the component of v contains no triangle and no 4-cycle.
inline bool component_has_girth_five(const DigitalImage& img, Vertex v) {
  const auto part = components(img);
  const auto label = part.assignment.at(v);
  for (Vertex a = 0; a < img.size(); ++a) {
    if (part.assignment[a] != label) continue;
    for (Vertex b = a + 1; b < img.size(); ++b) {
      const VertexSet common = img.neighbors(a) & img.neighbors(b);
      if (img.adjacent(a, b) ? common != 0 : count(common) >= 2) return false;
    }
  }
  return true;
}

/// Closed walk of p with pauses and backtracks removed, as its least
/// rotation. Empty when p contracts to a point in the graph.
inline DigitalLoop reduced_cyclic_walk(const DigitalLoop& p) {
  auto w = cyclic_reduce(p);
  if (w.size() <= 1) return {};
  std::vector<Vertex> st;
  for (std::size_t i = 0; i <= w.size(); ++i) {
    const Vertex v = w[i % w.size()];
    if (st.size() >= 2 && st[st.size() - 2] == v)
      st.pop_back();
    else
      st.push_back(v);
  }
  st.pop_back();  // closing copy of w[0]
  std::size_t lo = 0, hi = st.size();
  while (hi - lo >= 3 && st[lo + 1] == st[hi - 1]) {
    ++lo;
    --hi;
  }
  if (hi - lo <= 2) return {};
  DigitalLoop r(st.begin() + static_cast<std::ptrdiff_t>(lo), st.begin() + static_cast<std::ptrdiff_t>(hi));
  return rotate(r, static_cast<std::ptrdiff_t>(least_rotation(r)));
}

namespace detail {

// One-step chain from loop p to the normal form of its class at the same
// length: trivial_extension(reduced_cyclic_walk(p), n), or the constant loop
// at the smallest point of the component. Valid in girth-five components.
inline HomotopyChain chain_to_normal_form(const DigitalImage& img, const DigitalLoop& p) {
  const std::size_t n = p.size();
  HomotopyChain chain{p};
  DigitalLoop cur = p;
  auto runs = [&]() {
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < n; ++i)
      if (cur[i] != cur[(i + n - 1) % n]) starts.push_back(i);
    return starts;
  };
  // Collapse backtracking runs until the run sequence is cyclically reduced.
  for (bool changed = true; changed;) {
    changed = false;
    auto st = runs();
    if (st.size() < 2) break;
    for (std::size_t j = 0; j < st.size(); ++j) {
      const std::size_t prev = st[(j + st.size() - 1) % st.size()];
      const std::size_t next = st[(j + 1) % st.size()];
      if (st.size() != 2 && cur[prev] != cur[next]) continue;
      for (std::size_t i = st[j]; i != next; i = (i + 1) % n) cur[i] = cur[prev];
      chain.push_back(cur);
      changed = true;
      break;
    }
  }
  const auto target_walk = reduced_cyclic_walk(p);
  if (target_walk.empty()) {
    // Walk the constant loop to the smallest point of the component.
    const auto part = components(img);
    Vertex goal = 0;
    while (part.assignment[goal] != part.assignment[cur[0]]) ++goal;
    std::vector<Vertex> from(img.size(), static_cast<Vertex>(img.size()));
    std::vector<Vertex> queue{goal};
    from[goal] = goal;
    for (std::size_t h = 0; h < queue.size(); ++h)
      for_each_vertex(img.neighbors(queue[h]), [&](Vertex u) {
        if (from[u] == img.size()) {
          from[u] = queue[h];
          queue.push_back(u);
        }
      });
    for (Vertex v = cur[0]; v != goal;) {
      v = from[v];
      chain.push_back(DigitalLoop(n, v));
    }
    return chain;
  }
  // Rotate so the run matching target_walk[0] starts at position 0.
  const std::size_t r = target_walk.size();
  auto st = runs();
  std::size_t j = 0;
  for (; j < st.size(); ++j) {
    bool ok = true;
    for (std::size_t t = 0; t < r && ok; ++t) ok = cur[st[(j + t) % st.size()]] == target_walk[t];
    if (ok) break;
  }
  const auto shift = rotation_chain(cur, rotate(cur, static_cast<std::ptrdiff_t>(st[j])));
  chain.insert(chain.end(), shift.begin() + 1, shift.end());
  cur = chain.back();
  // Push surplus pauses forward, one run at a time.
  for (std::size_t k = 1; k < r; ++k) {
    if (cur[k] == target_walk[k]) continue;
    for (std::size_t i = k; cur[i] == target_walk[k - 1]; ++i) cur[i] = target_walk[k];
    chain.push_back(cur);
  }
  return chain;
}

}  // namespace detail

/// Exact equivalence for loops in girth-five components. The chain runs
/// between the trivial extensions of length max(|p|, |q|).
inline std::optional<HomotopyChain> girth_five_equivalence(const DigitalImage& img, const DigitalLoop& p,
                                                          const DigitalLoop& q) {
  const auto part = components(img);
  if (part.assignment[p[0]] != part.assignment[q[0]]) return std::nullopt;
  if (reduced_cyclic_walk(p) != reduced_cyclic_walk(q)) return std::nullopt;
  const std::size_t n = std::max(p.size(), q.size());
  auto forward = detail::chain_to_normal_form(img, trivial_extension(p, n));
  auto backward = detail::chain_to_normal_form(img, trivial_extension(q, n));
  forward.insert(forward.end(), backward.rbegin() + 1, backward.rend());
  return forward;
}

inline std::size_t extension_bound(const DigitalImage&, std::size_t m, const SearchBudget& budget) {
  return budget.max_extension_length ? budget.max_extension_length : m + 3;
}

/// Appends one-place rotations until the last loop is literally a trivial
/// extension (pauses after each point, root at the start of a run).
inline void rotate_to_run_start(HomotopyChain& chain) {
  const DigitalLoop last = chain.back();
  if (cyclic_reduce(last).size() <= 1) return;
  std::ptrdiff_t s = 0;
  while (rotate(last, s).front() == rotate(last, s).back()) {
    ++s;
    chain.push_back(rotate(last, s));
  }
}

/// p and q equivalent iff some equal-length trivial extensions are
/// homotopic. Yes carries a chain from trivial_extension(p, n) to
/// trivial_extension(q, n). A No is only as strong as the extension bound.
inline Verdict<HomotopyChain> loops_equivalent(const DigitalImage& img, const DigitalLoop& p, const DigitalLoop& q,
                                               const SearchBudget& budget = {}) {
  if (!is_loop(img, p) || !is_loop(img, q)) throw error("loops_equivalent needs two loops in the same image");
  Verdict<HomotopyChain> out;
  const std::size_t lo = std::max(p.size(), q.size());
  const std::size_t hi = std::max(lo, extension_bound(img, lo, budget));
  if (components(img).assignment[p[0]] != components(img).assignment[q[0]]) {
    out.kind = VerdictKind::no;
    out.reason = "different components";
    return out;
  }
  if (component_has_girth_five(img, p[0])) {
    if (auto chain = girth_five_equivalence(img, p, q)) {
      out.kind = VerdictKind::yes;
      out.witness = std::move(*chain);
      out.reason = "same reduced closed walk";
    } else {
      out.kind = VerdictKind::no;
      out.reason = "reduced closed walks differ in a component without triangles or 4-cycles";
    }
    return out;
  }
  bool truncated = false;
  std::string why;
  for (std::size_t n = lo; n <= hi; ++n) {
    const auto target = trivial_extension(q, n);
    const auto target_key = loop_key(target);
    LoopClassSearch s(img, trivial_extension(p, n), budget);
    auto hit = s.run([&](const DigitalLoop& c) { return loop_key(c) == target_key; });
    if (hit) {
      out.kind = VerdictKind::yes;
      out.witness = s.chain_to_loop(target);
      out.reason = "extension length " + std::to_string(n);
      return out;
    }
    if (s.truncated()) {
      truncated = true;
      why = s.truncation_reason();
    }
  }
  out.kind = truncated ? VerdictKind::unknown : VerdictKind::no;
  out.reason = truncated ? why
                         : "no homotopy between trivial extensions of length " + std::to_string(lo) + ".." +
                               std::to_string(hi);
  return out;
}

enum class LoopIrreducibility { irreducible_exact, irreducible_bounded, reducible, unknown };

inline const char* to_string(LoopIrreducibility s) {
  switch (s) {
    case LoopIrreducibility::irreducible_exact:
      return "irreducible";
    case LoopIrreducibility::irreducible_bounded:
      return "irreducible-bounded";
    case LoopIrreducibility::reducible:
      return "reducible";
    case LoopIrreducibility::unknown:
      return "unknown";
  }
  return "?";
}

struct LoopIrreducibilityResult {
  LoopIrreducibility status = LoopIrreducibility::unknown;
  /// For reducible loops: a chain from a trivial extension of p to a trivial
  /// extension of a shorter loop.
  std::optional<HomotopyChain> chain;
  std::size_t extension_length = 0;
  std::string reason;
};

/// Searches for a loop equivalent to simple loop p with fewer points.
inline LoopIrreducibilityResult loop_irreducible(const DigitalImage& img, const DigitalLoop& p,
                                                 const SearchBudget& budget = {}) {
  if (!is_simple_loop(img, p)) throw error("loop irreducibility is defined for simple loops");
  LoopIrreducibilityResult out;
  const std::size_t m = p.size();
  if (m >= 5 && component_has_girth_five(img, p[0])) {
    out.status = LoopIrreducibility::irreducible_exact;
    out.reason = "induced cycle in a component without triangles or 4-cycles";
    return out;
  }
  const std::size_t hi = extension_bound(img, m, budget);
  bool truncated = false;
  for (std::size_t n = m; n <= hi; ++n) {
    LoopClassSearch s(img, trivial_extension(p, n), budget);
    auto hit = s.run([&](const DigitalLoop& c) { return essential_length(c) < m; });
    if (hit) {
      out.status = LoopIrreducibility::reducible;
      auto chain = s.chain_to(*hit);
      rotate_to_run_start(chain);
      out.chain = std::move(chain);
      out.extension_length = n;
      out.reason = "reaches a loop of " + std::to_string(essential_length(out.chain->back())) + " points";
      return out;
    }
    if (s.truncated()) {
      truncated = true;
      out.reason = s.truncation_reason();
    }
  }
  out.status = truncated ? LoopIrreducibility::unknown : LoopIrreducibility::irreducible_bounded;
  if (!truncated) out.reason = "no shorter loop up to extension length " + std::to_string(hi);
  return out;
}

enum class LmStatus { exact, bounded, unknown };

inline const char* to_string(LmStatus s) {
  switch (s) {
    case LmStatus::exact:
      return "exact";
    case LmStatus::bounded:
      return "bounded";
    case LmStatus::unknown:
      return "unknown";
  }
  return "?";
}

struct LoopClassTable {
  std::size_t m = 0;
  std::size_t count = 0;
  LmStatus status = LmStatus::exact;
  /// One simple irreducible m-loop per class (smallest member).
  std::vector<DigitalLoop> classes;
  /// Every simple m-loop up to rotation, with its class index or -1 when
  /// reducible.
  std::vector<DigitalLoop> loops;
  std::vector<int> class_of;
  std::string method;
};

/// `search` skips the closed-walk invariant and explores every component.
enum class LmMethod { automatic, search };

/// L_m: the number of equivalence classes of simple irreducible m-loops.
inline LoopClassTable compute_Lm(const DigitalImage& img, std::size_t m, const SearchBudget& budget = {},
                                 LmMethod method = LmMethod::automatic) {
  if (m == 0) throw error("L_m needs m >= 1");
  LoopClassTable t;
  t.m = m;
  if (m == 1) {
    auto part = components(img);
    std::vector<bool> seen(part.count, false);
    for (Vertex v = 0; v < img.size(); ++v) {
      if (seen[part.assignment[v]]) continue;
      seen[part.assignment[v]] = true;
      t.classes.push_back({v});
    }
    t.count = part.count;
    t.method = "components";
    return t;
  }
  if (m <= 4) {
    t.method = "short loops contract";
    return t;
  }
  t.loops = enumerate_simple_loops(img, m);
  t.class_of.assign(t.loops.size(), -1);

  // Loops in girth-five components are pairwise inequivalent and
  // irreducible; the rest go to the search.
  const std::size_t k = t.loops.size();
  std::vector<bool> settled(k, false);
  std::size_t settled_count = 0;
  if (method == LmMethod::automatic) {
    for (std::size_t i = 0; i < k; ++i) {
      settled[i] = component_has_girth_five(img, t.loops[i][0]);
      settled_count += settled[i];
    }
  }
  if (settled_count == k) {
    t.classes = t.loops;
    std::iota(t.class_of.begin(), t.class_of.end(), 0);
    t.count = k;
    t.method = "reduced closed walks";
    return t;
  }

  // Search. Each run explores the class of one extended loop at one length:
  // it settles reducibility and which other loops it meets.
  const std::size_t hi = extension_bound(img, m, budget);
  std::vector<std::size_t> root(k);
  std::iota(root.begin(), root.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  std::vector<bool> reducible(k, false);
  bool truncated = false;
  for (std::size_t n = m; n <= hi; ++n) {
    std::vector<bool> covered(settled);
    for (std::size_t i = 0; i < k; ++i) {
      if (covered[i] || reducible[find(i)]) continue;
      LoopClassSearch s(img, trivial_extension(t.loops[i], n), budget);
      auto hit = s.run([&](const DigitalLoop& c) { return essential_length(c) < m; });
      if (hit) {
        reducible[find(i)] = true;
        continue;
      }
      if (s.truncated()) truncated = true;
      for (std::size_t j = 0; j < k; ++j) {
        if (settled[j] || !s.find(trivial_extension(t.loops[j], n))) continue;
        covered[j] = true;
        const auto a = find(i), b = find(j);
        if (a != b) {
          root[std::max(a, b)] = std::min(a, b);
          reducible[std::min(a, b)] = reducible[a] || reducible[b];
        }
      }
    }
  }
  std::vector<int> class_index(k, -1);
  for (std::size_t i = 0; i < k; ++i) {
    const auto r = find(i);
    if (reducible[r]) continue;
    if (class_index[r] < 0) {
      class_index[r] = static_cast<int>(t.classes.size());
      t.classes.push_back(t.loops[i]);
    }
    t.class_of[i] = class_index[r];
  }
  t.count = t.classes.size();
  t.method = "search to extension length " + std::to_string(hi);
  if (settled_count) t.method = "reduced closed walks and " + t.method;
  if (t.count == settled_count)
    t.status = LmStatus::exact;
  else
    t.status = truncated ? LmStatus::unknown : LmStatus::bounded;
  return t;
}

}  // namespace dighom
