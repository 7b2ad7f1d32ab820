#pragma once

// Maps between images, continuity, one-step homotopy and the exact decision
// procedures built on it.
//
// A homotopy between continuous maps is a chain of maps in which consecutive
// slices agree up to adjacency at every point. Because a chain leaving the
// identity must leave it at some first step, searching maps one step from
// the identity decides both reducibility and rigidity exactly.

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dighom/image.hpp"

namespace dighom {

/// Values of a map between two images: point x goes to values[x]. The domain
/// and codomain are passed alongside wherever they matter.
using VertexMap = std::vector<Vertex>;

/// Slices H(., 0), ..., H(., k) of a homotopy.
using HomotopyChain = std::vector<VertexMap>;

struct SearchBudget {
  std::size_t max_states = 10'000'000;
  std::size_t max_chain_length = 64;
  /// Longest trivial extension tried for loops; 0 means loop length plus 3.
  std::size_t max_extension_length = 0;
};

enum class VerdictKind { yes, no, unknown };

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::yes:
      return "yes";
    case VerdictKind::no:
      return "no";
    case VerdictKind::unknown:
      return "unknown";
  }
  return "?";
}

/// Outcome of a bounded search. `yes` carries a replayable witness; `unknown`
/// means the budget ran out first.
template <class Witness>
struct Verdict {
  VerdictKind kind = VerdictKind::unknown;
  std::optional<Witness> witness;
  std::string reason;

  bool yes() const { return kind == VerdictKind::yes; }
  bool no() const { return kind == VerdictKind::no; }
  bool unknown() const { return kind == VerdictKind::unknown; }
};

/// Answer of an exact decision procedure, with a witness when one exists.
struct Decision {
  bool value = false;
  std::optional<VertexMap> witness;
};

inline VertexMap identity_map(std::size_t n) {
  VertexMap id(n);
  std::iota(id.begin(), id.end(), Vertex{0});
  return id;
}

inline VertexMap constant_map(std::size_t n, Vertex value) { return VertexMap(n, value); }

inline bool is_identity(const VertexMap& f) {
  for (Vertex x = 0; x < f.size(); ++x)
    if (f[x] != x) return false;
  return true;
}

inline VertexSet image_of(const VertexMap& f) {
  VertexSet s = 0;
  for (auto v : f) s |= bit(v);
  return s;
}

inline bool is_surjective(const VertexMap& f, std::size_t codomain_size) {
  return image_of(f) == all_vertices(codomain_size);
}

inline void check_map_shape(const DigitalImage& from, const DigitalImage& to, const VertexMap& f) {
  if (f.size() != from.size()) throw error("map has " + std::to_string(f.size()) + " values for " +
                                           std::to_string(from.size()) + " domain points");
  for (auto v : f)
    if (v >= to.size()) throw error("map value " + std::to_string(v) + " is outside the codomain");
}

/// Every adjacency of the domain goes to an adjacent-or-equal pair.
inline bool is_continuous(const DigitalImage& from, const DigitalImage& to, const VertexMap& f) {
  check_map_shape(from, to, f);
  for (Vertex x = 0; x < from.size(); ++x) {
    bool ok = true;
    for_each_vertex(from.neighbors(x), [&](Vertex y) { ok = ok && to.adjacent_or_equal(f[x], f[y]); });
    if (!ok) return false;
  }
  return true;
}

/// Self-map convenience overload.
inline bool is_continuous(const DigitalImage& img, const VertexMap& f) { return is_continuous(img, img, f); }

/// g after f. f's values must index g's domain.
inline VertexMap compose(const VertexMap& g, const VertexMap& f) {
  VertexMap out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f[x] >= g.size()) throw error("compose: codomain of f does not match the domain of g");
    out[x] = g[f[x]];
  }
  return out;
}

/// f(x) adjacent-or-equal to g(x) at every point.
inline bool one_step_related(const DigitalImage& codomain, const VertexMap& f, const VertexMap& g) {
  if (f.size() != g.size()) throw error("one-step relation needs maps with a common domain");
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f[x] >= codomain.size() || g[x] >= codomain.size()) throw error("map value outside the codomain");
    if (!codomain.adjacent_or_equal(f[x], g[x])) return false;
  }
  return true;
}

/// Slices are continuous and consecutive slices are one-step related.
inline bool verify_chain(const DigitalImage& from, const DigitalImage& to, const HomotopyChain& chain) {
  if (chain.empty()) return false;
  for (std::size_t t = 0; t < chain.size(); ++t) {
    if (chain[t].size() != from.size()) return false;
    for (auto v : chain[t])
      if (v >= to.size()) return false;
    if (!is_continuous(from, to, chain[t])) return false;
    if (t > 0 && !one_step_related(to, chain[t - 1], chain[t])) return false;
  }
  return true;
}

/// Backtracking over continuous maps `from -> to` with f(x) drawn from
/// candidates[x]. Domain points are assigned in descending degree (ties by
/// index), candidate values ascending; continuity is checked against already
/// assigned neighbors. The visitor returns false to stop. Returns false if
/// stopped early.
template <class Visitor>
bool enumerate_continuous_maps(const DigitalImage& from, const DigitalImage& to,
                               const std::vector<VertexSet>& candidates, Visitor&& visit) {
  const std::size_t n = from.size();
  if (candidates.size() != n) throw error("candidate list size does not match the domain");
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return from.degree(a) > from.degree(b); });
  VertexMap f(n, 0);
  VertexSet assigned = 0;
  bool keep_going = true;
  std::function<void(std::size_t)> step = [&](std::size_t depth) {
    if (depth == n) {
      keep_going = visit(static_cast<const VertexMap&>(f));
      return;
    }
    const Vertex x = order[depth];
    VertexSet allowed = candidates[x];
    for_each_vertex(from.neighbors(x) & assigned, [&](Vertex y) { allowed &= to.closed_neighborhood(f[y]); });
    assigned |= bit(x);
    while (allowed && keep_going) {
      f[x] = lowest(allowed);
      allowed &= allowed - 1;
      step(depth + 1);
    }
    assigned &= ~bit(x);
  };
  step(0);
  return keep_going;
}

/// Continuous self-maps f with f(x) in N[x] for every x (and f fixing
/// `fixed_point` when given) -- exactly the maps one step from the identity.
template <class Visitor>
bool for_each_identity_one_step_map(const DigitalImage& img, std::optional<Vertex> fixed_point,
                                    Visitor&& visit) {
  std::vector<VertexSet> candidates(img.size());
  for (Vertex x = 0; x < img.size(); ++x) candidates[x] = img.closed_neighborhood(x);
  if (fixed_point) {
    if (*fixed_point >= img.size()) throw error("basepoint " + std::to_string(*fixed_point) + " is not a point");
    candidates[*fixed_point] = bit(*fixed_point);
  }
  return enumerate_continuous_maps(img, img, candidates, std::forward<Visitor>(visit));
}

inline std::vector<VertexMap> identity_one_step_maps(const DigitalImage& img,
                                                     std::optional<Vertex> fixed_point = std::nullopt) {
  std::vector<VertexMap> out;
  for_each_identity_one_step_map(img, fixed_point, [&](const VertexMap& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

/// Reducible iff some map one step from the identity is not surjective; the
/// witness is the first one enumerated.
inline Decision is_reducible(const DigitalImage& img) {
  if (img.empty()) throw error("reducibility is defined for nonempty images");
  Decision d;
  for_each_identity_one_step_map(img, std::nullopt, [&](const VertexMap& f) {
    if (image_of(f) != img.vertices()) {
      d.value = true;
      d.witness = f;
      return false;
    }
    return true;
  });
  return d;
}

inline Decision rigidity_search(const DigitalImage& img, std::optional<Vertex> fixed_point) {
  if (img.empty()) throw error("rigidity is defined for nonempty images");
  Decision d;
  d.value = true;
  for_each_identity_one_step_map(img, fixed_point, [&](const VertexMap& f) {
    if (!is_identity(f)) {
      d.value = false;
      d.witness = f;
      return false;
    }
    return true;
  });
  return d;
}

/// Rigid iff the identity is the only map one step from the identity. The
/// witness, when not rigid, is a non-identity such map.
inline Decision is_rigid(const DigitalImage& img) { return rigidity_search(img, std::nullopt); }

/// Rigidity through homotopies that keep `basepoint` fixed throughout.
inline Decision is_pointed_rigid(const DigitalImage& img, Vertex basepoint) {
  if (basepoint >= img.size()) throw error("basepoint " + std::to_string(basepoint) + " is not a point");
  return rigidity_search(img, basepoint);
}

namespace detail {

inline std::string map_key(const VertexMap& f) {
  std::string key(f.size(), '\0');
  for (std::size_t i = 0; i < f.size(); ++i) key[i] = static_cast<char>(f[i]);
  return key;
}

}  // namespace detail

/// Breadth-first search from f toward g through continuous maps, one step at
/// a time. `yes` carries the shortest chain; `no` means the whole homotopy
/// class of f was exhausted without meeting g.
inline Verdict<HomotopyChain> homotopic_maps(const DigitalImage& from, const DigitalImage& to, const VertexMap& f,
                                             const VertexMap& g, const SearchBudget& budget = {}) {
  if (!is_continuous(from, to, f) || !is_continuous(from, to, g)) throw error("homotopy search needs continuous maps");
  Verdict<HomotopyChain> out;
  struct Node {
    VertexMap map;
    std::size_t parent;
    std::size_t depth;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::size_t> seen;
  nodes.push_back({f, 0, 0});
  seen.emplace(detail::map_key(f), 0);
  const auto target = detail::map_key(g);
  auto finish = [&](std::size_t idx) {
    HomotopyChain chain;
    for (std::size_t i = idx;; i = nodes[i].parent) {
      chain.push_back(nodes[i].map);
      if (i == 0) break;
    }
    std::reverse(chain.begin(), chain.end());
    out.kind = VerdictKind::yes;
    out.witness = std::move(chain);
  };
  if (seen.count(target)) {
    finish(0);
    return out;
  }
  bool truncated = false;
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (nodes[head].depth + 1 >= budget.max_chain_length) {
      truncated = true;
      continue;
    }
    std::vector<VertexSet> candidates(from.size());
    for (Vertex x = 0; x < from.size(); ++x) candidates[x] = to.closed_neighborhood(nodes[head].map[x]);
    std::optional<std::size_t> found;
    bool over_budget = false;
    const std::size_t depth = nodes[head].depth;
    enumerate_continuous_maps(from, to, candidates, [&](const VertexMap& h) {
      auto key = detail::map_key(h);
      if (seen.count(key)) return true;
      if (nodes.size() >= budget.max_states) {
        over_budget = true;
        return false;
      }
      seen.emplace(key, nodes.size());
      nodes.push_back({h, head, depth + 1});
      if (key == target) {
        found = nodes.size() - 1;
        return false;
      }
      return true;
    });
    if (found) {
      finish(*found);
      return out;
    }
    if (over_budget) {
      out.kind = VerdictKind::unknown;
      out.reason = "state budget of " + std::to_string(budget.max_states) + " exhausted";
      return out;
    }
  }
  if (truncated) {
    out.kind = VerdictKind::unknown;
    out.reason = "chain length budget of " + std::to_string(budget.max_chain_length) + " reached";
  } else {
    out.kind = VerdictKind::no;
    out.reason = "homotopy class exhausted (" + std::to_string(nodes.size()) + " maps)";
  }
  return out;
}

}  // namespace dighom
