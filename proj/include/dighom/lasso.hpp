#pragma once

// Lassos without right angles and the rigidity certificate built from them.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dighom/loops.hpp"

namespace dighom {

/// path.front() = r(0), path.back() = r(k) = loop.front() = p(c_0).
struct Lasso {
  DigitalPath path;
  DigitalLoop loop;
};

inline bool operator==(const Lasso& a, const Lasso& b) { return a.path == b.path && a.loop == b.loop; }

/// Replays every clause: simple path with k >= 1, simple loop with m >= 5,
/// shared junction point, junction neighbors of the loop neither equal nor
/// adjacent to r(k-1), no right angles in the path, the loop, or at either
/// junction corner.
inline bool verify_lasso(const DigitalImage& img, const Lasso& l) {
  const auto& r = l.path;
  const auto& p = l.loop;
  if (r.size() < 2 || p.size() < 5) return false;
  if (!is_simple_path(img, r) || !is_simple_loop(img, p)) return false;
  if (r.back() != p.front()) return false;
  const Vertex before = r[r.size() - 2];
  const Vertex next = p[1], prev = p.back();
  if (img.adjacent_or_equal(before, next) || img.adjacent_or_equal(before, prev)) return false;
  if (!path_has_no_right_angles(img, r) || !loop_has_no_right_angles(img, p)) return false;
  return is_straight_corner(img, before, p[0], next) && is_straight_corner(img, before, p[0], prev);
}

namespace detail {

// Right-angle-free simple loops of length m, indexed by starting point, each
// list in lexicographic order.
inline std::vector<std::vector<DigitalLoop>> straight_loops_by_start(const DigitalImage& img, std::size_t m) {
  std::vector<std::vector<DigitalLoop>> out(img.size());
  for (const auto& loop : enumerate_simple_loops(img, m)) {
    if (!loop_has_no_right_angles(img, loop)) continue;
    for (std::size_t s = 0; s < m; ++s) {
      auto q = rotate(loop, static_cast<std::ptrdiff_t>(s));
      out[q[0]].push_back(std::move(q));
    }
  }
  for (auto& v : out) std::sort(v.begin(), v.end());
  return out;
}

// Simple right-angle-free paths beginning (x_prev, x) with exactly k edges,
// lexicographic order.
inline std::vector<DigitalPath> straight_paths(const DigitalImage& img, Vertex x_prev, Vertex x, std::size_t k) {
  std::vector<DigitalPath> out;
  DigitalPath r{x_prev, x};
  auto rec = [&](auto&& self) -> void {
    if (r.size() == k + 1) {
      out.push_back(r);
      return;
    }
    for_each_vertex(img.neighbors(r.back()), [&](Vertex v) {
      for (std::size_t j = 0; j + 1 < r.size(); ++j)
        if (r[j] == v || img.adjacent(r[j], v)) return;
      if (!is_straight_corner(img, r[r.size() - 2], r.back(), v)) return;
      r.push_back(v);
      self(self);
      r.pop_back();
    });
  };
  rec(rec);
  return out;
}

class LassoSearch {
 public:
  explicit LassoSearch(const DigitalImage& img) : img_(img) {
    for (std::size_t m = 5; m <= img.size(); ++m) loops_.push_back(straight_loops_by_start(img, m));
  }

  // Shortest path first, then shortest loop, then lexicographic.
  std::optional<Lasso> find(Vertex x, Vertex x_prev) const {
    for (std::size_t k = 1; k < img_.size(); ++k) {
      const auto paths = straight_paths(img_, x_prev, x, k);
      if (paths.empty()) break;
      for (const auto& by_start : loops_)
        for (const auto& r : paths)
          for (const auto& p : by_start[r.back()]) {
            Lasso l{r, p};
            if (verify_lasso(img_, l)) return l;
          }
    }
    return std::nullopt;
  }

 private:
  const DigitalImage& img_;
  std::vector<std::vector<std::vector<DigitalLoop>>> loops_;
};

}  // namespace detail

/// Lasso whose path starts r(0) = x_prev, r(1) = x.
inline std::optional<Lasso> find_lasso(const DigitalImage& img, Vertex x, Vertex x_prev) {
  if (x >= img.size() || x_prev >= img.size() || !img.adjacent(x, x_prev))
    throw error("find_lasso needs an adjacent pair");
  return detail::LassoSearch(img).find(x, x_prev);
}

/// One lasso per ordered adjacent pair, keyed by (x_prev, x).
struct RigidityCertificate {
  std::map<std::pair<Vertex, Vertex>, Lasso> lassos;
};

/// Some when every ordered adjacent pair has a lasso; then the image is rigid.
/// Nothing says nothing about rigidity.
inline std::optional<RigidityCertificate> lasso_rigidity(const DigitalImage& img) {
  detail::LassoSearch search(img);
  RigidityCertificate cert;
  for (Vertex x = 0; x < img.size(); ++x) {
    bool failed = false;
    for_each_vertex(img.neighbors(x), [&](Vertex x_prev) {
      if (failed) return;
      auto l = search.find(x, x_prev);
      if (!l)
        failed = true;
      else
        cert.lassos.emplace(std::make_pair(x_prev, x), std::move(*l));
    });
    if (failed) return std::nullopt;
  }
  return cert;
}

inline bool verify_rigidity_certificate(const DigitalImage& img, const RigidityCertificate& cert) {
  std::size_t pairs = 0;
  for (Vertex x = 0; x < img.size(); ++x) {
    bool ok = true;
    for_each_vertex(img.neighbors(x), [&](Vertex x_prev) {
      ++pairs;
      auto it = cert.lassos.find({x_prev, x});
      ok = ok && it != cert.lassos.end() && it->second.path[0] == x_prev && it->second.path[1] == x &&
           verify_lasso(img, it->second);
    });
    if (!ok) return false;
  }
  return pairs == cert.lassos.size();
}

}  // namespace dighom
