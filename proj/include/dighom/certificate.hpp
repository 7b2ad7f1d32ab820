#pragma once

// Reduction and homotopy-equivalence certificates, their replay, and the
// composition of a sequence of reductions into one equivalence.

#include <optional>
#include <string>
#include <vector>

#include "dighom/canonical.hpp"
#include "dighom/image.hpp"
#include "dighom/maps.hpp"

namespace dighom {

enum class ReductionKind {
  dominating_clique,
  neighborhood_absorption,
  path_reduction,
  chordal_collapse,
  one_step_nonsurjective,
};

inline const char* to_string(ReductionKind k) {
  switch (k) {
    case ReductionKind::dominating_clique:
      return "DominatingClique";
    case ReductionKind::neighborhood_absorption:
      return "NeighborhoodAbsorption";
    case ReductionKind::path_reduction:
      return "PathReduction";
    case ReductionKind::chordal_collapse:
      return "ChordalCollapse";
    case ReductionKind::one_step_nonsurjective:
      return "OneStepNonsurjective";
  }
  return "?";
}

/// One collapse of `source` onto the subimage induced on `kept`.
///
/// `chain` runs from the identity of `source` to a retraction r with
/// r(source) = kept. Either r is one step from the identity, or `kept` is a
/// single point; in both cases r restricted to `kept` is homotopic to the
/// identity of `kept`, so source and result are homotopy equivalent.
struct ReductionCertificate {
  ReductionKind kind = ReductionKind::one_step_nonsurjective;
  DigitalImage source;

  std::vector<Vertex> clique;             // dominating_clique
  Vertex absorbed = 0, absorber = 0;      // neighborhood_absorption: absorbed -> absorber
  std::vector<Vertex> path_p, path_q;     // path_reduction: p(i) -> q(i)
  std::vector<Vertex> elimination_order;  // chordal_collapse

  HomotopyChain chain;
  VertexSet kept = 0;
  DigitalImage result;

  const VertexMap& retraction() const { return chain.back(); }
};

namespace detail {

inline ReductionCertificate finish_certificate(ReductionKind kind, const DigitalImage& source, HomotopyChain chain) {
  ReductionCertificate cert;
  cert.kind = kind;
  cert.source = source;
  cert.chain = std::move(chain);
  cert.kept = image_of(cert.chain.back());
  cert.result = induced_subimage(source, cert.kept);
  return cert;
}

inline bool is_injective_path(const DigitalImage& img, const std::vector<Vertex>& p) {
  VertexSet seen = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] >= img.size() || (seen & bit(p[i]))) return false;
    seen |= bit(p[i]);
    if (i > 0 && !img.adjacent(p[i - 1], p[i])) return false;
  }
  return !p.empty();
}

}  // namespace detail

/// Checks the hypotheses of the path-collapse rule for the pair (p, q):
/// equal-length injective paths, p(i) adjacent-or-equal to q(i), and
/// N[p(i)] contained in N[q(i)] together with p's own neighbors along the path.
inline bool path_reduction_conditions(const DigitalImage& img, const std::vector<Vertex>& p,
                                      const std::vector<Vertex>& q) {
  if (p.size() != q.size() || !detail::is_injective_path(img, p) || !detail::is_injective_path(img, q)) return false;
  const std::size_t k = p.size() - 1;
  for (std::size_t i = 0; i <= k; ++i) {
    if (!img.adjacent_or_equal(p[i], q[i])) return false;
    VertexSet allowed = img.closed_neighborhood(q[i]);
    if (i > 0) allowed |= bit(p[i - 1]);
    if (i < k) allowed |= bit(p[i + 1]);
    if ((img.closed_neighborhood(p[i]) & ~allowed) != 0) return false;
  }
  // Some point must actually disappear.
  VertexSet ps = 0, qs = 0;
  for (auto v : p) ps |= bit(v);
  for (auto v : q) qs |= bit(v);
  return (ps & ~qs) != 0;
}

inline bool is_perfect_elimination_order(const DigitalImage& img, const std::vector<Vertex>& order) {
  if (order.size() != img.size()) return false;
  VertexSet later = img.vertices();
  VertexSet seen = 0;
  for (auto v : order) {
    if (v >= img.size() || (seen & bit(v))) return false;
    seen |= bit(v);
    later &= ~bit(v);
    if (!is_clique(img, img.neighbors(v) & later)) return false;
  }
  return true;
}

/// Replays a certificate: the chain, the retraction onto `kept`, the result
/// image, and the hypotheses of the rule named by `kind`.
inline bool verify_reduction(const ReductionCertificate& cert) {
  const auto& src = cert.source;
  if (cert.chain.empty() || !is_identity(cert.chain.front()) || cert.chain.front().size() != src.size()) return false;
  if (!verify_chain(src, src, cert.chain)) return false;
  const auto& r = cert.retraction();
  if (image_of(r) != cert.kept || cert.kept == src.vertices() || cert.kept == 0) return false;
  if (!(cert.result == induced_subimage(src, cert.kept))) return false;
  if (count(cert.kept) > 1 && cert.chain.size() != 2) return false;
  switch (cert.kind) {
    case ReductionKind::dominating_clique: {
      VertexSet s = 0;
      for (auto v : cert.clique) s |= (v < src.size() ? bit(v) : 0);
      if (s == 0 || !is_clique(src, s)) return false;
      for (Vertex x = 0; x < src.size(); ++x)
        if (!(src.closed_neighborhood(x) & s)) return false;
      return cert.kept == bit(cert.clique.front());
    }
    case ReductionKind::neighborhood_absorption: {
      const auto x = cert.absorbed, y = cert.absorber;
      if (x == y || x >= src.size() || y >= src.size()) return false;
      if ((src.closed_neighborhood(x) & ~src.closed_neighborhood(y)) != 0) return false;
      VertexMap expected = identity_map(src.size());
      expected[x] = y;
      return cert.chain.size() == 2 && r == expected;
    }
    case ReductionKind::path_reduction: {
      if (!path_reduction_conditions(src, cert.path_p, cert.path_q) || cert.chain.size() != 2) return false;
      VertexMap expected = identity_map(src.size());
      for (std::size_t i = 0; i < cert.path_p.size(); ++i) expected[cert.path_p[i]] = cert.path_q[i];
      return r == expected;
    }
    case ReductionKind::chordal_collapse:
      return is_perfect_elimination_order(src, cert.elimination_order) && count(cert.kept) == 1;
    case ReductionKind::one_step_nonsurjective:
      return cert.chain.size() == 2;
  }
  return false;
}

/// Maps f: X -> Y and g: Y -> X with chains from g.f to id_X and from f.g to
/// id_Y.
struct EquivalenceCertificate {
  VertexMap f, g;
  HomotopyChain chain_gf, chain_fg;
};

inline bool verify_equivalence(const DigitalImage& x, const DigitalImage& y, const EquivalenceCertificate& cert) {
  if (cert.f.size() != x.size() || cert.g.size() != y.size()) return false;
  for (auto v : cert.f)
    if (v >= y.size()) return false;
  for (auto v : cert.g)
    if (v >= x.size()) return false;
  if (!is_continuous(x, y, cert.f) || !is_continuous(y, x, cert.g)) return false;
  if (cert.chain_gf.empty() || cert.chain_fg.empty()) return false;
  if (cert.chain_gf.front() != compose(cert.g, cert.f) || !is_identity(cert.chain_gf.back())) return false;
  if (cert.chain_fg.front() != compose(cert.f, cert.g) || !is_identity(cert.chain_fg.back())) return false;
  return verify_chain(x, x, cert.chain_gf) && verify_chain(y, y, cert.chain_fg);
}

namespace detail {

inline void push_distinct(HomotopyChain& chain, VertexMap slice) {
  if (chain.empty() || chain.back() != slice) chain.push_back(std::move(slice));
}

}  // namespace detail

/// Equivalence between the source of the first step and the result of the
/// last, for a sequence where each step's source is the previous result.
/// With no steps, `image` is paired with itself by identities.
inline EquivalenceCertificate compose_reductions(const DigitalImage& image,
                                                 const std::vector<ReductionCertificate>& steps) {
  EquivalenceCertificate out;
  const std::size_t n = image.size();
  if (steps.empty()) {
    out.f = out.g = identity_map(n);
    out.chain_gf = out.chain_fg = {identity_map(n)};
    return out;
  }
  const std::size_t k_steps = steps.size();
  std::vector<VertexMap> proj(k_steps), incl(k_steps);
  for (std::size_t k = 0; k < k_steps; ++k) {
    const auto& s = steps[k];
    const auto kept = to_vector(s.kept);
    std::vector<Vertex> index_of(s.source.size(), 0);
    for (std::size_t i = 0; i < kept.size(); ++i) index_of[kept[i]] = static_cast<Vertex>(i);
    proj[k].resize(s.source.size());
    for (Vertex x = 0; x < s.source.size(); ++x) proj[k][x] = index_of[s.retraction()[x]];
    incl[k] = kept;
  }
  // prefix_proj[k]: X -> source_k; prefix_incl[k]: source_k -> X.
  std::vector<VertexMap> prefix_proj(k_steps + 1), prefix_incl(k_steps + 1);
  prefix_proj[0] = identity_map(n);
  prefix_incl[0] = identity_map(n);
  for (std::size_t k = 0; k < k_steps; ++k) {
    prefix_proj[k + 1] = compose(proj[k], prefix_proj[k]);
    prefix_incl[k + 1] = compose(prefix_incl[k], incl[k]);
  }
  const std::size_t core_n = steps.back().result.size();
  // suffix_proj[k]: result_k -> core; suffix_incl[k]: core -> result_k.
  std::vector<VertexMap> suffix_proj(k_steps), suffix_incl(k_steps);
  suffix_proj[k_steps - 1] = identity_map(core_n);
  suffix_incl[k_steps - 1] = identity_map(core_n);
  for (std::size_t k = k_steps - 1; k-- > 0;) {
    suffix_proj[k] = compose(suffix_proj[k + 1], proj[k + 1]);
    suffix_incl[k] = compose(incl[k + 1], suffix_incl[k + 1]);
  }
  out.f = prefix_proj[k_steps];
  out.g = prefix_incl[k_steps];

  HomotopyChain forward;  // id_X -> g.f
  for (std::size_t k = 0; k < k_steps; ++k)
    for (const auto& slice : steps[k].chain)
      detail::push_distinct(forward, compose(prefix_incl[k], compose(slice, prefix_proj[k])));
  out.chain_gf.assign(forward.rbegin(), forward.rend());

  for (std::size_t k = 0; k < k_steps; ++k) {
    const std::size_t rn = steps[k].result.size();
    HomotopyChain inner;  // result_k: proj.incl -> id
    if (rn == 1) {
      inner = {VertexMap{0}};
    } else {
      inner = {compose(proj[k], incl[k]), identity_map(rn)};
    }
    for (const auto& slice : inner)
      detail::push_distinct(out.chain_fg, compose(suffix_proj[k], compose(slice, suffix_incl[k])));
  }
  return out;
}

/// Joins X ~ A and Y ~ B (given as certificates) through an isomorphism
/// phi: A -> B into a certificate for X ~ Y.
inline EquivalenceCertificate join_equivalences(const EquivalenceCertificate& xa, const VertexMap& phi,
                                                const EquivalenceCertificate& yb) {
  VertexMap phi_inv(phi.size());
  for (Vertex v = 0; v < phi.size(); ++v) phi_inv[phi[v]] = v;
  EquivalenceCertificate out;
  out.f = compose(yb.g, compose(phi, xa.f));
  out.g = compose(xa.g, compose(phi_inv, yb.f));
  for (const auto& s : yb.chain_fg)
    detail::push_distinct(out.chain_gf, compose(xa.g, compose(phi_inv, compose(s, compose(phi, xa.f)))));
  for (const auto& s : xa.chain_gf) detail::push_distinct(out.chain_gf, s);
  for (const auto& s : xa.chain_fg)
    detail::push_distinct(out.chain_fg, compose(yb.g, compose(phi, compose(s, compose(phi_inv, yb.f)))));
  for (const auto& s : yb.chain_gf) detail::push_distinct(out.chain_fg, s);
  return out;
}

}  // namespace dighom
