#pragma once

// Cores and homotopy equivalence. Two finite images are homotopy equivalent
// exactly when their irreducible cores are isomorphic.

#include <optional>
#include <string>
#include <vector>

#include "dighom/canonical.hpp"
#include "dighom/certificate.hpp"
#include "dighom/maps.hpp"

namespace dighom {

struct CoreResult {
  DigitalImage core;
  std::vector<ReductionCertificate> steps;
};

/// Collapses onto the image of the first nonsurjective one-step map until the
/// image is irreducible.
inline CoreResult reduce_to_core(const DigitalImage& img) {
  if (img.empty()) throw error("core is defined for nonempty images");
  CoreResult out{img, {}};
  for (;;) {
    auto d = is_reducible(out.core);
    if (!d.value) break;
    auto cert = detail::finish_certificate(ReductionKind::one_step_nonsurjective, out.core,
                                           {identity_map(out.core.size()), *d.witness});
    out.core = cert.result;
    out.steps.push_back(std::move(cert));
  }
  return out;
}

/// Equivalence certificate between `img` and its core.
inline EquivalenceCertificate core_equivalence(const DigitalImage& img, const CoreResult& core) {
  return compose_reductions(img, core.steps);
}

inline bool are_homotopy_equivalent(const DigitalImage& a, const DigitalImage& b) {
  return are_isomorphic(reduce_to_core(a).core, reduce_to_core(b).core);
}

/// A replayable certificate for a ~ b, or nothing when the cores differ.
inline std::optional<EquivalenceCertificate> equivalence_certificate(const DigitalImage& a, const DigitalImage& b) {
  const auto ca = reduce_to_core(a);
  const auto cb = reduce_to_core(b);
  auto phi = isomorphism(ca.core, cb.core);
  if (!phi) return std::nullopt;
  return join_equivalences(core_equivalence(a, ca), *phi, core_equivalence(b, cb));
}

/// Outcome of asking whether `x` is pointed homotopy equivalent to a smaller
/// image, settled by pointed rigidity plus counting points.
struct PointedEquivalenceCheck {
  bool homotopy_equivalent = false;
  std::vector<bool> pointed_rigid;  // per basepoint of x
  bool all_pointed_rigid = false;
  bool cardinality_excludes = false;
  bool pointed_equivalence_possible = true;
  std::string explanation;
};

/// If x is pointed rigid at a basepoint, any pointed self-equivalence g.f
/// homotopic to id_x rel basepoint must be the identity, so f is injective
/// and y needs at least as many points as x. With y smaller, no pointed
/// equivalence exists for any basepoint where x is pointed rigid.
inline PointedEquivalenceCheck pointed_equivalence_check(const DigitalImage& x, const DigitalImage& y) {
  PointedEquivalenceCheck out;
  out.homotopy_equivalent = are_homotopy_equivalent(x, y);
  out.all_pointed_rigid = true;
  for (Vertex b = 0; b < x.size(); ++b) {
    const bool rigid = is_pointed_rigid(x, b).value;
    out.pointed_rigid.push_back(rigid);
    out.all_pointed_rigid = out.all_pointed_rigid && rigid;
  }
  out.cardinality_excludes = y.size() < x.size();
  out.pointed_equivalence_possible = !(out.all_pointed_rigid && out.cardinality_excludes);
  out.explanation = std::string(out.homotopy_equivalent ? "homotopy equivalent" : "not homotopy equivalent") +
                    "; " + (out.all_pointed_rigid ? "pointed rigid at every basepoint" : "not pointed rigid everywhere") +
                    "; " + std::to_string(x.size()) + " vs " + std::to_string(y.size()) + " points; " +
                    (out.pointed_equivalence_possible ? "pointed equivalence not excluded"
                                                      : "no pointed homotopy equivalence for any basepoint");
  return out;
}

}  // namespace dighom
