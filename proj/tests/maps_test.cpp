#include <gtest/gtest.h>

#include <random>
#include <set>

#include "dighom/core.hpp"
#include "dighom/fixtures.hpp"
#include "dighom/maps.hpp"

using namespace dighom;

namespace {

// Every self-map of img, filtered directly by the two defining conditions.
std::set<VertexMap> brute_one_step_maps(const DigitalImage& img) {
  std::set<VertexMap> out;
  const std::size_t n = img.size();
  VertexMap f(n, 0);
  for (;;) {
    bool ok = true;
    for (Vertex x = 0; x < n && ok; ++x) {
      ok = img.adjacent_or_equal(x, f[x]);
      for (Vertex y = 0; y < n && ok; ++y)
        if (img.adjacent(x, y)) ok = img.adjacent_or_equal(f[x], f[y]);
    }
    if (ok) out.insert(f);
    std::size_t i = 0;
    while (i < n && ++f[i] == n) f[i++] = 0;
    if (i == n) break;
  }
  return out;
}

VertexMap x6_rotation() { return {1, 2, 3, 4, 0, 0}; }

VertexMap klein_swap() { return {5, 6, 7, 8, 9, 0, 1, 2, 3, 4}; }

DigitalImage random_tree(std::mt19937& rng, std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(std::uniform_int_distribution<Vertex>(0, v - 1)(rng), v);
  return build_image(n, edges);
}

}  // namespace

TEST(Continuity, IdentityConstantAndRotation) {
  for (const auto& [name, img] : fixtures()) {
    EXPECT_TRUE(is_continuous(img, identity_map(img.size()))) << name;
    EXPECT_TRUE(is_continuous(img, constant_map(img.size(), 0))) << name;
  }
  EXPECT_TRUE(is_continuous(named_image("X6"), x6_rotation()));
  EXPECT_FALSE(is_continuous(cycle_image(5), VertexMap{0, 2, 4, 1, 3}));
  EXPECT_THROW(is_continuous(cycle_image(5), VertexMap{0, 1}), error);
}

TEST(Compose, IdentityLawsAndMismatch) {
  auto img = named_image("X6");
  auto f = x6_rotation();
  EXPECT_EQ(compose(identity_map(6), f), f);
  EXPECT_EQ(compose(f, identity_map(6)), f);
  EXPECT_THROW(compose(VertexMap{0, 1}, f), error);
  std::mt19937 rng(3);
  auto maps = identity_one_step_maps(named_image("KLEIN"));
  for (int t = 0; t < 50; ++t) {
    const auto& a = maps[rng() % maps.size()];
    const auto& b = maps[rng() % maps.size()];
    EXPECT_TRUE(is_continuous(named_image("KLEIN"), compose(a, b)));
  }
}

TEST(OneStep, Examples) {
  auto c5 = cycle_image(5);
  auto id = identity_map(5);
  VertexMap rot{1, 2, 3, 4, 0};
  VertexMap twice{2, 3, 4, 0, 1};
  EXPECT_TRUE(one_step_related(c5, id, id));
  EXPECT_TRUE(one_step_related(c5, id, rot));
  EXPECT_TRUE(one_step_related(c5, rot, id));
  EXPECT_FALSE(one_step_related(c5, id, twice));
  EXPECT_THROW(one_step_related(c5, id, VertexMap{0}), error);
}

TEST(IdentityOneStepMaps, MatchesBruteForce) {
  EXPECT_EQ(identity_one_step_maps(build_image(1, {})), (std::vector<VertexMap>{{0}}));
  for (const char* name : {"C5", "C6", "X6", "IMG7_2"}) {
    auto img = named_image(name);
    auto listed = identity_one_step_maps(img);
    std::set<VertexMap> got(listed.begin(), listed.end());
    EXPECT_EQ(got.size(), listed.size()) << name;
    EXPECT_EQ(got, brute_one_step_maps(img)) << name;
  }
  auto c5 = identity_one_step_maps(cycle_image(5));
  std::set<VertexMap> got(c5.begin(), c5.end());
  EXPECT_TRUE(got.count(VertexMap{1, 2, 3, 4, 0}));
  EXPECT_TRUE(got.count(VertexMap{4, 0, 1, 2, 3}));
  EXPECT_TRUE(got.count(identity_map(5)));
  EXPECT_EQ(identity_one_step_maps(named_image("IMG7_2")), (std::vector<VertexMap>{identity_map(7)}));
}

TEST(IdentityOneStepMaps, PointedVariantFixesBasepoint) {
  auto maps = identity_one_step_maps(cycle_image(6), Vertex{2});
  for (const auto& f : maps) EXPECT_EQ(f[2], 2u);
  EXPECT_THROW(identity_one_step_maps(cycle_image(6), Vertex{6}), error);
}

TEST(Reducible, Examples) {
  EXPECT_TRUE(is_reducible(cycle_image(4)).value);
  EXPECT_FALSE(is_reducible(cycle_image(5)).value);
  auto x6 = named_image("X6");
  auto d = is_reducible(x6);
  ASSERT_TRUE(d.value);
  ASSERT_TRUE(d.witness.has_value());
  EXPECT_NE(image_of(*d.witness), x6.vertices());
  EXPECT_TRUE(is_continuous(x6, *d.witness));
  EXPECT_TRUE(one_step_related(x6, identity_map(6), *d.witness));
  auto stream = identity_one_step_maps(x6);
  EXPECT_NE(std::find(stream.begin(), stream.end(), x6_rotation()), stream.end());
  EXPECT_THROW(is_reducible(DigitalImage{}), error);
}

TEST(Rigid, Examples) {
  EXPECT_TRUE(is_rigid(named_image("IMG7_2")).value);
  for (std::size_t m = 5; m <= 9; ++m) {
    auto d = is_rigid(cycle_image(m));
    ASSERT_FALSE(d.value);
    VertexMap plus(m), minus(m);
    for (Vertex i = 0; i < m; ++i) {
      plus[i] = static_cast<Vertex>((i + 1) % m);
      minus[i] = static_cast<Vertex>((i + m - 1) % m);
    }
    EXPECT_TRUE(*d.witness == plus || *d.witness == minus);
  }
  auto klein = named_image("KLEIN");
  EXPECT_FALSE(is_rigid(klein).value);
  EXPECT_TRUE(is_continuous(klein, klein_swap()));
  EXPECT_TRUE(one_step_related(klein, identity_map(10), klein_swap()));
}

TEST(Rigid, RigidImpliesIrreducible) {
  for (const auto& [name, img] : fixtures())
    if (is_rigid(img).value) {
      EXPECT_FALSE(is_reducible(img).value) << name;
    }
}

TEST(PointedRigid, Examples) {
  auto x6 = named_image("X6");
  for (Vertex b = 0; b < 6; ++b) EXPECT_TRUE(is_pointed_rigid(x6, b).value) << b;
  EXPECT_TRUE(is_pointed_rigid(cycle_image(5), 0).value);
  EXPECT_FALSE(is_pointed_rigid(path_image(3), 1).value);
  EXPECT_THROW(is_pointed_rigid(x6, 6), error);
}

TEST(HomotopicMaps, Examples) {
  auto c5 = cycle_image(5);
  auto same = homotopic_maps(c5, c5, identity_map(5), identity_map(5));
  ASSERT_TRUE(same.yes());
  EXPECT_EQ(same.witness->size(), 1u);
  auto rot = homotopic_maps(c5, c5, identity_map(5), VertexMap{1, 2, 3, 4, 0});
  ASSERT_TRUE(rot.yes());
  EXPECT_EQ(rot.witness->size(), 2u);
  EXPECT_TRUE(verify_chain(c5, c5, *rot.witness));
  // The reflection is not homotopic to the identity on C5.
  auto refl = homotopic_maps(c5, c5, identity_map(5), VertexMap{0, 4, 3, 2, 1});
  EXPECT_TRUE(refl.no());

  auto m72 = named_image("IMG7_2");
  auto constant = homotopic_maps(m72, m72, identity_map(7), constant_map(7, 0));
  EXPECT_TRUE(constant.no());

  SearchBudget tiny;
  tiny.max_states = 2;
  auto p = path_image(6);
  auto cut = homotopic_maps(p, p, identity_map(6), constant_map(6, 5), tiny);
  EXPECT_TRUE(cut.unknown());
}

TEST(InverseContinuity, ContinuousBijectionsOfFixtures) {
  for (const char* name : {"C5", "C6", "X6", "IMG7_2"}) {
    auto img = named_image(name);
    VertexMap perm = identity_map(img.size());
    do {
      if (!is_continuous(img, perm)) continue;
      VertexMap inv(perm.size());
      for (Vertex v = 0; v < perm.size(); ++v) inv[perm[v]] = v;
      EXPECT_TRUE(is_continuous(img, inv)) << name;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(Core, TreesCollapseToAPoint) {
  std::mt19937 rng(13);
  for (int t = 0; t < 20; ++t) {
    auto tree = random_tree(rng, 2 + t % 9);
    auto core = reduce_to_core(tree);
    EXPECT_EQ(core.core.size(), 1u);
    for (const auto& step : core.steps) EXPECT_TRUE(verify_reduction(step));
    auto eq = core_equivalence(tree, core);
    EXPECT_TRUE(verify_equivalence(tree, core.core, eq));
  }
}

TEST(Core, KnownCores) {
  auto x6 = reduce_to_core(named_image("X6"));
  EXPECT_TRUE(are_isomorphic(x6.core, cycle_image(5)));
  EXPECT_FALSE(is_reducible(x6.core).value);
  auto c7 = reduce_to_core(cycle_image(7));
  EXPECT_TRUE(c7.steps.empty());
  EXPECT_EQ(c7.core, cycle_image(7));
}

TEST(Core, EveryFixtureCoreIsIrreducibleAndCertified) {
  for (const auto& [name, img] : fixtures()) {
    if (img.size() > 11) continue;
    auto core = reduce_to_core(img);
    EXPECT_FALSE(is_reducible(core.core).value) << name;
    for (const auto& step : core.steps) EXPECT_TRUE(verify_reduction(step)) << name;
    EXPECT_TRUE(verify_equivalence(img, core.core, core_equivalence(img, core))) << name;
  }
}

TEST(Equivalence, Examples) {
  EXPECT_TRUE(are_homotopy_equivalent(named_image("X6"), cycle_image(5)));
  EXPECT_FALSE(are_homotopy_equivalent(cycle_image(5), cycle_image(6)));
  EXPECT_TRUE(are_homotopy_equivalent(cycle_image(4), build_image(1, {})));
  auto cert = equivalence_certificate(named_image("X6"), cycle_image(5));
  ASSERT_TRUE(cert.has_value());
  EXPECT_TRUE(verify_equivalence(named_image("X6"), cycle_image(5), *cert));
  auto back = equivalence_certificate(cycle_image(5), named_image("X6"));
  ASSERT_TRUE(back.has_value());
  EXPECT_TRUE(verify_equivalence(cycle_image(5), named_image("X6"), *back));
  EXPECT_FALSE(equivalence_certificate(cycle_image(5), cycle_image(6)).has_value());
}

TEST(Equivalence, TamperedCertificateFails) {
  auto x6 = named_image("X6");
  auto cert = *equivalence_certificate(x6, cycle_image(5));
  auto bad = cert;
  bad.chain_gf.back()[0] = 3;
  EXPECT_FALSE(verify_equivalence(x6, cycle_image(5), bad));
  bad = cert;
  bad.f[0] = 2;
  EXPECT_FALSE(verify_equivalence(x6, cycle_image(5), bad));
}

TEST(PointedEquivalence, X6AgainstPentagon) {
  auto check = pointed_equivalence_check(named_image("X6"), cycle_image(5));
  EXPECT_TRUE(check.homotopy_equivalent);
  EXPECT_TRUE(check.all_pointed_rigid);
  EXPECT_TRUE(check.cardinality_excludes);
  EXPECT_FALSE(check.pointed_equivalence_possible);
}
