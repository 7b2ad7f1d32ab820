#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include <unistd.h>

#include "dighom/catalog.hpp"
#include "dighom/fixtures.hpp"

using namespace dighom;

namespace {

std::vector<std::string> keys_of(const std::vector<DigitalImage>& graphs) {
  std::vector<std::string> out;
  for (const auto& g : graphs) out.push_back(canonical_key(g));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> class_keys(const CatalogReport& r) {
  std::vector<std::string> out;
  for (const auto& c : r.irreducible_classes) out.push_back(c.graph6);
  return out;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("dighom-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Generator, ConnectedCounts) {
  const std::vector<std::size_t> expected{1, 1, 2, 6, 21, 112, 853, 11117};
  for (std::size_t n = 1; n <= expected.size(); ++n) EXPECT_EQ(connected_graphs(n, 1).size(), expected[n - 1]) << n;
}

TEST(Generator, AgreesWithExhaustiveEnumeration) {
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto keys = keys_of(connected_graphs(n, 1));
    EXPECT_TRUE(std::adjacent_find(keys.begin(), keys.end()) == keys.end()) << n;
    EXPECT_EQ(keys, connected_graph_keys_exhaustive(n)) << n;
  }
}

TEST(Generator, OutputIsCanonicalAndConnected) {
  for (const auto& g : connected_graphs(6, 1)) {
    EXPECT_TRUE(is_connected(g));
    EXPECT_EQ(encode_graph6(g), canonical_key(g));
  }
}

TEST(Generator, IndependentOfJobCount) {
  const auto a = connected_graphs(7, 1), b = connected_graphs(7, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(encode_graph6(a[i]), encode_graph6(b[i]));
}

TEST(Graph6, RoundTripsEveryGraphOnSevenPoints) {
  for (const auto& g : connected_graphs(7, 1)) {
    const auto text = encode_graph6(g);
    EXPECT_EQ(parse_graph6(text), g);
    EXPECT_EQ(encode_graph6(parse_graph6(text)), text);
  }
}

TEST(Catalog, SmallCounts) {
  const std::vector<std::size_t> survivors{1, 0, 0, 0, 1, 2, 15};
  const std::vector<std::size_t> classes{1, 0, 0, 0, 1, 1, 3};
  for (std::size_t n = 1; n <= 7; ++n) {
    CatalogOptions opt;
    opt.jobs = 1;
    const auto r = run_catalog(n, opt);
    EXPECT_EQ(r.lemma_survivors.size(), survivors[n - 1]) << n;
    EXPECT_EQ(r.irreducible_classes.size(), classes[n - 1]) << n;
  }
}

TEST(Catalog, SevenPointClassesAreNamed) {
  CatalogOptions opt;
  opt.jobs = 1;
  std::set<std::string> names;
  for (const auto& c : run_catalog(7, opt).irreducible_classes) {
    ASSERT_TRUE(c.matched_fixture);
    names.insert(*c.matched_fixture);
    EXPECT_EQ(c.rigid, *c.matched_fixture != "C7");  // a rotation is one step from the identity
  }
  EXPECT_EQ(names, (std::set<std::string>{"C7", "IMG7_1", "IMG7_2"}));
}

TEST(Catalog, EightPointsAllFiltersAgree) {
  std::vector<std::string> reference;
  const std::vector<std::pair<FilterConfig, std::size_t>> runs{
      {FilterConfig::catalog, 160}, {FilterConfig::catalog_edge_paths, 106}, {FilterConfig::fast, 91}};
  for (auto [filter, survivors] : runs) {
    CatalogOptions opt;
    opt.filter = filter;
    const auto r = run_catalog(8, opt);
    EXPECT_EQ(r.total_connected, 11117u);
    EXPECT_EQ(r.lemma_survivors.size(), survivors) << to_string(filter);
    EXPECT_EQ(r.irreducible_classes.size(), 28u) << to_string(filter);
    if (reference.empty()) reference = class_keys(r);
    EXPECT_EQ(class_keys(r), reference) << to_string(filter);
  }
}

TEST(Catalog, EightPointFlags) {
  const auto r = run_catalog(8, {});
  std::size_t rigid = 0, lassoed = 0;
  std::set<std::string> names;
  for (const auto& c : r.irreducible_classes) {
    rigid += c.rigid;
    lassoed += c.lasso_certificate;
    if (c.lasso_certificate) {
      EXPECT_TRUE(c.rigid) << c.graph6;
    }
    if (c.matched_fixture) names.insert(*c.matched_fixture);
  }
  EXPECT_EQ(rigid, 26u);
  EXPECT_EQ(lassoed, 3u);
  for (const char* name : {"C8", "IMG8_1", "IMG8_2", "IMG8_3", "IMG8_4"}) EXPECT_TRUE(names.count(name)) << name;
}

TEST(Catalog, IndependentOfJobCount) {
  CatalogOptions one, three;
  one.jobs = 1;
  three.jobs = 3;
  const auto a = run_catalog(7, one), b = run_catalog(7, three);
  EXPECT_EQ(a.total_connected, b.total_connected);
  EXPECT_EQ(a.lemma_survivors, b.lemma_survivors);
  EXPECT_EQ(class_keys(a), class_keys(b));
}

TEST(Catalog, ShardsResume) {
  const auto dir = scratch_dir("shards");
  CatalogOptions opt;
  opt.jobs = 2;
  opt.shard_dir = dir.string();
  opt.shards = 8;
  const auto first = run_catalog(7, opt);
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) files += e.path().extension() == ".g6";
  EXPECT_EQ(files, 8u);

  // A missing shard is recomputed and a truncated one is ignored.
  std::filesystem::remove(detail::shard_path(dir.string(), 0));
  { std::ofstream(detail::shard_path(dir.string(), 1)) << "F?~vw\n"; }
  const auto second = run_catalog(7, opt);
  EXPECT_EQ(second.total_connected, first.total_connected);
  EXPECT_EQ(second.lemma_survivors, first.lemma_survivors);
  EXPECT_EQ(class_keys(second), class_keys(first));

  // Loaded shards are trusted: a doctored total shows up in the report.
  { std::ofstream(detail::shard_path(dir.string(), 2)) << "# total 0\n"; }
  EXPECT_NE(run_catalog(7, opt).total_connected, first.total_connected);
  std::filesystem::remove_all(dir);
}

TEST(Catalog, FileInputMatchesGenerator) {
  const auto dir = scratch_dir("file");
  std::filesystem::create_directories(dir);
  const auto path = (dir / "seven.g6").string();
  {
    std::ofstream out(path);
    out << "# all connected graphs on 7 points, some twice and relabeled\n";
    for (const auto& g : connected_graphs(7, 1)) out << encode_graph6(g) << '\n';
    out << encode_graph6(cycle_image(7)) << '\n';
  }
  CatalogOptions opt;
  opt.input_file = path;
  const auto r = run_catalog(0, opt);
  const auto g = run_catalog(7, {});
  EXPECT_EQ(r.n, 7u);
  EXPECT_EQ(r.source, "file");
  EXPECT_EQ(r.total_connected, 853u);
  EXPECT_EQ(r.lemma_survivors, g.lemma_survivors);
  EXPECT_EQ(class_keys(r), class_keys(g));
  std::filesystem::remove_all(dir);
}

TEST(Catalog, BadInputsThrow) {
  EXPECT_THROW(run_catalog(11, {}), error);
  CatalogOptions opt;
  opt.input_file = "/nonexistent/graphs.g6";
  EXPECT_THROW(run_catalog(0, opt), error);
}

TEST(MatchFixture, NamesKnownImages) {
  EXPECT_EQ(match_fixture(cycle_image(6)), "C6");
  EXPECT_EQ(match_fixture(named_image("IMG8_1")), "IMG8_1");
  EXPECT_FALSE(match_fixture(build_image(3, {{0, 1}})));
}
