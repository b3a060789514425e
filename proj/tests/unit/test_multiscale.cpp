#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include <json.hpp>

#include "fixtures.hpp"
#include "msp/core/error.hpp"
#include "msp/multiscale/multiscale.hpp"

using namespace msp;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kIoError;
}

MultiScaleGraph superpixel_complex(std::uint64_t seed, std::size_t k = 3, bool fan_out = false) {
  Rng rng(seed);
  const auto toy = testing::toy_complex(5, 16, rng);
  MultiScaleOptions opts;
  opts.mode = SurfaceMode::kSuperpixel;
  opts.ers.k = k;
  opts.fan_out = fan_out;
  auto g = build_multiscale("sp", toy.surface, toy.structure, opts).graph;
  g.ligand = toy.ligand;
  return g;
}

}  // namespace

TEST_CASE("one residue with a tetrahedral surface") {
  const auto tet = testing::tetrahedron();
  FeatureGraph surface;
  surface.node_features = Matrix(4, 4, 0.5);
  surface.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  surface.edge_features = Matrix(6, 9, 0.1);
  surface.residue_ids = {7, 7, 7, 7};
  FeatureGraph structure;
  structure.node_features = Matrix(1, 33, 1.0);
  structure.edge_features = Matrix(0, 2);
  structure.residue_ids = {7};

  const auto built = build_multiscale("one", surface, structure);
  CHECK(tet.vertex_count() == 4);
  CHECK(built.graph.cross_edges.size() == 4);
  for (const auto& [s, b] : built.graph.cross_edges) CHECK(b == 0);
  CHECK(built.dropped_surface_nodes.empty());
  CHECK(validate(built.graph).empty());
}

TEST_CASE("cross edges tie every surface vertex to its residue") {
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const auto toy = testing::toy_complex(3 + rng.below(8), 12 + rng.below(20), rng);
    const auto g = build_multiscale("x", toy.surface, toy.structure).graph;
    CHECK(g.cross_edges.size() == g.surface.node_count());
    std::vector<int> count(g.surface.node_count(), 0);
    for (const auto& [s, b] : g.cross_edges) {
      ++count[s];
      CHECK(g.surface.residue_ids[s] == g.structure.residue_ids[b]);
    }
    CHECK(std::all_of(count.begin(), count.end(), [](int c) { return c == 1; }));
    CHECK(validate(g).empty());
  }
}

TEST_CASE("surface vertices of unknown residues are dropped") {
  Rng rng(4);
  auto toy = testing::toy_complex(4, 10, rng);
  toy.surface.residue_ids[2] = 99;
  toy.surface.residue_ids[5] = 98;
  const auto built = build_multiscale("x", toy.surface, toy.structure);
  CHECK(built.dropped_surface_nodes == std::vector<std::uint32_t>{2, 5});
  CHECK(built.graph.surface.node_count() == 8);
  CHECK(built.graph.cross_edges.size() == 8);
  CHECK(validate(built.graph).empty());

  FeatureGraph empty;
  empty.node_features = Matrix(0, 33);
  empty.edge_features = Matrix(0, 2);
  CHECK(code_of([&] { build_multiscale("x", toy.surface, empty); }) == ErrorCode::kEmptyLayer);
  auto unlabeled = toy.surface;
  unlabeled.residue_ids.pop_back();
  CHECK(code_of([&] { build_multiscale("x", unlabeled, toy.structure); }) == ErrorCode::kLengthMismatch);
}

TEST_CASE("induced subgraph") {
  Rng rng(5);
  const auto g = testing::random_connected_graph(6, 4, 3, rng);
  const std::vector<bool> keep{true, false, true, true, false, true};
  const auto h = induced_subgraph(g, keep);
  CHECK(h.node_count() == 4);
  std::size_t expect = 0;
  for (const auto& [a, b] : g.edges) expect += keep[a] && keep[b];
  CHECK(h.edge_count() == expect);
  CHECK(h.edge_features.rows() == expect);
}

TEST_CASE("superpixel layer") {
  SUBCASE("node count equals k") {
    for (std::size_t k : {1u, 2u, 4u, 7u}) {
      const auto g = superpixel_complex(11, k);
      REQUIRE(g.superpixels);
      CHECK(g.superpixels->graph.node_count() == k);
      CHECK(g.superpixels->graph.node_features.cols() == 16);
      CHECK(g.superpixels->cross_edges.size() == k);
      CHECK(validate(g).empty());
    }
  }
  SUBCASE("fan-out adds one edge per member residue") {
    const auto g = superpixel_complex(12, 3, true);
    const auto& sp = *g.superpixels;
    std::size_t expect = 0;
    for (std::size_t s = 0; s < 3; ++s) {
      std::set<int> rids;
      for (std::size_t v = 0; v < sp.labels.size(); ++v) {
        if (sp.labels[v] == static_cast<int>(s)) rids.insert(g.surface.residue_ids[v]);
      }
      expect += rids.size();
    }
    CHECK(sp.cross_edges.size() == expect);
    CHECK(validate(g).empty());
  }
  SUBCASE("majority residue") {
    const std::vector<int> rids{4, 2, 2, 4, 9};
    CHECK(majority_residue(rids, {0, 1, 2, 4}) == 2);
    CHECK(majority_residue(rids, {0, 1, 2, 3}) == 2);  // tie goes to the lower id
    CHECK(majority_residue(rids, {4}) == 9);
  }
}

TEST_CASE("validator catches every corruption") {
  Rng rng(21);
  const auto base = superpixel_complex(21);
  REQUIRE(validate(base).empty());

  SUBCASE("one mismatched cross edge gives one violation") {
    auto g = testing::toy_complex(4, 8, rng);
    REQUIRE(validate(g).empty());
    auto& ce = g.cross_edges[0];
    ce.second = (ce.second + 1) % 4;
    CHECK(validate(g).size() == 1);
  }

  using Mutation = std::function<void(MultiScaleGraph&)>;
  const std::vector<std::pair<const char*, Mutation>> mutations{
      {"cross edge retargeted", [](MultiScaleGraph& g) {
         auto& ce = g.cross_edges[1];
         ce.second = (ce.second + 1) % static_cast<std::uint32_t>(g.structure.node_count());
       }},
      {"cross edge removed", [](MultiScaleGraph& g) { g.cross_edges.pop_back(); }},
      {"cross edge duplicated", [](MultiScaleGraph& g) { g.cross_edges.push_back(g.cross_edges[0]); }},
      {"cross edge out of range", [](MultiScaleGraph& g) { g.cross_edges[0].second = 1000; }},
      {"structure edge reversed", [](MultiScaleGraph& g) { std::swap(g.structure.edges[0].first, g.structure.edges[0].second); }},
      {"surface edge duplicated", [](MultiScaleGraph& g) {
         g.surface.edges.push_back(g.surface.edges[0]);
         Matrix ef(g.surface.edge_features.rows() + 1, g.surface.edge_features.cols());
         g.surface.edge_features = ef;
       }},
      {"edge to a missing node", [](MultiScaleGraph& g) { g.surface.edges[0].second = 500; }},
      {"non-finite node feature", [](MultiScaleGraph& g) { g.structure.node_features(0, 0) = std::nan(""); }},
      {"non-finite edge feature", [](MultiScaleGraph& g) { g.surface.edge_features(0, 0) = INFINITY; }},
      {"residue ids short", [](MultiScaleGraph& g) { g.surface.residue_ids.pop_back(); }},
      {"edge feature rows short", [](MultiScaleGraph& g) { g.structure.edge_features = Matrix(0, 2); }},
      {"structure residue id repeated", [](MultiScaleGraph& g) { g.structure.residue_ids[1] = g.structure.residue_ids[0]; }},
      {"superpixel label out of range", [](MultiScaleGraph& g) { g.superpixels->labels[0] = 50; }},
      {"superpixel labels short", [](MultiScaleGraph& g) { g.superpixels->labels.pop_back(); }},
      {"superpixel cross edge to a foreign residue", [](MultiScaleGraph& g) {
         auto& sp = *g.superpixels;
         const auto s = sp.cross_edges[0].first;
         std::set<int> inside;
         for (std::size_t v = 0; v < sp.labels.size(); ++v) {
           if (sp.labels[v] == static_cast<int>(s)) inside.insert(g.surface.residue_ids[v]);
         }
         for (std::uint32_t b = 0; b < g.structure.node_count(); ++b) {
           if (!inside.contains(g.structure.residue_ids[b])) {
             sp.cross_edges[0].second = b;
             return;
           }
         }
         sp.cross_edges[0].second = 1000;
       }},
      {"superpixel without cross edge", [](MultiScaleGraph& g) { g.superpixels->cross_edges.erase(g.superpixels->cross_edges.begin()); }},
      {"superpixel residue not the majority", [](MultiScaleGraph& g) { g.superpixels->graph.residue_ids[0] += 1000; }},
      {"superpixel summary width", [](MultiScaleGraph& g) { g.superpixels->graph.node_features = Matrix(g.superpixels->graph.node_count(), 15); }},
      {"empty ligand", [](MultiScaleGraph& g) {
         g.ligand->node_features = Matrix(0, 88);
         g.ligand->edges.clear();
         g.ligand->edge_features = Matrix(0, 6);
       }},
      {"empty surface", [](MultiScaleGraph& g) {
         g.surface = FeatureGraph{};
         g.cross_edges.clear();
       }},
  };
  for (const auto& [name, mutate] : mutations) {
    CAPTURE(name);
    auto g = base;
    mutate(g);
    CHECK_FALSE(validate(g).empty());
  }
}

TEST_CASE("graph json round trip") {
  Rng rng(8);
  std::vector<MultiScaleGraph> cases;
  cases.push_back(testing::toy_complex(5, 12, rng));
  cases.push_back(testing::toy_complex(1, 3, rng, false));
  cases.push_back(superpixel_complex(9));
  for (const auto& g : cases) {
    const auto text = write_graph(g);
    const auto back = read_graph(text);
    CHECK(back == g);
    CHECK(write_graph(back) == text);
  }

  const auto text = write_graph(cases[0]);
  auto doc = nlohmann::json::parse(text);
  CHECK(doc["checksum"].get<std::string>().size() == 16);

  auto tampered = doc;
  tampered["structure"]["nodes"][0]["features"][0] = 123.5;
  CHECK(code_of([&] { read_graph(tampered.dump()); }) == ErrorCode::kChecksumMismatch);

  auto versioned = doc;
  versioned["version"] = 2;
  CHECK(code_of([&] { read_graph(versioned.dump()); }) == ErrorCode::kSchemaVersionMismatch);

  CHECK(code_of([&] { read_graph("[1, 2"); }) == ErrorCode::kMalformedRecord);

  MultiScaleGraph empty;
  CHECK(code_of([&] { write_graph(empty); }) == ErrorCode::kEmptyStructure);
}

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}
