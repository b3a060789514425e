#include <json.hpp>

#include "msp/core/error.hpp"
#include "msp/multiscale/multiscale.hpp"

namespace msp {
namespace {

using nlohmann::json;

json layer_to_json(const FeatureGraph& g) {
  json nodes = json::array();
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    json node = {{"features", std::vector<double>(g.node_features.row(v).begin(), g.node_features.row(v).end())}};
    if (!g.residue_ids.empty()) node["rid"] = g.residue_ids[v];
    nodes.push_back(std::move(node));
  }
  json edges = json::array();
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    edges.push_back({{"a", g.edges[e].first},
                     {"b", g.edges[e].second},
                     {"features", std::vector<double>(g.edge_features.row(e).begin(), g.edge_features.row(e).end())}});
  }
  return {{"node_width", g.node_features.cols()},
          {"edge_width", g.edge_features.cols()},
          {"nodes", std::move(nodes)},
          {"edges", std::move(edges)}};
}

Matrix rows_to_matrix(const json& items, std::size_t width) {
  std::vector<double> flat;
  flat.reserve(items.size() * width);
  for (const auto& it : items) {
    const auto& f = it.at("features");
    if (f.size() != width) fail(ErrorCode::kMalformedRecord, "feature row has the wrong width");
    for (const auto& x : f) flat.push_back(x.get<double>());
  }
  return Matrix(items.size(), width, std::move(flat));
}

FeatureGraph layer_from_json(const json& j) {
  FeatureGraph g;
  const auto& nodes = j.at("nodes");
  const auto& edges = j.at("edges");
  g.node_features = rows_to_matrix(nodes, j.at("node_width").get<std::size_t>());
  for (const auto& n : nodes) {
    if (n.contains("rid")) g.residue_ids.push_back(n.at("rid").get<int>());
  }
  if (!g.residue_ids.empty() && g.residue_ids.size() != nodes.size()) {
    fail(ErrorCode::kMalformedRecord, "residue ids present on only some nodes");
  }
  for (const auto& e : edges) g.edges.emplace_back(e.at("a").get<std::uint32_t>(), e.at("b").get<std::uint32_t>());
  g.edge_features = rows_to_matrix(edges, j.at("edge_width").get<std::size_t>());
  return g;
}

std::vector<CrossEdge> cross_from_json(const json& j) {
  std::vector<CrossEdge> out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) fail(ErrorCode::kMalformedRecord, "cross edge must be a pair");
    out.emplace_back(p[0].get<std::uint32_t>(), p[1].get<std::uint32_t>());
  }
  return out;
}

json cross_to_json(const std::vector<CrossEdge>& edges) {
  json out = json::array();
  for (const auto& [s, b] : edges) out.push_back({s, b});
  return out;
}

std::string checksum_hex(const json& body) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(body.dump())));
  return buf;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string write_graph(const MultiScaleGraph& g) {
  if (g.structure.node_count() == 0) fail(ErrorCode::kEmptyStructure, "refusing to serialize an empty protein");
  json body = {
      {"version", kGraphSchemaVersion},
      {"protein_id", g.protein_id},
      {"structure", layer_to_json(g.structure)},
      {"surface", layer_to_json(g.surface)},
      {"cross_edges", cross_to_json(g.cross_edges)},
  };
  if (g.superpixels) {
    json sp = layer_to_json(g.superpixels->graph);
    sp["labels"] = g.superpixels->labels;
    sp["cross_edges"] = cross_to_json(g.superpixels->cross_edges);
    body["superpixels"] = std::move(sp);
  }
  if (g.ligand) body["ligand"] = layer_to_json(*g.ligand);
  const std::string sum = checksum_hex(body);
  body["checksum"] = sum;
  return body.dump() + "\n";
}

MultiScaleGraph read_graph(std::string_view text) {
  json body;
  try {
    body = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kMalformedRecord, std::string("graph file is not valid JSON: ") + e.what());
  }
  if (!body.is_object() || !body.contains("version")) fail(ErrorCode::kMalformedRecord, "graph file lacks a version");
  if (!body["version"].is_number_integer() || body["version"].get<int>() != kGraphSchemaVersion) {
    fail(ErrorCode::kSchemaVersionMismatch, "graph schema version " + body["version"].dump() + " is not supported");
  }
  if (!body.contains("checksum") || !body["checksum"].is_string()) {
    fail(ErrorCode::kChecksumMismatch, "graph file has no checksum");
  }
  const std::string stored = body["checksum"].get<std::string>();
  body.erase("checksum");
  if (checksum_hex(body) != stored) fail(ErrorCode::kChecksumMismatch, "graph checksum does not match its contents");

  try {
    MultiScaleGraph g;
    g.protein_id = body.at("protein_id").get<std::string>();
    g.structure = layer_from_json(body.at("structure"));
    g.surface = layer_from_json(body.at("surface"));
    g.cross_edges = cross_from_json(body.at("cross_edges"));
    if (body.contains("superpixels")) {
      const auto& sp = body["superpixels"];
      SuperpixelLayer layer;
      layer.graph = layer_from_json(sp);
      layer.labels = sp.at("labels").get<std::vector<int>>();
      layer.cross_edges = cross_from_json(sp.at("cross_edges"));
      g.superpixels = std::move(layer);
    }
    if (body.contains("ligand")) g.ligand = layer_from_json(body["ligand"]);
    if (g.structure.node_count() == 0) fail(ErrorCode::kEmptyStructure, "graph file holds an empty protein");
    return g;
  } catch (const json::exception& e) {
    fail(ErrorCode::kMalformedRecord, std::string("graph file is malformed: ") + e.what());
  }
}

}  // namespace msp
