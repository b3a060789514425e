#include "msp/io/mesh.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <string>

#include "msp/core/error.hpp"

namespace msp {
namespace {

// Splits into lines, dropping comments ('#') and blank lines.
std::vector<std::string> content_lines(std::string_view text) {
  std::vector<std::string> out;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string line(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(std::move(line));
  }
  return out;
}

}  // namespace

std::vector<MeshEdge> unique_edges(const TriMesh& m) {
  std::vector<MeshEdge> edges;
  edges.reserve(m.faces.size() * 3);
  for (const auto& f : m.faces) {
    for (int k = 0; k < 3; ++k) {
      std::uint32_t a = f[k];
      std::uint32_t b = f[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      edges.emplace_back(a, b);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

std::vector<Vec3> compute_vertex_normals(const std::vector<Vec3>& vertices,
                                         const std::vector<Face>& faces) {
  std::vector<Vec3> acc(vertices.size());
  for (const auto& f : faces) {
    const Vec3 n = cross(vertices[f[1]] - vertices[f[0]], vertices[f[2]] - vertices[f[0]]);
    for (auto v : f) acc[v] += n;
  }
  for (auto& n : acc) {
    const double len = norm(n);
    n = len > 0.0 ? n / len : Vec3{0.0, 0.0, 1.0};
  }
  return acc;
}

std::vector<bool> find_nonmanifold_vertices(const TriMesh& m) {
  std::map<MeshEdge, int> counts;
  for (const auto& f : m.faces) {
    for (int k = 0; k < 3; ++k) {
      std::uint32_t a = f[k];
      std::uint32_t b = f[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      ++counts[{a, b}];
    }
  }
  std::vector<bool> flags(m.vertices.size(), false);
  for (const auto& [edge, count] : counts) {
    if (count > 2) flags[edge.first] = flags[edge.second] = true;
  }
  return flags;
}

TriMesh parse_mesh(std::string_view off_text) {
  const auto lines = content_lines(off_text);
  if (lines.empty()) fail(ErrorCode::kEmptyStructure, "empty OFF input");

  std::size_t cursor = 0;
  std::string header = lines[cursor];
  header.erase(0, header.find_first_not_of(" \t"));
  if (!header.starts_with("OFF")) fail(ErrorCode::kMalformedRecord, "missing OFF header");
  // Counts may follow the header on the same line.
  std::istringstream counts_stream(header.substr(3));
  long long nv = -1;
  long long nf = -1;
  if (!(counts_stream >> nv >> nf)) {
    ++cursor;
    if (cursor >= lines.size()) fail(ErrorCode::kMalformedRecord, "missing OFF counts line");
    std::istringstream cs(lines[cursor]);
    if (!(cs >> nv >> nf)) fail(ErrorCode::kMalformedRecord, "bad OFF counts line");
  }
  ++cursor;
  if (nv <= 0) fail(ErrorCode::kEmptyStructure, "OFF mesh has no vertices");
  if (nf < 0) fail(ErrorCode::kMalformedRecord, "negative face count");
  if (cursor + static_cast<std::size_t>(nv) + static_cast<std::size_t>(nf) > lines.size()) {
    fail(ErrorCode::kMalformedRecord, "OFF file truncated");
  }

  TriMesh mesh;
  mesh.vertices.reserve(static_cast<std::size_t>(nv));
  for (long long i = 0; i < nv; ++i, ++cursor) {
    std::istringstream ls(lines[cursor]);
    Vec3 v;
    if (!(ls >> v.x >> v.y >> v.z)) {
      fail(ErrorCode::kMalformedRecord, "bad vertex line " + std::to_string(i));
    }
    mesh.vertices.push_back(v);
  }
  mesh.faces.reserve(static_cast<std::size_t>(nf));
  for (long long i = 0; i < nf; ++i, ++cursor) {
    std::istringstream ls(lines[cursor]);
    long long arity = 0;
    if (!(ls >> arity)) fail(ErrorCode::kMalformedRecord, "bad face line " + std::to_string(i));
    if (arity != 3) {
      fail(ErrorCode::kNonTriangleFace, "face " + std::to_string(i) + " has " +
                                            std::to_string(arity) + " vertices");
    }
    Face f{};
    for (int k = 0; k < 3; ++k) {
      long long idx = -1;
      if (!(ls >> idx)) fail(ErrorCode::kMalformedRecord, "bad face line " + std::to_string(i));
      if (idx < 0 || idx >= nv) {
        fail(ErrorCode::kIndexOutOfRange,
             "face " + std::to_string(i) + " references vertex " + std::to_string(idx));
      }
      f[k] = static_cast<std::uint32_t>(idx);
    }
    mesh.faces.push_back(f);
  }
  mesh.normals = compute_vertex_normals(mesh.vertices, mesh.faces);
  mesh.nonmanifold = find_nonmanifold_vertices(mesh);
  return mesh;
}

void attach_vertex_atom_map(TriMesh& mesh, std::string_view sidecar_text) {
  std::vector<std::uint32_t> map(mesh.vertices.size(), 0);
  std::vector<bool> seen(mesh.vertices.size(), false);
  for (const auto& line : content_lines(sidecar_text)) {
    std::istringstream ls(line);
    long long v = -1;
    long long atom = -1;
    if (!(ls >> v >> atom)) fail(ErrorCode::kMalformedRecord, "bad sidecar line: " + line);
    if (v < 0 || static_cast<std::size_t>(v) >= mesh.vertices.size() || atom < 0) {
      fail(ErrorCode::kIndexOutOfRange, "sidecar entry out of range: " + line);
    }
    map[static_cast<std::size_t>(v)] = static_cast<std::uint32_t>(atom);
    seen[static_cast<std::size_t>(v)] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    fail(ErrorCode::kIndexOutOfRange, "sidecar does not cover every vertex");
  }
  mesh.vertex_atom = std::move(map);
}

}  // namespace msp
