#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>

#include "msp/io/text_file.hpp"

namespace msp::testing {
namespace {

constexpr double kDeg = M_PI / 180.0;

std::vector<std::uint32_t> permutation(std::size_t n, Rng& rng) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  rng.shuffle(p);
  return p;
}

FeatureGraph permute_graph(const FeatureGraph& g, const std::vector<std::uint32_t>& perm, Rng& rng) {
  FeatureGraph out;
  out.node_features = Matrix(g.node_count(), g.node_features.cols());
  out.residue_ids.resize(g.residue_ids.size());
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    std::copy(g.node_features.row(v).begin(), g.node_features.row(v).end(), out.node_features.row(perm[v]).begin());
    if (!g.residue_ids.empty()) out.residue_ids[perm[v]] = g.residue_ids[v];
  }
  const auto order = permutation(g.edge_count(), rng);
  out.edge_features = Matrix(g.edge_count(), g.edge_features.cols());
  out.edges.resize(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto [a, b] = g.edges[e];
    out.edges[order[e]] = {std::min(perm[a], perm[b]), std::max(perm[a], perm[b])};
    std::copy(g.edge_features.row(e).begin(), g.edge_features.row(e).end(), out.edge_features.row(order[e]).begin());
  }
  return out;
}

std::vector<CrossEdge> permute_cross(const std::vector<CrossEdge>& edges, const std::vector<std::uint32_t>& src,
                                     const std::vector<std::uint32_t>& dst, Rng& rng) {
  std::vector<CrossEdge> out(edges.size());
  const auto order = permutation(edges.size(), rng);
  for (std::size_t i = 0; i < edges.size(); ++i) out[order[i]] = {src[edges[i].first], dst[edges[i].second]};
  return out;
}

Matrix random_matrix(std::size_t r, std::size_t c, Rng& rng) {
  Matrix m(r, c);
  for (double& v : m.data()) v = rng.uniform();
  return m;
}

void add_edge(FeatureGraph& g, std::set<GraphEdge>& seen, std::uint32_t a, std::uint32_t b) {
  if (a == b) return;
  const GraphEdge e{std::min(a, b), std::max(a, b)};
  if (seen.insert(e).second) g.edges.push_back(e);
}

TriMesh finish(TriMesh m) {
  m.normals = compute_vertex_normals(m.vertices, m.faces);
  m.nonmanifold.assign(m.vertices.size(), false);
  return m;
}

}  // namespace

TriMesh icosphere(int level, double radius, Vec3 center) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                         {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& p : v) p = normalized(p);
  std::vector<Face> f = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
                         {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
                         {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> mid;
    auto midpoint = [&](std::uint32_t a, std::uint32_t b) {
      const auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      v.push_back(normalized((v[a] + v[b]) * 0.5));
      const auto idx = static_cast<std::uint32_t>(v.size() - 1);
      mid.emplace(key, idx);
      return idx;
    };
    std::vector<Face> next;
    for (const auto& [a, b, c] : f) {
      const auto ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
      next.push_back({a, ab, ca});
      next.push_back({b, bc, ab});
      next.push_back({c, ca, bc});
      next.push_back({ab, bc, ca});
    }
    f = std::move(next);
  }
  TriMesh m;
  for (const auto& p : v) m.vertices.push_back(center + p * radius);
  m.faces = std::move(f);
  return finish(std::move(m));
}

TriMesh tetrahedron() {
  TriMesh m;
  m.vertices = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  m.faces = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
  return finish(std::move(m));
}

TriMesh height_field(int n, double spacing, const std::function<double(double, double)>& f) {
  TriMesh m;
  const double half = (n - 1) * spacing / 2.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = i * spacing - half, y = j * spacing - half;
      m.vertices.push_back({x, y, f(x, y)});
    }
  }
  auto id = [n](int i, int j) { return static_cast<std::uint32_t>(i * n + j); };
  for (int i = 0; i + 1 < n; ++i) {
    for (int j = 0; j + 1 < n; ++j) {
      m.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return finish(std::move(m));
}

TriMesh cube() {
  TriMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
  m.faces = {{0, 2, 1}, {0, 3, 2}, {4, 5, 6}, {4, 6, 7}, {0, 1, 5}, {0, 5, 4},
             {1, 2, 6}, {1, 6, 5}, {2, 3, 7}, {2, 7, 6}, {3, 0, 4}, {3, 4, 7}};
  return finish(std::move(m));
}

std::string to_off(const TriMesh& m) {
  std::string out = "OFF\n" + std::to_string(m.vertices.size()) + " " + std::to_string(m.faces.size()) + " 0\n";
  char buf[128];
  for (const auto& v : m.vertices) {
    std::snprintf(buf, sizeof buf, "%.10f %.10f %.10f\n", v.x, v.y, v.z);
    out += buf;
  }
  for (const auto& f : m.faces) {
    out += "3 " + std::to_string(f[0]) + " " + std::to_string(f[1]) + " " + std::to_string(f[2]) + "\n";
  }
  return out;
}

Vec3 place_atom(const Vec3& a, const Vec3& b, const Vec3& c, double bond, double angle_deg, double torsion_deg) {
  const Vec3 bc = normalized(c - b);
  const Vec3 n = normalized(cross(b - a, bc));
  const Vec3 m = cross(n, bc);
  const double ang = angle_deg * kDeg, tor = torsion_deg * kDeg;
  const Vec3 d2{-bond * std::cos(ang), bond * std::sin(ang) * std::cos(tor), bond * std::sin(ang) * std::sin(tor)};
  return c + bc * d2.x + m * d2.y + n * d2.z;
}

ProteinStructure build_chain(const std::vector<ResidueSpec>& residues, char chain_id) {
  ProteinStructure p;
  Chain chain;
  chain.id = std::string(1, chain_id);
  Vec3 n{0.0, 1.458 * std::cos(20 * kDeg), 1.458 * std::sin(20 * kDeg)};
  Vec3 ca{0.0, 0.0, 0.0};
  Vec3 c{1.525, 0.0, 0.0};
  c = place_atom(Vec3{-1.0, 1.0, 0.0}, n, ca, 1.525, 111.2, -60.0);
  for (std::size_t i = 0; i < residues.size(); ++i) {
    const auto& spec = residues[i];
    if (i > 0) {
      const Vec3 prev_n = chain.residues.back().find_atom("N")->xyz;
      const Vec3 prev_ca = chain.residues.back().find_atom("CA")->xyz;
      const Vec3 prev_c = chain.residues.back().find_atom("C")->xyz;
      n = place_atom(prev_n, prev_ca, prev_c, 1.329, 116.2, residues[i - 1].psi);
      ca = place_atom(prev_ca, prev_c, n, 1.458, 121.7, 180.0);
      c = place_atom(prev_c, n, ca, 1.525, 111.2, spec.phi);
    }
    Residue r;
    r.name = spec.name;
    r.seq_number = static_cast<int>(i) + 1;
    // O sits trans to the next N, which lies at torsion psi.
    const Vec3 o = place_atom(n, ca, c, 1.231, 120.5, spec.psi + 180.0);
    r.atoms.push_back({"N", "N", n, true});
    r.atoms.push_back({"CA", "C", ca, true});
    r.atoms.push_back({"C", "C", c, true});
    r.atoms.push_back({"O", "O", o, true});
    if (spec.name != "GLY") r.atoms.push_back({"CB", "C", place_atom(c, n, ca, 1.53, 110.5, -122.5), true});
    chain.residues.push_back(std::move(r));
  }
  p.chains.push_back(std::move(chain));
  return p;
}

ProteinStructure helix(const std::vector<std::string>& names) {
  std::vector<ResidueSpec> specs;
  for (const auto& n : names) specs.push_back({n, -57.0, -47.0});
  return build_chain(specs);
}

std::string to_pdb(const ProteinStructure& p) {
  std::string out;
  char buf[96];
  int serial = 1;
  for (const auto& chain : p.chains) {
    for (const auto& r : chain.residues) {
      for (const auto& a : r.atoms) {
        const std::string name = a.name.size() < 4 ? " " + a.name : a.name;
        std::snprintf(buf, sizeof buf, "ATOM  %5d %-4s %3s %c%4d%c   %8.3f%8.3f%8.3f%6.2f%6.2f          %2s\n", serial++,
                      name.c_str(), r.name.c_str(), chain.id.empty() ? 'A' : chain.id[0], r.seq_number,
                      r.insertion_code, a.xyz.x, a.xyz.y, a.xyz.z, 1.0, 0.0, a.element.c_str());
        out += buf;
      }
    }
  }
  out += "END\n";
  return out;
}

FeatureGraph random_connected_graph(std::size_t n, std::size_t extra_edges, std::size_t feature_dim, Rng& rng) {
  FeatureGraph g;
  g.node_features = random_matrix(n, feature_dim, rng);
  std::set<GraphEdge> seen;
  const auto order = permutation(n, rng);
  for (std::size_t i = 1; i < n; ++i) add_edge(g, seen, order[i], order[rng.below(i)]);
  const std::size_t max_edges = n * (n - 1) / 2;
  for (std::size_t t = 0; t < extra_edges && seen.size() < max_edges; ++t) {
    add_edge(g, seen, static_cast<std::uint32_t>(rng.below(n)), static_cast<std::uint32_t>(rng.below(n)));
  }
  g.edge_features = Matrix(g.edges.size(), 0);
  g.residue_ids.assign(n, 0);
  return g;
}

MultiScaleGraph toy_complex(std::size_t n_residues, std::size_t n_vertices, Rng& rng, bool with_ligand) {
  MultiScaleGraph g;
  g.protein_id = "toy";
  g.structure.node_features = random_matrix(n_residues, 33, rng);
  for (std::size_t i = 0; i < n_residues; ++i) g.structure.residue_ids.push_back(static_cast<int>(i));
  std::set<GraphEdge> seen;
  for (std::uint32_t i = 0; i + 1 < n_residues; ++i) add_edge(g.structure, seen, i, i + 1);
  for (std::uint32_t i = 0; i + 2 < n_residues; i += 2) add_edge(g.structure, seen, i, i + 2);
  g.structure.edge_features = random_matrix(g.structure.edges.size(), 2, rng);

  g.surface.node_features = random_matrix(n_vertices, 4, rng);
  for (std::size_t v = 0; v < n_vertices; ++v) {
    const auto rid = v < n_residues ? v : rng.below(n_residues);
    g.surface.residue_ids.push_back(static_cast<int>(rid));
    g.cross_edges.emplace_back(static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(rid));
  }
  seen.clear();
  for (std::uint32_t v = 0; v + 1 < n_vertices; ++v) add_edge(g.surface, seen, v, v + 1);
  for (std::size_t t = 0; t < n_vertices / 2; ++t) {
    add_edge(g.surface, seen, static_cast<std::uint32_t>(rng.below(n_vertices)),
             static_cast<std::uint32_t>(rng.below(n_vertices)));
  }
  g.surface.edge_features = random_matrix(g.surface.edges.size(), 9, rng);

  if (with_ligand) {
    FeatureGraph lig;
    lig.node_features = random_matrix(5, 88, rng);
    seen.clear();
    for (std::uint32_t a = 0; a + 1 < 5; ++a) add_edge(lig, seen, a, a + 1);
    add_edge(lig, seen, 0, 4);
    lig.edge_features = random_matrix(lig.edges.size(), 6, rng);
    g.ligand = std::move(lig);
  }
  return g;
}

MultiScaleGraph permute_complex(const MultiScaleGraph& g, Rng& rng) {
  MultiScaleGraph out;
  out.protein_id = g.protein_id;
  const auto ps = permutation(g.surface.node_count(), rng);
  const auto pb = permutation(g.structure.node_count(), rng);
  out.surface = permute_graph(g.surface, ps, rng);
  out.structure = permute_graph(g.structure, pb, rng);
  out.cross_edges = permute_cross(g.cross_edges, ps, pb, rng);
  if (g.superpixels) {
    const auto pm = permutation(g.superpixels->graph.node_count(), rng);
    SuperpixelLayer sp;
    sp.graph = permute_graph(g.superpixels->graph, pm, rng);
    sp.labels.resize(g.superpixels->labels.size());
    for (std::size_t v = 0; v < sp.labels.size(); ++v) {
      sp.labels[ps[v]] = static_cast<int>(pm[static_cast<std::size_t>(g.superpixels->labels[v])]);
    }
    sp.cross_edges = permute_cross(g.superpixels->cross_edges, pm, pb, rng);
    out.superpixels = std::move(sp);
  }
  if (g.ligand) out.ligand = permute_graph(*g.ligand, permutation(g.ligand->node_count(), rng), rng);
  return out;
}

const char* const kMethaneMol =
    "methane\n  test\n\n"
    "  1  0  0  0  0  0  0  0  0  0999 V2000\n"
    "    0.0000    0.0000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "M  END\n";

const char* const kBenzeneMol =
    "benzene\n  test\n\n"
    "  6  6  0  0  0  0  0  0  0  0999 V2000\n"
    "    1.3900    0.0000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "    0.6950    1.2038    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "   -0.6950    1.2038    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "   -1.3900    0.0000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "   -0.6950   -1.2038    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "    0.6950   -1.2038    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "  1  2  4  0\n  2  3  4  0\n  3  4  4  0\n  4  5  4  0\n  5  6  4  0\n  6  1  4  0\n"
    "M  END\n";

// Heavy atoms only: ring C1-C6, carboxyl C7(=O8)O9, ester O10-C11(=O12)-C13.
const char* const kAspirinMol =
    "aspirin\n  test\n\n"
    " 13 13  0  0  0  0  0  0  0  0999 V2000\n"
    "    1.2124    0.7000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "    0.0000    1.4000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "   -1.2124    0.7000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "   -1.2124   -0.7000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "    0.0000   -1.4000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "    1.2124   -0.7000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "    2.4248    1.4000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "    3.6372    0.7000    0.0000 O   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "    2.4248    2.8000    0.0000 O   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "    2.4248   -1.4000    0.0000 O   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "    2.4248   -2.8000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "    1.2124   -3.5000    0.0000 O   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "    3.6372   -3.5000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "  1  2  4  0\n  2  3  4  0\n  3  4  4  0\n  4  5  4  0\n  5  6  4  0\n  6  1  4  0\n"
    "  1  7  1  0\n  7  8  2  0\n  7  9  1  0\n  6 10  1  0\n 10 11  1  0\n 11 12  2  0\n 11 13  1  0\n"
    "M  END\n";

namespace {

std::string chain_mol(std::size_t carbons, bool oxygen_end) {
  const std::size_t n = carbons + (oxygen_end ? 1 : 0);
  char buf[128];
  std::snprintf(buf, sizeof buf, "%3zu%3zu  0  0  0  0  0  0  0  0999 V2000\n", n, n - 1);
  std::string out = "ligand\n  synthetic\n\n" + std::string(buf);
  for (std::size_t i = 0; i < n; ++i) {
    const char* sym = oxygen_end && i + 1 == n ? "O" : "C";
    std::snprintf(buf, sizeof buf, "%10.4f%10.4f%10.4f %-3s 0  0  0  0  0  0  0  0  0  0  0  0\n", 1.5 * i,
                  (i % 2) * 0.8, 0.0, sym);
    out += buf;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::snprintf(buf, sizeof buf, "%3zu%3zu%3d  0\n", i + 1, i + 2, (i == 0 && oxygen_end && n == 2) ? 2 : 1);
    out += buf;
  }
  return out + "M  END\n";
}

}  // namespace

std::filesystem::path write_synthetic_dataset(const std::filesystem::path& dir, std::size_t n, std::uint64_t seed) {
  static const std::vector<std::string> kNames = {"ALA", "ARG", "ASP", "GLU", "GLY", "HIS", "LEU", "LYS",
                                                  "PHE", "SER", "THR", "TRP", "TYR", "VAL", "ASN", "GLN"};
  std::filesystem::create_directories(dir);
  Rng rng(seed);
  std::string index = "id,pdb,mesh,mol,target,split\n";
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = "cplx" + std::to_string(i);
    std::vector<ResidueSpec> specs;
    const std::size_t len = 6 + rng.below(4);
    for (std::size_t r = 0; r < len; ++r) {
      specs.push_back({kNames[rng.below(kNames.size())], -57.0 + rng.uniform(-10, 10), -47.0 + rng.uniform(-10, 10)});
    }
    const ProteinStructure p = build_chain(specs);
    Vec3 center{};
    double count = 0.0;
    for (const auto& r : p.chains[0].residues) {
      for (const auto& a : r.atoms) {
        center = center + a.xyz;
        count += 1.0;
      }
    }
    center = center * (1.0 / count);
    double radius = 0.0;
    for (const auto& r : p.chains[0].residues) {
      for (const auto& a : r.atoms) radius = std::max(radius, distance(a.xyz, center));
    }
    write_text_file(dir / (id + ".pdb"), to_pdb(p));
    write_text_file(dir / (id + ".off"), to_off(icosphere(2, radius + 2.0, center)));
    write_text_file(dir / (id + ".mol"), chain_mol(1 + rng.below(4), rng.below(2) == 1));
    const char* split = i % 4 == 3 ? "val" : "train";
    char target[32];
    std::snprintf(target, sizeof target, "%.3f", 4.0 + 6.0 * rng.uniform());
    index += id + "," + id + ".pdb," + id + ".off," + id + ".mol," + target + "," + split + "\n";
  }
  const auto path = dir / "index.csv";
  write_text_file(path, index);
  return path;
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("msp_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace msp::testing
