#include "msp/nn/ligand_features.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace msp {
namespace {

constexpr std::array<std::string_view, kLigandSymbolSlots - 1> kSymbols = {
    "C",  "N",  "O",  "S",  "F",  "Si", "P",  "Cl", "Br", "Mg", "Na", "Ca", "Fe", "As", "Al", "I",
    "B",  "V",  "K",  "Tl", "Yb", "Sb", "Sn", "Ag", "Pd", "Co", "Se", "Ti", "Zn", "H",  "Li", "Ge",
    "Cu", "Au", "Ni", "Cd", "In", "Mn", "Zr", "Cr", "Pt", "Hg", "Pb", "W",  "Ru", "Nb", "Re", "Te",
    "Rh", "Tc", "Ba", "Bi", "Hf", "Mo", "U",  "Sm", "Os", "Ir", "Ce", "Gd", "Ga", "Cs", "Sr", "Xe"};

int standard_valence(std::string_view element, int charge) {
  static const std::map<std::string_view, int> table = {
      {"H", 1}, {"B", 3}, {"C", 4}, {"N", 3}, {"O", 2}, {"F", 1}, {"Si", 4}, {"P", 3},
      {"S", 2}, {"Cl", 1}, {"Br", 1}, {"I", 1}, {"Se", 2}, {"As", 3}};
  const auto it = table.find(element);
  if (it == table.end()) return 0;
  // Carbon loses a bond for either charge sign; the others gain one per +1.
  if (element == "C") return it->second - std::abs(charge);
  return std::max(0, it->second + charge);
}

// Bonds whose removal disconnects their endpoints (Tarjan bridges).
std::vector<bool> bridges(std::size_t n, const std::vector<LigandBond>& bonds) {
  std::vector<std::vector<std::pair<int, std::size_t>>> adj(n);
  for (std::size_t e = 0; e < bonds.size(); ++e) {
    adj[static_cast<std::size_t>(bonds[e].a)].push_back({bonds[e].b, e});
    adj[static_cast<std::size_t>(bonds[e].b)].push_back({bonds[e].a, e});
  }
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> is_bridge(bonds.size(), false);
  int timer = 0;
  std::function<void(int, std::size_t)> dfs = [&](int v, std::size_t parent_edge) {
    disc[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = timer++;
    for (const auto& [u, e] : adj[static_cast<std::size_t>(v)]) {
      if (e == parent_edge) continue;
      const auto uu = static_cast<std::size_t>(u);
      const auto vv = static_cast<std::size_t>(v);
      if (disc[uu] < 0) {
        dfs(u, e);
        low[vv] = std::min(low[vv], low[uu]);
        if (low[uu] > disc[vv]) is_bridge[e] = true;
      } else {
        low[vv] = std::min(low[vv], disc[uu]);
      }
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (disc[v] < 0) dfs(static_cast<int>(v), bonds.size());
  }
  return is_bridge;
}

}  // namespace

std::size_t ligand_symbol_slot(std::string_view symbol) {
  for (std::size_t i = 0; i < kSymbols.size(); ++i) {
    if (kSymbols[i] == symbol) return i;
  }
  return kLigandSymbolSlots - 1;
}

LigandGraph featurize_ligand(const LigandRaw& raw) {
  // Heavy-atom graph: hydrogens are dropped and become implicit.
  std::vector<int> remap(raw.atoms.size(), -1);
  std::vector<LigandAtom> atoms;
  for (std::size_t i = 0; i < raw.atoms.size(); ++i) {
    if (raw.atoms[i].element == "H") continue;
    remap[i] = static_cast<int>(atoms.size());
    atoms.push_back(raw.atoms[i]);
  }
  std::vector<LigandBond> bonds;
  for (const auto& b : raw.bonds) {
    const int a = remap[static_cast<std::size_t>(b.a)];
    const int c = remap[static_cast<std::size_t>(b.b)];
    if (a >= 0 && c >= 0) bonds.push_back({std::min(a, c), std::max(a, c), b.order});
  }
  std::sort(bonds.begin(), bonds.end(),
            [](const LigandBond& x, const LigandBond& y) { return std::pair(x.a, x.b) < std::pair(y.a, y.b); });

  const std::size_t n = atoms.size();
  LigandGraph out;
  out.degree.assign(n, 0);
  out.explicit_valence.assign(n, 0);
  out.implicit_valence.assign(n, 0);
  out.valence_overflow.assign(n, false);
  std::vector<double> bond_order_sum(n, 0.0);
  std::vector<bool> aromatic(n, false);
  std::vector<bool> has_pi(n, false);
  for (const auto& b : bonds) {
    const double order = b.order == 4 ? 1.5 : static_cast<double>(b.order);
    for (int end : {b.a, b.b}) {
      const auto e = static_cast<std::size_t>(end);
      ++out.degree[e];
      bond_order_sum[e] += order;
      if (b.order == 4) aromatic[e] = true;
      if (b.order == 4 || b.order == 2) has_pi[e] = true;
    }
  }

  auto& nodes = out.graph.node_features;
  nodes = Matrix(n, kLigandNodeFeatures);
  for (std::size_t i = 0; i < n; ++i) {
    out.explicit_valence[i] = static_cast<int>(std::lround(bond_order_sum[i]));
    const int standard = standard_valence(atoms[i].element, atoms[i].formal_charge);
    const int implicit = standard - out.explicit_valence[i];
    if (implicit < 0) out.valence_overflow[i] = true;
    out.implicit_valence[i] = std::max(0, implicit);

    nodes(i, ligand_symbol_slot(atoms[i].element)) = 1.0;
    nodes(i, kDegreeOffset + static_cast<std::size_t>(std::clamp(out.degree[i], 0, 9))) = 1.0;
    nodes(i, kImplicitOffset + static_cast<std::size_t>(std::clamp(out.implicit_valence[i], 0, 5))) = 1.0;
    nodes(i, kExplicitOffset + static_cast<std::size_t>(std::clamp(out.explicit_valence[i], 1, 6) - 1)) = 1.0;
    nodes(i, kAromaticColumn) = aromatic[i] ? 1.0 : 0.0;
  }

  const auto bridge = bridges(n, bonds);
  out.graph.edge_features = Matrix(bonds.size(), kLigandEdgeFeatures);
  for (std::size_t e = 0; e < bonds.size(); ++e) {
    const auto& b = bonds[e];
    out.graph.edges.emplace_back(static_cast<std::uint32_t>(b.a), static_cast<std::uint32_t>(b.b));
    out.graph.edge_features(e, static_cast<std::size_t>(b.order - 1)) = 1.0;
    const bool conjugated = has_pi[static_cast<std::size_t>(b.a)] && has_pi[static_cast<std::size_t>(b.b)];
    out.graph.edge_features(e, 4) = conjugated ? 1.0 : 0.0;
    out.graph.edge_features(e, 5) = bridge[e] ? 0.0 : 1.0;
  }
  return out;
}

}  // namespace msp
