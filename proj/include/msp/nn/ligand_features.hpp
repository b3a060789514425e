#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "msp/core/feature_graph.hpp"
#include "msp/io/ligand.hpp"

namespace msp {

inline constexpr std::size_t kLigandSymbolSlots = 65;
inline constexpr std::size_t kLigandDegreeSlots = 10;    // 0..9
inline constexpr std::size_t kLigandImplicitSlots = 6;   // 0..5
inline constexpr std::size_t kLigandExplicitSlots = 6;   // 1..6
inline constexpr std::size_t kLigandNodeFeatures =
    kLigandSymbolSlots + kLigandDegreeSlots + kLigandImplicitSlots + kLigandExplicitSlots + 1;
inline constexpr std::size_t kLigandEdgeFeatures = 6;  // 4 bond types, conjugated, in ring

// Column offsets inside a ligand node row.
inline constexpr std::size_t kDegreeOffset = kLigandSymbolSlots;
inline constexpr std::size_t kImplicitOffset = kDegreeOffset + kLigandDegreeSlots;
inline constexpr std::size_t kExplicitOffset = kImplicitOffset + kLigandImplicitSlots;
inline constexpr std::size_t kAromaticColumn = kExplicitOffset + kLigandExplicitSlots;

// Symbol vocabulary; the last slot collects everything else.
std::size_t ligand_symbol_slot(std::string_view symbol);

struct LigandGraph {
  FeatureGraph graph;  // hydrogens removed; residue_ids empty
  std::vector<bool> valence_overflow;
  // Derived per-atom values behind the one-hot slots.
  std::vector<int> degree;
  std::vector<int> explicit_valence;
  std::vector<int> implicit_valence;
};

LigandGraph featurize_ligand(const LigandRaw& raw);

}  // namespace msp
