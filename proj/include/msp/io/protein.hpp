#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "msp/core/vec3.hpp"

namespace msp {

struct Atom {
  std::string name;     // e.g. "CA"
  std::string element;  // upper-case symbol, e.g. "C", "FE"
  Vec3 xyz;
  bool is_heavy = true;
};

struct Residue {
  std::string name;  // three-letter code
  int seq_number = 0;
  char insertion_code = ' ';
  std::vector<Atom> atoms;

  const Atom* find_atom(std::string_view atom_name) const;
};

struct Chain {
  std::string id;
  std::vector<Residue> residues;
};

struct ProteinStructure {
  std::vector<Chain> chains;

  std::size_t residue_count() const;
  std::size_t atom_count() const;
  // One-letter sequence for the given chain; unknown residues map to 'X'.
  std::string sequence(std::size_t chain_index) const;
};

// Flat view over the chains: residue index r runs over all chains in order.
struct ResidueRef {
  std::size_t chain = 0;
  std::size_t residue = 0;
};

std::vector<ResidueRef> flatten_residues(const ProteinStructure& p);

struct AtomRef {
  std::size_t residue_index = 0;  // flat residue index
  const Atom* atom = nullptr;
};

// All atoms in file order with their flat residue index.
std::vector<AtomRef> flatten_atoms(const ProteinStructure& p);

char one_letter_code(std::string_view three_letter);

ProteinStructure parse_pdb(std::string_view text);

}  // namespace msp
