#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace msp {

inline constexpr std::size_t kResidueClasses = 23;  // 20 standard + ASX + GLX + UNK
inline constexpr std::array<std::string_view, kResidueClasses> kResidueNames = {
    "ALA", "ARG", "ASN", "ASP", "CYS", "GLN", "GLU", "GLY", "HIS", "ILE", "LEU", "LYS",
    "MET", "PHE", "PRO", "SER", "THR", "TRP", "TYR", "VAL", "ASX", "GLX", "UNK"};

// Slot in the residue one-hot; anything unrecognised maps to UNK.
std::size_t residue_class(std::string_view three_letter);

// Raw Kyte-Doolittle value, nullopt when the residue has none.
std::optional<double> kyte_doolittle(std::string_view three_letter);

// Kyte-Doolittle / 4.5, so values fall in [-1, 1]. Unknown residues give 0.0
// and log a warning once per name.
double residue_hydropathy(std::string_view three_letter);

// Side-chain charge used in place of continuum electrostatics.
double residue_charge(std::string_view three_letter);

// True when the named atom of the residue carries a donatable hydrogen.
bool is_hbond_donor(std::string_view residue, std::string_view atom);

// Van der Waals radius in angstrom for an upper-case element symbol.
std::optional<double> vdw_radius(std::string_view element);

}  // namespace msp
