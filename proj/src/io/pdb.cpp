#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "msp/core/error.hpp"
#include "msp/io/protein.hpp"

namespace msp {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Columns are 1-based inclusive as in the PDB format documentation.
std::string_view columns(std::string_view line, std::size_t first, std::size_t last) {
  if (line.size() < first) return {};
  const std::size_t begin = first - 1;
  const std::size_t len = std::min(last, line.size()) - begin;
  return line.substr(begin, len);
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<int> to_int(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string element_from_name(std::string_view atom_name_field) {
  // Columns 13-14 hold the right-justified element for standard names.
  std::string_view n = trim(atom_name_field);
  std::string letters;
  for (char c : n) {
    if (std::isalpha(static_cast<unsigned char>(c))) letters.push_back(c);
  }
  if (letters.empty()) return "X";
  if (atom_name_field.size() >= 2 && atom_name_field[0] != ' ' &&
      std::isalpha(static_cast<unsigned char>(atom_name_field[0])) &&
      std::isalpha(static_cast<unsigned char>(atom_name_field[1]))) {
    return upper(atom_name_field.substr(0, 2));
  }
  return upper(letters.substr(0, 1));
}

bool is_water(std::string_view res_name) {
  return res_name == "HOH" || res_name == "WAT" || res_name == "DOD" || res_name == "H2O";
}

struct PendingAtom {
  Atom atom;
  char altloc = ' ';
  double occupancy = 1.0;
  std::size_t order = 0;
};

struct PendingResidue {
  std::string name;
  int seq_number = 0;
  char icode = ' ';
  // Keyed by atom name; alternates collected before selection.
  std::vector<std::pair<std::string, std::vector<PendingAtom>>> atoms;
};

void add_atom(PendingResidue& res, PendingAtom atom) {
  for (auto& [name, alts] : res.atoms) {
    if (name == atom.atom.name) {
      alts.push_back(std::move(atom));
      return;
    }
  }
  std::string name = atom.atom.name;
  res.atoms.push_back({std::move(name), {std::move(atom)}});
}

// Highest occupancy wins; ties prefer altloc 'A', then blank, then file order.
const PendingAtom& select_alternate(const std::vector<PendingAtom>& alts) {
  const PendingAtom* best = &alts.front();
  auto rank = [](char altloc) { return altloc == 'A' ? 0 : (altloc == ' ' ? 1 : 2); };
  for (const auto& a : alts) {
    if (a.occupancy > best->occupancy ||
        (a.occupancy == best->occupancy && rank(a.altloc) < rank(best->altloc))) {
      best = &a;
    }
  }
  return *best;
}

}  // namespace

const Atom* Residue::find_atom(std::string_view atom_name) const {
  for (const auto& a : atoms) {
    if (a.name == atom_name) return &a;
  }
  return nullptr;
}

std::size_t ProteinStructure::residue_count() const {
  std::size_t n = 0;
  for (const auto& c : chains) n += c.residues.size();
  return n;
}

std::size_t ProteinStructure::atom_count() const {
  std::size_t n = 0;
  for (const auto& c : chains) {
    for (const auto& r : c.residues) n += r.atoms.size();
  }
  return n;
}

std::string ProteinStructure::sequence(std::size_t chain_index) const {
  std::string seq;
  for (const auto& r : chains.at(chain_index).residues) seq.push_back(one_letter_code(r.name));
  return seq;
}

std::vector<ResidueRef> flatten_residues(const ProteinStructure& p) {
  std::vector<ResidueRef> out;
  for (std::size_t c = 0; c < p.chains.size(); ++c) {
    for (std::size_t r = 0; r < p.chains[c].residues.size(); ++r) out.push_back({c, r});
  }
  return out;
}

std::vector<AtomRef> flatten_atoms(const ProteinStructure& p) {
  std::vector<AtomRef> out;
  std::size_t flat = 0;
  for (const auto& chain : p.chains) {
    for (const auto& res : chain.residues) {
      for (const auto& atom : res.atoms) out.push_back({flat, &atom});
      ++flat;
    }
  }
  return out;
}

char one_letter_code(std::string_view code) {
  static const std::map<std::string_view, char> table = {
      {"ALA", 'A'}, {"ARG", 'R'}, {"ASN", 'N'}, {"ASP", 'D'}, {"CYS", 'C'}, {"GLN", 'Q'},
      {"GLU", 'E'}, {"GLY", 'G'}, {"HIS", 'H'}, {"ILE", 'I'}, {"LEU", 'L'}, {"LYS", 'K'},
      {"MET", 'M'}, {"PHE", 'F'}, {"PRO", 'P'}, {"SER", 'S'}, {"THR", 'T'}, {"TRP", 'W'},
      {"TYR", 'Y'}, {"VAL", 'V'}, {"ASX", 'B'}, {"GLX", 'Z'}};
  const auto it = table.find(code);
  return it == table.end() ? 'X' : it->second;
}

ProteinStructure parse_pdb(std::string_view text) {
  ProteinStructure out;
  std::vector<std::pair<std::string, std::vector<PendingResidue>>> chains;
  std::size_t line_no = 0;
  std::size_t order = 0;
  bool any_atom = false;

  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const std::string_view record = line.substr(0, std::min<std::size_t>(6, line.size()));
    if (record.starts_with("ENDMDL")) break;  // first model only
    const bool is_atom = record == "ATOM  " || record.starts_with("ATOM");
    const bool is_het = record.starts_with("HETATM");
    if (!is_atom && !is_het) continue;
    if (is_het) continue;  // waters and ligands never enter the protein graph

    if (line.size() < 54) {
      fail(ErrorCode::kMalformedRecord,
           "line " + std::to_string(line_no) + " is shorter than the coordinate columns");
    }
    const std::string res_name = std::string(trim(columns(line, 18, 20)));
    if (is_water(res_name)) continue;

    const auto x = to_double(columns(line, 31, 38));
    const auto y = to_double(columns(line, 39, 46));
    const auto z = to_double(columns(line, 47, 54));
    const auto seq = to_int(columns(line, 23, 26));
    if (!x || !y || !z || !seq) {
      fail(ErrorCode::kMalformedRecord, "line " + std::to_string(line_no) + " has unparsable fields");
    }

    PendingAtom pa;
    pa.atom.name = std::string(trim(columns(line, 13, 16)));
    pa.atom.xyz = {*x, *y, *z};
    const std::string_view elem_field = trim(columns(line, 77, 78));
    pa.atom.element = elem_field.empty() ? element_from_name(columns(line, 13, 14)) : upper(elem_field);
    pa.atom.is_heavy = pa.atom.element != "H" && pa.atom.element != "D";
    const std::string_view alt = columns(line, 17, 17);
    pa.altloc = alt.empty() ? ' ' : alt[0];
    pa.occupancy = to_double(columns(line, 55, 60)).value_or(1.0);
    pa.order = order++;

    const std::string chain_id(columns(line, 22, 22));
    const std::string_view icode_field = columns(line, 27, 27);
    const char icode = icode_field.empty() ? ' ' : icode_field[0];

    auto chain_it = std::find_if(chains.begin(), chains.end(),
                                 [&](const auto& c) { return c.first == chain_id; });
    if (chain_it == chains.end()) {
      chains.push_back({chain_id, {}});
      chain_it = std::prev(chains.end());
    }
    auto& residues = chain_it->second;
    if (residues.empty() || residues.back().seq_number != *seq || residues.back().icode != icode ||
        residues.back().name != res_name) {
      // An altloc may switch residue identity (microheterogeneity); keep the
      // first residue name seen for a position.
      if (!residues.empty() && residues.back().seq_number == *seq && residues.back().icode == icode) {
        if (pa.altloc != ' ' && pa.altloc != 'A') continue;
      } else {
        residues.push_back({res_name, *seq, icode, {}});
      }
    }
    add_atom(residues.back(), std::move(pa));
    any_atom = true;
  }

  if (!any_atom) fail(ErrorCode::kEmptyStructure, "no ATOM records");

  for (auto& [chain_id, residues] : chains) {
    Chain chain;
    chain.id = chain_id;
    for (auto& pr : residues) {
      Residue res;
      res.name = pr.name;
      res.seq_number = pr.seq_number;
      res.insertion_code = pr.icode;
      for (const auto& [name, alts] : pr.atoms) res.atoms.push_back(select_alternate(alts).atom);
      if (!res.atoms.empty()) chain.residues.push_back(std::move(res));
    }
    if (!chain.residues.empty()) out.chains.push_back(std::move(chain));
  }
  return out;
}

}  // namespace msp
