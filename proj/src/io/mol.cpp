#include <algorithm>
#include <charconv>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "msp/core/error.hpp"
#include "msp/io/elements.hpp"
#include "msp/io/ligand.hpp"

namespace msp {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string_view field(std::string_view line, std::size_t begin, std::size_t len) {
  if (begin >= line.size()) return {};
  return line.substr(begin, std::min(len, line.size() - begin));
}

bool parse_int(std::string_view s, int& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

int charge_from_code(int code) {
  switch (code) {
    case 1: return 3;
    case 2: return 2;
    case 3: return 1;
    case 5: return -1;
    case 6: return -2;
    case 7: return -3;
    default: return 0;
  }
}

}  // namespace

LigandRaw parse_mol(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
  }
  if (lines.size() < 4) fail(ErrorCode::kBadCountsLine, "MOL block shorter than its header");

  const std::string_view counts = lines[3];
  int n_atoms = 0;
  int n_bonds = 0;
  if (counts.find("V2000") == std::string_view::npos || !parse_int(field(counts, 0, 3), n_atoms) ||
      !parse_int(field(counts, 3, 3), n_bonds) || n_atoms < 0 || n_bonds < 0) {
    fail(ErrorCode::kBadCountsLine, "unparsable counts line: '" + std::string(counts) + "'");
  }
  if (lines.size() < 4 + static_cast<std::size_t>(n_atoms) + static_cast<std::size_t>(n_bonds)) {
    fail(ErrorCode::kBadCountsLine, "counts line promises more records than present");
  }

  LigandRaw mol;
  mol.atoms.reserve(static_cast<std::size_t>(n_atoms));
  for (int i = 0; i < n_atoms; ++i) {
    const std::string_view line = lines[4 + static_cast<std::size_t>(i)];
    const std::string_view symbol = trim(field(line, 31, 3));
    if (symbol.empty() || !atomic_number(symbol)) {
      fail(ErrorCode::kUnknownElement, "atom " + std::to_string(i + 1) + " has symbol '" +
                                           std::string(symbol) + "'");
    }
    LigandAtom atom;
    atom.element = canonical_symbol(symbol);
    int code = 0;
    if (parse_int(field(line, 36, 3), code)) atom.formal_charge = charge_from_code(code);
    mol.atoms.push_back(std::move(atom));
  }

  std::set<std::pair<int, int>> seen;
  for (int i = 0; i < n_bonds; ++i) {
    const std::string_view line = lines[4 + static_cast<std::size_t>(n_atoms + i)];
    LigandBond bond;
    if (!parse_int(field(line, 0, 3), bond.a) || !parse_int(field(line, 3, 3), bond.b) ||
        !parse_int(field(line, 6, 3), bond.order)) {
      fail(ErrorCode::kMalformedRecord, "bad bond line " + std::to_string(i + 1));
    }
    if (bond.a < 1 || bond.a > n_atoms || bond.b < 1 || bond.b > n_atoms || bond.a == bond.b) {
      fail(ErrorCode::kIndexOutOfRange, "bond " + std::to_string(i + 1) + " endpoints out of range");
    }
    if (bond.order < 1 || bond.order > 4) {
      fail(ErrorCode::kMalformedRecord, "bond " + std::to_string(i + 1) + " has unsupported order " +
                                            std::to_string(bond.order));
    }
    --bond.a;
    --bond.b;
    if (!seen.insert(std::minmax(bond.a, bond.b)).second) {
      fail(ErrorCode::kMalformedRecord, "duplicate bond " + std::to_string(i + 1));
    }
    mol.bonds.push_back(bond);
  }

  // "M  CHG" property lines supersede the atom-block charge field.
  bool chg_reset = false;
  for (std::size_t li = 4 + static_cast<std::size_t>(n_atoms + n_bonds); li < lines.size(); ++li) {
    const std::string_view line = lines[li];
    if (line.starts_with("M  END")) break;
    if (!line.starts_with("M  CHG")) continue;
    if (!chg_reset) {
      for (auto& a : mol.atoms) a.formal_charge = 0;
      chg_reset = true;
    }
    int entries = 0;
    if (!parse_int(field(line, 6, 3), entries)) continue;
    for (int e = 0; e < entries; ++e) {
      int idx = 0;
      int chg = 0;
      if (parse_int(field(line, 9 + 8 * e + 1, 3), idx) &&
          parse_int(field(line, 9 + 8 * e + 5, 3), chg) && idx >= 1 && idx <= n_atoms) {
        mol.atoms[static_cast<std::size_t>(idx - 1)].formal_charge = chg;
      }
    }
  }
  return mol;
}

}  // namespace msp
