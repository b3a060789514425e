#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace msp {

struct LigandAtom {
  std::string element;  // canonical symbol, e.g. "Cl"
  int formal_charge = 0;
};

struct LigandBond {
  int a = 0;
  int b = 0;
  int order = 1;  // 1, 2, 3, or 4 for aromatic
};

struct LigandRaw {
  std::vector<LigandAtom> atoms;
  std::vector<LigandBond> bonds;
};

// MOL V2000 block (the first record of an SDF also works).
LigandRaw parse_mol(std::string_view text);

}  // namespace msp
