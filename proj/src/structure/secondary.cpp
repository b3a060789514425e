#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "msp/core/error.hpp"
#include "msp/structure/structure_graph.hpp"

namespace msp {
namespace {

constexpr double kPeptideBondMax = 2.5;  // A, longer C-N gaps count as chain breaks
constexpr int kMinHelixRun = 4;
constexpr int kMinStrandRun = 3;

bool in_helix_window(double phi, double psi) {
  return phi >= -100.0 && phi <= -30.0 && psi >= -80.0 && psi <= -5.0;
}

bool in_strand_window(double phi, double psi) {
  return phi >= -180.0 && phi <= -90.0 && psi >= 90.0 && psi <= 180.0;
}

double degrees(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace

char secondary_structure_letter(SecondaryStructure s) {
  constexpr const char* kLetters = "HGIEBTC-";
  return kLetters[static_cast<int>(s)];
}

BackboneDihedrals backbone_dihedrals(const ProteinStructure& p) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  BackboneDihedrals out;
  for (const auto& chain : p.chains) {
    const auto& rs = chain.residues;
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const Atom* n = rs[i].find_atom("N");
      const Atom* ca = rs[i].find_atom("CA");
      const Atom* c = rs[i].find_atom("C");
      double phi = nan;
      double psi = nan;
      if (n && ca && c) {
        if (i > 0) {
          const Atom* c_prev = rs[i - 1].find_atom("C");
          if (c_prev && distance(c_prev->xyz, n->xyz) <= kPeptideBondMax) {
            phi = degrees(dihedral(c_prev->xyz, n->xyz, ca->xyz, c->xyz));
          }
        }
        if (i + 1 < rs.size()) {
          const Atom* n_next = rs[i + 1].find_atom("N");
          if (n_next && distance(c->xyz, n_next->xyz) <= kPeptideBondMax) {
            psi = degrees(dihedral(n->xyz, ca->xyz, c->xyz, n_next->xyz));
          }
        }
      }
      out.phi.push_back(phi);
      out.psi.push_back(psi);
    }
  }
  return out;
}

std::vector<SecondaryStructure> assign_secondary_structure(const ProteinStructure& p) {
  const auto dih = backbone_dihedrals(p);
  const std::size_t n = dih.phi.size();
  std::vector<SecondaryStructure> labels(n, SecondaryStructure::kUnknown);
  std::vector<int> window(n, 0);  // 1 helix, 2 strand
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isnan(dih.phi[i]) || std::isnan(dih.psi[i])) continue;
    labels[i] = SecondaryStructure::kC;
    if (in_helix_window(dih.phi[i], dih.psi[i])) window[i] = 1;
    else if (in_strand_window(dih.phi[i], dih.psi[i])) window[i] = 2;
  }

  // Runs never cross chains: chain boundaries and breaks yield undefined
  // dihedrals, which have window 0.
  std::size_t offset = 0;
  for (const auto& chain : p.chains) {
    const std::size_t end = offset + chain.residues.size();
    std::size_t i = offset;
    while (i < end) {
      std::size_t j = i;
      while (j < end && window[j] == window[i]) ++j;
      const auto run = static_cast<int>(j - i);
      if (window[i] == 1 && run >= kMinHelixRun) {
        for (std::size_t k = i; k < j; ++k) labels[k] = SecondaryStructure::kH;
      } else if (window[i] == 2 && run >= kMinStrandRun) {
        for (std::size_t k = i; k < j; ++k) labels[k] = SecondaryStructure::kE;
      }
      i = j;
    }
    offset = end;
  }
  return labels;
}

void apply_secondary_structure_sidecar(std::vector<SecondaryStructure>& labels,
                                       std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    long long idx = -1;
    std::string label;
    if (!(ls >> idx >> label)) fail(ErrorCode::kMalformedRecord, "bad .ss line: " + line);
    if (idx < 0 || static_cast<std::size_t>(idx) >= labels.size()) {
      fail(ErrorCode::kIndexOutOfRange, ".ss residue index out of range: " + line);
    }
    static constexpr std::string_view kLetters = "HGIEBTC";
    const auto pos = label.size() == 1 ? kLetters.find(label[0]) : std::string_view::npos;
    labels[static_cast<std::size_t>(idx)] =
        pos == std::string_view::npos ? SecondaryStructure::kUnknown : static_cast<SecondaryStructure>(pos);
  }
}

}  // namespace msp
