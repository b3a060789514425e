#include "msp/structure/residue_tables.hpp"

#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <string>

namespace msp {

std::size_t residue_class(std::string_view name) {
  for (std::size_t i = 0; i + 1 < kResidueNames.size(); ++i) {
    if (kResidueNames[i] == name) return i;
  }
  return kResidueClasses - 1;
}

std::optional<double> kyte_doolittle(std::string_view name) {
  static const std::map<std::string_view, double> table = {
      {"ALA", 1.8},  {"ARG", -4.5}, {"ASN", -3.5}, {"ASP", -3.5}, {"CYS", 2.5},
      {"GLN", -3.5}, {"GLU", -3.5}, {"GLY", -0.4}, {"HIS", -3.2}, {"ILE", 4.5},
      {"LEU", 3.8},  {"LYS", -3.9}, {"MET", 1.9},  {"PHE", 2.8},  {"PRO", -1.6},
      {"SER", -0.8}, {"THR", -0.7}, {"TRP", -0.9}, {"TYR", -1.3}, {"VAL", 4.2}};
  const auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

double residue_hydropathy(std::string_view name) {
  if (const auto kd = kyte_doolittle(name)) return *kd / 4.5;
  static std::mutex mu;
  static std::set<std::string> warned;
  std::lock_guard lock(mu);
  if (warned.insert(std::string(name)).second) {
    std::cerr << "warning: no hydropathy value for residue '" << name << "', using 0.0\n";
  }
  return 0.0;
}

double residue_charge(std::string_view name) {
  if (name == "ASP" || name == "GLU") return -1.0;
  if (name == "LYS" || name == "ARG") return 1.0;
  if (name == "HIS") return 0.1;
  return 0.0;
}

bool is_hbond_donor(std::string_view residue, std::string_view atom) {
  if (atom == "N") return residue != "PRO";
  static const std::map<std::string_view, std::set<std::string_view>> side_chain = {
      {"ARG", {"NE", "NH1", "NH2"}}, {"ASN", {"ND2"}}, {"GLN", {"NE2"}},
      {"HIS", {"ND1", "NE2"}},       {"LYS", {"NZ"}},  {"SER", {"OG"}},
      {"THR", {"OG1"}},              {"TYR", {"OH"}},  {"TRP", {"NE1"}}};
  const auto it = side_chain.find(residue);
  return it != side_chain.end() && it->second.contains(atom);
}

std::optional<double> vdw_radius(std::string_view element) {
  static const std::map<std::string_view, double> table = {
      {"H", 1.20}, {"D", 1.20}, {"C", 1.70},  {"N", 1.55},  {"O", 1.52},  {"S", 1.80},
      {"P", 1.80}, {"SE", 1.90}, {"F", 1.47}, {"CL", 1.75}, {"BR", 1.85}, {"I", 1.98},
      {"ZN", 1.39}, {"FE", 1.94}, {"MG", 1.73}, {"CA", 2.31}, {"NA", 2.27}, {"K", 2.75},
      {"MN", 1.97}, {"CU", 1.40}, {"NI", 1.63}, {"CO", 1.92}};
  const auto it = table.find(element);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

}  // namespace msp
