#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace msp {

// Atomic number for a case-insensitive element symbol (1..118), or nullopt.
std::optional<int> atomic_number(std::string_view symbol);

// Canonical capitalisation, e.g. "CL" -> "Cl".
std::string canonical_symbol(std::string_view symbol);

}  // namespace msp
