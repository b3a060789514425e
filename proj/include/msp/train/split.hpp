#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "msp/io/dataset.hpp"

namespace msp {

struct AlignmentScoring {
  double match = 1.0;
  double mismatch = 0.0;
  double gap = -1.0;
};

struct Alignment {
  double score = 0.0;
  std::size_t matches = 0;
  std::size_t length = 0;  // columns, gaps included
};

// Global alignment; among equal-score paths the traceback prefers diagonal,
// then gap in b, then gap in a.
Alignment needleman_wunsch(std::string_view a, std::string_view b, const AlignmentScoring& s = {});

// Percent identity: matches / alignment length * 100. Two empty strings give 100.
double sequence_identity(std::string_view a, std::string_view b, const AlignmentScoring& s = {});

// Single-linkage clusters at identity >= threshold_percent, labelled by first member.
std::vector<int> identity_clusters(const std::vector<std::string>& sequences, double threshold_percent,
                                   const AlignmentScoring& s = {}, unsigned jobs = 1);

using SplitRatios = std::array<double, 3>;
inline constexpr SplitRatios kDefaultRatios{0.8, 0.1, 0.1};

// Whole clusters go to the split furthest below its target size, largest
// clusters first; equal sizes are ordered by a seeded shuffle.
std::vector<Split> split_by_identity(const std::vector<std::string>& sequences, double threshold_percent,
                                     std::uint64_t seed, const SplitRatios& ratios = kDefaultRatios,
                                     const AlignmentScoring& s = {}, unsigned jobs = 1);

std::vector<Split> split_random(std::size_t count, const SplitRatios& ratios, std::uint64_t seed);

// Split file lines: id<TAB>{train|val|test}.
std::string format_split_file(const std::vector<std::string>& ids, const std::vector<Split>& splits);

}  // namespace msp
