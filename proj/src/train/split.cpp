#include "msp/train/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "msp/core/error.hpp"
#include "msp/core/rng.hpp"

namespace msp {
namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

void check_ratios(const SplitRatios& r) {
  for (double x : r) {
    if (!(x >= 0.0)) fail(ErrorCode::kInvalidArgument, "split ratios must be non-negative");
  }
  if (std::abs(r[0] + r[1] + r[2] - 1.0) > 1e-9) fail(ErrorCode::kInvalidArgument, "split ratios must sum to 1");
}

}  // namespace

Alignment needleman_wunsch(std::string_view a, std::string_view b, const AlignmentScoring& s) {
  const std::size_t n = a.size(), m = b.size();
  const std::size_t w = m + 1;
  std::vector<double> score((n + 1) * w);
  for (std::size_t i = 0; i <= n; ++i) score[i * w] = s.gap * static_cast<double>(i);
  for (std::size_t j = 0; j <= m; ++j) score[j] = s.gap * static_cast<double>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const double diag = score[(i - 1) * w + j - 1] + (a[i - 1] == b[j - 1] ? s.match : s.mismatch);
      const double up = score[(i - 1) * w + j] + s.gap;
      const double left = score[i * w + j - 1] + s.gap;
      score[i * w + j] = std::max({diag, up, left});
    }
  }

  Alignment out;
  out.score = score[n * w + m];
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    const double here = score[i * w + j];
    if (i > 0 && j > 0 && here == score[(i - 1) * w + j - 1] + (a[i - 1] == b[j - 1] ? s.match : s.mismatch)) {
      out.matches += a[i - 1] == b[j - 1] ? 1 : 0;
      --i;
      --j;
    } else if (i > 0 && here == score[(i - 1) * w + j] + s.gap) {
      --i;
    } else {
      --j;
    }
    ++out.length;
  }
  return out;
}

double sequence_identity(std::string_view a, std::string_view b, const AlignmentScoring& s) {
  const Alignment al = needleman_wunsch(a, b, s);
  if (al.length == 0) return 100.0;
  return 100.0 * static_cast<double>(al.matches) / static_cast<double>(al.length);
}

std::vector<int> identity_clusters(const std::vector<std::string>& sequences, double threshold_percent,
                                   const AlignmentScoring& s, unsigned jobs) {
  if (!(threshold_percent > 0.0 && threshold_percent <= 100.0)) {
    fail(ErrorCode::kInvalidArgument, "identity threshold must lie in (0, 100]");
  }
  const std::size_t n = sequences.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<char> linked(pairs.size(), 0);
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, pairs.size()))));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t p = t; p < pairs.size(); p += workers) {
        const auto [i, j] = pairs[p];
        linked[p] = sequence_identity(sequences[i], sequences[j], s) >= threshold_percent ? 1 : 0;
      }
    });
  }
  for (auto& th : pool) th.join();

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (!linked[p]) continue;
    const std::size_t ra = find_root(parent, pairs[p].first), rb = find_root(parent, pairs[p].second);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<int> label(n, -1);
  std::vector<int> root_label(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find_root(parent, i);
    if (root_label[r] < 0) root_label[r] = next++;
    label[i] = root_label[r];
  }
  return label;
}

std::vector<Split> split_by_identity(const std::vector<std::string>& sequences, double threshold_percent,
                                     std::uint64_t seed, const SplitRatios& ratios, const AlignmentScoring& s,
                                     unsigned jobs) {
  check_ratios(ratios);
  const auto label = identity_clusters(sequences, threshold_percent, s, jobs);
  const int k = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
  std::vector<std::vector<std::size_t>> clusters(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < label.size(); ++i) clusters[static_cast<std::size_t>(label[i])].push_back(i);

  std::vector<std::size_t> order(clusters.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return clusters[a].size() > clusters[b].size(); });

  const double n = static_cast<double>(sequences.size());
  std::array<double, 3> filled{0.0, 0.0, 0.0};
  std::vector<Split> out(sequences.size(), Split::kTrain);
  for (std::size_t c : order) {
    std::size_t best = 0;
    double best_deficit = -1e300;
    for (std::size_t t = 0; t < 3; ++t) {
      if (ratios[t] == 0.0) continue;
      const double deficit = ratios[t] * n - filled[t];
      if (deficit > best_deficit) {
        best_deficit = deficit;
        best = t;
      }
    }
    filled[best] += static_cast<double>(clusters[c].size());
    for (std::size_t i : clusters[c]) out[i] = static_cast<Split>(best);
  }
  return out;
}

std::vector<Split> split_random(std::size_t count, const SplitRatios& ratios, std::uint64_t seed) {
  check_ratios(ratios);
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);
  const auto n_train = static_cast<std::size_t>(std::llround(ratios[0] * static_cast<double>(count)));
  const auto n_val = std::min(count - std::min(count, n_train),
                              static_cast<std::size_t>(std::llround(ratios[1] * static_cast<double>(count))));
  std::vector<Split> out(count, Split::kTest);
  for (std::size_t i = 0; i < count; ++i) {
    if (i < n_train) {
      out[order[i]] = Split::kTrain;
    } else if (i < n_train + n_val) {
      out[order[i]] = Split::kVal;
    }
  }
  if (ratios[2] == 0.0) {
    for (auto& s : out) {
      if (s == Split::kTest) s = ratios[1] > 0.0 ? Split::kVal : Split::kTrain;
    }
  }
  return out;
}

std::string format_split_file(const std::vector<std::string>& ids, const std::vector<Split>& splits) {
  if (ids.size() != splits.size()) fail(ErrorCode::kLengthMismatch, "one split tag per id is required");
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out += ids[i];
    out += '\t';
    out += split_name(splits[i]);
    out += '\n';
  }
  return out;
}

}  // namespace msp
