#include "msp/io/dataset.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <set>

#include "msp/core/error.hpp"
#include "msp/io/text_file.hpp"

namespace msp {
namespace {

std::string trim_copy(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

std::string_view split_name(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kVal: return "val";
    case Split::kTest: return "test";
    case Split::kNone: return "none";
  }
  return "none";
}

bool parse_split(std::string_view text, Split& out) {
  if (text == "train") out = Split::kTrain;
  else if (text == "val") out = Split::kVal;
  else if (text == "test") out = Split::kTest;
  else if (text == "none" || text.empty()) out = Split::kNone;
  else return false;
  return true;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(trim_copy(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  cells.push_back(trim_copy(current));
  return cells;
}

DatasetIndex parse_dataset_index(std::string_view text, const std::filesystem::path& base_dir) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
  }
  std::size_t first = 0;
  while (first < lines.size() && trim_copy(lines[first]).empty()) ++first;
  if (first == lines.size()) fail(ErrorCode::kMissingColumn, "dataset index has no header");

  const auto header = split_csv_line(lines[first]);
  constexpr std::array<std::string_view, 6> kRequired = {"id", "pdb", "mesh", "mol", "target", "split"};
  std::map<std::string_view, std::size_t> col;
  for (auto name : kRequired) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) fail(ErrorCode::kMissingColumn, "dataset index lacks column '" + std::string(name) + "'");
    col[name] = static_cast<std::size_t>(it - header.begin());
  }

  DatasetIndex index;
  std::set<std::string> ids;
  for (std::size_t li = first + 1; li < lines.size(); ++li) {
    if (trim_copy(lines[li]).empty()) continue;
    const auto cells = split_csv_line(lines[li]);
    const std::size_t line_no = li + 1;
    if (cells.size() < header.size()) {
      index.rejected.push_back({line_no, cells.empty() ? "" : cells[0], "too few cells"});
      continue;
    }
    DatasetRecord rec;
    rec.id = cells[col["id"]];
    if (rec.id.empty()) {
      index.rejected.push_back({line_no, "", "empty id"});
      continue;
    }
    if (!ids.insert(rec.id).second) fail(ErrorCode::kDuplicateId, "duplicate id '" + rec.id + "'");

    auto resolve = [&](std::string_view cell) -> std::filesystem::path {
      if (cell.empty()) return {};
      std::filesystem::path p{std::string(cell)};
      return p.is_absolute() ? p : base_dir / p;
    };
    rec.pdb = resolve(cells[col["pdb"]]);
    rec.mesh = resolve(cells[col["mesh"]]);
    rec.mol = resolve(cells[col["mol"]]);

    const std::string& target = cells[col["target"]];
    const auto [ptr, ec] = std::from_chars(target.data(), target.data() + target.size(), rec.target);
    if (target.empty() || ec != std::errc() || ptr != target.data() + target.size()) {
      index.rejected.push_back({line_no, rec.id, "unparsable target '" + target + "'"});
      continue;
    }
    if (!parse_split(cells[col["split"]], rec.split)) {
      index.rejected.push_back({line_no, rec.id, "unknown split '" + cells[col["split"]] + "'"});
      continue;
    }
    std::string missing;
    for (const auto* p : {&rec.pdb, &rec.mesh, &rec.mol}) {
      if (p->empty() && p != &rec.mol) missing = "empty path";
      else if (!p->empty() && !std::filesystem::exists(*p)) missing = "missing file " + p->string();
      if (!missing.empty()) break;
    }
    if (!missing.empty()) {
      index.rejected.push_back({line_no, rec.id, missing});
      continue;
    }
    index.records.push_back(std::move(rec));
  }
  return index;
}

DatasetIndex load_dataset_index(const std::filesystem::path& csv_path) {
  return parse_dataset_index(read_text_file(csv_path), csv_path.parent_path());
}

}  // namespace msp
